"""Prediction-versus-computation checks for the theorems, one ``Check`` per instance."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .arrangements import (
    disconnected_prediction,
    gaps_support,
    heavy_light_prediction,
    heavy_light_weights,
    lex_facet_order,
    predicted_delta0_profile,
    rep_dimension,
    verify_shelling,
)
from .complexes import (
    SimplicialComplex,
    build_delta0,
    build_delta_u,
    build_double_cover,
    build_heavy_locus,
    build_rank_selected_flag,
    connected_components,
    double_cover_projection,
)
from .expr import format_weights
from .genus_one import genus1_betti_prediction, genus1_homology, verify_double_suspension
from .homology import HomologyProfile, complex_stats, homology, relative_homology
from .weights import EdgeCase, WeightVector, classify_edge_cases, count_weight_one


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def random_tail(rng: random.Random, r: int, max_den: int = 7) -> list[Fraction]:
    out = []
    for _ in range(r):
        q = rng.randint(1, max_den)
        out.append(Fraction(rng.randint(1, q), q))
    return out


def _w(w) -> str:
    return format_weights(w)


def check_gm(w) -> Check:
    w = WeightVector(w)
    pred = predicted_delta0_profile(w)
    direct = homology(build_delta0(w))
    ok = pred == direct and direct.is_torsion_free()
    return Check(f"gm {_w(w)}", ok, f"predicted {pred}; direct {direct}")


def verify_gm(n_max: int = 8, trials: int = 25, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        r = rng.randint(1, max(1, n_max - 2))
        out.append(check_gm([1, 1] + random_tail(rng, r)))
    return out


def verify_theorem_a(n_max: int = 8, trials: int = 25, seed: int = 0) -> list[Check]:
    """Wedge-of-spheres consequences: free homology with the top sphere present."""
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        w = WeightVector([1, 1] + random_tail(rng, rng.randint(1, max(1, n_max - 2))))
        H = homology(build_delta0(w))
        ok = H.is_torsion_free() and H.betti(w.n - 4) >= 1 and max(H.support()) == w.n - 4
        out.append(Check(f"A {_w(w)}", ok, str(H)))
    return out


def negative_shelling_controls() -> list[tuple[SimplicialComplex, list]]:
    two_edges = SimplicialComplex.from_facets([1, 2, 3, 4], [(0, 1), (2, 3)])
    return [(two_edges, [(1, 2), (3, 4)]), (two_edges, [(3, 4), (1, 2)])]


def verify_shelling_random(trials: int = 100, r_max: int = 8, seed: int = 0) -> list[Check]:
    from .arrangements import ShellingOrder

    rng = random.Random(seed)
    out = []
    done = 0
    while done < trials:
        u = random_tail(rng, rng.randint(2, r_max))
        K = build_delta_u(u)
        if not K.empty_face:
            continue
        done += 1
        ok = verify_shelling(K, lex_facet_order(u))
        out.append(Check(f"shelling {_w(u)}", ok, f"{len(K.facets())} facets"))
    for K, order in negative_shelling_controls():
        res = verify_shelling(K, ShellingOrder(tuple(tuple(f) for f in order)))
        out.append(Check(f"shelling control {order}", not res, f"verify_shelling -> {res}"))
    return out


def verify_heavylight(m: int, k: int) -> list[Check]:
    count, dim = heavy_light_prediction(m, k)
    w = heavy_light_weights(m, k)
    H = homology(build_delta0(w))
    expected = HomologyProfile.from_dict({dim: count})
    out = [Check(f"heavylight m={m} k={k}", H == expected,
                 f"predicted {count} spheres of dim {dim}; direct {H}"),
           Check(f"rep_dimension m={m} k={k}", rep_dimension(m, k) == H.betti(dim),
                 f"rep_dimension {rep_dimension(m, k)}, top Betti {H.betti(dim)}")]
    out.append(check_divisibility(w, H))
    return out


def check_divisibility(w, H: HomologyProfile | None = None) -> Check:
    w = WeightVector(w)
    if H is None:
        H = homology(build_delta0(w))
    heavy = count_weight_one(w.entries)
    f = factorial(max(heavy - 2, 0))
    ok = all(b % f == 0 for b in H.betti_dict().values())
    return Check(f"divisibility {_w(w)}", ok, f"({heavy}-2)! = {f} vs {H}")


def verify_divisibility(m: int | None = None, k: int | None = None, trials: int = 10,
                        seed: int = 0, n_max: int = 8) -> list[Check]:
    if m is not None and k is not None:
        return [check_divisibility(heavy_light_weights(m, k))]
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        heavy = rng.randint(2, min(5, n_max - 1))
        tail = random_tail(rng, rng.randint(1, n_max - heavy))
        tail = [x for x in tail if x != 1] or [Fraction(1, 2)]
        out.append(check_divisibility([1] * heavy + tail))
    return out


def verify_gaps(ell: int, n_max: int = 8) -> list[Check]:
    out = []
    for n in range(4, n_max + 1):
        w = WeightVector([1, 1] + [Fraction(1, ell)] * (n - 2))
        H = homology(build_delta0(w))
        pred = gaps_support(n, ell)
        out.append(Check(f"gaps ell={ell} n={n}", H.support() == pred,
                         f"support {sorted(H.support())}, predicted {sorted(pred)}"))
    return out


def disconnected_weights(m: int, k: int) -> WeightVector:
    # light marks must satisfy k * eps < 1/m
    return WeightVector([Fraction(1, m)] * (2 * m) + [Fraction(1, m * k + 1)] * k)


def verify_b1(m: int, k: int) -> list[Check]:
    count, dim = disconnected_prediction(m, k)
    w = disconnected_weights(m, k)
    K = build_delta0(w)
    comps = connected_components(K)
    out = []
    if dim == 0:
        ok = len(comps) == 2 * count and all(c.f_vector() == (1,) for c in comps)
        out.append(Check(f"B1 m={m} k={k}", ok,
                         f"{len(comps)} points = {count} copies of S^0 expected"))
    else:
        sphere = HomologyProfile.from_dict({dim: 1})
        hs = [homology(c) for c in comps]
        ok = len(comps) == count and all(h == sphere for h in hs)
        out.append(Check(f"B1 m={m} k={k}", ok,
                         f"{len(comps)} components (expected {count}), each {set(map(str, hs))}"))
    H = homology(K)
    expect = ({0: 2 * count - 1} if dim == 0 else {0: count - 1, dim: count})
    out.append(Check(f"B1 betti m={m} k={k}", H.betti_dict() == {d: b for d, b in expect.items() if b},
                     f"direct {H}"))
    return out


def torsion_weights(k: int, m: int) -> WeightVector:
    return WeightVector([Fraction(1, k)] * (2 * (k + 1) + m))


def verify_doublecover(k: int, m: int) -> list[Check]:
    w = torsion_weights(k, m)
    n = w.n
    cover = build_double_cover(w)
    delta = build_delta0(w)
    rank_sel = build_rank_selected_flag(n, k + 1)
    out = [Check(f"doublecover k={k} m={m} rank-selected", cover.labeled_faces() == rank_sel.labeled_faces(),
                 f"{cover.f_vector()} vs {rank_sel.f_vector()}")]
    chi_c = complex_stats(cover).reduced_euler + 1
    chi_d = complex_stats(delta).reduced_euler + 1
    out.append(Check(f"doublecover k={k} m={m} euler", chi_c == 2 * chi_d,
                     f"chi(cover) = {chi_c}, chi(delta) = {chi_d}"))
    proj = double_cover_projection(cover, delta)
    preimages: dict = {}
    for f in cover.all_faces():
        img = tuple(sorted(proj[v] for v in f))
        preimages[img] = preimages.get(img, 0) + 1
    ok = all(preimages.get(f, 0) == 2 for f in delta.all_faces()) and len(preimages) == sum(delta.f_vector())
    out.append(Check(f"doublecover k={k} m={m} two-to-one", ok, "every face has two preimages"))
    return out


def verify_b2(k: int, m: int) -> list[Check]:
    w = torsion_weights(k, m)
    H = homology(build_delta0(w))
    Hc = homology(build_double_cover(w))
    out = [Check(f"B2 k={k} m={m} H1(delta)", H.betti(1) == 0 and H.torsion(1) == (2,),
                 f"H(delta) = {H}"),
           Check(f"B2 k={k} m={m} H1(cover)", Hc.betti(1) == 0 and not Hc.torsion(1),
                 f"H(cover) = {Hc}"),
           Check(f"B2 k={k} m={m} cover wedge", set(Hc.support()) <= {m} and Hc.is_torsion_free(),
                 f"cover homology concentrated in degree {m}")]
    return out + verify_doublecover(k, m)


def verify_c(m: int, k: int) -> list[Check]:
    w = heavy_light_weights(m, k)
    H = genus1_homology(w)
    P = genus1_betti_prediction(m, k)
    return [Check(f"C m={m} k={k}", H.betti_dict() == P.betti_dict(),
                  f"predicted {P}; direct {H}")]


def verify_susp2(tails: list) -> list[Check]:
    out = []
    for tail in tails:
        tail = list(tail)
        ok = verify_double_suspension([1, 1] + tail, [1, 1, 1] + tail)
        out.append(Check(f"susp2 tail={_w(tail) if tail else '()'}", ok,
                         "Susp^2 genus 0 = 2 x genus 1"))
    return out


def check_heavy_locus(w) -> list[Check]:
    """Contractibility of the heavy locus and the quotient identity (generic case)."""
    w = WeightVector(w)
    delta = build_delta0(w)
    X = build_heavy_locus(w, delta)
    hx = homology(X)
    hd = homology(delta)
    rel = relative_homology(delta, X)
    return [Check(f"heavy locus {_w(w)}", hx.is_zero(), f"H(X) = {hx}"),
            Check(f"quotient {_w(w)}", rel.groups == hd.groups, f"H(delta, X) = {rel}; H(delta) = {hd}")]


def random_generic_weights(rng: random.Random, n_max: int = 8) -> WeightVector:
    while True:
        w = WeightVector([1, 1] + random_tail(rng, rng.randint(2, n_max - 2)))
        if classify_edge_cases(w) is EdgeCase.GENERIC:
            return w
