"""Result payloads shared by the CLI and the cache."""
from __future__ import annotations

import time

from .cache import ResultCache, ResultRecord, canonical_key
from .complexes import DEFAULT_MAX_FACES, build_delta0
from .genus_one import genus1_complex
from .homology import HomologyProfile, chain_homology, complex_stats, homology
from . import __version__
from .weights import as_weights


def group_string(profile: HomologyProfile, d: int) -> str:
    ring = "Z" if profile.coeffs == "Z" else profile.coeffs
    b, t = profile.betti(d), profile.torsion(d)
    terms = []
    if b:
        terms.append(ring if b == 1 else f"{ring}^{b}")
    terms += [f"Z/{f}" for f in t]
    return "+".join(terms) or "0"


def compute_profile(w, genus: int = 0, coeffs: str = "Z",
                    max_faces: int = DEFAULT_MAX_FACES) -> dict:
    """JSON-ready homology record of the genus-0 or genus-1 space."""
    w = as_weights(w)
    if genus == 0:
        K = build_delta0(w, max_faces=max_faces)
        prof = homology(K, coeffs, reduced=True, max_cells=max_faces)
        stats = complex_stats(K)
        f_vector, components, top = list(stats.f_vector), stats.components, K.dim
    elif genus == 1:
        if coeffs == "Z":
            raise ValueError("genus-one homology is computed over Q only")
        cx = genus1_complex(w)
        prof = chain_homology(cx.chain, coeffs, reduced=True)
        f_vector = list(cx.chain.dims[1:])
        components = prof.betti(0) + 1 if f_vector else 0
        top = len(f_vector) - 1
    else:
        raise ValueError("genus must be 0 or 1")
    lo = min([0] + [d for d in prof.support()])
    hi = max([top, 0] + [d for d in prof.support()])
    return {
        "weights": [[x.numerator, x.denominator] for x in w.entries],
        "genus": genus,
        "coeffs": prof.coeffs,
        "reduced": True,
        "homology": [{"degree": d, "betti": prof.betti(d), "torsion": list(prof.torsion(d))}
                     for d in range(lo, hi + 1)],
        "f_vector": f_vector,
        "components": components,
    }


def profile_from_payload(payload: dict) -> HomologyProfile:
    return HomologyProfile.from_dict(
        {h["degree"]: h["betti"] for h in payload["homology"]},
        {h["degree"]: tuple(h["torsion"]) for h in payload["homology"]},
        payload["reduced"], payload["coeffs"])


def cached_profile(w, genus: int, coeffs: str, cache: ResultCache | None,
                   max_faces: int = DEFAULT_MAX_FACES) -> dict:
    w = as_weights(w)
    key = canonical_key(w, "homology", genus=genus, coeffs=coeffs)
    if cache is not None:
        rec = cache.get(key)
        if rec is not None:
            # cached payload is stored under the canonical weight order
            payload = dict(rec.payload)
            payload["weights"] = [[x.numerator, x.denominator] for x in w.entries]
            return payload
    t0 = time.perf_counter()
    payload = compute_profile(w, genus, coeffs, max_faces)
    if cache is not None:
        cache.put(ResultRecord(key, "homology", payload, __version__,
                               round(time.perf_counter() - t0, 6)))
    return payload
