"""Command-line interface.

Exit codes: 0 success / all checks pass, 1 parse or usage error or failed
check, 2 capacity exceeded, 3 partial table.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import verify as V
from .cache import ResultCache, default_cache_dir
from .complexes import DEFAULT_MAX_FACES, CapacityError
from .expr import WeightParseError, format_weights, parse_weight_expr
from .report import cached_profile, group_string, profile_from_payload
from .weights import WeightError, WeightVector

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_PARTIAL = 0, 1, 2, 3

FAMILIES = {"half": 2, "third": 3, "quarter": 4, "fifth": 5, "sixth": 6, "seventh": 7}
THEOREMS = ["A", "B1", "B2", "C", "gaps", "heavylight", "gm", "shelling",
            "doublecover", "susp2", "divisibility"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _coeffs(text: str) -> str:
    if text in ("Z", "Q"):
        return text
    if text.startswith("F") and text[1:].isdigit():
        return text
    raise argparse.ArgumentTypeError(f"coefficients must be Z, Q or Fp, got {text!r}")


def _range(text: str) -> range:
    for sep in ("..", "-", ":"):
        if sep in text:
            a, b = text.split(sep, 1)
            return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


def _cache(args):
    if args.no_cache:
        return None
    d = args.cache or default_cache_dir()
    return ResultCache(d) if d else None


def _emit_profile_rows(payloads, fmt: str, out) -> None:
    if fmt == "json":
        data = payloads[0] if len(payloads) == 1 else payloads
        out.write(json.dumps(data, sort_keys=True) + "\n")
        return
    hi = max(h["degree"] for p in payloads for h in p["homology"])
    lo = min(h["degree"] for p in payloads for h in p["homology"])
    writer = csv.writer(out, lineterminator="\n")
    header = ([] if len(payloads) == 1 else ["weights"]) + [f"H{d}" for d in range(lo, hi + 1)]
    writer.writerow(header)
    for p in payloads:
        prof = profile_from_payload(p)
        row = [] if len(payloads) == 1 else [format_weights([Fraction(a, b) for a, b in p["weights"]])]
        present = {h["degree"] for h in p["homology"]}
        row += [group_string(prof, d) if d in present else "" for d in range(lo, hi + 1)]
        writer.writerow(row)


def cmd_homology(args, out) -> int:
    w = parse_weight_expr(args.weights)
    payload = cached_profile(w, args.genus, args.coeffs, _cache(args), args.max_faces)
    _emit_profile_rows([payload], "csv" if args.csv else "json", out)
    return EXIT_OK


def _table_row(job):
    w, genus, coeffs, cache_dir, max_faces = job
    cache = ResultCache(cache_dir) if cache_dir else None
    try:
        return cached_profile(w, genus, coeffs, cache, max_faces)
    except CapacityError as exc:
        return {"weights": [[x.numerator, x.denominator] for x in w.entries],
                "capacity": str(exc)}


def cmd_table(args, out) -> int:
    if args.family == "custom":
        if not args.weights:
            raise UsageError("--family custom needs at least one --weights expression")
        rows = [parse_weight_expr(e) for e in args.weights]
    else:
        ell = FAMILIES[args.family]
        if args.n_range is None:
            raise UsageError("--n-range is required for named families")
        rows = [WeightVector([1, 1] + [Fraction(1, ell)] * (n - 2)) for n in _range(args.n_range)]
        rows = [w for w in rows if w.n >= 3]
    cache = _cache(args)
    cache_dir = str(cache.root) if cache else None
    jobs = [(w, args.genus, args.coeffs, cache_dir, args.max_faces) for w in rows]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_table_row, jobs))
    else:
        results = [_table_row(j) for j in jobs]
    done = [r for r in results if "capacity" not in r]
    partial = len(done) != len(results)
    if args.json:
        out.write(json.dumps(results, sort_keys=True) + "\n")
    else:
        if done:
            buf = io.StringIO()
            _emit_profile_rows(done, "csv", buf)
            lines = buf.getvalue().splitlines()
            if len(done) == 1:  # keep the weights column for tables
                prof = done[0]
                lines = ["weights," + lines[0],
                         format_weights([Fraction(a, b) for a, b in prof["weights"]]) + "," + lines[1]]
            out.write("\n".join(lines) + "\n")
        for r in results:
            if "capacity" in r:
                wv = format_weights([Fraction(a, b) for a, b in r["weights"]])
                out.write(f"{wv},CAPACITY\n")
    return EXIT_PARTIAL if partial else EXIT_OK


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--theorem {args.theorem} needs " + ", ".join("--" + n.replace("_", "-")
                                                                        for n in missing))


def run_verify(args) -> list:
    t = args.theorem
    if t == "gm":
        return V.verify_gm(args.n_max, args.trials, args.seed)
    if t == "A":
        if args.m is not None and args.k is not None:
            return V.verify_heavylight(args.m, args.k)
        return V.verify_theorem_a(args.n_max, args.trials, args.seed)
    if t == "shelling":
        return V.verify_shelling_random(args.trials, args.r_max, args.seed)
    if t == "heavylight":
        _need(args, "m", "k")
        return V.verify_heavylight(args.m, args.k)
    if t == "gaps":
        _need(args, "ell")
        return V.verify_gaps(args.ell, args.n_max)
    if t == "B1":
        _need(args, "m", "k")
        return V.verify_b1(args.m, args.k)
    if t == "B2":
        _need(args, "k", "m")
        if not 2 <= args.m <= args.k:
            raise UsageError("--theorem B2 needs 2 <= m <= k")
        return V.verify_b2(args.k, args.m)
    if t == "doublecover":
        _need(args, "k", "m")
        if not 1 <= args.m <= args.k:
            raise UsageError("--theorem doublecover needs 1 <= m <= k")
        return V.verify_doublecover(args.k, args.m)
    if t == "C":
        _need(args, "m", "k")
        if args.m + args.k < 1:
            raise UsageError("--theorem C needs m + k >= 1")
        return V.verify_c(args.m, args.k)
    if t == "susp2":
        if args.tail:
            tails = [list(parse_weight_expr(e)) for e in args.tail]
        else:
            tails = [[Fraction(1, 2)], [Fraction(1, 3)] * 2, [Fraction(1, 2), Fraction(1, 3)],
                     [Fraction(1, 4)] * 3, [1]]
        return V.verify_susp2(tails)
    if t == "divisibility":
        return V.verify_divisibility(args.m, args.k, args.trials, args.seed, args.n_max)
    raise UsageError(f"unknown theorem {t}")


def cmd_verify(args, out) -> int:
    checks = run_verify(args)
    for c in checks:
        out.write(c.line() + "\n")
    passed = sum(c.passed for c in checks)
    out.write(f"summary: {passed}/{len(checks)} passed\n")
    return EXIT_OK if passed == len(checks) else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tropmod", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--coeffs", type=_coeffs, default="Z", help="Z, Q or Fp (e.g. F2)")
        sp.add_argument("--genus", type=int, choices=(0, 1), default=0)
        sp.add_argument("--cache", metavar="DIR", help="result cache directory "
                        "(default: $TROPMOD_CACHE)")
        sp.add_argument("--no-cache", action="store_true")
        sp.add_argument("--max-faces", type=int, default=DEFAULT_MAX_FACES)

    h = sub.add_parser("homology", help="reduced homology of one weight vector")
    h.add_argument("weights", help="weight expression, e.g. 1^2,1/2^4")
    fmt = h.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--csv", action="store_true")
    common(h)

    t = sub.add_parser("table", help="reproduce a family of weight vectors")
    t.add_argument("--family", choices=sorted(FAMILIES) + ["custom"], required=True)
    t.add_argument("--n-range", help="range of n, e.g. 5..8")
    t.add_argument("--weights", action="append", help="expression for --family custom")
    t.add_argument("--json", action="store_true", help="JSON instead of CSV")
    t.add_argument("--jobs", type=int, default=1)
    common(t)

    v = sub.add_parser("verify", help="compare a theorem's prediction with direct computation")
    v.add_argument("--theorem", choices=THEOREMS, required=True)
    v.add_argument("--m", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--ell", type=int)
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--r-max", type=int, default=8)
    v.add_argument("--trials", type=int, default=25)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tail", action="append", help="tail expression for susp2")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "homology":
            return cmd_homology(args, out)
        if args.command == "table":
            return cmd_table(args, out)
        return cmd_verify(args, out)
    except (WeightParseError, WeightError, UsageError, ValueError) as exc:
        print(f"tropmod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"tropmod: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
