"""Command line interface.

Exit codes: 0 pass / vacuous / informational output, 1 counterexample found,
2 usage or internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import exp_sums, verifiers
from .rep_counts import rep_profile
from .sumset import restricted_sumset, unrestricted_sumset
from .zn_core import ParseError, ResidueSet

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_ERROR = 0, 1, 2

VERIFIER_IDS = (
    "thmA", "thmB", "thmC-d-odd", "thmD", "thm-even", "thm-parity", "thm-odd-density",
    "lemma1", "lemma2", "lemma4", "lemma5", "lemma6", "lemma20", "factI", "parseval",
)
SEARCH_IDS = ("problem1",)


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a bare integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _ns(args, keep=None) -> list[int]:
    """Moduli from --n / --n-range; ``keep`` filters range members (a bare --n is never filtered)."""
    if args.n_range is not None:
        ns = parse_range(args.n_range)
        if keep is not None:
            ns = [n for n in ns if keep(n)]
            if not ns:
                raise UsageError(f"no admissible n in {args.n_range}")
        return ns
    if args.n is not None:
        return [args.n]
    raise UsageError("give --n or --n-range")


def _even(n: int) -> bool:
    return n % 2 == 0


# --- sumset / reps ------------------------------------------------------------


def cmd_sumset(args) -> int:
    A = ResidueSet.parse(args.n, args.set)
    if args.h < 0:
        raise UsageError("--h must be >= 0")
    result = unrestricted_sumset(A, args.h) if args.unrestricted else restricted_sumset(A, args.h)
    if args.format == "json":
        print(json.dumps({
            "n": args.n, "set": A.literal(), "h": args.h,
            "restricted": not args.unrestricted,
            "result": list(result), "size": result.card, "full": result.is_full(),
        }))
    else:
        body = result.literal() if result.card else "(empty)"
        print(f"{body} ({result.card} of {args.n})")
        print(f"equals Z_{args.n}: {'yes' if result.is_full() else 'no'}")
    return EXIT_OK


def cmd_reps(args) -> int:
    A = ResidueSet.parse(args.n, args.set)
    prof = rep_profile(A)
    residual = prof.residual()
    ms = [args.m % args.n] if args.m is not None else list(range(args.n))
    rows = [
        {"m": m, "R": prof.R[m], "R1": prof.R1[m], "R2": prof.R2[m], "R3": prof.R3[m],
         "R4": prof.R4[m], "R5": prof.R5[m], "C4": prof.C4[m], "residual": residual[m]}
        for m in ms
    ]
    total_c4 = prof.C4.total()
    if args.format == "json":
        print(json.dumps({"n": args.n, "set": A.literal(), "rows": rows,
                          "sum_C4": total_c4, "binomial": math.comb(A.card, 4)}))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(out.getvalue())
    else:
        for row in rows:
            print(" ".join(f"{k}={v}" for k, v in row.items()))
        if args.m is None:
            print(f"sum C4 = {total_c4} = C({A.card},4) = {math.comb(A.card, 4)}")
    return EXIT_OK


# --- verify / search ------------------------------------------------------------


def _common(args) -> dict:
    return {"workers": args.workers, "ceiling": args.ceiling}


def _run_verifier(vid: str, args) -> verifiers.VerificationReport:
    kw = _common(args)
    mode = args.mode
    rand = {"samples": args.samples, "seed": args.seed}
    if vid == "thm-even":
        return verifiers.verify_even_n(_ns(args, _even), **kw)
    if vid == "thm-parity":
        return verifiers.verify_parity_split(_ns(args, _even), **kw)
    if vid == "thm-odd-density":
        if args.alpha is None or args.n is None:
            raise UsageError("thm-odd-density needs --alpha and --n")
        return verifiers.verify_odd_density(args.alpha, args.n, args.samples or 1000, args.seed)
    if vid == "thmA":
        m = args.m if args.m is not None else 3
        return verifiers.verify_theorem_A(m, _ns(args, verifiers.is_prime), mode or "exhaustive", **rand, **kw)
    if vid == "thmB":
        return verifiers.verify_theorem_B(_ns(args), mode or "exhaustive", **rand, **kw)
    if vid == "thmC-d-odd":
        return verifiers.verify_theorem_C(_ns(args), **kw)
    if vid == "thmD":
        return verifiers.verify_theorem_D(_ns(args), mode or "exhaustive", **rand, **kw)
    if vid == "lemma1":
        ds = parse_range(args.d_range) if args.d_range else (3, 5, 7, 9, 11, 13)
        return verifiers.verify_lemma1(ds, args.x or (1.0, 2.5))
    if vid == "lemma2":
        return verifiers.verify_lemma2(_ns(args), mode or "exhaustive", **rand, **kw)
    if vid == "lemma4":
        return verifiers.verify_lemma4(_ns(args), mode or "exhaustive", **rand, **kw)
    if vid == "lemma5":
        return verifiers.verify_lemma5(_ns(args), **kw)
    if vid == "lemma6":
        return verifiers.verify_lemma6(_ns(args))
    if vid == "lemma20":
        return verifiers.verify_lemma20(_ns(args), mode or "exhaustive", **rand, **kw)
    if vid == "factI":
        return verifiers.verify_factI(_ns(args), mode or "exhaustive", **rand, **kw)
    if vid == "parseval":
        return verifiers.verify_parseval(_ns(args), mode or "random", **rand, **kw)
    raise UsageError(f"unknown verifier id {vid!r}; valid ids: {', '.join(VERIFIER_IDS)}")


def render_report(report: verifiers.VerificationReport, fmt: str) -> str:
    d = report.to_dict()
    if fmt == "json":
        return json.dumps(d)
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["verifier_id", "verdict", "sets_checked", "min_slack", "argmin",
                         "witness", "seed", "elapsed_s"])
        writer.writerow([
            d["verifier_id"], d["verdict"], d["sets_checked"], d["stats"]["min_slack"],
            json.dumps(d["stats"]["argmin"]), json.dumps(d["witness"]), d["seed"], d["elapsed_s"],
        ])
        return out.getvalue().rstrip("\n")
    lines = [
        f"{d['verifier_id']}: {d['verdict'].upper()}",
        f"  hypothesis: {d['params']['hypothesis']}",
        f"  params: {json.dumps({k: v for k, v in d['params'].items() if k != 'hypothesis'})}",
        f"  sets checked: {d['sets_checked']}",
        f"  min slack: {d['stats']['min_slack']} at {json.dumps(d['stats']['argmin'])}",
    ]
    for key, value in d["stats"].items():
        if key not in ("min_slack", "argmin"):
            lines.append(f"  {key}: {json.dumps(value)}")
    if d["witness"]:
        w = d["witness"]
        lines.append(f"  witness: n={w['n']} A={{{w['set']}}} ({w['detail']})")
    lines.append(f"  elapsed: {d['elapsed_s']:.3f}s")
    return "\n".join(lines)


def _emit(report, args) -> int:
    print(render_report(report, args.format or "json"))
    return EXIT_COUNTEREXAMPLE if report.verdict == verifiers.FAIL else EXIT_OK


def cmd_verify(args) -> int:
    if args.id not in VERIFIER_IDS:
        raise UsageError(f"unknown verifier id {args.id!r}; valid ids: {', '.join(VERIFIER_IDS)}")
    return _emit(_run_verifier(args.id, args), args)


def cmd_search(args) -> int:
    if args.id not in SEARCH_IDS:
        raise UsageError(f"unknown search {args.id!r}; valid: {', '.join(SEARCH_IDS)}")
    report = verifiers.search_problem1(
        _ns(args), args.mode or "exhaustive", samples=args.samples, seed=args.seed, **_common(args)
    )
    return _emit(report, args)


# --- constants ------------------------------------------------------------------


def cmd_constants(args) -> int:
    if args.which == "alpha0":
        root = exp_sums.alpha0()
        closed = exp_sums.alpha0_cardano()
        if args.format == "json":
            print(json.dumps({"alpha0": root, "cardano": closed, "abs_diff": abs(root - closed),
                              "residual": exp_sums.density_cubic(root)}))
        else:
            print(f"alpha0 = {root:.12f}")
            print(f"cardano = {closed:.12f}  |diff| = {abs(root - closed):.3e}  (agree within 1e-9)")
        return EXIT_OK
    if args.alpha is None:
        raise UsageError("constants N needs --alpha")
    value = exp_sums.cutoff_N(args.alpha)
    if args.format == "json":
        print(json.dumps({"alpha": args.alpha, "N": value}))
    else:
        print(f"N({args.alpha:g}) = {value:.12g}")
    return EXIT_OK


# --- parser ---------------------------------------------------------------------


def _add_n(p, range_ok: bool = True) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int, help="single modulus")
    if range_ok:
        g.add_argument("--n-range", help="inclusive range a..b")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zn-sumsets", description="Restricted sumsets in Z_n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sumset", help="h^A (or hA with --unrestricted); h = 0 gives {0}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True, help='residues "0,1,2" or hex bitmask "0x7"')
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--unrestricted", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_sumset)

    p = sub.add_parser("reps", help="representation counts R, R1..R5, C4")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_reps)

    for name, ids, func in (("verify", VERIFIER_IDS, cmd_verify), ("search", SEARCH_IDS, cmd_search)):
        p = sub.add_parser(name, help=f"run a {name} ({', '.join(ids)})")
        p.add_argument("id")
        _add_n(p)
        p.add_argument("--mode", choices=("exhaustive", "random"))
        p.add_argument("--samples", type=int, default=0, help="random mode: sets per n")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--m", type=int, help="thmA: number of summands")
        p.add_argument("--alpha", type=float)
        p.add_argument("--d-range", help="lemma1: odd d values in a..b")
        p.add_argument("--x", type=float, action="append", help="lemma1: cube side (repeatable)")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--ceiling", type=int, help="override the exhaustive ceiling")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.set_defaults(func=func)

    p = sub.add_parser("constants", help="alpha0 or N(alpha)")
    p.add_argument("which", choices=("alpha0", "N"))
    p.add_argument("--alpha", type=float)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_constants)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # internal failure; never leak other exit codes
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
