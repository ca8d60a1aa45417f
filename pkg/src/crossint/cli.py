"""Command-line entry point: ``crossint <subcommand> ...``.

Exit codes: 0 success, 1 a verification failed, 2 budget refusal,
3 invalid input.  JSON output is one object per line; integers that can
exceed 2^53 are written as decimal strings.  Every report starts with a
header carrying the version and the resolved configuration (without the
worker count and output path, so outputs are identical across those).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .audit import LEMMA_IDS, Grid, audit_all, compare_regimes
from .constructions import KINDS, ConstructionError, ConstructionSpec, build_family, closed_size
from .constructions import size_A, size_B, size_C, size_D, size_r1, size_r2
from .covers import NoCoverExists, tau_t
from .duality import ClosureBudgetExceeded, DualContext
from .partitions import DEFAULT_BUDGET, BudgetExceeded, Family, check_budget, enumerate_partitions
from .search import exhaustive_search, seeded_search, seeded_tuple_search
from .stirling import (
    L_base,
    ThresholdError,
    min_n_for_2L,
    min_n_for_L,
    min_n_for_thm16,
    stirling,
    stirling_closed_form,
    thm16_threshold_holds,
    threshold_2L_holds,
    threshold_L_holds,
)
from .theorems import THEOREMS, OutsideEnvelope, verify_theorem

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INVALID = 0, 1, 2, 3

SIZES_COLUMNS = ["n", "k", "l", "t", "A", "B", "C", "D", "r1", "r2", "r1_swapped", "r2_swapped"]
AUDIT_COLUMNS = ["lemma", "params", "verdict", "lhs", "rhs", "note"]

UNECHOED = {"workers", "out", "func"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


COUNT_KEYS = {"S", "A", "B", "C", "D", "r1", "r2", "r1_swapped", "r2_swapped", "count", "size", "explored"}


def _big(x):
    return str(x) if isinstance(x, int) and not isinstance(x, bool) else x


def _counts_as_text(row: dict) -> dict:
    return {k: (_big(v) if k in COUNT_KEYS else v) for k, v in row.items()}


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


class Output:
    """Collects report lines and writes them to stdout or ``--out``."""

    def __init__(self, args):
        self.path = getattr(args, "out", None)
        self.buf = io.StringIO()

    def line(self, text: str = ""):
        self.buf.write(text + "\n")

    def close(self):
        data = self.buf.getvalue()
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(data)
        else:
            sys.stdout.write(data)


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in UNECHOED}


def _header(out: Output, args, fmt: str):
    head = {"version": f"crossint {__version__}", "config": _config(args)}
    if fmt == "json":
        out.line(_dumps({"header": head}))
    else:
        out.line("# " + _dumps(head))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(":", ",").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}")


# -- subcommands --------------------------------------------------------------


def cmd_stirling(args, out):
    _header(out, args, args.format)
    ks = [args.k] if args.k is not None else list(range(1, args.n + 1))
    rows = []
    for k in ks:
        v = stirling(args.n, k)
        row = {"n": args.n, "k": k, "S": v}
        if args.check and 1 <= k <= args.n:
            row["closed_form_agrees"] = stirling_closed_form(args.n, k) == v
        rows.append(row)
    _emit_rows(out, args.format, rows, ["n", "k", "S"] + (["closed_form_agrees"] if args.check else []))
    return EXIT_OK if all(r.get("closed_form_agrees", True) for r in rows) else EXIT_FAIL


def _shift(c: int) -> str:
    return "n" if c == 0 else (f"n-{c}" if c > 0 else f"n+{-c}")


def cmd_threshold(args, out):
    _header(out, args, args.format)
    kinds = {
        "L": (min_n_for_L, threshold_L_holds),
        "2L": (min_n_for_2L, threshold_2L_holds),
    }
    k, t = args.k, args.t
    if args.kind == "thm16":
        m = min_n_for_thm16(k)
        row = {"kind": "thm16", "k": k, "t": t, "min_n": m,
               "inequality": f"2^({_shift(5 - k)}) >= {k}^{2 * k}"}
        if args.n is not None:
            row["n"] = args.n
            row["holds"] = thm16_threshold_holds(args.n, k)
    else:
        mn, holds = kinds[args.kind]
        a, e = L_base(k, t), k - t + 1
        ineq = f"2^({_shift(t + 1)}) >= {a}^{e}" if args.kind == "L" else f"2^({_shift(2 * t + 2)}) >= {a}^{2 * e}"
        row = {"kind": args.kind, "k": k, "t": t, "min_n": mn(k, t), "inequality": ineq}
        if args.n is not None:
            row["n"] = args.n
            row["holds"] = holds(args.n, k, t)
    _emit_rows(out, args.format, [row], list(row))
    return EXIT_OK


def cmd_enumerate(args, out):
    try:
        count = check_budget(args.n, args.k, args.budget)
    except BudgetExceeded as exc:
        _header(out, args, "json")
        out.line(_dumps({"refused": "budget", "count": str(exc.count), "budget": str(exc.budget)}))
        print(f"S({args.n},{args.k}) = {exc.count} exceeds the budget {exc.budget}", file=sys.stderr)
        return EXIT_BUDGET
    _header(out, args, "text")
    out.line(f"n={args.n} k={args.k}")
    for p in enumerate_partitions(args.n, args.k, args.budget):
        out.line(p.to_text())
    out.line(f"# count={count}")
    return EXIT_OK


def cmd_tau(args, out):
    fam = Family.read(args.family)
    _header(out, args, "json")
    try:
        res = tau_t(fam, args.t, collect_witnesses=args.witnesses)
    except NoCoverExists as exc:
        out.line(_dumps({"tau": None, "reason": str(exc)}))
        return EXIT_OK
    row = {"tau": res.tau, "explored": _big(res.explored)}
    if args.witnesses:
        row["witnesses"] = [w.to_text() for w in res.witnesses]
    out.line(_dumps(row))
    return EXIT_OK


def cmd_construct(args, out):
    spec = ConstructionSpec(args.kind, args.n, args.k, args.t, l=args.l)
    if args.mode == "size":
        _header(out, args, "json")
        out.line(_dumps({"kind": args.kind, "size": str(closed_size(args.kind, args.n, args.k, args.t, args.l))}))
        return EXIT_OK
    fam = build_family(spec, budget=args.budget)
    _header(out, args, "text")
    out.buf.write(fam.to_text())
    if args.kind in ("A", "B", "C", "D", "HM1", "HM2"):
        expected = closed_size(args.kind, args.n, args.k, args.t, args.l)
        out.line(f"# size={len(fam)} closed_form={expected}")
        if len(fam) != expected:
            return EXIT_FAIL
    else:
        out.line(f"# size={len(fam)}")
    return EXIT_OK


def cmd_sizes(args, out):
    n, k, l, t = args.n, args.k, args.l, args.t
    row = {
        "n": n, "k": k, "l": l, "t": t,
        "A": size_A(n, k, l, t), "B": size_B(n, l, t), "C": size_C(n, k, t), "D": size_D(n, l, t),
        "r1": size_r1(n, k, l, t), "r2": size_r2(n, k, l, t),
        "r1_swapped": size_r1(n, l, k, t), "r2_swapped": size_r2(n, l, k, t),
    }
    _header(out, args, args.format)
    _emit_rows(out, args.format, [row], SIZES_COLUMNS)
    return EXIT_OK


def cmd_audit(args, out):
    lemmas = list(LEMMA_IDS) if args.lemma == "all" else [args.lemma]
    if args.lemma != "all" and args.lemma not in LEMMA_IDS:
        raise UsageError(f"unknown lemma {args.lemma!r}; choose from all, {', '.join(LEMMA_IDS)}")
    grid = Grid(args.t_max, args.k_max, args.n_extra)
    reports = audit_all(grid, args.workers, lemmas)
    _header(out, args, args.format)
    if args.format == "csv":
        w = csv.writer(out.buf, lineterminator="\n")
        w.writerow(AUDIT_COLUMNS)
        for rep in reports:
            for v in rep.verdicts:
                d = v.to_dict()
                w.writerow([d["lemma"], _dumps(d["params"]), d["verdict"], d["lhs"], d["rhs"], d.get("note", "")])
    else:
        for rep in reports:
            for v in rep.verdicts:
                out.line(_dumps(v.to_dict()))
    summary = {rep.lemma: rep.totals for rep in reports}
    if args.format == "csv":
        out.line("# " + _dumps({"totals": summary}))
    else:
        out.line(_dumps({"totals": summary}))
    return EXIT_OK if all(rep.ok for rep in reports) else EXIT_FAIL


def cmd_search(args, out):
    if args.ks:
        ks = _int_list(args.ks)
        if args.r is not None and args.r != len(ks):
            raise UsageError("--r disagrees with the length of --ks")
        res = seeded_tuple_search(
            args.n, ks, args.t, args.nontrivial, seed=args.seed, n_random=args.n_random,
            gen_max=args.gen_max, workers=args.workers, budget=args.budget,
        )
    else:
        if args.k is None or args.l is None:
            raise UsageError("--k and --l are required unless --ks is given")
        ctx = DualContext(args.n, args.k, args.l, args.t, budget=args.budget)
        if args.mode == "exhaustive":
            res = exhaustive_search(ctx, args.nontrivial, args.closure_budget)
        else:
            res = seeded_search(
                ctx, gen_max=args.gen_max, nontrivial=args.nontrivial, seed=args.seed,
                n_random=args.n_random, workers=args.workers, checkpoint=args.checkpoint,
            )
    _header(out, args, "json")
    out.line(res.to_json())
    if res.mode == "exhaustive" and not res.exhaustive:
        print("closure budget reached; the certificate is partial", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def _parse_params(items: list[str]) -> dict:
    params = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"expected key=value, got {item!r}")
        key, val = item.split("=", 1)
        key = key.strip().replace("-", "_")
        if key in ("ks", "k"):
            params["ks"] = _int_list(val)
        else:
            try:
                params[key] = int(val)
            except ValueError:
                raise UsageError(f"parameter {key} must be an integer")
    return params


def cmd_verify(args, out):
    params = _parse_params(args.params)
    opts = {"seed": args.seed, "n_random": args.n_random, "tuple_random": args.tuple_random,
            "gen_max": args.gen_max, "mode": args.mode, "workers": args.workers,
            "closure_budget": args.closure_budget}
    rep = verify_theorem(args.theorem, params, **opts)
    _header(out, args, "json")
    out.line(rep.to_json())
    return EXIT_FAIL if rep.status == "fail" else EXIT_OK


def cmd_compare_regimes(args, out):
    lo = args.n if args.n is not None else args.n_min
    hi = args.n if args.n is not None else args.n_max
    if lo is None or hi is None or lo > hi:
        raise UsageError("give --n, or --n-min <= --n-max")
    _header(out, args, "json")
    failed = False
    for n in range(lo, hi + 1):
        rep = compare_regimes(n, args.t, args.k)
        failed |= rep["status"] == "fail"
        out.line(_dumps(_counts_as_text(rep)))
    return EXIT_FAIL if failed else EXIT_OK


def _emit_rows(out: Output, fmt: str, rows: list[dict], columns: list[str]):
    if fmt == "csv":
        w = csv.writer(out.buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([r.get(c, "") for c in columns])
    elif fmt == "json":
        for r in rows:
            out.line(_dumps(_counts_as_text(r)))
    else:
        for r in rows:
            out.line(" ".join(f"{c}={r.get(c)}" for c in columns))


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="crossint", description="Exact tools for cross t-intersecting families of set partitions.")
    p.add_argument("--version", action="version", version=f"crossint {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt_default="json", formats=("json", "csv", "text")):
        sp.add_argument("--format", choices=formats, default=fmt_default)
        sp.add_argument("--out", help="write the report to this file instead of stdout")

    s = sub.add_parser("stirling", help="Stirling numbers of the second kind")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--check", action="store_true", help="compare against the closed form")
    common(s)
    s.set_defaults(func=cmd_stirling)

    s = sub.add_parser("threshold", help="least n with n >= L(k,t), 2L(k,t) or the r >= 3 bound")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--kind", choices=["L", "2L", "thm16"], default="L")
    s.add_argument("--n", type=int, help="also test this n")
    common(s)
    s.set_defaults(func=cmd_threshold)

    s = sub.add_parser("enumerate", help="list all k-partitions of [n]")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--out")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("tau", help="t-covering number of a family file")
    s.add_argument("--family", required=True, help="family file (header 'n=<n> k=<k>', one partition per line)")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--witnesses", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("construct", help="build a named family")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--l", type=int)
    s.add_argument("--mode", choices=["enumerate", "size"], default="enumerate")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("sizes", help="closed-form sizes of A, B, C, D and the products r1, r2")
    for name in ("n", "k", "l", "t"):
        s.add_argument(f"--{name}", type=int, required=True)
    common(s, "csv")
    s.set_defaults(func=cmd_sizes)

    s = sub.add_parser("audit", help="certify the technical inequalities on a finite grid")
    s.add_argument("--lemma", default="all", help="lemma id or 'all'")
    s.add_argument("--t-max", type=int, default=3)
    s.add_argument("--k-max", type=int, default=8)
    s.add_argument("--n-extra", type=int, default=10)
    s.add_argument("--workers", type=int, default=None)
    common(s, "json", ("json", "csv"))
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("search", help="extremal search over maximal pairs or tuples")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--r", type=int)
    s.add_argument("--ks", help="comma-separated uniformities for r >= 3")
    s.add_argument("--nontrivial", action="store_true")
    s.add_argument("--mode", choices=["exhaustive", "seeded"], default="seeded")
    s.add_argument("--gen-max", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n-random", type=int, default=10_000)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--closure-budget", type=int, default=None)
    s.add_argument("--checkpoint")
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", help="three-tier verification of a main result")
    s.add_argument("--theorem", choices=THEOREMS, required=True)
    s.add_argument("--params", nargs="+", required=True, metavar="KEY=VALUE",
                   help="e.g. n=10 ks=3,3 t=1 [n_struct=8]")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n-random", type=int, default=10_000)
    s.add_argument("--tuple-random", type=int, default=100)
    s.add_argument("--gen-max", type=int, default=2)
    s.add_argument("--mode", choices=["auto", "exhaustive", "seeded"], default="auto")
    s.add_argument("--closure-budget", type=int, default=None)
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("compare-regimes", help="sign of r1 - r2 at k = l = 2t+1")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--n-min", type=int)
    s.add_argument("--n-max", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_compare_regimes)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", 1) is not None and getattr(args, "budget", 1) <= 0:
        print("crossint: error: --budget must be positive", file=sys.stderr)
        return EXIT_INVALID
    out = Output(args)
    try:
        code = args.func(args, out)
    except BudgetExceeded as exc:
        print(f"crossint: budget refusal: {exc}", file=sys.stderr)
        out.line(_dumps({"refused": "budget", "count": str(exc.count), "budget": str(exc.budget)}))
        code = EXIT_BUDGET
    except ClosureBudgetExceeded as exc:
        print(f"crossint: budget refusal: {exc}", file=sys.stderr)
        code = EXIT_BUDGET
    except (UsageError, OutsideEnvelope, ConstructionError, ThresholdError, ValueError, KeyError, OSError) as exc:
        print(f"crossint: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out.close()
    return code


if __name__ == "__main__":
    sys.exit(main())
