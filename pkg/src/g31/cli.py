"""Command-line front end: ``g31 <subcommand> ...``.

Exit status: 0 success, 1 usage error, 2 budget refusal, 3 failed verification.
Global flags may also come from the environment (``G31_FORMAT``, ``G31_OUT``,
``G31_SEED``, ``G31_THREADS``, ``G31_BUDGET``); an explicit flag wins.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import bounds
from .combinat import binomial, c_fraction
from .construction import build_construction, predicted_upper_bound
from .graph import (VertexSubset, complement_accounting, count_induced_edges, graph_stats, read_subset,
                    write_subset)
from .independence import decompose, independence_number
from .solver import (BudgetRefusal, DEFAULT_ENUMERATION_LIMIT, SearchConfig, SolveResult, branch_and_bound_r,
                     brute_force_r, local_search_r, random_start)

ENV_PREFIX = "G31_"
EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_FAILED = 0, 1, 2, 3

SWEEP_COLUMNS = ["n", "l", "c_n", "value", "direction", "validity", "source", "elapsed_ms"]
BOUND_COLUMNS = ["source", "direction", "validity", "value", "exact_value"]
PRINTED_THRESHOLD = "0.486"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env(name: str, cast, default=None):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise UsageError(f"bad {ENV_PREFIX}{name}={raw!r}") from exc


def _int_range(text: str) -> list[int]:
    """'5..7' or '5,6,9' or '5'."""
    out: list[int] = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def l_from_c(n: int, c: Fraction) -> int:
    """Nearest integer to (1-c) C(n,3), ties towards the smaller l."""
    x = (1 - c) * binomial(n, 3)
    lo = math.floor(x)
    return lo if x - lo <= Fraction(1, 2) else lo + 1


# --- output -------------------------------------------------------------------

def _emit(args, payload, rows: Optional[list[dict]] = None, columns: Optional[list[str]] = None) -> None:
    if args.format == "csv" and rows is not None:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(row.get(k)) for k in columns})
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def _config(args, **extra) -> SearchConfig:
    return SearchConfig(
        node_budget=extra.get("node_budget"),
        time_budget=getattr(args, "time_budget", None),
        thread_count=args.threads,
        seed=args.seed,
        restarts=getattr(args, "restarts", 1),
        symmetry=not getattr(args, "no_symmetry", False),
    )


def _solve_exact(args, n: int, l: int) -> SolveResult:
    if args.method == "oracle":
        limit = args.budget if args.budget is not None else DEFAULT_ENUMERATION_LIMIT
        return brute_force_r(n, l, limit=limit)
    return branch_and_bound_r(n, l, _config(args, node_budget=args.budget))


def _maybe_write_witness(args, res: SolveResult) -> None:
    if getattr(args, "witness_out", None):
        write_subset(args.witness_out, res.witness, args.witness_format)


# --- subcommands --------------------------------------------------------------

def cmd_stats(args) -> int:
    _emit(args, graph_stats(args.n).as_dict())
    return EXIT_OK


def cmd_exact(args) -> int:
    res = _solve_exact(args, args.n, args.l)
    _maybe_write_witness(args, res)
    _emit(args, res.as_dict())
    return EXIT_OK


def cmd_heuristic(args) -> int:
    res = local_search_r(args.n, args.l, _config(args, node_budget=args.budget))
    _maybe_write_witness(args, res)
    _emit(args, res.as_dict())
    return EXIT_OK


def cmd_construct(args) -> int:
    plan = build_construction(args.n, args.l, materialize=not args.plan_only)
    if args.set_out and plan.trimmed_set is not None:
        write_subset(args.set_out, plan.trimmed_set, args.witness_format)
    _emit(args, plan.as_dict(include_set=args.with_set))
    return EXIT_OK


def _bound_rows(n: int, l: int, h: float, alpha: Optional[int]) -> list[dict]:
    rows = [e.as_dict() for e in bounds.all_estimates(n, l, h, alpha)]
    exact_upper = predicted_upper_bound(n, l)[0] if l >= 1 else None
    if exact_upper is not None:
        rows.append(exact_upper.as_dict())
    return rows


def cmd_bounds(args) -> int:
    rows = _bound_rows(args.n, args.l, args.h, args.alpha)
    payload = {"n": args.n, "l": args.l, "c_n": float(c_fraction(args.n, args.l)), "estimates": rows}
    _emit(args, payload, rows, BOUND_COLUMNS)
    return EXIT_OK


def cmd_alpha(args) -> int:
    res = independence_number(args.n, budget=args.time_budget, node_budget=args.budget)
    _emit(args, res.as_dict())
    return EXIT_OK


def _load_subset(args) -> VertexSubset:
    if args.subset:
        try:
            return read_subset(args.subset, args.n)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read subset {args.subset}: {exc}") from exc
    raise UsageError("a subset file is required")


def cmd_decompose(args) -> int:
    U = _load_subset(args)
    dec = decompose(U)
    _emit(args, {"n": U.n, "size": len(U), **dec.as_dict()})
    return EXIT_OK if dec.valid else EXIT_FAILED


def _verify_one(W: VertexSubset) -> dict:
    rep = complement_accounting(W)
    direct = count_induced_edges(W, "direct")
    dense = count_induced_edges(W, "dense")
    lower = bounds.eval_T3(4, W.n, len(W))
    checks = {
        "identity": rep.identity_holds,
        "inequality": rep.inequality_holds,
        "paths_agree": direct == dense == rep.edges_within_W,
        "lower_bound": lower.value <= direct,
    }
    return {**rep.as_dict(), "t34_lower": float(lower.value), "checks": checks, "ok": all(checks.values())}


def cmd_verify(args) -> int:
    subsets: list[VertexSubset] = []
    if args.subset:
        subsets.append(_load_subset(args))
    if args.random:
        if args.n is None:
            raise UsageError("--random needs --n")
        N = binomial(args.n, 3)
        rng = np.random.Generator(np.random.PCG64(args.seed))
        for _ in range(args.random):
            size = int(rng.integers(0, N + 1))
            subsets.append(VertexSubset(args.n, random_start(N, size, int(rng.integers(2**62)))))
    if not subsets:
        raise UsageError("nothing to verify: give --subset and/or --random K")
    reports = [_verify_one(W) for W in subsets]
    ok = all(r["ok"] for r in reports)
    _emit(args, {"ok": ok, "count": len(reports), "reports": reports})
    return EXIT_OK if ok else EXIT_FAILED


def _sweep_rows(args) -> Iterable[dict]:
    methods = [m for m in args.methods.split(",") if m]
    unknown = set(methods) - {"oracle", "bb", "heuristic", "construction", "bounds"}
    if unknown:
        raise UsageError(f"unknown sweep methods {sorted(unknown)}")
    for n in _int_range(args.n):
        N = binomial(n, 3)
        if args.l:
            ls = _int_range(args.l)
        else:
            ls = [l_from_c(n, Fraction(c)) for c in args.c.split(",") if c]
        for l in ls:
            if not 0 <= l <= N:
                raise UsageError(f"l={l} outside 0..{N} for n={n}")
            base = {"n": n, "l": l, "c_n": float(c_fraction(n, l))}
            for method in methods:
                t0 = time.perf_counter()
                if method == "bounds":
                    for est in _bound_rows(n, l, 0.0, None):
                        yield {**base, "value": est["value"], "direction": est["direction"],
                               "validity": est["validity"], "source": est["source"],
                               "elapsed_ms": 1000 * (time.perf_counter() - t0)}
                    continue
                if method == "construction":
                    if l == 0:
                        value = 0
                    else:
                        plan = build_construction(n, l, materialize=n <= 64)
                        value = plan.actual_edges if plan.actual_edges is not None else plan.predicted_edges
                    yield {**base, "value": value, "direction": "upper", "validity": bounds.EXACT,
                           "source": "construction", "elapsed_ms": 1000 * (time.perf_counter() - t0)}
                    continue
                try:
                    if method == "oracle":
                        res = brute_force_r(n, l, limit=args.budget or DEFAULT_ENUMERATION_LIMIT)
                    elif method == "bb":
                        res = branch_and_bound_r(n, l, _config(args, node_budget=args.budget))
                    else:
                        res = local_search_r(n, l, _config(args, node_budget=args.budget))
                except BudgetRefusal:
                    yield {**base, "value": None, "direction": None, "validity": None,
                           "source": f"{method}:refused", "elapsed_ms": 1000 * (time.perf_counter() - t0)}
                    continue
                direction = "upper" if res.status == "heuristic-upper" else "exact"
                yield {**base, "value": res.min_edges, "direction": direction, "validity": bounds.EXACT,
                       "source": f"{method}:{res.status}", "elapsed_ms": 1000 * (time.perf_counter() - t0)}


def cmd_sweep(args) -> int:
    if bool(args.l) == bool(args.c):
        raise UsageError("give exactly one of --l and --c")
    rows = list(_sweep_rows(args))
    _emit(args, {"rows": rows}, rows, SWEEP_COLUMNS)
    return EXIT_OK


def cmd_crossover(args) -> int:
    normalized = bounds.crossover("normalized")
    alt = bounds.crossover("t34-normalized")
    payload = {
        "normalized_threshold": normalized.threshold,
        "paper_printed": PRINTED_THRESHOLD,
        "agrees_with_printed": f"{normalized.threshold:.6f}".startswith(PRINTED_THRESHOLD),
        "residual": normalized.residual,
        "t34_normalized_threshold": alt.threshold,
    }
    if args.n is not None:
        c = Fraction(args.c) if args.c is not None else None
        payload["literal"] = bounds.crossover("literal", args.n, c).as_dict()
    _emit(args, payload)
    return EXIT_OK


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="node budget (bb, heuristic, alpha) or enumeration limit (oracle)")

    parser = _Parser(prog="g31", description="Induced-edge minimisation on G(n,3,1).", parents=[common])
    parser.add_argument("--version", action="version", version="g31 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        p.set_defaults(func=func)
        return p

    def witness_flags(p):
        p.add_argument("--witness-out", help="write the witness subset to this file")
        p.add_argument("--witness-format", choices=["json", "hex"], default="json")

    p = add("stats", cmd_stats, "vertex/degree/edge counts")
    p.add_argument("n", type=int)

    p = add("exact", cmd_exact, "exact r(l)")
    p.add_argument("n", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--method", choices=["oracle", "bb"], default="bb")
    p.add_argument("--time-budget", type=float, default=None)
    p.add_argument("--no-symmetry", action="store_true")
    witness_flags(p)

    p = add("heuristic", cmd_heuristic, "local-search upper witness for r(l)")
    p.add_argument("n", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--restarts", type=int, default=1)
    witness_flags(p)

    p = add("construct", cmd_construct, "block construction for (n, l)")
    p.add_argument("n", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--with-set", action="store_true", help="include the vertex set in the output")
    p.add_argument("--set-out", help="write the vertex set to this subset file")
    p.add_argument("--plan-only", action="store_true", help="formula only, no enumeration")
    p.add_argument("--witness-format", choices=["json", "hex"], default="json")

    p = add("bounds", cmd_bounds, "table of bound estimates for (n, l)")
    p.add_argument("n", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--h", type=float, default=0.0, help="o(1) slack for asymptotic lower bounds")
    p.add_argument("--alpha", type=int, default=None, help="exact alpha (default: n)")

    p = add("alpha", cmd_alpha, "independence number")
    p.add_argument("n", type=int)
    p.add_argument("--time-budget", type=float, default=None)

    p = add("decompose", cmd_decompose, "split an independent set into type1/2/3 families")
    p.add_argument("subset", help="subset file (JSON triples or {n, hex})")
    p.add_argument("--n", type=int, default=None)

    p = add("verify", cmd_verify, "check edge accounting and lower bound on subsets")
    p.add_argument("--subset", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--random", type=int, default=0, metavar="K", help="also check K random subsets")

    p = add("sweep", cmd_sweep, "batch table over n and l")
    p.add_argument("--n", required=True, help="e.g. 5..7 or 5,6")
    p.add_argument("--l", default=None, help="absolute sizes, e.g. 1..10")
    p.add_argument("--c", default=None, help="complement densities, e.g. 0,0.25,0.5")
    p.add_argument("--methods", default="bb,construction,bounds")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--time-budget", type=float, default=None)
    p.add_argument("--no-symmetry", action="store_true")

    p = add("crossover", cmd_crossover, "threshold where the dense lower bound beats the quadratic one")
    p.add_argument("--n", type=int, default=None, help="also evaluate the literal comparison at n")
    p.add_argument("--c", default=None)
    return parser


def _resolve_globals(args) -> None:
    args.format = getattr(args, "format", None) or _env("FORMAT", str, "json")
    if args.format not in ("json", "csv"):
        raise UsageError(f"unknown format {args.format!r}")
    args.out = getattr(args, "out", None) or _env("OUT", str)
    args.seed = getattr(args, "seed", None)
    if args.seed is None:
        args.seed = _env("SEED", int, 0)
    args.threads = getattr(args, "threads", None) or _env("THREADS", int, 1)
    args.budget = getattr(args, "budget", None)
    if args.budget is None:
        args.budget = _env("BUDGET", int)
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _resolve_globals(args)
        return args.func(args)
    except UsageError as exc:
        print(f"g31: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetRefusal as exc:
        print(json.dumps({"error": "budget", "message": str(exc), "size": exc.size, "limit": exc.limit}),
              file=sys.stderr)
        return EXIT_REFUSED
    except ValueError as exc:
        print(f"g31: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
