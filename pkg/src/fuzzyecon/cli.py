"""Command-line front end.

One binary, five subcommand families::

    fuzzyecon fuzzy eval <file> [--alpha A ...]
    fuzzyecon preference check <file>
    fuzzyecon game solve <file>
    fuzzyecon economy solve <file> [--method ascent|bisect|closed-form]
    fuzzyecon economy verify <file> --price JSON --alloc JSON
    fuzzyecon oracle demand <file> --resolution R --price JSON [--agent N]
    fuzzyecon oracle equilibrium <file> --resolution R

Exit codes: 0 success/converged, 2 not converged (or verification failed),
3 invalid input.  ``--output`` writes a machine-readable JSON record with
stable keys; identical inputs and seed produce byte-identical records.
The environment variable ``FUZZYECON_TOL`` overrides the default
equilibrium tolerance when ``--tol`` is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .config import (
    ConfigError,
    load_economy,
    load_fuzzy_number,
    load_game,
    load_relation,
)
from .economy import (
    DEMAND_TOL,
    EQUILIBRIUM_TOL,
    ConvergenceError,
    SolverConfig,
    UnsupportedShapeError,
    solve_equilibrium,
    verify_equilibrium,
)
from .fuzzy import DEFAULT_TOL
from .game import find_mixed_nash_2p, find_pure_nash, verify_nash
from .oracle import GridSizeError, GridSpec, grid_demand, grid_equilibrium
from .preference import build_utility, is_consistent, quotient

EXIT_OK = 0
EXIT_NOT_CONVERGED = 2
EXIT_INVALID = 3

TOL_ENV_VAR = "FUZZYECON_TOL"


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _fmt_vec(vec) -> str:
    return "[" + ", ".join(_fmt(float(v)) for v in vec) + "]"


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return EQUILIBRIUM_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise ConfigError(f"invalid {TOL_ENV_VAR} value: {raw!r}") from exc
    if tol <= 0:
        raise ConfigError(f"{TOL_ENV_VAR} must be positive, got {raw!r}")
    return tol


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyecon",
        description="Fuzzy-number calculus, preference relations, fuzzy games "
        "and competitive equilibria for exchange economies.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="family", required=True)

    def common(p):
        p.add_argument("--output", help="write a machine-readable JSON record to this path")
        p.add_argument("--format", choices=("text", "json"), default="text",
                       help="stdout format (default: text)")
        p.add_argument("--seed", type=int, default=0,
                       help="recorded in machine output; solvers are deterministic")

    fuzzy = sub.add_parser("fuzzy", help="fuzzy-number utilities").add_subparsers(
        dest="command", required=True)
    p = fuzzy.add_parser("eval", help="expected value and alpha-cuts of a fuzzy number")
    p.add_argument("file")
    p.add_argument("--alpha", type=float, action="append", default=[],
                   help="report the cut at this alpha (repeatable)")
    common(p)

    pref = sub.add_parser("preference", help="fuzzy preference relations").add_subparsers(
        dest="command", required=True)
    p = pref.add_parser("check", help="consistency verdict, quotient and utility ranks")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common(p)

    game = sub.add_parser("game", help="fuzzy non-cooperative games").add_subparsers(
        dest="command", required=True)
    p = game.add_parser("solve", help="pure equilibria; mixed equilibria for 2 players")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common(p)

    econ = sub.add_parser("economy", help="exchange-economy equilibria").add_subparsers(
        dest="command", required=True)
    p = econ.add_parser("solve", help="compute a competitive equilibrium")
    p.add_argument("file")
    p.add_argument("--method", choices=("ascent", "bisect", "closed-form"), default="ascent")
    p.add_argument("--tol", type=float, default=None,
                   help=f"clearing/complementarity tolerance (default {EQUILIBRIUM_TOL}, "
                        f"or ${TOL_ENV_VAR})")
    p.add_argument("--max-iter", type=int, default=100_000)
    common(p)
    p = econ.add_parser("verify", help="check a candidate price/allocation pair")
    p.add_argument("file")
    p.add_argument("--price", required=True, help="JSON list, e.g. '[0.6, 0.4]'")
    p.add_argument("--alloc", required=True, help="JSON matrix, e.g. '[[1,2],[3,1]]'")
    p.add_argument("--tol", type=float, default=None)
    common(p)

    oracle = sub.add_parser("oracle", help="brute-force grid checks").add_subparsers(
        dest="command", required=True)
    p = oracle.add_parser("demand", help="grid-maximize one agent's utility on the budget set")
    p.add_argument("file")
    p.add_argument("--resolution", type=float, required=True)
    p.add_argument("--price", required=True, help="JSON list")
    p.add_argument("--agent", type=int, default=0)
    p.add_argument("--bounds", help="JSON list of per-good upper bounds")
    common(p)
    p = oracle.add_parser("equilibrium", help="scan two-good prices for clearing violations")
    p.add_argument("file")
    p.add_argument("--resolution", type=float, required=True)
    common(p)

    return parser


def _parse_json_arg(raw: str, what: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON for {what}: {exc.msg}") from exc


def _run_fuzzy_eval(args):
    f = load_fuzzy_number(args.file)
    cuts = {}
    for alpha in args.alpha:
        cuts[_fmt(alpha)] = list(f.alpha_cut(alpha))
    lines = [
        f"expected value: {_fmt(f.expected_value())}",
        f"support (alpha=0): {_fmt_vec(f.support())}",
        f"core (alpha=1): {_fmt_vec(f.core())}",
    ]
    for key, cut in cuts.items():
        lines.append(f"cut at alpha={key}: {_fmt_vec(cut)}")
    record = {
        "expected_value": f.expected_value(),
        "support": list(f.support()),
        "core": list(f.core()),
        "cuts": cuts,
    }
    return EXIT_OK, lines, record


def _run_preference_check(args):
    rel = load_relation(args.file)
    ok, witness = is_consistent(rel, args.tol)
    if not ok:
        x, y, z = witness
        e = rel.elements
        lines = [
            f"relation over {len(rel)} elements: inconsistent",
            f"witness: {e[x]} >= {e[y]} and {e[y]} >= {e[z]} but not {e[x]} >= {e[z]}",
        ]
        record = {"consistent": False, "witness": list(witness),
                  "witness_labels": [e[x], e[y], e[z]]}
        return EXIT_OK, lines, record
    q = quotient(rel, args.tol)
    ranks = build_utility(rel, args.tol)
    classes_txt = " < ".join(
        "[" + ", ".join(rel.elements[i] for i in cls) + "]" for cls in q.classes
    )
    lines = [
        f"relation over {len(rel)} elements: consistent",
        f"indifference classes (ascending): {classes_txt}",
        "utility ranks: " + ", ".join(
            f"{rel.elements[i]}={_fmt(r.expected_value())}" for i, r in enumerate(ranks)
        ),
    ]
    record = {
        "consistent": True,
        "classes": [list(cls) for cls in q.classes],
        "utility_ranks": [r.expected_value() for r in ranks],
    }
    return EXIT_OK, lines, record


def _run_game_solve(args):
    game = load_game(args.file)
    pure = find_pure_nash(game, args.tol)
    lines = [f"players: {game.n_players}, strategies: {list(game.strategy_counts)}"]
    if pure:
        lines.append("pure equilibria: " + "; ".join(str(list(s)) for s in pure))
    else:
        lines.append("pure equilibria: none")
    record = {
        "strategy_counts": list(game.strategy_counts),
        "pure_equilibria": [list(s) for s in pure],
        "mixed_equilibria": [],
    }
    if game.n_players == 2:
        mixed = find_mixed_nash_2p(game, args.tol)
        for prof in mixed:
            report = verify_nash(game, prof, args.tol)
            lines.append(
                "mixed equilibrium: "
                + " / ".join(_fmt_vec(vec) for vec in prof.strategies)
                + f"  (max deviation gain {_fmt(max(report.best_deviation_gains))})"
            )
            record["mixed_equilibria"].append({
                "strategies": [list(vec) for vec in prof.strategies],
                "payoffs": list(report.payoffs),
                "deviation_gains": list(report.best_deviation_gains),
                "is_equilibrium": report.is_equilibrium,
            })
        if not mixed:
            lines.append("mixed equilibria: none found")
    else:
        lines.append("mixed equilibria: 2-player games only")
    return EXIT_OK, lines, record


def render_report(report) -> tuple[list[str], dict]:
    """Human-readable lines plus the machine record for an equilibrium report."""
    tol = report.tol

    def verdict(ok):
        return "PASS" if ok else "FAIL"

    gap = max(report.optimality_gaps)
    budget = max(report.budget_residuals)
    lines = [
        f"method: {report.method}    iterations: {report.iterations}    "
        f"converged: {'yes' if report.converged else 'no'}",
        f"price p = {_fmt_vec(report.p)}",
        "allocation x:",
    ]
    for i, row in enumerate(report.x):
        lines.append(f"  agent {i}: {_fmt_vec(row)}")
    lines.append(f"excess demand z = {_fmt_vec(report.z)}")
    lines.append(
        f"condition (1) agent optimality: max gap {_fmt(gap)}, "
        f"max budget residual {_fmt(budget)}  "
        f"{verdict(gap <= tol and budget <= tol)}"
    )
    lines.append(
        f"condition (2) price normalization: residual {_fmt(report.simplex_residual)}  "
        f"{verdict(report.simplex_residual <= tol)}"
    )
    lines.append(
        f"condition (3) clearing/complementarity: max excess {_fmt(report.max_excess)}, "
        f"<p,z> = {_fmt(report.complementarity)}  "
        f"{verdict(report.max_excess <= tol and abs(report.complementarity) <= tol)}"
    )
    for price, gap_value in report.corner_checks:
        if gap_value != 0:
            sign = ">" if gap_value > 0 else "<"
            lines.append(
                f"corner p = {_fmt_vec(price)}: z1 - z2 = {_fmt(gap_value)} "
                f"({sign} 0, corner ruled out)"
            )
        else:
            lines.append(
                f"corner p = {_fmt_vec(price)}: z1 - z2 = 0 (corner equilibrium candidate)"
            )
    return lines, report.to_dict()


def _run_economy_solve(args):
    econ = load_economy(args.file)
    tol = args.tol if args.tol is not None else _default_tol()
    cfg = SolverConfig(method=args.method, tol=tol, max_iter=args.max_iter, seed=args.seed)
    report = solve_equilibrium(econ, cfg)
    lines, record = render_report(report)
    code = EXIT_OK if report.converged else EXIT_NOT_CONVERGED
    return code, lines, record


def _run_economy_verify(args):
    econ = load_economy(args.file)
    tol = args.tol if args.tol is not None else _default_tol()
    price = _parse_json_arg(args.price, "--price")
    alloc = _parse_json_arg(args.alloc, "--alloc")
    try:
        report = verify_equilibrium(econ, price, alloc, tol=tol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    lines, record = render_report(report)
    code = EXIT_OK if report.converged else EXIT_NOT_CONVERGED
    return code, lines, record


def _run_oracle_demand(args):
    econ = load_economy(args.file)
    if not 0 <= args.agent < econ.agents:
        raise ConfigError(f"--agent {args.agent} out of range for {econ.agents} agents")
    price = np.asarray(_parse_json_arg(args.price, "--price"), dtype=float)
    bounds = None
    if args.bounds is not None:
        bounds = tuple(float(b) for b in _parse_json_arg(args.bounds, "--bounds"))
    try:
        grid = GridSpec(args.resolution, bounds)
        point, value = grid_demand(econ.utilities[args.agent], econ.w[args.agent], price, grid)
    except (ValueError, GridSizeError) as exc:
        raise ConfigError(str(exc)) from exc
    lines = [
        f"agent {args.agent} grid demand at p = {_fmt_vec(price)} "
        f"(resolution {_fmt(args.resolution)}):",
        f"  best point: {_fmt_vec(point)}",
        f"  expected utility: {_fmt(value)}",
    ]
    record = {"agent": args.agent, "price": [float(v) for v in price],
              "resolution": args.resolution, "best_point": [float(v) for v in point],
              "best_value": value}
    return EXIT_OK, lines, record


def _run_oracle_equilibrium(args):
    econ = load_economy(args.file)
    try:
        price, score = grid_equilibrium(econ, args.resolution)
    except (ValueError, UnsupportedShapeError) as exc:
        raise ConfigError(str(exc)) from exc
    lines = [
        f"price scan at resolution {_fmt(args.resolution)}:",
        f"  best price: {_fmt_vec(price)}",
        f"  clearing violation: {_fmt(score)}",
    ]
    record = {"resolution": args.resolution, "best_price": [float(v) for v in price],
              "violation": score}
    return EXIT_OK, lines, record


_HANDLERS = {
    ("fuzzy", "eval"): _run_fuzzy_eval,
    ("preference", "check"): _run_preference_check,
    ("game", "solve"): _run_game_solve,
    ("economy", "solve"): _run_economy_solve,
    ("economy", "verify"): _run_economy_verify,
    ("oracle", "demand"): _run_oracle_demand,
    ("oracle", "equilibrium"): _run_oracle_equilibrium,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[(args.family, args.command)]
    try:
        code, lines, result = handler(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except (ValueError, OSError) as exc:
        # covers ConfigError, shape/grid errors and unreadable files
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    record = {
        "command": f"{args.family} {args.command}",
        "input": getattr(args, "file", None),
        "seed": getattr(args, "seed", 0),
        "version": __version__,
        "result": result,
    }
    payload = json.dumps(record, indent=2, sort_keys=True) + "\n"
    if args.format == "json":
        sys.stdout.write(payload)
    else:
        for line in lines:
            print(line)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
