"""Command-line front door.

    supersix solve     --total 6 [--strategy optimal] [--format text-pyramid]
    supersix optimal   --max-total 13 [--method staged]
    supersix gap       --min-total 7 --max-total 15 [-o gaps.csv]
    supersix simulate  --total 6 --games 1000000 --seed 7
    supersix export    --max-total 15 -o bundle.json
    supersix serve     [--port 8650] [--preload bundle.json]

Exit codes: 0 success, 2 usage error, 3 above a configured cap, 4 internal
solver failure. The total cap defaults to 15; override with --max-cap or
the SUPERSIX_MAX_TOTAL environment variable.

Every command is a pure function of its flags (plus the seed), so repeated
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    ExhaustiveCapExceeded,
    NonConvergence,
    SingularSystem,
    StageAssumptionViolated,
    TotalCapExceeded,
)
from .optimize import gap_table, optimal_full_with_table
from .render import (
    gap_csv,
    pyramid_text,
    strategy_bundle,
    table_csv,
    table_json,
)
from .simulate import MatchConfig, simulate
from .solver import evaluate
from .states import max_total_cap
from .strategy import (
    FullStrategy,
    StrategyParseError,
    format_strategy,
    parse_strategy,
    uniform_full,
)

EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4

MEMORY_WARNING_TOTAL = 15  # beyond this the exact tables get very large


def _cap(args) -> int:
    return args.max_cap if args.max_cap is not None else max_total_cap()


def _check_cap(total: int, cap: int) -> None:
    if total > cap:
        raise TotalCapExceeded(f"total {total} above the cap of {cap}")
    if total > MEMORY_WARNING_TOTAL:
        print(
            f"warning: totals above {MEMORY_WARNING_TOTAL} need a lot of "
            f"memory and time",
            file=sys.stderr,
        )


def _full_strategy(spec: str, max_total: int) -> FullStrategy:
    """Parse a strategy selector: a keyword, or per-level overrides like
    '7=0101/1010/110/10/1;6=...' applied on top of optimal play."""
    if spec == "optimal":
        full, _ = optimal_full_with_table(max(max_total, 4), method="policy")
        return full
    if spec == "all-continue":
        return uniform_full(max_total, 1)
    if spec == "all-stop":
        return uniform_full(max_total, 0)
    levels = dict(
        optimal_full_with_table(max(max_total, 4), method="policy")[0].levels
    )
    for part in spec.split(";"):
        if "=" not in part:
            raise StrategyParseError(
                f"expected TOTAL=BITS in {part!r} (or a keyword: optimal, "
                f"all-continue, all-stop)"
            )
        raw_total, text = part.split("=", 1)
        total = int(raw_total)
        levels[total] = parse_strategy(text, total)
    return FullStrategy(max(levels), levels)


def cmd_solve(args) -> int:
    cap = _cap(args)
    _check_cap(args.total, cap)
    if args.total >= 4:
        full = _full_strategy(args.strategy, args.total)
    else:
        full = FullStrategy(3, {})
    table = evaluate(full, args.total)
    if args.format == "text-pyramid":
        out = f"total {args.total}\n{pyramid_text(table, args.total)}\n"
    elif args.format == "csv":
        out = table_csv(table, [args.total])
    else:
        out = table_json(table, args.total) + "\n"
    _emit(out, args.output)
    return 0


def cmd_optimal(args) -> int:
    cap = _cap(args)
    _check_cap(args.max_total, cap)
    if args.max_total < 4:
        raise TotalCapExceeded(f"no decisions below total 4, got {args.max_total}")
    full, _ = optimal_full_with_table(
        args.max_total, method=args.method, cap=cap
    )
    lines = [
        format_strategy(full.level(t)) for t in range(4, args.max_total + 1)
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_gap(args) -> int:
    cap = _cap(args)
    _check_cap(args.max_total, cap)
    records = gap_table(args.min_total, args.max_total)
    _emit(gap_csv(records), args.output)
    return 0


def cmd_simulate(args) -> int:
    cap = _cap(args)
    _check_cap(args.total, cap)
    strategy_a = _full_strategy(args.strategy_a, args.total)
    strategy_b = _full_strategy(args.strategy_b, args.total)
    config = MatchConfig(
        start_total=args.total,
        strategy_a=strategy_a,
        strategy_b=strategy_b,
        games=args.games,
        seed=args.seed,
    )
    result = simulate(config)
    payload = {
        "start_total": args.total,
        "games": result.games,
        "seed": args.seed,
        "wins_a": result.wins_a,
        "estimate": result.estimate,
        "stderr": result.stderr,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def cmd_export(args) -> int:
    cap = _cap(args)
    _check_cap(args.max_total, cap)
    full, table = optimal_full_with_table(args.max_total, method="policy")
    _emit(
        json.dumps(strategy_bundle(full, table), indent=2) + "\n", args.output
    )
    return 0


def cmd_serve(args) -> int:
    from .service import serve_forever

    serve_forever(
        port=args.port,
        max_total=args.max_total if args.max_total else None,
        preload=args.preload,
        host=args.host,
        cors_origin=args.cors_origin,
    )
    return 0


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supersix",
        description="Exact solver and advisor for the dice game Super Six",
    )
    parser.add_argument(
        "--max-cap",
        type=int,
        default=None,
        help="override the total-sticks cap (default 15 or SUPERSIX_MAX_TOTAL)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="winning probabilities for one level")
    p.add_argument("--total", type=int, required=True)
    p.add_argument("--strategy", default="optimal")
    p.add_argument(
        "--format",
        choices=["text-pyramid", "csv", "json"],
        default="text-pyramid",
    )
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("optimal", help="optimal strategy strings per level")
    p.add_argument("--max-total", type=int, required=True)
    p.add_argument(
        "--method", choices=["exhaustive", "staged", "policy"], default="staged"
    )
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("gap", help="continue-minus-stop gaps at lid 3")
    p.add_argument("--min-total", type=int, required=True)
    p.add_argument("--max-total", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("simulate", help="Monte Carlo match")
    p.add_argument("--total", type=int, required=True)
    p.add_argument("--games", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy-a", default="optimal")
    p.add_argument("--strategy-b", default="optimal")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export", help="bundle tables for the advisor service")
    p.add_argument("--max-total", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the advisor HTTP service")
    p.add_argument("--port", type=int, default=8650)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--max-total", type=int, default=None)
    p.add_argument("--preload", default=None)
    p.add_argument("--cors-origin", default="*")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TotalCapExceeded, ExhaustiveCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (StrategyParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SingularSystem, NonConvergence, StageAssumptionViolated) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
