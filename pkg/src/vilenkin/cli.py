"""Command-line driver.

    vilenkin verify kernels --group "m=2,3,4;L=5"
    vilenkin verify theorem --id 1 --weights pow:-0.5 --f lip:0.5 --p 2
    vilenkin rates --alpha 0.5 --weights const --L 14 --p 1
    vilenkin transform --in f.json --out spectrum.json

Exit codes: 0 pass, 1 failed assertion, 2 usage or configuration error,
3 I/O failure.
"""

import argparse
import sys
from typing import List, Optional, Sequence, Tuple

from vilenkin.analysis.spectral import GridFunction, analyze, synthesize
from vilenkin.errors import ConfigError, VilenkinError
from vilenkin.graphs.rates_graph import run_rates
from vilenkin.graphs.verify_graph import (
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_PASS,
    run_verify,
)
from vilenkin.tools import serialize
from vilenkin.tools.config import (
    THEOREM_IDS,
    RunConfig,
    configure_logging,
    get_settings,
)
from vilenkin.tools.report import status, write_atomic

__all__ = [
    "RunConfig",
    "build_parser",
    "cmd_rates",
    "cmd_transform",
    "cmd_verify",
    "config_from_args",
    "main",
]

VERIFY_GROUP = "m=2;L=6"
RATES_GROUP = "m=2;L=14"


def _p_values(raw: Optional[List[str]]) -> Tuple[float, ...]:
    if not raw:
        return (1.0,)
    try:
        return tuple(float(v) for chunk in raw for v in chunk.split(",") if v.strip())
    except ValueError as e:
        raise ConfigError(f"bad --p value: {e}") from e


def _common(parser: argparse.ArgumentParser, group_default: str) -> None:
    parser.add_argument("--group", default=group_default, help="m=<r0>,<r1>,...;L=<n>")
    parser.add_argument("--L", dest="level", type=int, help="truncation level override")
    parser.add_argument(
        "--weights",
        default="const",
        help="const | pow:<gamma> | logpow:<beta> | custom:<q0>,<q1>,...",
    )
    parser.add_argument(
        "--p", action="append", help="L^p exponent in [1, 64]; repeat or comma-separate"
    )
    parser.add_argument("--out", dest="output", help="output path (default stdout)")
    parser.add_argument("--workers", type=int, help="suite fan-out concurrency")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ...")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vilenkin",
        description="Summability means and approximation bounds on Vilenkin groups",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=["kernels", "theorem", "norlund", "probe"])
    _common(verify, VERIFY_GROUP)
    verify.add_argument("--id", dest="theorem", default="1", choices=THEOREM_IDS)
    verify.add_argument(
        "--f",
        dest="functions",
        action="append",
        help="random:<seed> | lip:<alpha> | char:<k>; repeatable",
    )
    verify.add_argument("--format", dest="fmt", default="csv", choices=["csv", "json"])

    rates = commands.add_parser("rates", help="fit the convergence rate of T_{M_N}")
    _common(rates, RATES_GROUP)
    rates.add_argument("--alpha", type=float, default=0.5)
    rates.add_argument(
        "--tol", type=float, help="slope tolerance (0.15, or 0.2 when alpha > 1)"
    )
    rates.add_argument("--expect", type=float, help="target slope override")

    transform = commands.add_parser(
        "transform", help="analyze or synthesize a document"
    )
    transform.add_argument("--in", dest="input", required=True)
    transform.add_argument("--out", dest="output")
    transform.add_argument("--method", default="fast", choices=["fast", "naive"])
    transform.add_argument("--log-level", help="DEBUG, INFO, WARNING, ...")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "rates":
        tol = args.tol if args.tol is not None else (0.2 if args.alpha > 1 else 0.15)
        return RunConfig(
            command="rates",
            group=args.group,
            weights=args.weights,
            p_values=_p_values(args.p),
            level=args.level,
            output=args.output,
            alpha=args.alpha,
            tol=tol,
            expect=args.expect,
            workers=args.workers,
        )
    return RunConfig(
        command=args.suite,
        group=args.group,
        weights=args.weights,
        p_values=_p_values(args.p),
        theorem=args.theorem,
        functions=tuple(args.functions or ("random:1",)),
        level=args.level,
        output=args.output,
        fmt=args.fmt,
        workers=args.workers,
    )


def cmd_verify(config: RunConfig) -> int:
    """Run a verification suite through the verify pipeline."""
    return run_verify(config)


def cmd_rates(config: RunConfig) -> int:
    """Fit convergence rates through the rates pipeline."""
    return run_rates(config)


def cmd_transform(args: argparse.Namespace) -> int:
    """Grid documents are analyzed, spectrum documents synthesized."""
    max_grid = get_settings().max_grid
    try:
        obj = serialize.load(args.input, max_grid=max_grid)
    except OSError as e:
        status(f"❌ {e}")
        return EXIT_IO
    except VilenkinError as e:
        status(f"❌ {e}")
        return EXIT_CONFIG
    if isinstance(obj, GridFunction):
        text = serialize.dumps(analyze(obj, args.method))
    else:
        text = serialize.dumps(synthesize(obj))
    if args.output is None:
        sys.stdout.write(text)
        return EXIT_PASS
    try:
        write_atomic(args.output, text)
    except OSError as e:
        status(f"❌ {e}")
        return EXIT_IO
    return EXIT_PASS


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        configure_logging(args.log_level)
    except VilenkinError as e:
        status(f"❌ {e}")
        return EXIT_CONFIG
    if args.command == "transform":
        return cmd_transform(args)
    try:
        config = config_from_args(args)
    except VilenkinError as e:
        status(f"❌ {e}")
        return EXIT_CONFIG
    if args.command == "rates":
        return cmd_rates(config)
    return cmd_verify(config)


if __name__ == "__main__":
    sys.exit(main())
