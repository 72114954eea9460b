"""Command-line front end of the minfact tools.

Every subcommand validates its options through ``RunConfig``, calls the async tool
function and writes the result as JSON (sorted keys), CSV or SVG. Exit codes: 0 on
success, 1 when a computation or a verification suite fails, 2 on usage errors.
"""
import argparse
import asyncio
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), "../../.."))

from servers.minfact_server.src.services.verification import failed_checks, suite_names  # noqa: E402
from servers.minfact_server.src.tools import (  # noqa: E402
    enumerate_objects,
    levy_path,
    offspring_params,
    partial_partition,
    render_lamination,
    sample_factorization,
    sample_tree,
    stats_summary,
    verify_suite,
)
from servers.minfact_server.src.tools.common import is_usage_error  # noqa: E402
from shared.config import RunConfig  # noqa: E402
from shared.types import ConfigError, MinfactError  # noqa: E402
from shared.types.lamination import LAMINATION_SCHEMA  # noqa: E402
from shared.utils import setup_logger  # noqa: E402

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# the size knob each suite reads from --n
SUITE_SIZE_OPTION: Dict[str, Callable[[int], Dict[str, Any]]] = {
    "counts": lambda n: {"n_max": n},
    "lawproduct": lambda n: {"n_values": (n,)},
    "marginals": lambda n: {"n_first": n, "n_stationary": min(n, 6)},
    "symmetry": lambda n: {"n_max": n, "rotation_n_max": n},
    "bijections": lambda n: {"n_max": n},
    "bgw-formulas": lambda n: {"bound": n},
    "llt-diagnostic": lambda n: {"n": n},
    "hausdorff": lambda n: {"n": n},
}

logger = setup_logger("minfact.cli")


class UsageError(Exception):
    """Raised for option combinations argparse cannot express."""


def _add_run_options(parser: argparse.ArgumentParser, conditioning: bool = True) -> None:
    parser.add_argument("--n", type=int, help="size of the cycle (1, ..., n)")
    parser.add_argument("--seed", type=int, help="seed of the random stream")
    if conditioning:
        group = parser.add_mutually_exclusive_group()
        group.add_argument("--K", type=int, help="number of leading factors")
        group.add_argument("--c", type=float, help="use K = floor(c * sqrt(n))")


def _add_output(parser: argparse.ArgumentParser, formats: Sequence[str] = ("json",)) -> None:
    parser.add_argument("--output", type=Path, help="output file (default: stdout)")
    parser.add_argument("--format", choices=list(formats), default=formats[0])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minfact",
        description="Uniform minimal factorizations of the n-cycle: sampling, exact laws "
        "and chord laminations",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a uniform minimal factorization")
    _add_run_options(p)
    _add_output(p)

    p = sub.add_parser("sample-tree", help="sample a conditioned two-type tree")
    _add_run_options(p)
    p.add_argument("--root-shifted", action="store_true", help="use the shifted root law")
    _add_output(p, ("json", "csv"))

    p = sub.add_parser("partial", help="partition of the product of the first K factors")
    _add_run_options(p)
    p.add_argument("--route", choices=["factorization", "tree"], default="factorization")
    p.add_argument("--with-tree", action="store_true", help="include the dual tree")
    _add_output(p)

    p = sub.add_parser("render", help="chord diagram of the first K factors as SVG")
    _add_run_options(p)
    p.add_argument("--input", type=Path, help="factorization or lamination JSON to draw")
    p.add_argument("--panels", choices=["forest", "partition", "both"], default="forest")
    p.add_argument("--output", type=Path, required=True, help="SVG file to write")

    p = sub.add_parser("frames", help="one SVG per c in a sweep, k = floor(c sqrt(n))")
    _add_run_options(p, conditioning=False)
    p.add_argument("--input", type=Path, help="factorization JSON to draw")
    p.add_argument("--panels", choices=["forest", "partition", "both"], default="forest")
    p.add_argument("--c-min", type=float, required=True)
    p.add_argument("--c-max", type=float, required=True)
    p.add_argument("--count", type=int, required=True, help="number of frames")
    p.add_argument("--output", type=Path, required=True, help="directory for the frames")

    p = sub.add_parser("params", help="offspring law parameters (a, b, variance)")
    p.add_argument("--n", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--K", type=int)
    group.add_argument("--c", type=float)
    group.add_argument("--mean", type=float, help="solve a single law with this mean")
    _add_output(p)

    p = sub.add_parser("levy", help="Levy process, bridge, excursion or Brownian excursion")
    p.add_argument("--kind", choices=["process", "bridge", "excursion", "brownian"], required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--points", type=int, default=1001, help="grid points on [0, 1]")
    p.add_argument("--mode", choices=["discrete", "rejection"], default="discrete")
    p.add_argument("--n", type=int, default=10_000, help="size of the discrete object")
    p.add_argument("--root-shifted", action="store_true")
    p.add_argument("--with-lamination", action="store_true")
    _add_output(p, ("json", "csv"))

    p = sub.add_parser("stats", help="Monte-Carlo summaries over many factorizations")
    _add_run_options(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--threads", type=int, help="worker threads (default MINFACT_THREADS)")
    _add_output(p, ("csv", "json"))

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help=", ".join(suite_names()))
    p.add_argument("--n", type=int, help="size used by the suite")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--option", action="append", default=[], metavar="KEY=VALUE",
                   help="further suite option; VALUE is read as JSON when possible")
    _add_output(p)

    p = sub.add_parser("enumerate", help="count or list small objects")
    p.add_argument("--kind", choices=["factorizations", "ncp", "trees"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--n-black-max", type=int)
    p.add_argument("--n-white-max", type=int)
    p.add_argument("--root-color", choices=["black", "white"], default="black")
    p.add_argument("--dump", action="store_true", help="list the objects")
    _add_output(p)
    return parser


def _config(args: argparse.Namespace, sampling: bool = True) -> RunConfig:
    config = RunConfig.build(
        seed=getattr(args, "seed", None),
        n=getattr(args, "n", None),
        K=getattr(args, "K", None),
        c=getattr(args, "c", None),
        output=getattr(args, "output", None),
        format=getattr(args, "format", "json"),
    )
    if sampling:
        config.require_seed()
        config.require_n()
    return config


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    with open(output, "w", newline="", encoding="utf-8") as handle:
        handle.write(text)


def _checked(result: Dict[str, Any]) -> Dict[str, Any]:
    if "error" in result:
        if is_usage_error(result):
            raise UsageError(result["error"])
        raise RuntimeError(result["error"])
    return result


def _read_document(path: Path) -> Dict[str, Any]:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}") from e


def cmd_sample(args: argparse.Namespace) -> int:
    config = _config(args)
    result = _checked(asyncio.run(sample_factorization(config.n, config.seed, config.K, config.c)))
    _emit(dumps(result), config.output)
    return EXIT_OK


def cmd_sample_tree(args: argparse.Namespace) -> int:
    config = _config(args)
    result = _checked(asyncio.run(
        sample_tree(config.n, config.seed, config.K, config.c, root_shifted=args.root_shifted)
    ))
    if config.format == "csv":
        paths = result["paths"]
        rows = [(i + 1, h, b) for i, (h, b) in enumerate(zip(paths["h_bar"], paths["b_bar"]))]
        _emit(csv_text(["i", "h_bar", "b_bar"], rows), config.output)
    else:
        _emit(dumps(result), config.output)
    return EXIT_OK


def cmd_partial(args: argparse.Namespace) -> int:
    config = _config(args)
    result = _checked(asyncio.run(partial_partition(
        config.n, config.seed, config.K, config.c, route=args.route, with_tree=args.with_tree
    )))
    _emit(dumps(result), config.output)
    return EXIT_OK


def _drawing_source(args: argparse.Namespace) -> Dict[str, Any]:
    if args.input is not None:
        document = _read_document(args.input)
        if document.get("schema") == LAMINATION_SCHEMA:
            return {"lamination": document}
        return {"factorization": document.get("factorization", document)}
    config = _config(args)
    return {"n": config.n, "seed": config.seed}


def cmd_render(args: argparse.Namespace) -> int:
    RunConfig.build(n=args.n, K=args.K, c=args.c, format="svg")
    source = _drawing_source(args)
    result = _checked(asyncio.run(render_lamination(
        str(args.output.resolve()), K=args.K, c=args.c, panels=args.panels, **source
    )))
    logger.info("render", paths=result["paths"])
    return EXIT_OK


def cmd_frames(args: argparse.Namespace) -> int:
    frames = {"c_min": args.c_min, "c_max": args.c_max, "count": args.count}
    RunConfig.build(n=args.n, format="svg", frames=frames)
    source = _drawing_source(args)
    result = _checked(asyncio.run(render_lamination(
        str(args.output.resolve()), panels=args.panels, frames=frames, **source
    )))
    logger.info("frames", count=len(result["paths"]), output=str(args.output))
    return EXIT_OK


def cmd_params(args: argparse.Namespace) -> int:
    if args.mean is None:
        _config(args, sampling=False).require_n()
    result = _checked(asyncio.run(offspring_params(n=args.n, K=args.K, c=args.c, mean=args.mean)))
    _emit(dumps(result), args.output)
    return EXIT_OK


def cmd_levy(args: argparse.Namespace) -> int:
    config = RunConfig.build(seed=args.seed, n=args.n, c=args.c, output=args.output, format=args.format)
    seed = config.require_seed()
    result = _checked(asyncio.run(levy_path(
        args.kind, seed, c=args.c, points=args.points, mode=args.mode, n=args.n,
        root_shifted=args.root_shifted, with_lamination=args.with_lamination,
    )))
    if config.format == "csv":
        _emit(csv_text(["t", "value"], result["rows"]), config.output)
    else:
        _emit(dumps(result), config.output)
    return EXIT_OK


def gaps_path(output: Path) -> Path:
    """``samples.csv`` -> ``samples-gaps.csv``."""
    return output.with_name(f"{output.stem}-gaps{output.suffix or '.csv'}")


def cmd_stats(args: argparse.Namespace) -> int:
    config = _config(args)
    if config.format == "csv" and config.output is None:
        raise ConfigError("--output is required for CSV statistics (two files are written)")
    result = _checked(asyncio.run(stats_summary(
        config.n, config.seed, samples=args.samples, K=config.K, c=config.c, threads=args.threads
    )))
    if config.format == "json":
        _emit(dumps(result), config.output)
        return EXIT_OK
    columns = result["columns"]
    sample_header = list(columns["samples"])
    gap_header = list(columns["gap_histogram"])
    _emit(csv_text(sample_header, [[row[c] for c in sample_header] for row in result["samples"]]),
          config.output)
    _emit(csv_text(gap_header, [[row[c] for c in gap_header] for row in result["gap_histogram"]]),
          gaps_path(config.output))
    return EXIT_OK


def parse_option(text: str) -> Dict[str, Any]:
    """``key=value`` with the value read as JSON when it parses, else kept as a string."""
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise UsageError(f"expected KEY=VALUE, got {text!r}")
    try:
        parsed: Any = json.loads(value)
    except json.JSONDecodeError:
        parsed = value
    if isinstance(parsed, list):
        parsed = tuple(parsed)
    return {key.replace("-", "_"): parsed}


def suite_options(args: argparse.Namespace) -> Dict[str, Any]:
    options: Dict[str, Any] = {}
    if args.n is not None:
        RunConfig.build(n=args.n)
        options.update(SUITE_SIZE_OPTION.get(args.suite, lambda n: {})(args.n))
    if args.samples is not None:
        options["samples"] = args.samples
    if args.seed is not None:
        options["seed"] = args.seed
    for text in args.option:
        options.update(parse_option(text))
    return options


def cmd_verify(args: argparse.Namespace) -> int:
    result = asyncio.run(verify_suite(args.suite, suite_options(args)))
    if is_usage_error(result):
        raise UsageError(result["error"])
    _emit(dumps(result), args.output)
    if not result.get("passed", False):
        logger.error("verify_failed", suite=args.suite, failed=failed_checks(result))
        return EXIT_FAILED
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.n is not None:
        RunConfig.build(n=args.n)
    result = _checked(asyncio.run(enumerate_objects(
        args.kind, n=args.n, n_black_max=args.n_black_max, n_white_max=args.n_white_max,
        root_color=args.root_color, dump=args.dump,
    )))
    _emit(dumps(result), args.output)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "sample": cmd_sample,
    "sample-tree": cmd_sample_tree,
    "partial": cmd_partial,
    "render": cmd_render,
    "frames": cmd_frames,
    "params": cmd_params,
    "levy": cmd_levy,
    "stats": cmd_stats,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv`` and run one subcommand; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    global logger
    logger = setup_logger("minfact.cli", level=args.log_level)
    logger.info("Calling command", command=args.command)
    try:
        code = COMMANDS[args.command](args)
    except (UsageError, ConfigError) as e:
        logger.error("usage_error", command=args.command, error=str(e))
        print(f"minfact {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (MinfactError, RuntimeError, OSError) as e:
        logger.error("command_failed", command=args.command, error=str(e))
        print(f"minfact {args.command}: {e}", file=sys.stderr)
        return EXIT_FAILED
    logger.info("Command completed", command=args.command, exit_code=code)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
