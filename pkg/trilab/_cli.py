"""The ``trilab`` command line."""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from pydantic import ValidationError

from trilab._errors import (
    InconsistentIndexingError,
    RelationError,
    TopologyMismatchError,
    TrilabError,
    WindowError,
)
from trilab._generators import (
    FamilyParams,
    extract_tlr_indexing,
    generate_family,
    generate_figure3,
    generate_hexagonal,
    infer_alpha,
)
from trilab._lattice import Rational, format_rational
from trilab._render import write_svg
from trilab._settings import Settings
from trilab._skeleton import descend, find_e_configurations
from trilab._theorems import check_theorems
from trilab._tiling import (
    Tiling,
    diameter_multiset,
    perfectness,
    shared_side_pairs,
    side_conditions,
    validate,
)
from trilab._walk import (
    BAND_LIMIT,
    estimate_return_frequency,
    green_partial,
    path_count,
    reachable,
    return_probability,
    step_counts,
    stirling_term_check,
    write_stirling_csv,
)

logger = logging.getLogger(__name__)

Report = Dict[str, Any]
Outcome = Tuple[int, Report]

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2


def _state(value: str) -> Tuple[int, int]:
    try:
        i, j = (int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'i,j', got {value!r}")
    return i, j


def _get_args(args: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="trilab", description="Build and analyse tilings by equilateral triangles."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    parser.add_argument("--config", type=Path, help="path to a TOML file with a [trilab] table")
    parser.add_argument("--threads", type=int, help="upper bound on worker threads")
    parser.add_argument(
        "--summary", action="store_true", help="also print a readable summary to stderr"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", help="write a generated tiling")
    kinds = generate.add_subparsers(dest="kind", required=True)
    family = kinds.add_parser("family", help="the periodic family with parameter alpha")
    family.add_argument("--alpha", required=True, help="rational in (0, 1/2], e.g. 1/3")
    family.add_argument("--reps", type=int, default=1, help="super-cell repetitions")
    figure3 = kinds.add_parser("figure3", help="a finite tiling of a convex polygon")
    figure3.add_argument("--variant", type=int, required=True, help="1 to 5")
    hexagonal = kinds.add_parser("hexagonal", help="the unit triangle tiling")
    hexagonal.add_argument("--n", type=int, required=True, help="cell size")
    for sub in (family, figure3, hexagonal):
        sub.add_argument("-o", "--output", type=Path, help="path of the tiling JSON file")

    verify = commands.add_parser("verify", help="check that a file holds a valid tiling")
    verify.add_argument("path", type=Path, help="path to a tiling JSON file")

    analyze = commands.add_parser("analyze", help="report the structure of a tiling")
    analyze.add_argument("path", type=Path, help="path to a tiling JSON file")
    analyze.add_argument("--margin", help="inset of the analysed core")

    descent = commands.add_parser("descend", help="follow E-configurations of decreasing length")
    descent.add_argument("path", type=Path, help="path to a tiling JSON file")
    descent.add_argument("--margin", help="inset of the analysed core")
    descent.add_argument("--max-steps", type=int, help="bound on descent steps")
    descent.add_argument("-o", "--output", type=Path, help="path of the trace JSON file")

    walk = commands.add_parser("walk", help="the random walk on the even sublattice")
    walks = walk.add_subparsers(dest="walk", required=True)
    exact = walks.add_parser("exact", help="exact return probability after n steps")
    exact.add_argument("--n", type=int, required=True)
    green = walks.add_parser("green", help="partial sum of return probabilities")
    green.add_argument("--M", type=int, required=True)
    green.add_argument("--mode", choices=("exact", "float"), default="exact")
    simulation = walks.add_parser("simulate", help="Monte-Carlo return frequency")
    simulation.add_argument("--seed", type=int, required=True)
    simulation.add_argument("--trials", type=int, required=True)
    simulation.add_argument("--n", type=int, required=True)
    stirling = walks.add_parser("stirling", help="compare p(3m) with its Stirling estimates")
    stirling.add_argument("--m", type=int, required=True)
    table = walks.add_parser("table", help="write the Stirling table as CSV")
    table.add_argument("--M", type=int, required=True)
    table.add_argument("-o", "--output", type=Path, required=True)
    reach = walks.add_parser("reach", help="reachability between two states")
    reach.add_argument("--source", type=_state, default=(0, 0), help="state 'i,j'")
    reach.add_argument("--target", type=_state, required=True, help="state 'i,j'")
    reach.add_argument("--max-steps", type=int, required=True)

    render = commands.add_parser("render", help="draw a tiling as SVG")
    render.add_argument("path", type=Path, help="path to a tiling JSON file")
    render.add_argument("-o", "--output", type=Path, required=True, help="path of the SVG file")
    render.add_argument("--color-by", choices=("size", "role"), default="size")
    render.add_argument("--margin", help="inset of the analysed core for role colouring")

    return parser.parse_args(args=args)


def _settings(args: argparse.Namespace) -> Settings:
    settings = Settings.from_path(args.config) if args.config is not None else Settings()
    if args.threads is not None:
        if args.threads < 1:
            raise ValueError(f"--threads must be at least 1, got {args.threads}")
        settings = settings.copy(update={"threads": args.threads})
    return settings


def _margin(args: argparse.Namespace, settings: Settings) -> Any:
    if getattr(args, "margin", None) is None:
        return settings.margin
    margin = Rational.validate(args.margin)
    if margin < 0:
        raise ValueError(f"margin must be non-negative, got {args.margin}")
    return margin


def _diameters(t: Tiling) -> Dict[str, int]:
    counts = diameter_multiset(t)
    return {format_rational(v): counts[v] for v in sorted(counts, reverse=True)}


def run_generate(args: argparse.Namespace, settings: Settings) -> Outcome:
    if args.kind == "family":
        t = generate_family(FamilyParams(alpha=args.alpha), args.reps)
    elif args.kind == "figure3":
        t = generate_figure3(args.variant)
    else:
        t = generate_hexagonal(args.n)
    report: Report = {"tiles": len(t.tiles), "diameters": _diameters(t)}
    if args.output is not None:
        t.to_path(args.output)
        report["path"] = str(args.output)
    else:
        report["tiling"] = t.to_document()
    return EXIT_OK, report


def run_verify(args: argparse.Namespace, settings: Settings) -> Outcome:
    validity = validate(Tiling.from_path(args.path))
    return (EXIT_OK if validity.valid else EXIT_PROPERTY), validity.to_document()


def _tlr_report(t: Tiling, margin: Any) -> Report:
    try:
        indexing = extract_tlr_indexing(t, margin)
    except (TopologyMismatchError, WindowError) as exc:
        return {"outcome": "topology_mismatch", "detail": str(exc)}
    report: Report = {
        "outcome": "indexed",
        "indices": len(indexing.cells),
        "complete": len(indexing.complete_indices()),
    }
    try:
        report["alpha"] = format_rational(infer_alpha(indexing, t).alpha)
    except (RelationError, InconsistentIndexingError) as exc:
        report["outcome"] = "inconsistent"
        report["detail"] = str(exc)
    return report


def run_analyze(args: argparse.Namespace, settings: Settings) -> Outcome:
    t = Tiling.from_path(args.path)
    validity = validate(t)
    report: Report = {"validity": validity.to_document()}
    if not validity.valid:
        return EXIT_PROPERTY, report
    margin = _margin(args, settings)
    configurations = find_e_configurations(t, margin)
    report.update(
        {
            "tiles": len(t.tiles),
            "diameters": _diameters(t),
            "perfectness": perfectness(t).to_document(),
            "shared_sides": [list(pair) for pair in shared_side_pairs(t)],
            "e_configurations": [e.to_document() for e in configurations],
        }
    )
    report["theorems"] = check_theorems(t, margin, settings.max_steps).to_document()
    if t.region.is_polygon:
        report["side_conditions"] = [v.dict() for v in side_conditions(t)]
    else:
        report["tlr"] = _tlr_report(t, margin)
    return EXIT_OK, report


def run_descend(args: argparse.Namespace, settings: Settings) -> Outcome:
    t = Tiling.from_path(args.path)
    max_steps = settings.max_steps if args.max_steps is None else args.max_steps
    configurations = find_e_configurations(t, _margin(args, settings))
    if not configurations:
        return EXIT_PROPERTY, {"error": "no E-configuration", "path": str(args.path)}
    trace = descend(t, configurations[0], max_steps)
    if args.output is not None:
        trace.to_path(args.output)
    return EXIT_OK, trace.to_document()


def run_walk(args: argparse.Namespace, settings: Settings) -> Outcome:
    if args.walk == "exact":
        report: Report = {
            "n": args.n,
            "paths": path_count(args.n) if args.n <= BAND_LIMIT else None,
            "return_probability": format_rational(return_probability(args.n)),
        }
    elif args.walk == "green":
        value = green_partial(args.M, args.mode)
        shown = format_rational(value) if args.mode == "exact" else value  # type: ignore[arg-type]
        report = {"M": args.M, "mode": args.mode, "partial_sum": shown}
    elif args.walk == "simulate":
        frequency = estimate_return_frequency(
            args.seed,
            args.trials,
            args.n,
            workers=settings.threads,
            shard_trials=settings.shard_trials,
        )
        report = {
            "seed": args.seed,
            "trials": args.trials,
            "n": args.n,
            "frequency": frequency,
            "exact": float(return_probability(args.n)),
        }
    elif args.walk == "stirling":
        report = stirling_term_check(args.m).dict()
    elif args.walk == "table":
        rows = write_stirling_csv(args.output, args.M)
        report = {"M": args.M, "rows": rows, "path": str(args.output)}
    else:
        report = {
            "source": list(args.source),
            "target": list(args.target),
            "max_steps": args.max_steps,
            "reachable": reachable(args.source, args.target, args.max_steps),
            "step_counts": list(step_counts(args.source, args.target)),
        }
    return EXIT_OK, report


def run_render(args: argparse.Namespace, settings: Settings) -> Outcome:
    t = Tiling.from_path(args.path)
    polygons, fills = write_svg(
        t, args.output, args.color_by, settings.pixels_per_unit, _margin(args, settings)
    )
    return EXIT_OK, {"path": str(args.output), "polygons": polygons, "fill_classes": fills}


_COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], Outcome]] = {
    "generate": run_generate,
    "verify": run_verify,
    "analyze": run_analyze,
    "descend": run_descend,
    "walk": run_walk,
    "render": run_render,
}


def _summarize(command: str, code: int, report: Report) -> None:
    print(f"{command}: exit {code}", file=sys.stderr)
    for key, value in report.items():
        if not isinstance(value, (dict, list)):
            print(f"  {key}: {value}", file=sys.stderr)


def run(args: Optional[Sequence[str]] = None) -> int:
    """Runs one command and returns its exit code.

    The JSON report goes to standard output. Exit code 0 means success, 1 a failed property
    (an invalid tiling, no E-configuration, ...), and 2 a usage, input or output error.
    """
    try:
        parsed = _get_args(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if parsed.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        settings = _settings(parsed)
        code, report = _COMMANDS[parsed.command](parsed, settings)
    except TrilabError as exc:
        logger.error("%s", exc)
        code, report = EXIT_PROPERTY, {"error": type(exc).__name__, "detail": str(exc)}
    except (OSError, ValidationError, ValueError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    print(json.dumps(report, indent=2))
    if parsed.summary:
        _summarize(parsed.command, code, report)
    return code


def main() -> None:
    """Entry point of the ``trilab`` console script."""
    sys.exit(run())
