"""
crossmin command line.

    python src/cli/crossmin.py prep GRAPH [--out PATH]
    python src/cli/crossmin.py layout GRAPH --out DRAWING [--svg PATH]
    python src/cli/crossmin.py minimize GRAPH DRAWING --out DRAWING [--report PATH]
    python src/cli/crossmin.py count GRAPH DRAWING
    python src/cli/crossmin.py bench GRAPH... --out DIR
    python src/cli/crossmin.py stats GRAPH... [--profile-drawing DRAWING]
    python src/cli/crossmin.py validate GRAPH DRAWING [--vertex V]

Exit codes: 0 success, 1 usage error, 2 data error.
"""

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import asdict, replace
from pathlib import Path
from typing import List, Optional

sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np

from analysis.arrangement_profile import arrangement_profile
from analysis.cocrossing_validation import CoCrossingValidation, validate_cocrossing_approx
from analysis.degree_stats import degree_histogram, degree_table
from analysis.experiment import run_experiment
from common.errors import CrossminError, DataError, UsageError
from common.settings import THREADS_ENV_VAR, resolve_workers
from crossings.crossing_count import count_all
from data_generation.generate_graphs import random_regular_graph
from graph_model.drawing_io import read_drawing, write_drawing
from graph_model.graph import GRAPH_FORMATS, load_graph, preprocess, write_edge_list
from graph_model.svg_export import SvgOptions, write_svg
from movement.config import NAMED_CONFIGS, MoveConfig, Strategy, named_config
from movement.mover import minimize, order_vertices
from stress_layout.stress import StressParams, stress_layout

logger = logging.getLogger("crossmin")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
ALL_EDGES = "all"


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports bad arguments as UsageError."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _samples_arg(text: str):
    if text.lower() == ALL_EDGES:
        return ALL_EDGES
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'all', got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"sample size must be >= 0, got {value}")
    return value


def _cap_arg(text: str) -> float:
    if text.lower() in ("inf", "none"):
        return math.inf
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'inf', got {text!r}") from None


def build_parser() -> CliParser:
    parser = CliParser(prog="crossmin", description="Crossing minimization by vertex movement.")
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker count (default: ${THREADS_ENV_VAR}, else all cores)")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="log debug detail to stderr")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="log errors only")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    def graph_arg(p):
        p.add_argument("graph", help="graph file (edge list, METIS or Matrix Market)")
        p.add_argument("--format", choices=("auto",) + GRAPH_FORMATS, default="auto",
                       help="graph file format (default: by suffix)")

    p = sub.add_parser("prep", help="keep the largest component and peel degree-1 vertices")
    graph_arg(p)
    p.add_argument("--out", help="write the preprocessed edge list here")

    p = sub.add_parser("layout", help="random grid placement followed by stress majorization")
    graph_arg(p)
    p.add_argument("--out", required=True, help="drawing output (.json or .csv)")
    p.add_argument("--svg", help="also write an SVG rendering")
    p.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    p.add_argument("--max-iterations", type=int, default=StressParams.max_iterations,
                   help="majorization sweeps (default: %(default)s)")
    p.add_argument("--tolerance", type=float, default=StressParams.tolerance,
                   help="relative stress change that stops the iteration (default: %(default)s)")
    p.add_argument("--grid-side", type=int, default=None, help="side of the initial grid (default: max(m, 2))")

    p = sub.add_parser("minimize", help="move vertices to reduce crossings")
    graph_arg(p)
    p.add_argument("drawing", help="initial drawing (.json or .csv)")
    p.add_argument("--out", required=True, help="final drawing output")
    p.add_argument("--report", help="move report JSON (default: next to --out)")
    p.add_argument("--svg", help="also write an SVG rendering of the final drawing")
    choice = p.add_mutually_exclusive_group()
    choice.add_argument("--config", choices=sorted(NAMED_CONFIGS), type=str.upper,
                        help="named configuration")
    choice.add_argument("--strategy", choices=[s.value for s in Strategy], help="candidate strategy")
    p.add_argument("--samples", type=_samples_arg, help="edges per arrangement, or 'all'")
    p.add_argument("--points", type=int, help="candidates per neighbor group")
    p.add_argument("--degree-cap", type=_cap_arg, help="neighbors per arrangement, or 'inf'")
    p.add_argument("--passes", type=int, help="sweeps over all vertices")
    p.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")

    p = sub.add_parser("count", help="count crossings of a drawing")
    graph_arg(p)
    p.add_argument("drawing", help="drawing file (.json or .csv)")
    p.add_argument("--per-vertex", action="store_true", help="also print Cr(v) for every vertex")

    p = sub.add_parser("bench", help="run configurations on benchmark graphs")
    p.add_argument("graphs", nargs="*", help="graph files")
    p.add_argument("--regular", nargs=3, type=int, action="append", default=[], metavar=("K", "N", "COUNT"),
                   help="add COUNT random K-regular graphs on N vertices (repeatable)")
    p.add_argument("--configs", nargs="+", type=str.upper, default=["S512", "S0"],
                   choices=sorted(NAMED_CONFIGS), help="named configurations (default: S512 S0)")
    p.add_argument("--reps", type=int, default=5, help="repetitions per graph (default: 5)")
    p.add_argument("--seed", type=int, default=0, help="base seed (default: 0)")
    p.add_argument("--out", required=True, help="directory for records.csv, summary.csv, comparisons.csv")

    p = sub.add_parser("stats", help="degree statistics or arrangement profile")
    p.add_argument("graphs", nargs="+", help="graph files")
    p.add_argument("--format", choices=("auto",) + GRAPH_FORMATS, default="auto")
    p.add_argument("--profile-drawing", help="profile the arrangements of this drawing of the (single) graph")
    p.add_argument("--samples", type=_samples_arg, default=512, help="edges per profiled arrangement")
    p.add_argument("--limit", type=int, default=None, help="profile only the first N vertices")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("validate", help="check the sampled co-crossing estimator")
    graph_arg(p)
    p.add_argument("drawing", help="drawing file (.json or .csv)")
    p.add_argument("--vertex", type=int, help="vertex to inspect (default: first in processing order)")
    p.add_argument("--delta", type=float, default=CoCrossingValidation.delta)
    p.add_argument("--gamma", type=float, default=CoCrossingValidation.gamma)
    p.add_argument("--epsilon", type=float, default=CoCrossingValidation.epsilon)
    p.add_argument("--trials", type=int, default=CoCrossingValidation.trials)
    p.add_argument("--calibration", type=float, default=CoCrossingValidation.calibration,
                   help="constant of the sample size bound")
    p.add_argument("--sample-size", type=int, help="override the computed sample size")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load(path: str, fmt: str = "auto"):
    if not os.path.exists(path):
        raise DataError(f"cannot read {path}: no such file")
    g, report = load_graph(path, fmt)
    if report.duplicates or report.self_loops:
        logger.warning("%s: dropped %d duplicate edges and %d self-loops", path, report.duplicates, report.self_loops)
    return g


def _load_drawing(path: str, g):
    if not os.path.exists(path):
        raise DataError(f"cannot read {path}: no such file")
    return read_drawing(path, g)


def cmd_prep(args) -> int:
    g = _load(args.graph, args.format)
    result = preprocess(g)
    print(f"input: n={g.n} m={g.m}")
    print(f"removed components: {result.removed_components}")
    print(f"peeled degree-1 vertices: {result.peeled}")
    print(f"output: n={result.graph.n} m={result.graph.m}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            write_edge_list(result.graph, f)
    return EXIT_OK


def cmd_layout(args) -> int:
    g = _load(args.graph, args.format)
    params = StressParams(max_iterations=args.max_iterations, tolerance=args.tolerance,
                          grid_side=args.grid_side, seed=args.seed)
    d = stress_layout(g, params)
    write_drawing(d, args.out)
    if args.svg:
        write_svg(d, args.svg)
    print(f"crossings: {count_all(d, args.workers).total}")
    return EXIT_OK


def move_config_from_args(args) -> MoveConfig:
    if args.config:
        cfg = named_config(args.config)
    elif args.strategy == Strategy.PRIMAL.value:
        cfg = MoveConfig(samples=0, degree_cap=math.inf, strategy=Strategy.PRIMAL)
    else:
        cfg = MoveConfig(strategy=Strategy(args.strategy or Strategy.RESTRICTED.value))
    cfg = cfg.with_overrides(points=args.points, degree_cap=args.degree_cap, passes=args.passes, seed=args.seed)
    if args.samples == ALL_EDGES:
        return replace(cfg, samples=None)
    if args.samples is not None:
        return replace(cfg, samples=args.samples)
    return cfg


def cmd_minimize(args) -> int:
    g = _load(args.graph, args.format)
    d = _load_drawing(args.drawing, g)
    cfg = move_config_from_args(args)
    final, report = minimize(d, cfg, workers=args.workers)
    write_drawing(final, args.out)
    report_path = args.report or str(Path(args.out).with_suffix("")) + ".report.json"
    with open(report_path, "w", encoding="utf-8") as f:
        json.dump(report.to_dict(), f, indent=2)
    if args.svg:
        write_svg(final, args.svg, SvgOptions(show_crossings=True))
    for problem in report.violations():
        logger.error("%s", problem)
    print(f"crossings: {report.cr_before} -> {report.cr_after}")
    return EXIT_OK


def cmd_count(args) -> int:
    g = _load(args.graph, args.format)
    d = _load_drawing(args.drawing, g)
    tally = count_all(d, args.workers)
    print(tally.total)
    if args.per_vertex:
        for v, c in enumerate(tally.per_vertex.tolist()):
            print(f"{v} {c}")
    return EXIT_OK


def cmd_bench(args) -> int:
    graphs = {Path(p).stem: _load(p) for p in args.graphs}
    for k, n, count in args.regular:
        for i in range(count):
            graphs[f"regular_k{k}_n{n}_{i}"] = random_regular_graph(k, n, seed=args.seed + i)
    if not graphs:
        raise UsageError("bench needs graph files or --regular")
    if args.reps < 1:
        raise UsageError(f"--reps must be >= 1, got {args.reps}")
    configs = {name: named_config(name) for name in args.configs}
    result = run_experiment(graphs, configs, args.reps, out=args.out, base_seed=args.seed, workers=args.workers)
    print(result.summary.to_string(index=False, float_format=lambda x: f"{x:.1f}"))
    if result.failures:
        for name, reason in result.failures.items():
            logger.error("graph %s failed: %s", name, reason)
        return EXIT_DATA
    return EXIT_OK


def cmd_stats(args) -> int:
    graphs = {Path(p).stem: _load(p, args.format) for p in args.graphs}
    if args.profile_drawing:
        if len(graphs) != 1:
            raise UsageError("--profile-drawing needs exactly one graph")
        g = next(iter(graphs.values()))
        d = _load_drawing(args.profile_drawing, g)
        cfg = MoveConfig(samples=None if args.samples == ALL_EDGES else args.samples, seed=args.seed)
        table = arrangement_profile(d, cfg=cfg, limit=args.limit, workers=args.workers)
        print(table.to_string(index=False, float_format=lambda x: f"{x:.2f}"))
        return EXIT_OK
    print(degree_table(graphs).to_string(index=False))
    for name, g in graphs.items():
        stats = degree_histogram(g)
        print(f"\n{name}: mean degree {stats.mean_degree:.2f}")
        for degree, count in stats.histogram.items():
            print(f"  {degree:>4} {count}")
    return EXIT_OK


def cmd_validate(args) -> int:
    g = _load(args.graph, args.format)
    d = _load_drawing(args.drawing, g)
    params = CoCrossingValidation(delta=args.delta, gamma=args.gamma, epsilon=args.epsilon, trials=args.trials,
                                  calibration=args.calibration, sample_size=args.sample_size)
    v = order_vertices(d)[0] if args.vertex is None else args.vertex
    if not 0 <= v < g.n:
        raise UsageError(f"--vertex must lie in 0..{g.n - 1}, got {v}")
    report = validate_cocrossing_approx(d, v, params, np.random.default_rng(args.seed))
    payload = {k: val for k, val in asdict(report).items() if k != "ratios"}
    print(json.dumps(payload, indent=2))
    return EXIT_OK


COMMANDS = {
    "prep": cmd_prep,
    "layout": cmd_layout,
    "minimize": cmd_minimize,
    "count": cmd_count,
    "bench": cmd_bench,
    "stats": cmd_stats,
    "validate": cmd_validate,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        0 on success, 1 on a usage error, 2 on a data error
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)

    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)

    try:
        args.workers = resolve_workers(args.threads)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except CrossminError as exc:
        logger.error("%s", exc)
        return EXIT_DATA
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
