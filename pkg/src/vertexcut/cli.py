"""Command-line front end.

Every command writes into a run directory (``--out``) together with ``config.json``,
the fully resolved run configuration; rerunning the same command reproduces every
output byte for byte. Exit codes: 0 success, 1 internal error, 2 validation error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import baselines, ebv
from .assignment import PartitionAssignment, dumps_json, read_assignment, write_assignment
from .errors import ValidationError
from .graph import (Graph, LoaderOptions, PowerLawSpec, atomic_write_text, generate_power_law,
                    load_edge_list, load_graph_cache, write_edge_list)
from .metrics import compute_metrics, metrics_csv
from .sim import VertexProgram, run, trace_stats
from .sim.reference import values_match

log = logging.getLogger("vertexcut")

DEFAULT_SEED = 0
ALGORITHMS = ("ebv", "dbh", "cvc", "random")

EXIT_OK, EXIT_INTERNAL, EXIT_VALIDATION = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    out: str
    input: str | None = None
    power_law: list | None = None
    directed: bool = False
    dedupe: bool = False
    drop_self_loops: bool = False
    weighted: bool = False
    algorithm: str | None = None
    p: int | None = None
    alpha: float = 1.0
    beta: float = 1.0
    sort: bool = True
    tie_break: str = "highest-index"
    grid: list | None = None
    seed: int = DEFAULT_SEED
    assignment: str | None = None
    algorithms: list | None = None
    prog: str | None = None
    source: int | None = None
    iters: int = 10
    damping: float = 0.85
    verify: bool = False
    executor: str = "serial"


def _grid(text: str) -> list[int]:
    try:
        rows, cols = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like RxC, got {text!r}") from None
    return [rows, cols]


def _power_law(text: str) -> list:
    try:
        n, avg, eta = text.split(":")
        return [int(n), float(avg), float(eta)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N:AVG_DEGREE:ETA, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vertexcut", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(sp, required=True):
        sp.add_argument("input", nargs="?" if not required else None,
                        help="edge-list file (or .npz graph cache)")
        sp.add_argument("--power-law", type=_power_law, metavar="N:AVG:ETA",
                        help="generate the graph instead of reading a file (uses --seed)")
        sp.add_argument("--directed", action="store_true")
        sp.add_argument("--dedupe", action="store_true")
        sp.add_argument("--drop-self-loops", action="store_true")
        sp.add_argument("--weighted", action="store_true", help="read a third weight column")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--out", default="vertexcut-run", help="run directory")

    def partition_args(sp, algo_required=True):
        sp.add_argument("--algo", dest="algorithm", choices=ALGORITHMS,
                        required=algo_required)
        sp.add_argument("--p", type=int, required=algo_required)
        sp.add_argument("--alpha", type=float, default=1.0)
        sp.add_argument("--beta", type=float, default=1.0)
        sp.add_argument("--sort", action=argparse.BooleanOptionalAction, default=True)
        sp.add_argument("--tie-break", choices=ebv.TIE_BREAKS, default="highest-index")
        sp.add_argument("--grid", type=_grid, metavar="RxC")

    sp = sub.add_parser("partition", help="partition a graph and write the assignment")
    graph_args(sp, required=False)
    partition_args(sp)

    sp = sub.add_parser("metrics", help="imbalance and replication metrics")
    graph_args(sp, required=False)
    partition_args(sp, algo_required=False)
    sp.add_argument("--assignment", help="existing assignment file instead of --algo")

    sp = sub.add_parser("simulate", help="run CC/SSSP/PR on the partitioned graph")
    graph_args(sp, required=False)
    partition_args(sp, algo_required=False)
    sp.add_argument("--assignment", help="existing assignment file instead of --algo")
    sp.add_argument("--prog", choices=("cc", "sssp", "pr"), required=True)
    sp.add_argument("--source", type=int, help="SSSP source (original vertex id)")
    sp.add_argument("--iters", type=int, default=10)
    sp.add_argument("--damping", type=float, default=0.85)
    sp.add_argument("--verify", action="store_true", help="check results against a sequential run")
    sp.add_argument("--executor", choices=("serial", "threads"), default="serial")

    sp = sub.add_parser("compare", help="metrics of several algorithms on the same graph")
    graph_args(sp, required=False)
    partition_args(sp, algo_required=False)
    sp.add_argument("--algos", default=",".join(ALGORITHMS))

    sp = sub.add_parser("generate", help="write a synthetic power-law edge list")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--avg-degree", type=float, required=True)
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--out", default="vertexcut-run")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "generate":
        return RunConfig(command="generate", out=args.out,
                         power_law=[args.n, args.avg_degree, args.eta], seed=args.seed)
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    if args.command == "compare":
        fields["algorithms"] = [a.strip() for a in args.algos.split(",") if a.strip()]
        bad = set(fields["algorithms"]) - set(ALGORITHMS)
        if bad:
            raise ValidationError(f"unknown algorithms {sorted(bad)}")
        if args.p is None:
            raise ValidationError("compare needs --p")
    if args.command in ("metrics", "simulate") and not (args.assignment or args.algorithm):
        raise ValidationError(f"{args.command} needs --assignment or --algo")
    if args.command in ("metrics", "simulate") and args.algorithm and args.p is None:
        raise ValidationError("--algo needs --p")
    if (args.input is None) == (args.power_law is None):
        raise ValidationError("give exactly one of an input file or --power-law")
    return RunConfig(**fields)


def load_graph(cfg: RunConfig) -> Graph:
    if cfg.power_law is not None:
        n, avg, eta = cfg.power_law
        return generate_power_law(PowerLawSpec(int(n), float(avg), float(eta), cfg.seed))
    if not Path(cfg.input).exists():
        raise ValidationError(f"input file {cfg.input} does not exist")
    if cfg.input.endswith(".npz"):
        return load_graph_cache(cfg.input)
    opts = LoaderOptions(dedupe=cfg.dedupe, drop_self_loops=cfg.drop_self_loops,
                         weighted=cfg.weighted)
    return load_edge_list(cfg.input, directed=cfg.directed, options=opts)


def make_partition(g: Graph, cfg: RunConfig, algorithm: str | None = None) -> PartitionAssignment:
    algorithm = algorithm or cfg.algorithm
    if algorithm == "ebv":
        return ebv.partition_ebv(g, ebv.EbvParams(cfg.p, cfg.alpha, cfg.beta, cfg.sort,
                                                  cfg.tie_break))
    grid = tuple(cfg.grid) if cfg.grid and algorithm == "cvc" else None
    params = baselines.BaselineParams(cfg.p, cfg.seed, grid)
    fn = {"dbh": baselines.partition_dbh, "cvc": baselines.partition_cvc,
          "random": baselines.partition_random}[algorithm]
    return fn(g, params)


def _assignment_for(g: Graph, cfg: RunConfig) -> PartitionAssignment:
    if cfg.assignment:
        summary = Path(cfg.assignment).with_name("summary.json")
        return read_assignment(cfg.assignment, g, summary_path=summary)
    return make_partition(g, cfg)


def _warn(a: PartitionAssignment) -> None:
    for w in a.warnings:
        log.warning(w)


def cmd_partition(cfg: RunConfig, out: Path) -> int:
    g = load_graph(cfg)
    a = make_partition(g, cfg)
    _warn(a)
    write_assignment(a, out / "assignment.txt", out / "summary.json")
    return EXIT_OK


def cmd_metrics(cfg: RunConfig, out: Path) -> int:
    g = load_graph(cfg)
    a = _assignment_for(g, cfg)
    _warn(a)
    report = compute_metrics(g, a)
    atomic_write_text(out / "metrics.json", dumps_json(report.to_dict()))
    atomic_write_text(out / "metrics.csv", metrics_csv([report]))
    return EXIT_OK


def cmd_compare(cfg: RunConfig, out: Path) -> int:
    g = load_graph(cfg)
    reports = []
    for algorithm in cfg.algorithms:
        a = make_partition(g, cfg, algorithm)
        _warn(a)
        reports.append(compute_metrics(g, a))
    atomic_write_text(out / "compare.csv", metrics_csv(reports))
    return EXIT_OK


def _format_value(prog: str, g: Graph, x) -> str:
    if prog == "cc":
        return str(int(g.original_ids[int(x)]))
    if prog == "sssp":
        return "inf" if np.isinf(x) else str(int(x))
    return format(float(x), ".17g")


def cmd_simulate(cfg: RunConfig, out: Path) -> int:
    g = load_graph(cfg)
    source = None
    if cfg.prog == "sssp":
        if cfg.source is None:
            raise ValidationError("sssp needs --source")
        try:
            source = g.vertex_of(cfg.source)
        except KeyError:
            raise ValidationError(f"SSSP source {cfg.source} is not a vertex of the graph") from None
    prog = VertexProgram(cfg.prog, source=source, iterations=cfg.iters, damping=cfg.damping)
    prog.validate(g)
    a = _assignment_for(g, cfg)
    _warn(a)
    values, trace = run(g, a, prog, executor=cfg.executor)

    ids = g.original_ids.tolist()
    atomic_write_text(out / "results.txt", "".join(
        f"{ids[v]} {_format_value(cfg.prog, g, x)}\n" for v, x in enumerate(values.tolist())))
    atomic_write_text(out / "trace.csv", trace.to_csv())
    summary = asdict(trace_stats(trace))
    summary["partition"] = a.summary()
    status = EXIT_OK
    if cfg.verify:
        ok = values_match(g, prog, values)
        summary["verified"] = ok
        if not ok:
            log.error("simulation results disagree with the sequential reference")
            status = EXIT_INTERNAL
    atomic_write_text(out / "summary.json", dumps_json(summary))
    return status


def cmd_generate(cfg: RunConfig, out: Path) -> int:
    n, avg, eta = cfg.power_law
    g = generate_power_law(PowerLawSpec(int(n), float(avg), float(eta), cfg.seed))
    write_edge_list(g, out / "graph.txt")
    return EXIT_OK


COMMANDS = {"partition": cmd_partition, "metrics": cmd_metrics, "compare": cmd_compare,
            "simulate": cmd_simulate, "generate": cmd_generate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = config_from_args(args)
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        atomic_write_text(out / "config.json", dumps_json(asdict(cfg)))
        return COMMANDS[cfg.command](cfg, out)
    except ValidationError as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
