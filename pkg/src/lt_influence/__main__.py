"""Command-line interface."""

import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

import click
import numpy as np
from pydantic import ValidationError

from lt_influence import __version__
from lt_influence.closed_forms.degree import pairwise_influence_identities, sigma_degree_acyclic
from lt_influence.closed_forms.uislt import sigma_uilt, sigma_uislt, sigma_uslt
from lt_influence.config.settings import get_settings
from lt_influence.diffusion.montecarlo import RNG_ALGORITHM, simulate_activation, simulate_runs
from lt_influence.evaluators.factory import create_evaluator
from lt_influence.evaluators.models import EvaluatorConfig, EvaluatorType
from lt_influence.exact.oracle import optimal_seed_exhaustive
from lt_influence.exact.paths import sigma_via_paths
from lt_influence.exact.recursion import sigma_set_exact
from lt_influence.exceptions import LTInfluenceError
from lt_influence.experiments.compare import METHODS, compare, uislt_experiment
from lt_influence.graph.builders import (
    build_uislt,
    make_transition_matrix,
    normalize_adjacency,
    random_influence_graph,
    random_tree,
    scale_free_degree_graph,
    validate_graph,
)
from lt_influence.graph.io import (
    format_graph_tsv,
    read_adjacency,
    read_coauthorship_tsv,
    read_graph_tsv,
)
from lt_influence.graph.ingestion import ingest_coauthorship
from lt_influence.graph.models import InfluenceGraph, SeedSet, UISLTParams
from lt_influence.optimizers.greedy import greedy
from lt_influence.optimizers.models import SelectionResult, SievingConfig
from lt_influence.optimizers.sieving import g1_sieving
from lt_influence.ranking.heuristics import build_g1, rank_by_degree, rank_by_weighted_outdegree
from lt_influence.ranking.models import RankList, RankMethod
from lt_influence.ranking.pagerank import pagerank
from lt_influence.reporting import OutputFormat, ResultDocument, RunManifest, TSVTable, render
from lt_influence.utils import parse_float_list, parse_int_list


logger = logging.getLogger(__name__)

PROG_NAME = "lt-influence"


class CliState:
    """Per-invocation state shared by the subcommands."""

    def __init__(self, argv: Sequence[str]):
        self.argv = list(argv)
        self.rng_seeds: List[int] = []

    def manifest(self, evaluator: Optional[Dict[str, Any]] = None) -> RunManifest:
        return RunManifest.capture(self.argv, self.rng_seeds, evaluator, PROG_NAME)


class LTGroup(click.Group):
    """
    Group that turns every outcome into an exit status: 0 on success, 1 for
    usage and validation errors, 2 for anything unexpected.
    """

    def run(self, args: Optional[Sequence[str]] = None, prog_name: str = PROG_NAME, **extra) -> int:
        argv = list(sys.argv[1:] if args is None else args)
        try:
            rv = super().main(
                args=argv, prog_name=prog_name, standalone_mode=False, obj=CliState(argv), **extra
            )
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            return 1
        except click.ClickException as e:
            e.show()
            return 1
        except (LTInfluenceError, ValidationError) as e:
            click.echo(f"Error: {e}", err=True)
            return 1
        except Exception as e:
            logger.error(f"internal error: {e}", exc_info=True)
            click.echo(f"Internal error: {e}", err=True)
            return 2
        return rv if isinstance(rv, int) else 0

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        sys.exit(self.run(args, prog_name or PROG_NAME, **extra))


def _emit(document: ResultDocument, fmt: str) -> None:
    click.echo(render(document, OutputFormat(fmt)), nl=False)


def _resolve_rng(ctx: click.Context, value: Optional[int]) -> int:
    if value is None:
        value = int(np.random.SeedSequence().entropy % 2**32)
        click.echo(f"generated --rng {value}", err=True)
    ctx.obj.rng_seeds.append(value)
    return value


def _seeds(value: str) -> SeedSet:
    try:
        return SeedSet.of(parse_int_list(value))
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated node ids, got {value!r}") from e


def _floats(value: Optional[str], name: str) -> List[float]:
    if value is None:
        raise click.UsageError(f"{name} is required for this mode")
    try:
        return parse_float_list(value)
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}") from e


def format_option(default: str) -> Callable:
    return click.option(
        "--format",
        "fmt",
        type=click.Choice([f.value for f in OutputFormat]),
        default=default,
        show_default=True,
        help="Output format.",
    )


rng_option = click.option("--rng", type=click.IntRange(min=0), default=None, help="Random seed.")


def runs_option(func: Callable) -> Callable:
    return click.option(
        "--runs",
        type=click.IntRange(min=1),
        default=None,
        help="Monte Carlo runs (default LT_INFLUENCE_DEFAULT_RUNS).",
    )(func)


exact_cap_option = click.option(
    "--exact-cap", type=click.IntRange(min=1), default=None, help="Override the exact-mode node cap."
)


def evaluator_options(func: Callable) -> Callable:
    func = exact_cap_option(func)
    func = rng_option(func)
    func = runs_option(func)
    return click.option(
        "--exact", is_flag=True, help="Evaluate exactly instead of by Monte Carlo."
    )(func)


def _evaluator_config(
    ctx: click.Context, exact: bool, runs: Optional[int], rng: Optional[int], exact_cap: Optional[int]
) -> EvaluatorConfig:
    if exact:
        return EvaluatorConfig(kind=EvaluatorType.EXACT, exact_cap=exact_cap)
    return EvaluatorConfig(
        kind=EvaluatorType.MONTE_CARLO,
        runs=runs or get_settings().DEFAULT_RUNS,
        rng_seed=_resolve_rng(ctx, rng),
        exact_cap=exact_cap,
    )


graph_argument = click.argument("graph", type=click.File("r"))


def _load(stream) -> InfluenceGraph:
    return read_graph_tsv(stream)


def _graph_document(ctx: click.Context, g: InfluenceGraph) -> str:
    lines = ctx.obj.manifest().comment_lines()
    return "\n".join(lines) + "\n" + format_graph_tsv(g)


@click.group(cls=LTGroup, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name=PROG_NAME)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Diagnostics level on stderr (default LT_INFLUENCE_LOG_LEVEL).",
)
def main(log_level: Optional[str]) -> None:
    """Influence spread and seed selection under the Linear Threshold model."""
    level = (log_level or get_settings().LOG_LEVEL).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def dispatch(argv: Sequence[str]) -> int:
    """Run the CLI on ``argv`` and return the exit status."""
    return main.run(list(argv), PROG_NAME)


@main.command()
@graph_argument
@format_option("json")
@click.pass_context
def validate(ctx: click.Context, graph, fmt: str) -> None:
    """Check a graph file against the LT model bounds."""
    g = _load(graph)
    report = validate_graph(g)
    payload = {
        "ok": report.ok,
        "n": g.n,
        "edges": g.num_edges,
        "violations": [v.model_dump(mode="json") for v in report.violations],
    }
    table = TSVTable(
        header=["kind", "node", "edge", "value", "bound"],
        rows=[[v.kind.value, v.node, v.edge, v.value, v.bound] for v in report.violations],
    )
    _emit(ResultDocument(manifest=ctx.obj.manifest(), payload=payload, table=table), fmt)
    if not report.ok:
        ctx.exit(1)


@main.command()
@click.option("--coauth", type=click.File("r"), required=True, help="paper_id<TAB>authors file.")
@click.option("--directed", is_flag=True, help="Give each pair's strength to the higher index.")
@click.option("-o", "--output", type=click.File("w"), default="-", help="Graph file to write.")
@click.pass_context
def ingest(ctx: click.Context, coauth, directed: bool, output) -> None:
    """Build an influence graph from coauthorship records."""
    g = ingest_coauthorship(read_coauthorship_tsv(coauth), directed=directed)
    output.write(_graph_document(ctx, g))
    if output.name != "<stdout>":
        click.echo(f"wrote {g.n} nodes and {g.num_edges} edges to {output.name}", err=True)


@main.command()
@click.option("--uislt", "kind", flag_value="uislt", help="Complete UISLT graph from --alphas/--betas.")
@click.option("--degree", "kind", flag_value="degree", help="Degree-normalize --adjacency.")
@click.option("--random", "kind", flag_value="random", help="Random LT instance.")
@click.option("--scale-free", "kind", flag_value="scale_free", help="Barabasi-Albert degree graph.")
@click.option("--tree", "kind", flag_value="tree", help="Random degree-normalized tree.")
@click.option("--alphas", default=None, help="Comma-separated influence levels.")
@click.option("--betas", default=None, help="Comma-separated susceptances.")
@click.option("--adjacency", type=click.File("r"), default=None, help="u<TAB>v edge list.")
@click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Node count.")
@click.option("--density", type=click.FloatRange(0.0, 1.0), default=0.3, show_default=True)
@click.option("--m", "m", type=click.IntRange(min=1), default=2, show_default=True)
@rng_option
@click.option("-o", "--output", type=click.File("w"), default="-", help="Graph file to write.")
@click.pass_context
def gen(ctx: click.Context, kind, alphas, betas, adjacency, n, density, m, rng, output) -> None:
    """Generate a structured or random influence graph."""
    if kind is None:
        raise click.UsageError("choose one of --uislt, --degree, --random, --scale-free, --tree")
    if kind == "uislt":
        g = build_uislt(
            UISLTParams(alphas=_floats(alphas, "--alphas"), betas=_floats(betas, "--betas"))
        )
    elif kind == "degree":
        if adjacency is None:
            raise click.UsageError("--adjacency is required with --degree")
        matrix, labels = read_adjacency(adjacency)
        g = normalize_adjacency(matrix, node_labels=labels)
    else:
        if n is None:
            raise click.UsageError(f"--n is required with --{kind.replace('_', '-')}")
        generator = np.random.default_rng(_resolve_rng(ctx, rng))
        if kind == "random":
            g = random_influence_graph(n, density, generator)
        elif kind == "scale_free":
            g = scale_free_degree_graph(n, m, generator)
        else:
            g = random_tree(n, generator)
    output.write(_graph_document(ctx, g))


@main.command()
@graph_argument
@click.option("--seeds", required=True, help="Comma-separated seed node ids.")
@runs_option
@rng_option
@click.option("--trace", is_flag=True, help="Also emit the steps of one run.")
@format_option("json")
@click.pass_context
def simulate(ctx: click.Context, graph, seeds, runs, rng, trace, fmt) -> None:
    """Monte Carlo estimate of sigma and of every node's activation probability."""
    g = _load(graph)
    a0 = _seeds(seeds)
    runs = runs or get_settings().DEFAULT_RUNS
    rng_seed = _resolve_rng(ctx, rng)
    summary = simulate_runs(g, a0, runs, rng_seed)
    payload: Dict[str, Any] = {
        "mean": summary.mean,
        "half_width": summary.half_width,
        "runs": runs,
        "rng_seed": rng_seed,
        "rng_algorithm": RNG_ALGORITHM,
        "g": summary.activation_probs(),
    }
    if trace:
        activation = simulate_activation(g, a0, rng_seed)
        payload["trace"] = {"steps": activation.steps, "stop_time": activation.stop_time}
    manifest = ctx.obj.manifest({"kind": "monte_carlo", "runs": runs, "rng_seed": rng_seed})
    table = None
    if not trace:
        table = TSVTable(
            header=["node", "g"], rows=[[node, p] for node, p in enumerate(payload["g"])]
        )
    _emit(ResultDocument(manifest=manifest, payload=payload, table=table), fmt)


@main.command()
@graph_argument
@click.option("--seeds", required=True, help="Comma-separated seed node ids.")
@click.option(
    "--method",
    type=click.Choice(["recursion", "paths", "both"]),
    default="recursion",
    show_default=True,
)
@click.option("--prune", is_flag=True, help="Drop paths below 1e-15 during enumeration.")
@exact_cap_option
@format_option("json")
@click.pass_context
def exact(ctx: click.Context, graph, seeds, method, prune, exact_cap, fmt) -> None:
    """Exact sigma of a seed set by recursion, by path enumeration, or both."""
    g = _load(graph)
    a0 = _seeds(seeds)
    payload: Dict[str, Any] = {"seeds": a0.sorted()}
    if method in ("recursion", "both"):
        payload["recursion"] = sigma_set_exact(g, a0, cap=exact_cap)
    if method in ("paths", "both"):
        payload["paths"] = sigma_via_paths(g, a0, oracle=not prune, cap=exact_cap)
    if method == "both":
        payload["difference"] = abs(payload["recursion"] - payload["paths"])
    manifest = ctx.obj.manifest({"kind": "exact", "method": method, "prune": prune})
    _emit(ResultDocument(manifest=manifest, payload=payload), fmt)


@main.command()
@graph_argument
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Seed set size.")
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Maximum subsets to try.")
@exact_cap_option
@format_option("json")
@click.pass_context
def optimum(ctx: click.Context, graph, k, budget, exact_cap, fmt) -> None:
    """Best K-node seed set by exhaustive exact search."""
    g = _load(graph)
    best, value = optimal_seed_exhaustive(g, k, budget=budget, cap=exact_cap)
    manifest = ctx.obj.manifest({"kind": "exact", "method": "exhaustive"})
    _emit(ResultDocument(manifest=manifest, payload={"chosen": best.sorted(), "sigma": value}), fmt)


@main.command(name="closed-form")
@click.option("--uislt", "kind", flag_value="uislt", help="General UISLT closed form.")
@click.option("--uslt", "kind", flag_value="uslt", help="Uniform susceptance (--betas only).")
@click.option("--uilt", "kind", flag_value="uilt", help="Uniform influence (--alphas only).")
@click.option("--degree-graph", type=click.File("r"), default=None, help="Degree-normalized forest.")
@click.option("--pairwise", type=click.File("r"), default=None, help="Graph for the pairwise identities.")
@click.option("--alphas", default=None)
@click.option("--betas", default=None)
@click.option("--seeds", default=None, help="Comma-separated seed node ids.")
@click.option("--node", type=click.IntRange(min=0), default=None, help="Node for --degree-graph.")
@click.option("--nodes", default=None, help="Two node ids i,j for --pairwise.")
@format_option("json")
@click.pass_context
def closed_form(ctx, kind, degree_graph, pairwise, alphas, betas, seeds, node, nodes, fmt) -> None:
    """Closed-form influence for UISLT-family graphs and degree-normalized forests."""
    manifest = ctx.obj.manifest({"kind": "closed_form"})
    table = None
    if degree_graph is not None:
        if node is None:
            raise click.UsageError("--node is required with --degree-graph")
        payload: Dict[str, Any] = {
            "node": node,
            "sigma": sigma_degree_acyclic(_load(degree_graph), node),
        }
    elif pairwise is not None:
        pair = parse_int_list(nodes or "")
        if len(pair) != 2:
            raise click.UsageError("--nodes must name exactly two nodes, e.g. --nodes 0,3")
        result = pairwise_influence_identities(_load(pairwise), pair[0], pair[1])
        payload = {**result.model_dump(), "holds": result.holds}
    else:
        if kind is None:
            raise click.UsageError("choose --uislt, --uslt, --uilt, --degree-graph or --pairwise")
        if seeds is None:
            raise click.UsageError("--seeds is required")
        a0 = _seeds(seeds)
        if kind == "uislt":
            params = UISLTParams(alphas=_floats(alphas, "--alphas"), betas=_floats(betas, "--betas"))
            evaluation = sigma_uislt(params, a0)
            payload = evaluation.model_dump()
            table = TSVTable(
                header=["m", "h"], rows=[[m, h] for m, h in enumerate(evaluation.terms)]
            )
        elif kind == "uslt":
            payload = {"seeds": a0.sorted(), "sigma": sigma_uslt(_floats(betas, "--betas"), a0)}
        else:
            payload = {"seeds": a0.sorted(), "sigma": sigma_uilt(_floats(alphas, "--alphas"), a0)}
    _emit(ResultDocument(manifest=manifest, payload=payload, table=table), fmt)


def _rank_document(ranked: RankList, manifest: RunManifest) -> ResultDocument:
    table = TSVTable(
        header=["rank", "node", "score"],
        rows=[[pos, entry.node, entry.score] for pos, entry in enumerate(ranked.entries, start=1)],
    )
    payload = {
        "method": ranked.method.value,
        "tie_break": ranked.tie_break,
        "metadata": ranked.metadata,
        "entries": [entry.model_dump() for entry in ranked.entries],
    }
    return ResultDocument(manifest=manifest, payload=payload, table=table)


@main.command()
@graph_argument
@click.option(
    "--method",
    type=click.Choice([m.value for m in RankMethod]),
    default=RankMethod.PAGERANK.value,
    show_default=True,
)
@click.option("--damping", type=click.FloatRange(0.0, 1.0, min_open=True), default=1.0, show_default=True)
@click.option("--tol", type=click.FloatRange(0.0, min_open=True), default=1e-12, show_default=True)
@click.option("--max-iter", type=click.IntRange(min=1), default=100_000, show_default=True)
@evaluator_options
@format_option("tsv")
@click.pass_context
def rank(ctx, graph, method, damping, tol, max_iter, exact, runs, rng, exact_cap, fmt) -> None:
    """Rank nodes by PageRank, out-degree, weighted out-degree or individual influence."""
    g = _load(graph)
    method = RankMethod(method)
    evaluator_meta: Dict[str, Any] = {}
    if method == RankMethod.PAGERANK:
        ranked = pagerank(make_transition_matrix(g), damping, tol, max_iter)
        evaluator_meta = {"kind": "pagerank", "damping": damping, "tol": tol}
    elif method == RankMethod.DEGREE:
        ranked = rank_by_degree(g)
    elif method == RankMethod.WEIGHTED_DEGREE:
        ranked = rank_by_weighted_outdegree(g)
    else:
        evaluator = create_evaluator(g, _evaluator_config(ctx, exact, runs, rng, exact_cap))
        ranked = build_g1(g, evaluator)
        evaluator_meta = evaluator.describe()
    _emit(_rank_document(ranked, ctx.obj.manifest(evaluator_meta)), fmt)


def _selection_document(result: SelectionResult, manifest: RunManifest) -> ResultDocument:
    table = TSVTable(
        header=["round", "node", "pool_size", "gain", "score"],
        rows=[
            [pos, record.node, record.pool_size, record.gain, record.score]
            for pos, record in enumerate(result.per_round, start=1)
        ],
    )
    return ResultDocument(manifest=manifest, payload=result.model_dump(), table=table)


@main.command(name="greedy")
@graph_argument
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Seed set size.")
@evaluator_options
@format_option("json")
@click.pass_context
def greedy_command(ctx, graph, k, exact, runs, rng, exact_cap, fmt) -> None:
    """Greedy hill-climbing seed selection."""
    g = _load(graph)
    evaluator = create_evaluator(g, _evaluator_config(ctx, exact, runs, rng, exact_cap))
    result = greedy(g, k, evaluator)
    _emit(_selection_document(result, ctx.obj.manifest(evaluator.describe())), fmt)


@main.command()
@graph_argument
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Seed set size.")
@click.option("--alpha", type=click.FloatRange(0.0, 1.0, min_open=True), default=0.3, show_default=True)
@click.option("--epsilon", type=click.FloatRange(min=0.0), default=1e-6, show_default=True)
@click.option("--thresholding/--no-thresholding", default=True, show_default=True)
@click.option("--restriction/--no-restriction", default=True, show_default=True)
@click.option("--activation-runs", type=click.IntRange(min=1), default=None)
@evaluator_options
@format_option("json")
@click.pass_context
def sieve(
    ctx, graph, k, alpha, epsilon, thresholding, restriction, activation_runs, exact, runs, rng, exact_cap, fmt
) -> None:
    """G1-Sieving seed selection."""
    g = _load(graph)
    evaluator = create_evaluator(g, _evaluator_config(ctx, exact, runs, rng, exact_cap))
    config = SievingConfig(
        K=k,
        alpha=alpha,
        epsilon=epsilon,
        use_thresholding=thresholding,
        use_restriction=restriction,
        exact_cap=exact_cap,
        **({"activation_runs": activation_runs} if activation_runs else {}),
    )
    result = g1_sieving(g, config, evaluator)
    _emit(_selection_document(result, ctx.obj.manifest(evaluator.describe())), fmt)


@main.command(name="compare")
@click.argument("graph", type=click.File("r"), required=False)
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Largest seed set size.")
@click.option(
    "--methods",
    default="greedy,sieve,pagerank,degree,wdegree",
    show_default=True,
    help=f"Comma-separated subset of {','.join(METHODS)}.",
)
@click.option("--alphas", default=None, help="Run sieving once per alpha, e.g. 0.1,0.3,0.5.")
@click.option("--alpha", type=click.FloatRange(0.0, 1.0, min_open=True), default=0.3, show_default=True)
@click.option("--epsilon", type=click.FloatRange(min=0.0), default=1e-6, show_default=True)
@click.option("--damping", type=click.FloatRange(0.0, 1.0, min_open=True), default=1.0, show_default=True)
@click.option(
    "--uislt-random",
    type=click.IntRange(min=2),
    default=None,
    help="Ignore GRAPH; compare PageRank and greedy on a random complete UISLT graph of this size.",
)
@evaluator_options
@format_option("tsv")
@click.pass_context
def compare_command(
    ctx, graph, k, methods, alphas, alpha, epsilon, damping, uislt_random, exact, runs, rng, exact_cap, fmt
) -> None:
    """Influence of each method's top-K set for K = 1..k."""
    if uislt_random is not None:
        rng_seed = _resolve_rng(ctx, rng)
        runs = runs or get_settings().DEFAULT_RUNS
        table = uislt_experiment(uislt_random, k, runs, rng_seed)
        evaluator_meta = {"kind": "closed_form", "selection_runs": runs, "rng_seed": rng_seed}
    else:
        if graph is None:
            raise click.UsageError("GRAPH is required unless --uislt-random is given")
        g = _load(graph)
        evaluation = _evaluator_config(ctx, exact, runs, rng, exact_cap)
        table = compare(
            g,
            k,
            [method.strip() for method in methods.split(",") if method.strip()],
            evaluation,
            sieving=SievingConfig(K=k, alpha=alpha, epsilon=epsilon, exact_cap=exact_cap),
            alphas=_floats(alphas, "--alphas") if alphas else None,
            damping=damping,
        )
        evaluator_meta = table.metadata["evaluation"]
    document = ResultDocument(
        manifest=ctx.obj.manifest(evaluator_meta),
        payload=table.model_dump(),
        table=TSVTable(
            header=["K", "method", "sigma_estimate", "half_width"],
            rows=[[row.K, row.method, row.sigma, row.half_width] for row in table.rows],
        ),
    )
    _emit(document, fmt)


if __name__ == "__main__":
    main(prog_name=PROG_NAME)  # pragma: no cover
