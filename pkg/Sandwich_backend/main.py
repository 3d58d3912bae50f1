import json
import logging
import os
import sys
from typing import Callable, Dict, List, Tuple

import click
from dotenv import load_dotenv
from pydantic import ValidationError

# Environment Setup
load_dotenv()

# Internal Imports
from Graph.boundary import boundary_step
from Graph.config import ExplorationLimits, get_settings
from Graph.core_graph import core_of, fold, lollipop, wedge
from Graph.errors import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_VERDICT_FALSE,
    ContractViolation,
    RankGuardError,
    SandwichError,
    exit_code_for,
)
from Graph.explorer import enumerate_cuts, explore
from Graph.export_manager import (
    boundary_report,
    closure_report,
    core_dot,
    core_to_model,
    cut_to_model,
    exploration_dot,
    exploration_json_lines,
    exploration_summary,
    reduction_report,
    render_text,
    sandwich_report,
    subbasis_report,
    wh_graph_dot,
    wh_graph_to_model,
)
from Graph.free_words import Alphabet, WordSet
from Graph.oracles import subbasis_oracle
from Graph.pipeline import run_sandwich_pipeline
from Graph.state import RunConfig
from Graph.utils import logger
from Graph.whitehead import closure_from_trace, cut_vertex_algorithm, is_subbasis, phi_of_cut, whitehead_graph
from validators import WordListValidator


# ===========================================================================
# 1. HELPER FUNCTIONS
# ===========================================================================

def _json(model) -> str:
    return model.model_dump_json(indent=2, by_alias=True) + "\n"


def _dot_unsupported(command: str) -> SandwichError:
    return ContractViolation(f"'{command}' has no DOT rendering; use --output json or text")


def _limits(config: RunConfig) -> ExplorationLimits:
    return ExplorationLimits.from_settings(node_budget=config.node_budget, force_rank=config.force_rank)


def _reduction_sets(trace) -> List[WordSet]:
    """Word sets before and after each cut of a reduction trace."""
    sets = [trace.initial_set]
    for step in trace.steps:
        sets.append(WordSet.of(phi_of_cut(step.cut).apply_inverse(w) for w in sets[-1]))
    return sets


# ===========================================================================
# 2. COMMANDS
# ===========================================================================
# Each command returns (exit_code, stdout_text).

def _cmd_graph(config: RunConfig, E: Alphabet, Z: WordSet) -> Tuple[int, str]:
    g = whitehead_graph(Z, E)
    if config.output == "dot":
        return EXIT_OK, "".join(wh_graph_dot(g))
    model = wh_graph_to_model(g)
    return EXIT_OK, render_text(model, "WHITEHEAD GRAPH") if config.output == "text" else _json(model)


def _cmd_reduce(config: RunConfig, E: Alphabet, Z: WordSet) -> Tuple[int, str]:
    trace = cut_vertex_algorithm(Z, E)
    if config.output == "dot":
        out = "".join(wh_graph_dot(whitehead_graph(trace.final_set, E), "reduced"))
    else:
        report = reduction_report(trace, E)
        out = render_text(report, "CUT-VERTEX REDUCTION") if config.output == "text" else _json(report)
    if config.explain:
        out += "".join(line for i, ws in enumerate(_reduction_sets(trace)) for line in wh_graph_dot(whitehead_graph(ws, E), f"step{i}"))
    return EXIT_OK, out


def _cmd_closure(config: RunConfig, E: Alphabet, Z: WordSet) -> Tuple[int, str]:
    if config.output == "dot":
        raise _dot_unsupported("closure")
    trace = cut_vertex_algorithm(Z, E)
    report = closure_report(trace, closure_from_trace(trace, E), E)
    out = render_text(report, "UPPER LAYER (FREE FACTOR CLOSURE)") if config.output == "text" else _json(report)
    if config.explain:
        out += "".join(wh_graph_dot(whitehead_graph(trace.final_set, E), "reduced"))
    return EXIT_OK, out


def _cmd_subbasis(config: RunConfig, E: Alphabet, Z: WordSet) -> Tuple[int, str]:
    if config.output == "dot":
        raise _dot_unsupported("subbasis")
    verdict = is_subbasis(Z, E)
    agrees = None
    if config.oracle:
        agrees = subbasis_oracle(Z, E) == verdict.is_subbasis
        if not agrees:
            logger.error("❌ oracle disagrees with the cut-vertex verdict")
    report = subbasis_report(verdict, E, agrees)
    out = render_text(report, "SUB-BASIS TEST") if config.output == "text" else _json(report)
    if config.explain:
        out += "".join(wh_graph_dot(whitehead_graph(verdict.trace.final_set, E), "reduced"))
    if agrees is False:
        return EXIT_INPUT_ERROR, out
    return (EXIT_OK if verdict.is_subbasis else EXIT_VERDICT_FALSE), out


def _cmd_core(config: RunConfig, E: Alphabet, Z: WordSet) -> Tuple[int, str]:
    core = core_of(Z, E)
    if config.output == "dot":
        out = "".join(core_dot(core, E))
    else:
        model = core_to_model(core, E)
        out = render_text(model, "CORE GRAPH") if config.output == "text" else _json(model)
    if config.explain:
        raw = wedge([lollipop(z, E.rank) for z in Z], rank=E.rank)
        out += "".join(core_dot(raw, E, "wedge")) + "".join(core_dot(fold(raw), E, "folded"))
    return EXIT_OK, out


def _cmd_boundary(config: RunConfig, E: Alphabet, Z: WordSet) -> Tuple[int, str]:
    cuts = enumerate_cuts(E)
    if config.cut >= len(cuts):
        raise ContractViolation(f"cut index {config.cut} out of range (0..{len(cuts) - 1})")
    step = boundary_step(core_of(Z, E), cuts[config.cut], E)
    if config.output == "dot":
        out = "".join(core_dot(step.output, E, "boundary"))
    else:
        report = boundary_report(step, Z, E, config.cut)
        out = render_text(report, f"BOUNDARY BY CUT {config.cut}") if config.output == "text" else _json(report)
    if config.explain:
        out += "".join(core_dot(step.augmented, E, "augmented")) + "".join(core_dot(step.relabeled, E, "relabeled"))
    return EXIT_OK, out


def _cmd_explore(config: RunConfig, E: Alphabet, Z: WordSet) -> Tuple[int, str]:
    graph = explore(Z, E, _limits(config))
    if config.output == "dot":
        return EXIT_OK, "".join(exploration_dot(graph))
    if config.output == "text":
        return EXIT_OK, render_text(exploration_summary(graph), "EXPLORATION")
    return EXIT_OK, "".join(exploration_json_lines(graph))


def _cmd_sandwich(config: RunConfig, E: Alphabet, Z: WordSet) -> Tuple[int, str]:
    state = run_sandwich_pipeline(Z, E, _limits(config), oracle=config.oracle)
    result = state["result"]
    graph = state["exploration"]
    if config.output == "dot":
        out = "".join(exploration_dot(graph, highlight=result.best_node))
    else:
        report = sandwich_report(result, Z, E, graph, state.get("oracle_report"))
        out = render_text(report, "SANDWICH") if config.output == "text" else _json(report)
    if config.explain:
        out += "".join(core_dot(graph.nodes[result.best_node].core, E, "best"))
    return EXIT_OK, out


def _cmd_cuts(config: RunConfig, E: Alphabet, Z: WordSet) -> Tuple[int, str]:
    if config.output == "dot":
        raise _dot_unsupported("cuts")
    models = [cut_to_model(c, E, i) for i, c in enumerate(enumerate_cuts(E))]
    if config.output == "text":
        return EXIT_OK, "".join(render_text(m, f"CUT {m.index}") for m in models)
    return EXIT_OK, json.dumps([m.model_dump() for m in models], indent=2, ensure_ascii=False) + "\n"


COMMANDS: Dict[str, Callable[[RunConfig, Alphabet, WordSet], Tuple[int, str]]] = {
    "graph":    _cmd_graph,
    "reduce":   _cmd_reduce,
    "closure":  _cmd_closure,
    "subbasis": _cmd_subbasis,
    "core":     _cmd_core,
    "boundary": _cmd_boundary,
    "explore":  _cmd_explore,
    "sandwich": _cmd_sandwich,
    "cuts":     _cmd_cuts,
}


# ===========================================================================
# 3. RUN
# ===========================================================================

def run(config: RunConfig) -> Tuple[int, str]:
    """Validate the input, dispatch the command, map failures to exit codes.

    Diagnostics go to the logger (stderr); the returned text is what the CLI
    prints on stdout.
    """
    try:
        settings = get_settings()
        result = WordListValidator().validate(config.generators, config.words, settings.max_rank, config.force_rank)
        if not result["valid"]:
            raise RankGuardError(result["reason"])
        return COMMANDS[config.command](config, result["alphabet"], result["word_set"])
    except SandwichError as exc:
        logger.error(f"❌ {config.command}: {exc}")
        return exit_code_for(exc), ""


# ===========================================================================
# 4. CLI
# ===========================================================================

def _common_options(f):
    options = [
        click.option("--gens", "generators", required=True, help="Generator symbols, e.g. 'xy'."),
        click.option("--words", multiple=True, default=(), help="Comma-separated words, or @file (repeatable)."),
        click.option("--output", type=click.Choice(["json", "dot", "text"]), default="json", show_default=True),
        click.option("--explain", is_flag=True, help="Append the intermediate graphs as DOT."),
        click.option("--force", "force_rank", is_flag=True, help="Accept ranks above FGS_MAX_RANK."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _invoke(command: str, **kwargs) -> None:
    try:
        config = RunConfig(command=command, **kwargs)
    except ValidationError as exc:
        logger.error(f"❌ invalid arguments: {exc.errors()[0].get('msg')}")
        sys.exit(EXIT_INPUT_ERROR)
    code, out = run(config)
    click.echo(out, nl=False)
    sys.exit(code)


@click.group()
def cli():
    """Free-group sandwich toolkit: Whitehead graphs, core graphs, boundary search."""
    if not os.getenv("DEBUG"):
        logger.setLevel(getattr(logging, get_settings().log_level.upper(), logging.INFO))


@cli.command()
@_common_options
def graph(**kwargs):
    """Whitehead graph Wh(Z rel E)."""
    _invoke("graph", **kwargs)


@cli.command()
@_common_options
def reduce(**kwargs):
    """Run the cut-vertex algorithm and print its trace."""
    _invoke("reduce", **kwargs)


@cli.command()
@_common_options
def closure(**kwargs):
    """Basis of the smallest free factor containing <Z>."""
    _invoke("closure", **kwargs)


@cli.command()
@_common_options
@click.option("--oracle", is_flag=True, help="Cross-check with the brute-force oracle.")
def subbasis(**kwargs):
    """Is Z part of a basis? Exit 0 if so, 1 if not."""
    _invoke("subbasis", **kwargs)


@cli.command()
@_common_options
def core(**kwargs):
    """Stallings core graph of <Z>."""
    _invoke("core", **kwargs)


@cli.command()
@_common_options
@click.option("--cut", type=int, default=0, show_default=True, help="Index into the 'cuts' listing.")
def boundary(**kwargs):
    """Apply one boundary operation to the core graph of <Z>."""
    _invoke("boundary", **kwargs)


@cli.command(name="explore")
@_common_options
@click.option("--node-budget", type=int, default=None, help="Node cap (default: FGS_NODE_BUDGET).")
def explore_cmd(**kwargs):
    """Breadth-first boundary exploration, one JSON line per node."""
    _invoke("explore", **kwargs)


@cli.command()
@_common_options
@click.option("--node-budget", type=int, default=None, help="Node cap (default: FGS_NODE_BUDGET).")
@click.option("--oracle", is_flag=True, help="Cross-check with the brute-force oracle.")
def sandwich(**kwargs):
    """Upper layer, lower layer and the maximising basis."""
    _invoke("sandwich", **kwargs)


@cli.command()
@_common_options
def cuts(**kwargs):
    """List every cut of the alphabet in enumeration order."""
    _invoke("cuts", **kwargs)


if __name__ == "__main__":
    cli()
