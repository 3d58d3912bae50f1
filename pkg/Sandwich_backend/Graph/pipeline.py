"""
pipeline.py — Sandwich Stage Graph
==================================
The sandwich run as a LangGraph StateGraph:

    START → closure → explore → select → assemble ─┬─→ END
                                                   └─→ oracle_check → END

``oracle_check`` only runs in oracle mode. Each node reads SandwichState and
returns the keys it fills in.
"""

from functools import lru_cache
from typing import Optional

from langgraph.graph import END, START, StateGraph

from Graph.config import ExplorationLimits, get_settings
from Graph.core_graph import is_member
from Graph.errors import ContractViolation
from Graph.explorer import SandwichResult, best_node, compose_path, cut_path, explore
from Graph.free_words import Alphabet, WordSet
from Graph.oracles import best_basis_hits, nielsen_reduce, oracle_membership
from Graph.state import OracleReport, SandwichState
from Graph.utils import logger, _plural
from Graph.whitehead import closure_from_trace, cut_vertex_algorithm


# ============================================================================
# 1. NODES
# ============================================================================

def closure_node(state: SandwichState) -> dict:
    logger.info("--- 🧱 UPPER LAYER: cut-vertex algorithm ---")
    trace = cut_vertex_algorithm(state["word_set"], state["alphabet"])
    basis = tuple(closure_from_trace(trace, state["alphabet"]))
    logger.info(f"   closure rank {len(basis)} after {_plural(len(trace.steps), 'step')}")
    return {"closure_trace": trace, "upper_basis": basis}


def explore_node(state: SandwichState) -> dict:
    logger.info("--- 🔍 LOWER LAYER: exploring boundary images ---")
    return {"exploration": explore(state["word_set"], state["alphabet"], state["limits"])}


def select_node(state: SandwichState) -> dict:
    graph = state["exploration"]
    index = best_node(graph)
    path = tuple(cut_path(graph, index))
    logger.info(f"   best node {index}: {_plural(graph.nodes[index].loop_count, 'loop')}, path of {_plural(len(path), 'cut')}")
    return {"best_index": index, "path_indices": path}


def assemble_node(state: SandwichState) -> dict:
    graph = state["exploration"]
    alphabet: Alphabet = state["alphabet"]
    cuts = tuple(graph.cuts[i] for i in state["path_indices"])
    phi = compose_path(cuts, alphabet.rank)
    if not phi.is_certified():
        raise ContractViolation("composed cut automorphisms failed their inverse check")

    full_basis = phi.forward.images
    root = graph.nodes[graph.root].core
    lower = tuple(w for w in full_basis if is_member(root, w))
    count = graph.nodes[state["best_index"]].loop_count
    if len(lower) < count:
        raise ContractViolation(f"lower layer has {len(lower)} words but the chosen node has {count} loops")

    result = SandwichResult(
        upper_basis=state["upper_basis"],
        full_basis=full_basis,
        lower_layer=lower,
        best_count=count,
        path=cuts,
        path_indices=state["path_indices"],
        phi_composition=phi,
        best_node=state["best_index"],
        node_count=len(graph),
        closure_trace=state["closure_trace"],
    )
    return {"result": result}


def oracle_node(state: SandwichState) -> dict:
    logger.info("--- 🧪 ORACLE: bounded basis search ---")
    result: SandwichResult = state["result"]
    depth = min(3, get_settings().oracle_max_depth)
    hits = best_basis_hits(state["word_set"], state["alphabet"], depth)
    N = nielsen_reduce(state["word_set"])
    members_ok = all(oracle_membership(N, w) for w in result.lower_layer)
    consistent = hits <= result.best_count and members_ok
    if not consistent:
        raise ContractViolation(f"oracle found {hits} basis hits against best count {result.best_count}")
    return {"oracle_report": OracleReport(depth=depth, best_hits=hits, consistent=consistent)}


def _after_assemble(state: SandwichState) -> str:
    return "oracle_check" if state.get("oracle_mode") else END


# ============================================================================
# 2. GRAPH
# ============================================================================

@lru_cache(maxsize=1)
def build_sandwich_graph():
    workflow = StateGraph(SandwichState)
    workflow.add_node("closure",      closure_node)
    workflow.add_node("explore",      explore_node)
    workflow.add_node("select",       select_node)
    workflow.add_node("assemble",     assemble_node)
    workflow.add_node("oracle_check", oracle_node)

    workflow.add_edge(START,      "closure")
    workflow.add_edge("closure",  "explore")
    workflow.add_edge("explore",  "select")
    workflow.add_edge("select",   "assemble")
    workflow.add_conditional_edges(
        "assemble",
        _after_assemble,
        {"oracle_check": "oracle_check", END: END},
    )
    workflow.add_edge("oracle_check", END)
    return workflow.compile()


def run_sandwich_pipeline(
    Z: WordSet,
    E: Alphabet,
    limits: Optional[ExplorationLimits] = None,
    oracle: bool = False,
) -> SandwichState:
    """Runs every stage and returns the final state (``result`` holds the SandwichResult)."""
    return build_sandwich_graph().invoke({
        "word_set": Z,
        "alphabet": E,
        "limits": limits or ExplorationLimits.from_settings(),
        "oracle_mode": oracle,
    })
