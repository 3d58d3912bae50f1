"""
export_manager.py — Report Formats (JSON / DOT / JSON lines / text)
===================================================================
Turns library objects into the pydantic report models of Graph.state and
renders them for the CLI.

Supported formats:
    - JSON       : every report model, plus word sets and core graphs that
                   can be read back in
    - DOT        : Whitehead graphs, core graphs and exploration graphs
    - JSON lines : one NodeRecord per exploration node
    - text       : human layout of any report (formatting only)

Usage:
    from Graph.export_manager import core_to_model, core_dot
    print(core_to_model(core, alphabet).model_dump_json(by_alias=True))
    sys.stdout.writelines(core_dot(core, alphabet))
"""

import json
from collections import Counter
from typing import Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ValidationError

from Graph.boundary import BoundaryStep
from Graph.core_graph import CoreGraph, LabeledGraph, core_from_edges, subgroup_basis
from Graph.errors import WordSyntaxError
from Graph.explorer import ExplorationGraph, SandwichResult
from Graph.free_words import Alphabet, Automorphism, Word, WordSet
from Graph.state import (
    BoundaryReport,
    ClosureReport,
    CoreEdgeModel,
    CoreGraphModel,
    CutModel,
    ExplorationSummary,
    NodeRecord,
    OracleReport,
    ReductionReport,
    ReductionStepModel,
    SandwichReport,
    SubbasisReport,
    WhGraphModel,
    WordSetModel,
)
from Graph.whitehead import BASEPOINT, Cut, ReductionTrace, SubbasisVerdict, WhGraph, phi_of_cut


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r'\"'))


def _words(E: Alphabet, words: Sequence[Word]) -> List[str]:
    return [E.format_word(w) for w in words]


def _vertex_name(E: Alphabet, v: int) -> str:
    return "1" if v == BASEPOINT else E.symbol(v)


def _map_images(E: Alphabet, phi: Automorphism, inverse: bool = False) -> dict:
    images = phi.inverse.images if inverse else phi.forward.images
    return {E.symbol(g): E.format_word(images[g - 1]) for g in E.codes()}


# ============================================================================
# 1. WORD SETS
# ============================================================================

def word_set_to_json(Z: WordSet, E: Alphabet) -> str:
    return WordSetModel(generators=str(E), words=_words(E, Z.words)).model_dump_json()


def word_set_from_json(text: str) -> Tuple[Alphabet, WordSet]:
    try:
        model = WordSetModel.model_validate_json(text)
    except ValidationError as exc:
        raise WordSyntaxError(f"word set JSON rejected: {exc.errors()[0].get('msg')}") from exc
    E = Alphabet.from_string(model.generators)
    return E, WordSet.of(E.parse_word(t) for t in model.words)


# ============================================================================
# 2. WHITEHEAD GRAPHS
# ============================================================================

def wh_graph_to_model(g: WhGraph) -> WhGraphModel:
    E = g.alphabet
    return WhGraphModel(
        vertices=[_vertex_name(E, v) for v in g.vertices],
        edges=[[_vertex_name(E, u), _vertex_name(E, v)] for u, v in sorted(g.edges)],
    )


def wh_graph_dot(g: WhGraph, name: str = "whitehead") -> Iterator[str]:
    """Undirected DOT; the basepoint is drawn as a double circle."""
    E = g.alphabet
    yield f"graph {name} {{\n"
    for v in g.vertices:
        shape = "doublecircle" if v == BASEPOINT else "circle"
        yield f"  {_gvquote(_vertex_name(E, v))} [shape={shape}];\n"
    for u, v in sorted(g.edges):
        yield f"  {_gvquote(_vertex_name(E, u))} -- {_gvquote(_vertex_name(E, v))};\n"
    yield "}\n"


# ============================================================================
# 3. CORE GRAPHS
# ============================================================================

def core_to_model(g: CoreGraph, E: Alphabet) -> CoreGraphModel:
    return CoreGraphModel(
        basepoint=g.basepoint,
        vertices=g.vertex_count,
        edges=[CoreEdgeModel(source=s, label=E.symbol(label), target=t) for s, label, t in g.edges],
    )


def core_from_model(model: CoreGraphModel, E: Alphabet) -> CoreGraph:
    """Rebuild and re-certify a core graph written by core_to_model."""
    index = {symbol: code for code, symbol in zip(E.codes(), E.generators)}
    edges = []
    for edge in model.edges:
        if edge.label not in index:
            raise WordSyntaxError(f"edge label {edge.label!r} is not a generator of {E}")
        edges.append((edge.source, index[edge.label], edge.target))
    return core_from_edges(E.rank, model.vertices, edges, model.basepoint)


def core_dot(g: LabeledGraph, E: Alphabet, name: str = "core") -> Iterator[str]:
    """Directed DOT. Vertices added by a boundary step keep their v·d̄ label."""
    pending = dict(g.pending_labels)
    yield f"digraph {name} {{\n"
    yield "  rankdir=LR;\n"
    for v in range(g.vertex_count):
        shape = "doublecircle" if v == g.basepoint else "circle"
        label = pending.get(v, str(v))
        yield f"  {v} [shape={shape} label={_gvquote(label)}];\n"
    for s, label, t in g.edges:
        yield f"  {s} -> {t} [label={_gvquote(E.symbol(label))}];\n"
    yield "}\n"


# ============================================================================
# 4. CUTS AND REPORTS
# ============================================================================

def cut_to_model(c: Cut, E: Alphabet, index: Optional[int] = None) -> CutModel:
    order = E.letters()
    return CutModel(
        index=index,
        e_star=E.symbol(c.e_star),
        d_star=E.symbol(c.d_star),
        eta=c.eta,
        d0=[E.symbol(x) for x in order if x in c.d0],
        d1=[E.symbol(x) for x in order if x in c.d1],
        phi=_map_images(E, phi_of_cut(c)),
    )


def reduction_report(trace: ReductionTrace, E: Alphabet) -> ReductionReport:
    return ReductionReport(
        generators=str(E),
        input=_words(E, trace.initial_set.words),
        input_length=sum(len(w) for w in trace.initial_set),
        steps=[
            ReductionStepModel(
                cut_vertex=E.symbol(step.cut_vertex),
                case=step.case,
                cut=cut_to_model(step.cut, E),
                total_length=step.total_length,
            )
            for step in trace.steps
        ],
        phi=_map_images(E, trace.phi_total),
        phi_inverse=_map_images(E, trace.phi_total, inverse=True),
        final=_words(E, trace.final_set.words),
        final_length=sum(len(w) for w in trace.final_set),
    )


def closure_report(trace: ReductionTrace, basis: Sequence[Word], E: Alphabet) -> ClosureReport:
    return ClosureReport(
        generators=str(E),
        input=_words(E, trace.initial_set.words),
        basis=_words(E, basis),
        rank=len(basis),
    )


def subbasis_report(verdict: SubbasisVerdict, E: Alphabet, oracle_agrees: Optional[bool] = None) -> SubbasisReport:
    return SubbasisReport(
        generators=str(E),
        input=_words(E, verdict.trace.initial_set.words),
        verdict=verdict.is_subbasis,
        reason=verdict.reason,
        final=_words(E, verdict.trace.final_set.words),
        extended_basis=_words(E, verdict.extended_basis),
        oracle_agrees=oracle_agrees,
    )


def boundary_report(step: BoundaryStep, Z: WordSet, E: Alphabet, index: Optional[int] = None) -> BoundaryReport:
    return BoundaryReport(
        generators=str(E),
        input=_words(E, Z.words),
        cut=cut_to_model(step.cut, E, index),
        input_edges=len(step.input.edges),
        output_edges=len(step.output.edges),
        core=core_to_model(step.output, E),
        basis=_words(E, subgroup_basis(step.output).words),
    )


def exploration_summary(g: ExplorationGraph) -> ExplorationSummary:
    histogram = Counter(node.loop_count for node in g.nodes)
    return ExplorationSummary(
        node_count=len(g),
        max_edges=max(len(node.core.edges) for node in g.nodes),
        loop_histogram=dict(sorted(histogram.items())),
    )


def sandwich_report(
    result: SandwichResult,
    Z: WordSet,
    E: Alphabet,
    exploration: Optional[ExplorationGraph] = None,
    oracle: Optional[OracleReport] = None,
) -> SandwichReport:
    return SandwichReport(
        generators=str(E),
        input=_words(E, Z.words),
        upper_basis=_words(E, result.upper_basis),
        upper_rank=len(result.upper_basis),
        full_basis=_words(E, result.full_basis),
        lower_layer=_words(E, result.lower_layer),
        best_count=result.best_count,
        lower_count=result.lower_count,
        best_node=result.best_node,
        node_count=result.node_count,
        path=[cut_to_model(c, E, i) for c, i in zip(result.path, result.path_indices)],
        exploration=exploration_summary(exploration) if exploration is not None else None,
        oracle=oracle,
    )


# ============================================================================
# 5. EXPLORATION GRAPHS
# ============================================================================

def exploration_json_lines(g: ExplorationGraph) -> Iterator[str]:
    for node in g.nodes:
        record = NodeRecord(
            key=node.key.decode("ascii"),
            edges=len(node.core.edges),
            loopCount=node.loop_count,
            parent=node.parent,
            cut=node.cut_index,
            depth=node.depth,
        )
        yield record.model_dump_json() + "\n"


def exploration_dot(g: ExplorationGraph, highlight: Optional[int] = None) -> Iterator[str]:
    yield "digraph exploration {\n"
    for i, node in enumerate(g.nodes):
        label = _gvquote(f"{i}\\n{len(node.core.edges)} edges, {node.loop_count} loops")
        style = " style=filled fillcolor=gold" if i == highlight else ""
        shape = "doublecircle" if i == g.root else "box"
        yield f"  n{i} [shape={shape} label={label}{style}];\n"
    for (parent, cut), child in sorted(g.edges.items()):
        yield f"  n{parent} -> n{child} [label={_gvquote(str(cut))}];\n"
    yield "}\n"


# ============================================================================
# 6. TEXT
# ============================================================================

def _text_value(value) -> str:
    if isinstance(value, list):
        if value and isinstance(value[0], dict):
            return "\n" + "\n".join(f"      - {json.dumps(item, ensure_ascii=False, sort_keys=True)}" for item in value)
        return ", ".join(str(v) for v in value) if value else "(none)"
    if isinstance(value, dict):
        return ", ".join(f"{k} ↦ {v}" for k, v in value.items()) if value else "(none)"
    return str(value)


def render_text(report: BaseModel, title: str) -> str:
    """Human layout of a report model. Carries the same numbers as the JSON."""
    lines = ["=" * 60, f"📋 {title}", "=" * 60]
    for field, value in report.model_dump(exclude_none=True).items():
        lines.append(f"   {field.replace('_', ' ')}: {_text_value(value)}")
    lines.append("=" * 60)
    return "\n".join(lines) + "\n"
