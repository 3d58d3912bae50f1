"""
boundary.py — The Boundary Operation ∂_C
========================================
Turns the core graph of H into the core graph of ∂_C H ≤ H^φ̄_C.

    1. augment   every vertex v gets a d̄★-neighbour "v·d̄★" (fresh if missing)
    2. relabel   edge(v →e w)  ↦  edge(v·d̄★^α →e w·d̄★^β),  e ∈ ₐE_β
    3. restrict  basepoint component, then fold
    4. trim

Labels in phase 2 stand for e^φ_C; keeping the letter e reads the result
back over E, which is the pull-back through φ̄_C.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from Graph.core_graph import (
    CoreGraph,
    Edge,
    LabeledGraph,
    basepoint_component,
    certify,
    core_of,
    fold,
    is_member,
    trim,
)
from Graph.errors import AlphabetMismatchError, ContractViolation
from Graph.free_words import Alphabet, Word, WordSet
from Graph.whitehead import Cut, cut_covers, phi_of_cut, whitehead_graph


@dataclass(frozen=True)
class BoundaryStep:
    input: CoreGraph
    cut: Cut
    augmented: LabeledGraph
    relabeled: LabeledGraph
    output: CoreGraph


def boundary_step(g: CoreGraph, c: Cut, alphabet: Optional[Alphabet] = None) -> BoundaryStep:
    if g.rank != c.rank:
        raise AlphabetMismatchError(f"cut of rank {c.rank} applied to a core graph of rank {g.rank}")
    d = c.d_star
    gen = abs(d)
    mark = alphabet.symbol(-d) if alphabet is not None else f"({-d})"

    # resolve v·d̄★ for every vertex before touching any edge
    shifted: Dict[int, int] = {}
    labels: List[Tuple[int, str]] = []
    count = g.vertex_count
    for v in range(g.vertex_count):
        if d > 0:
            neighbour = g.incoming.get((v, gen))
        else:
            neighbour = g.outgoing.get((v, gen))
        if neighbour is None:
            neighbour = count
            count += 1
            labels.append((neighbour, f"{v}·{mark}"))
        shifted[v] = neighbour
    augmented = LabeledGraph(g.rank, count, g.edges, g.basepoint, tuple(labels))

    edges: List[Edge] = []
    for s, label, t in g.edges:
        alpha, beta = c.exponents(label)
        edges.append((shifted[s] if alpha else s, label, shifted[t] if beta else t))
    relabeled = LabeledGraph(g.rank, count, tuple(edges), g.basepoint, tuple(labels))

    output = certify(trim(fold(basepoint_component(relabeled))))
    if len(output.edges) > len(g.edges):
        raise ContractViolation(f"boundary grew the edge count ({len(g.edges)} -> {len(output.edges)})")
    return BoundaryStep(g, c, augmented, relabeled, output)


def boundary(g: CoreGraph, c: Cut) -> CoreGraph:
    return boundary_step(g, c).output


def boundary_of_subgroup(Z: WordSet, E: Alphabet, c: Cut) -> CoreGraph:
    return boundary(core_of(Z, E), c)


def check_membership_transfer(g: CoreGraph, c: Cut, z: Word, E: Optional[Alphabet] = None) -> bool:
    """For z ∈ H: when C cuts Wh({z}), z^φ̄_C must lie in ∂_C H."""
    if not is_member(g, z):
        raise ContractViolation("the word is not a member of the subgroup")
    alphabet = E if E is not None else Alphabet.of_rank(g.rank)
    if not cut_covers(c, whitehead_graph([z], alphabet)):
        return True
    return is_member(boundary(g, c), phi_of_cut(c).apply_inverse(z))
