"""
whitehead.py — Whitehead Graphs, Cuts and the Cut-Vertex Algorithm
==================================================================
Vertices of a Whitehead graph are the letters of E^±1 (signed codes) plus
the basepoint ``1``, encoded as ``BASEPOINT = 0``. A word e₁⋯eₙ contributes
the edges (ēᵢ, eᵢ₊₁) for i = 0..n with e₀ = eₙ₊₁ = 1.

A Cut (₀D, ₁D, e★) covers E^±1 with two blocks meeting in e★. Its
automorphism φ_C fixes d★ and sends every other generator e to
d★^χ(e) · e · d̄★^χ(ē), where χ is the indicator of ₁D.

The cut-vertex algorithm applies φ̄_C for cuts found at Whitehead
cut-vertices until none is left; each step strictly shortens the word set.
From the final set we read off a basis of the smallest free factor holding
⟨Z⟩, and decide whether Z is part of a basis.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from Graph.errors import AlphabetMismatchError, ContractViolation
from Graph.free_words import (
    Alphabet,
    Automorphism,
    GeneratorMap,
    Word,
    WordSet,
    all_letters,
    letter_rank,
    reduce,
    support,
    total_length,
)
from Graph.utils import logger, _plural

BASEPOINT = 0


# ============================================================================
# 1. WHITEHEAD GRAPHS
# ============================================================================

@dataclass(frozen=True)
class WhGraph:
    """Wh(Z rel E). ``generators`` restricts the vertex set to a support alphabet."""

    alphabet: Alphabet
    generators: FrozenSet[int]
    edges: FrozenSet[Tuple[int, int]]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return (BASEPOINT,) + tuple(c for c in self.alphabet.letters() if abs(c) in self.generators)

    def to_networkx(self) -> nx.Graph:
        """Undirected view; connectivity never depends on edge orientation."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph


def whitehead_graph(Z: Iterable[Word], E: Alphabet, generators: Optional[Iterable[int]] = None) -> WhGraph:
    gens = frozenset(E.codes()) if generators is None else frozenset(generators)
    edges = set()
    for z in Z:
        if z.is_identity:
            continue
        if any(abs(c) not in gens for c in z.letters):
            raise AlphabetMismatchError(f"word {E.format_word(z)} leaves the vertex set of the Whitehead graph")
        seq = (BASEPOINT,) + z.letters + (BASEPOINT,)
        for i in range(len(seq) - 1):
            edges.add((-seq[i], seq[i + 1]))  # -0 == 0 keeps the basepoint fixed
    return WhGraph(E, gens, frozenset(edges))


def is_whitehead_cut_vertex(g: WhGraph, vertex: int) -> bool:
    if vertex == BASEPOINT or vertex not in g.vertices:
        return False
    graph = g.to_networkx()
    if not nx.is_connected(graph):
        return True
    rest = graph.subgraph([v for v in graph.nodes if v != vertex])
    return not nx.is_connected(rest)


def find_cut_vertex(g: WhGraph) -> Optional[int]:
    """First Whitehead cut-vertex in letter order, or None.

    A disconnected graph makes every letter a cut-vertex; the least one is
    returned and the caller is expected to run Case 2 of the subroutine.
    """
    graph = g.to_networkx()
    letters = [v for v in g.vertices if v != BASEPOINT]
    if not nx.is_connected(graph):
        return letters[0] if letters else None
    for vertex in letters:
        rest = graph.subgraph([v for v in graph.nodes if v != vertex])
        if not nx.is_connected(rest):
            return vertex
    return None


# ============================================================================
# 2. CUTS AND THEIR AUTOMORPHISMS
# ============================================================================

@dataclass(frozen=True)
class Cut:
    rank: int
    d0: FrozenSet[int]
    d1: FrozenSet[int]
    e_star: int

    def __post_init__(self):
        universe = frozenset(all_letters(self.rank))
        if self.e_star not in universe:
            raise ValueError(f"e★ = {self.e_star} is not a letter of rank {self.rank}")
        if self.d0 | self.d1 != universe:
            raise ValueError("₀D ∪ ₁D must be all of E^±1")
        if self.d0 & self.d1 != {self.e_star}:
            raise ValueError("₀D ∩ ₁D must be exactly {e★}")
        if self.d1 == {self.e_star}:
            raise ValueError("₁D must not be {e★}")

    def chi(self, code: int) -> int:
        return 1 if code in self.d1 else 0

    @property
    def eta(self) -> int:
        return self.chi(-self.e_star)

    @property
    def d_star(self) -> int:
        return self.e_star if self.eta else -self.e_star

    @property
    def pivot(self) -> int:
        """The generator underlying e★ (and d★)."""
        return abs(self.e_star)

    def block(self, alpha: int, beta: int) -> FrozenSet[int]:
        """ₐD_β = ₐD ∩ (ᵦD)⁻¹."""
        left = self.d1 if alpha else self.d0
        right = self.d1 if beta else self.d0
        return frozenset(c for c in left if -c in right)

    def generator_block(self, alpha: int, beta: int) -> FrozenSet[int]:
        """ₐE_β = E ∩ ₐD_β."""
        return frozenset(c for c in self.block(alpha, beta) if c > 0)

    def exponents(self, generator: int) -> Tuple[int, int]:
        """The (α, β) with generator ∈ ₐE_β and generator^φ = d★^α · generator · d̄★^β."""
        if generator == self.pivot:
            return self.eta, self.eta
        return self.chi(generator), self.chi(-generator)


def phi_of_cut(c: Cut) -> Automorphism:
    d = c.d_star
    forward: List[Word] = []
    backward: List[Word] = []
    for gen in range(1, c.rank + 1):
        if gen == c.pivot:
            forward.append(Word((gen,)))
            backward.append(Word((gen,)))
            continue
        a, b = c.chi(gen), c.chi(-gen)
        forward.append(reduce([d] * a + [gen] + [-d] * b))
        backward.append(reduce([-d] * a + [gen] + [d] * b))
    return Automorphism(GeneratorMap(tuple(forward)), GeneratorMap(tuple(backward)))


def cut_covers(c: Cut, g: WhGraph) -> bool:
    """True iff every edge lies inside ₀D ∪ {1} or inside ₁D."""
    if g.alphabet.rank != c.rank:
        raise AlphabetMismatchError(f"cut of rank {c.rank} against a graph of rank {g.alphabet.rank}")
    left = c.d0 | {BASEPOINT}
    for u, v in g.edges:
        if (u in left and v in left) or (u in c.d1 and v in c.d1):
            continue
        return False
    return True


# ============================================================================
# 3. CUT-VERTEX SUBROUTINE
# ============================================================================

def _subroutine(Z: WordSet, E: Alphabet, e_star: int) -> Tuple[Cut, int]:
    """Returns the cut and which case (1 connected, 2 disconnected) produced it."""
    ez = support(Z, E)
    graph = whitehead_graph(Z, E, generators=ez).to_networkx()
    universe = all_letters(E.rank)
    inside = frozenset(c for c in universe if abs(c) in ez)
    outside = frozenset(c for c in universe if abs(c) not in ez)

    if nx.is_connected(graph):
        if e_star == BASEPOINT or e_star not in graph:
            raise ContractViolation(f"{e_star} is not a vertex of Wh(Z rel E_Z)")
        rest = graph.subgraph([v for v in graph.nodes if v != e_star])
        x0 = nx.node_connected_component(rest, BASEPOINT)
        if len(x0) == rest.number_of_nodes():
            raise ContractViolation(f"{E.symbol(e_star)} is not a Whitehead cut-vertex")
        x1 = set(rest.nodes) - x0
        d0 = (frozenset(x0) & inside) | {e_star} | outside
        d1 = (frozenset(x1) & inside) | {e_star}
        return Cut(E.rank, frozenset(d0), frozenset(d1), e_star), 1

    component = frozenset(nx.node_connected_component(graph, BASEPOINT)) & inside
    unpaired = sorted((c for c in component if -c not in component), key=letter_rank)
    chosen = unpaired[0]
    d0 = component | outside
    d1 = (inside - component) | {chosen}
    return Cut(E.rank, frozenset(d0), frozenset(d1), chosen), 2


def cut_subroutine(Z: WordSet, E: Alphabet, e_star: int) -> Cut:
    return _subroutine(Z, E, e_star)[0]


# ============================================================================
# 4. CUT-VERTEX ALGORITHM
# ============================================================================

@dataclass(frozen=True)
class ReductionStep:
    cut: Cut
    total_length: int
    cut_vertex: int
    case: int


@dataclass(frozen=True)
class ReductionTrace:
    """Z′ = Z^Φ̄ together with the cuts that produced it."""

    initial_set: WordSet
    steps: Tuple[ReductionStep, ...]
    phi_total: Automorphism
    final_set: WordSet


def cut_vertex_algorithm(Z: WordSet, E: Alphabet) -> ReductionTrace:
    current = Z
    phi = Automorphism.identity(E.rank)
    steps: List[ReductionStep] = []
    length = total_length(current)

    while True:
        ez = support(current, E)
        vertex = find_cut_vertex(whitehead_graph(current, E, generators=ez))
        if vertex is None:
            break
        cut, case = _subroutine(current, E, vertex)
        step = phi_of_cut(cut)
        reduced = WordSet.of(step.apply_inverse(w) for w in current)
        new_length = total_length(reduced)
        if new_length >= length:
            raise ContractViolation(f"cut at {E.symbol(vertex)} did not shorten the word set ({length} -> {new_length})")
        logger.debug(f"cut-vertex {E.symbol(vertex)} (case {case}): total length {length} -> {new_length}")
        phi = step.then(phi)
        steps.append(ReductionStep(cut, new_length, vertex, case))
        current, length = reduced, new_length

    logger.debug(f"cut-vertex algorithm finished after {_plural(len(steps), 'step')}")
    return ReductionTrace(Z, tuple(steps), phi, current)


def closure_from_trace(trace: ReductionTrace, E: Alphabet) -> List[Word]:
    """The Φ-images of the generators Z′ actually uses."""
    used = support(trace.final_set, E)
    return [trace.phi_total.forward.images[g - 1] for g in sorted(used)]


def closure_basis(Z: WordSet, E: Alphabet) -> List[Word]:
    """Basis of Cl(Z), the smallest free factor containing ⟨Z⟩."""
    return closure_from_trace(cut_vertex_algorithm(Z, E), E)


def closure_rank(Z: WordSet, E: Alphabet) -> int:
    return len(closure_basis(Z, E))


# ============================================================================
# 5. SUB-BASIS TEST
# ============================================================================

@dataclass(frozen=True)
class SubbasisVerdict:
    is_subbasis: bool
    reason: str
    trace: ReductionTrace
    extended_basis: Tuple[Word, ...] = ()
    basis_map: Optional[Automorphism] = field(default=None, compare=False)


def is_subbasis(Z: WordSet, E: Alphabet) -> SubbasisVerdict:
    trace = cut_vertex_algorithm(Z, E)
    if Z.meets_inverse():
        return SubbasisVerdict(False, "Z contains a word together with its inverse", trace)
    if not all(w.is_letter for w in trace.final_set):
        return SubbasisVerdict(False, "the reduced set still has words longer than one letter", trace)

    # flip generators whose inverse is what Z′ holds, so every z ∈ Z is an image
    flipped = {-w.letters[0] for w in trace.final_set if w.letters[0] < 0}
    flip_map = GeneratorMap(tuple(Word((-g,)) if g in flipped else Word((g,)) for g in E.codes()))
    basis_map = Automorphism(flip_map, flip_map).then(trace.phi_total)
    return SubbasisVerdict(True, "Z′ consists of letters", trace, basis_map.forward.images, basis_map)
