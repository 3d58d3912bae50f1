"""
core_graph.py — Stallings Core Graphs
=====================================
A subgroup H = ⟨Z⟩ is represented by its core graph: a folded, basepointed
graph whose edges carry generator labels and whose reduced closed paths at
the basepoint read exactly the elements of H.

Pipeline:  lollipop(z) for z ∈ Z  →  wedge  →  fold  →  trim  →  certify

Edges are triples (source, generator code > 0, target). Reading an edge
backwards reads the inverse letter.
"""

import random
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from Graph.errors import AlphabetMismatchError, ContractViolation
from Graph.free_words import Alphabet, Word, WordSet, concat, cyclic_decomposition, invert

Edge = Tuple[int, int, int]


# ============================================================================
# 1. GRAPH TYPES
# ============================================================================

@dataclass(frozen=True)
class LabeledGraph:
    """Basepointed graph with generator-labelled edges (not necessarily folded)."""

    rank: int
    vertex_count: int
    edges: Tuple[Edge, ...]
    basepoint: int = 0
    pending_labels: Tuple[Tuple[int, str], ...] = ()

    def degree(self) -> Counter:
        deg: Counter = Counter()
        for s, _, t in self.edges:
            deg[s] += 1
            deg[t] += 1
        return deg


@dataclass(frozen=True)
class CoreGraph(LabeledGraph):
    """A LabeledGraph certified FOLDED and CORE. Obtain through certify()."""

    @cached_property
    def outgoing(self) -> Dict[Tuple[int, int], int]:
        return {(s, label): t for s, label, t in self.edges}

    @cached_property
    def incoming(self) -> Dict[Tuple[int, int], int]:
        return {(t, label): s for s, label, t in self.edges}


# ============================================================================
# 2. CONSTRUCTION
# ============================================================================

def _add_step(edges: List[Edge], src: int, code: int, dst: int) -> None:
    # an inverse letter is an edge traversed against its direction
    if code > 0:
        edges.append((src, code, dst))
    else:
        edges.append((dst, -code, src))


def lollipop(w: Word, rank: Optional[int] = None) -> LabeledGraph:
    """Stem reading p, then a cycle reading c, where w = p·c·p⁻¹."""
    if rank is None:
        rank = max((abs(c) for c in w.letters), default=0)
    stem, cycle = cyclic_decomposition(w)
    edges: List[Edge] = []
    count = 1
    current = 0
    for code in stem.letters:
        _add_step(edges, current, code, count)
        current = count
        count += 1
    hub = current
    for i, code in enumerate(cycle.letters):
        if i == len(cycle.letters) - 1:
            target = hub
        else:
            target = count
            count += 1
        _add_step(edges, current, code, target)
        current = target
    return LabeledGraph(rank, count, tuple(edges), 0)


def wedge(graphs: Sequence[LabeledGraph], rank: Optional[int] = None) -> LabeledGraph:
    if rank is None:
        rank = max((g.rank for g in graphs), default=0)
    edges: List[Edge] = []
    count = 1
    for g in graphs:
        mapping: Dict[int, int] = {}
        for v in range(g.vertex_count):
            if v == g.basepoint:
                mapping[v] = 0
            else:
                mapping[v] = count
                count += 1
        edges.extend((mapping[s], label, mapping[t]) for s, label, t in g.edges)
    return LabeledGraph(rank, count, tuple(edges), 0)


def _compact(rank: int, vertices: Iterable[int], edges: Iterable[Edge], basepoint: int) -> LabeledGraph:
    """Renumber so the basepoint is 0 and the rest keep their relative order."""
    others = sorted(v for v in set(vertices) if v != basepoint)
    number = {basepoint: 0}
    number.update({v: i for i, v in enumerate(others, start=1)})
    renamed = sorted({(number[s], label, number[t]) for s, label, t in edges})
    return LabeledGraph(rank, len(number), tuple(renamed), 0)


def fold(g: LabeledGraph, rng: Optional[random.Random] = None) -> LabeledGraph:
    """Identify same-label edges sharing a source or a target until none remain.

    ``rng`` shuffles the merge order on every pass; the result does not depend
    on it.
    """
    parent = list(range(g.vertex_count))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            parent[hi] = lo

    edges = list(g.edges)
    changed = True
    while changed:
        changed = False
        if rng is not None:
            rng.shuffle(edges)
        outgoing: Dict[Tuple[int, int], int] = {}
        incoming: Dict[Tuple[int, int], int] = {}
        kept: List[Edge] = []
        for s, label, t in edges:
            s, t = find(s), find(t)
            if (s, label) in outgoing:
                union(t, outgoing[(s, label)])
                changed = True
                continue
            if (t, label) in incoming:
                union(s, incoming[(t, label)])
                changed = True
                continue
            outgoing[(s, label)] = t
            incoming[(t, label)] = s
            kept.append((s, label, t))
        edges = kept

    edges = [(find(s), label, find(t)) for s, label, t in edges]
    return _compact(g.rank, (find(v) for v in range(g.vertex_count)), edges, find(g.basepoint))


def _component(g: LabeledGraph) -> Set[int]:
    neighbours: Dict[int, Set[int]] = defaultdict(set)
    for s, _, t in g.edges:
        neighbours[s].add(t)
        neighbours[t].add(s)
    alive = {g.basepoint}
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for w in neighbours[v]:
            if w not in alive:
                alive.add(w)
                queue.append(w)
    return alive


def basepoint_component(g: LabeledGraph) -> LabeledGraph:
    alive = _component(g)
    return _compact(g.rank, alive, (e for e in g.edges if e[0] in alive), g.basepoint)


def trim(g: LabeledGraph) -> LabeledGraph:
    """Keep the basepoint component, then strip hanging trees."""
    alive = _component(g)
    edges = [e for e in g.edges if e[0] in alive]
    degree: Counter = Counter()
    incident: Dict[int, List[int]] = defaultdict(list)
    for idx, (s, _, t) in enumerate(edges):
        degree[s] += 1
        degree[t] += 1
        incident[s].append(idx)
        if t != s:
            incident[t].append(idx)

    removed: Set[int] = set()
    stack = [v for v in alive if v != g.basepoint and degree[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive or degree[v] > 1:
            continue
        alive.discard(v)
        for idx in incident[v]:
            if idx in removed:
                continue
            removed.add(idx)
            s, _, t = edges[idx]
            other = t if s == v else s
            degree[s] -= 1
            degree[t] -= 1
            if other != g.basepoint and other in alive and degree[other] <= 1:
                stack.append(other)

    kept = [e for idx, e in enumerate(edges) if idx not in removed]
    return _compact(g.rank, alive, kept, g.basepoint)


def certify(g: LabeledGraph) -> CoreGraph:
    """Promote g to a CoreGraph, raising ContractViolation unless folded and core."""
    outgoing: Set[Tuple[int, int]] = set()
    incoming: Set[Tuple[int, int]] = set()
    for s, label, t in g.edges:
        if not 1 <= label <= g.rank:
            raise AlphabetMismatchError(f"edge label {label} outside rank {g.rank}")
        if (s, label) in outgoing or (t, label) in incoming:
            raise ContractViolation(f"graph is not folded at label {label}")
        outgoing.add((s, label))
        incoming.add((t, label))
    degree = g.degree()
    for v in range(g.vertex_count):
        if v != g.basepoint and degree[v] < 2:
            raise ContractViolation(f"vertex {v} has degree {degree[v]}; graph is not a core")
    trimmed = trim(g)
    if len(trimmed.edges) != len(g.edges) or trimmed.vertex_count != g.vertex_count:
        raise ContractViolation("graph has vertices outside the basepoint component")
    return CoreGraph(g.rank, g.vertex_count, tuple(g.edges), g.basepoint)


def core_of(Z: Iterable[Word], E: Alphabet) -> CoreGraph:
    words = [E.check(z) for z in Z]
    graph = wedge([lollipop(z, E.rank) for z in words], rank=E.rank)
    return certify(trim(fold(graph)))


def core_from_edges(rank: int, vertex_count: int, edges: Iterable[Edge], basepoint: int = 0) -> CoreGraph:
    return certify(LabeledGraph(rank, vertex_count, tuple(edges), basepoint))


# ============================================================================
# 3. QUERIES
# ============================================================================

def trace(g: CoreGraph, w: Word) -> Optional[int]:
    """End vertex of the path reading w from the basepoint, or None."""
    v = g.basepoint
    for code in w.letters:
        if abs(code) > g.rank:
            raise AlphabetMismatchError(f"word uses generator {abs(code)} beyond rank {g.rank}")
        nxt = g.outgoing.get((v, code)) if code > 0 else g.incoming.get((v, -code))
        if nxt is None:
            return None
        v = nxt
    return v


def is_member(g: CoreGraph, w: Word) -> bool:
    return trace(g, w) == g.basepoint


def basepoint_loop_letters(g: CoreGraph) -> FrozenSet[int]:
    """E ∩ H as positive generator codes."""
    return frozenset(label for s, label, t in g.edges if s == t == g.basepoint)


def rank_of(g: LabeledGraph) -> int:
    return len(g.edges) - g.vertex_count + 1


def _bfs(g: CoreGraph, visit: Callable[[int, int, int, int], None]) -> Dict[int, int]:
    """Deterministic traversal: outgoing labels in order, then incoming labels.

    ``visit(parent, signed_code, child, child_number)`` fires for each newly
    discovered vertex; returns the discovery numbering.
    """
    order = {g.basepoint: 0}
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for label in range(1, g.rank + 1):
            w = g.outgoing.get((v, label))
            if w is not None and w not in order:
                order[w] = len(order)
                visit(v, label, w, order[w])
                queue.append(w)
        for label in range(1, g.rank + 1):
            u = g.incoming.get((v, label))
            if u is not None and u not in order:
                order[u] = len(order)
                visit(v, -label, u, order[u])
                queue.append(u)
    return order


def canonical_key(g: CoreGraph) -> bytes:
    order = _bfs(g, lambda *_: None)
    numbered = sorted((order[s], label, order[t]) for s, label, t in g.edges)
    body = ";".join(f"{s},{label},{t}" for s, label, t in numbered)
    return f"{g.rank}|{len(order)}|{body}".encode("ascii")


def subgroup_basis(g: CoreGraph) -> WordSet:
    """Schreier basis from the BFS spanning tree."""
    path: Dict[int, Word] = {g.basepoint: Word()}
    tree: Set[Edge] = set()

    def visit(parent: int, code: int, child: int, _number: int) -> None:
        path[child] = concat(path[parent], Word((code,)))
        tree.add((parent, code, child) if code > 0 else (child, -code, parent))

    order = _bfs(g, visit)
    basis: List[Word] = []
    for s, label, t in sorted(g.edges, key=lambda e: (order[e[0]], e[1], order[e[2]])):
        if (s, label, t) in tree:
            continue
        basis.append(concat(concat(path[s], Word((label,))), invert(path[t])))
    return WordSet.of(basis)
