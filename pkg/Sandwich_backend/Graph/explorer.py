"""
explorer.py — Exploring the Boundary Graph
==========================================
Starting from the core graph of G = ⟨Z⟩, apply every ∂_C breadth-first and
keep one node per canonical key. Boundaries never add edges, so the search
is finite. The node with the most basepoint loops gives a basis

    E″ = E^(φ_Cn ⋯ φ_C1)

meeting ⟨Z⟩ in as many elements as any basis can.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from Graph.boundary import boundary
from Graph.config import ExplorationLimits
from Graph.core_graph import CoreGraph, basepoint_loop_letters, canonical_key, core_of
from Graph.errors import RankGuardError, ResourceBudgetExceeded
from Graph.free_words import Alphabet, Automorphism, Word, WordSet, all_letters
from Graph.utils import logger, _plural
from Graph.whitehead import Cut, ReductionTrace, phi_of_cut


# ============================================================================
# 1. CUT ENUMERATION
# ============================================================================

@lru_cache(maxsize=None)
def _cuts_of_rank(rank: int) -> Tuple[Cut, ...]:
    letters = all_letters(rank)
    cuts: List[Cut] = []
    for e_star in letters:
        others = [c for c in letters if c != e_star]
        # bit i set puts others[i] in ₁D; mask 0 would make ₁D = {e★}
        for mask in range(1, 1 << len(others)):
            d1 = {e_star} | {c for i, c in enumerate(others) if mask >> i & 1}
            d0 = {e_star} | {c for i, c in enumerate(others) if not mask >> i & 1}
            cuts.append(Cut(rank, frozenset(d0), frozenset(d1), e_star))
    return tuple(cuts)


def enumerate_cuts(E: Alphabet) -> List[Cut]:
    return list(_cuts_of_rank(E.rank))


def check_rank(E: Alphabet, limits: ExplorationLimits) -> None:
    if E.rank > limits.max_rank:
        if not limits.force_rank:
            raise RankGuardError(
                f"rank {E.rank} exceeds the limit of {limits.max_rank}; "
                f"{len(all_letters(E.rank)) * (2 ** (2 * E.rank - 1) - 1)} cuts per node (use --force)"
            )
        logger.warning(f"⚠️ rank guard overridden for rank {E.rank}")


# ============================================================================
# 2. EXPLORATION GRAPH
# ============================================================================

@dataclass(frozen=True)
class ExplorationNode:
    core: CoreGraph
    key: bytes
    loop_letters: FrozenSet[int]
    parent: Optional[int] = None
    cut_index: Optional[int] = None
    depth: int = 0

    @property
    def loop_count(self) -> int:
        return len(self.loop_letters)


@dataclass(frozen=True)
class ExplorationGraph:
    alphabet: Alphabet
    cuts: Tuple[Cut, ...]
    nodes: Tuple[ExplorationNode, ...]
    root: int = 0

    @property
    def parent(self) -> Dict[int, Tuple[int, int]]:
        return {i: (n.parent, n.cut_index) for i, n in enumerate(self.nodes) if n.parent is not None}

    @property
    def edges(self) -> Dict[Tuple[int, int], int]:
        """Tree edges only: (node, cut index) -> child."""
        return {(n.parent, n.cut_index): i for i, n in enumerate(self.nodes) if n.parent is not None}

    def __len__(self) -> int:
        return len(self.nodes)


def explore(Z: WordSet, E: Alphabet, limits: Optional[ExplorationLimits] = None) -> ExplorationGraph:
    limits = limits or ExplorationLimits.from_settings()
    check_rank(E, limits)
    cuts = _cuts_of_rank(E.rank)

    root = core_of(Z, E)
    nodes: List[ExplorationNode] = [ExplorationNode(root, canonical_key(root), basepoint_loop_letters(root))]
    seen: Dict[bytes, int] = {nodes[0].key: 0}

    cursor = 0
    while cursor < len(nodes):
        current = nodes[cursor]
        for index, cut in enumerate(cuts):
            image = boundary(current.core, cut)
            key = canonical_key(image)
            if key in seen:
                continue
            if len(nodes) >= limits.node_budget:
                raise ResourceBudgetExceeded(limits.node_budget)
            seen[key] = len(nodes)
            nodes.append(ExplorationNode(image, key, basepoint_loop_letters(image), cursor, index, current.depth + 1))
            logger.debug(f"node {len(nodes) - 1}: {len(image.edges)} edges, {len(nodes[-1].loop_letters)} loops (from {cursor} by cut {index})")
        cursor += 1

    logger.info(f"🔍 exploration finished with {_plural(len(nodes), 'node')}")
    return ExplorationGraph(E, cuts, tuple(nodes))


def best_node(g: ExplorationGraph) -> int:
    """Most basepoint loops; the earliest node wins ties."""
    best = g.root
    for i, node in enumerate(g.nodes):
        if node.loop_count > g.nodes[best].loop_count:
            best = i
    return best


def cut_path(g: ExplorationGraph, node: int) -> List[int]:
    """Cut indices C₁, …, Cₙ leading from the root to ``node``."""
    path: List[int] = []
    while g.nodes[node].parent is not None:
        path.append(g.nodes[node].cut_index)
        node = g.nodes[node].parent
    return path[::-1]


def compose_path(cuts: Sequence[Cut], rank: int) -> Automorphism:
    """φ_Cn ⋯ φ_C1 in right-action order: φ_Cn acts first."""
    total = Automorphism.identity(rank)
    for cut in cuts:
        total = phi_of_cut(cut).then(total)
    return total


# ============================================================================
# 3. SANDWICH
# ============================================================================

@dataclass(frozen=True)
class SandwichResult:
    upper_basis: Tuple[Word, ...]
    full_basis: Tuple[Word, ...]
    lower_layer: Tuple[Word, ...]
    best_count: int
    path: Tuple[Cut, ...]
    path_indices: Tuple[int, ...]
    phi_composition: Automorphism
    best_node: int
    node_count: int
    closure_trace: ReductionTrace

    @property
    def lower_count(self) -> int:
        return len(self.lower_layer)


def sandwich(
    Z: WordSet,
    E: Alphabet,
    limits: Optional[ExplorationLimits] = None,
    oracle: bool = False,
) -> SandwichResult:
    """Upper layer, lower layer and the basis E″ for ⟨Z⟩."""
    from Graph.pipeline import run_sandwich_pipeline

    state = run_sandwich_pipeline(Z, E, limits or ExplorationLimits.from_settings(), oracle=oracle)
    return state["result"]
