"""
oracles.py — Brute-Force Cross-Checks
=====================================
Slow, independent answers used to certify the graph-based pipeline.
Nothing here touches Whitehead graphs or core graphs: everything is plain
word arithmetic.

    nielsen_reduce / oracle_membership   membership in ⟨Z⟩
    whitehead_search                     shortest Z^Ψ over bounded products
    primitivity_oracle, subbasis_oracle  is w (is Z) part of a basis?
    min_support_size / best_basis_hits   closure rank and sandwich maximality

The automorphisms searched over are the nontrivial maps
e ↦ d^a · e · d̄^b (a, b ∈ {0, 1}) fixing the multiplier letter d. This set is
closed under inversion.
"""

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from Graph.config import get_settings
from Graph.errors import OracleGuardError
from Graph.free_words import (
    Alphabet,
    GeneratorMap,
    Word,
    WordSet,
    all_letters,
    apply_map,
    compose,
    concat,
    invert,
    letter_rank,
    reduce,
    support,
    total_length,
)
from Graph.utils import logger


# ============================================================================
# 1. NIELSEN REDUCTION
# ============================================================================

@dataclass(frozen=True)
class NielsenSet:
    words: Tuple[Word, ...]

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def symmetric(self) -> Tuple[Word, ...]:
        return self.words + tuple(invert(w) for w in self.words)


def _left_half(w: Word) -> Tuple[int, ...]:
    half = (len(w.letters) + 1) // 2
    return tuple(letter_rank(c) for c in w.letters[:half])


def _order_key(w: Word) -> Tuple[int, Tuple[int, ...], Tuple[int, ...]]:
    # well-order on elements up to inversion: length, then the two left halves
    low, high = sorted((_left_half(w), _left_half(invert(w))))
    return len(w.letters), low, high


def _normalise(words: Iterable[Word]) -> List[Word]:
    out: List[Word] = []
    seen: Set[Word] = set()
    for w in words:
        if w.is_identity or w in seen or invert(w) in seen:
            continue
        seen.add(w)
        out.append(w)
    return out


def _improve_once(current: List[Word]) -> bool:
    for i, u in enumerate(current):
        key = _order_key(u)
        for j, v in enumerate(current):
            if i == j:
                continue
            for factor in (v, invert(v)):
                for candidate in (concat(u, factor), concat(factor, u)):
                    if _order_key(candidate) < key:
                        current[i] = candidate
                        return True
    return False


def nielsen_reduce(Z: Iterable[Word]) -> NielsenSet:
    """Apply order-decreasing Nielsen moves u ↦ u·v^±1 or v^±1·u until none applies."""
    current = _normalise(Z)
    while _improve_once(current):
        current = _normalise(current)
    return NielsenSet(tuple(current))


def oracle_membership(N: NielsenSet, w: Word) -> bool:
    """Peel factors off the left without ever lengthening the remainder.

    For a Nielsen-reduced set every suffix u₂⋯uₖ of a reduced product
    u₁⋯uₖ is no longer than the product, so this search is complete.
    """
    if w.is_identity:
        return True
    factors = N.symmetric()
    seen = {w}
    queue = deque([w])
    while queue:
        state = queue.popleft()
        for y in factors:
            nxt = concat(y, state)
            if nxt.is_identity:
                return True
            if len(nxt.letters) > len(state.letters) or nxt in seen:
                continue
            seen.add(nxt)
            queue.append(nxt)
    return False


def members_up_to(N: NielsenSet, max_length: int) -> FrozenSet[Word]:
    """Every element of ⟨N⟩ of length ≤ max_length."""
    factors = N.symmetric()
    found = {Word()}
    queue = deque([Word()])
    while queue:
        state = queue.popleft()
        for y in factors:
            nxt = concat(state, y)
            if len(nxt.letters) <= max_length and nxt not in found:
                found.add(nxt)
                queue.append(nxt)
    return frozenset(found)


# ============================================================================
# 2. BOUNDED WHITEHEAD SEARCH
# ============================================================================

@lru_cache(maxsize=None)
def whitehead_moves(rank: int) -> Tuple[GeneratorMap, ...]:
    moves: List[GeneratorMap] = []
    seen: Set[Tuple[Word, ...]] = set()
    for d in all_letters(rank):
        others = [g for g in range(1, rank + 1) if g != abs(d)]
        for choice in product(((0, 0), (0, 1), (1, 0), (1, 1)), repeat=len(others)):
            if not any(a or b for a, b in choice):
                continue
            images = [Word((g,)) for g in range(1, rank + 1)]
            for g, (a, b) in zip(others, choice):
                images[g - 1] = reduce([d] * a + [g] + [-d] * b)
            if tuple(images) not in seen:
                seen.add(tuple(images))
                moves.append(GeneratorMap(tuple(images)))
    return tuple(moves)


def _guard(E: Alphabet, depth: int, exhaustive: bool = True) -> None:
    settings = get_settings()
    if E.rank > settings.oracle_max_rank:
        raise OracleGuardError(f"oracles accept rank ≤ {settings.oracle_max_rank}, got {E.rank}")
    if depth < 0:
        raise OracleGuardError("depth must be non-negative")
    if exhaustive and depth > settings.oracle_max_depth:
        raise OracleGuardError(f"exhaustive search accepts depth ≤ {settings.oracle_max_depth}, got {depth}")


def _orbit(Z: Tuple[Word, ...], rank: int, depth: int, monotone: bool = False) -> Iterator[Tuple[Word, ...]]:
    """Images Z^Ψ for Ψ a product of ≤ depth moves, each yielded once."""
    moves = whitehead_moves(rank)
    seen = {Z}
    frontier = [Z]
    yield Z
    for _ in range(depth):
        nxt: List[Tuple[Word, ...]] = []
        for state in frontier:
            length = total_length(state)
            for m in moves:
                image = tuple(apply_map(m, w) for w in state)
                if image in seen:
                    continue
                if monotone and total_length(image) >= length:
                    continue
                seen.add(image)
                nxt.append(image)
                yield image
        if not nxt:
            break
        frontier = nxt


def whitehead_search(Z: Iterable[Word], E: Alphabet, depth: int, monotone: bool = False) -> int:
    """Least ‖Z^Ψ‖ over products Ψ of at most ``depth`` moves.

    ``monotone`` only follows strictly shortening moves; the guard on depth is
    then lifted since the input length bounds the search anyway.
    """
    _guard(E, depth, exhaustive=not monotone)
    start = tuple(WordSet.of(Z))
    return min(total_length(state) for state in _orbit(start, E.rank, depth, monotone))


def primitivity_oracle(w: Word, E: Alphabet, depth: Optional[int] = None) -> bool:
    if w.is_identity:
        return False
    depth = len(w.letters) if depth is None else depth
    return whitehead_search([w], E, depth, monotone=True) == 1


def subbasis_oracle(Z: Iterable[Word], E: Alphabet) -> bool:
    """Can shortening moves turn Z into single letters of distinct generators?"""
    ws = WordSet.of(Z)
    if ws.meets_inverse():
        return False
    return whitehead_search(ws, E, total_length(ws), monotone=True) == len(ws)


def min_support_size(Z: Iterable[Word], E: Alphabet, depth: int) -> int:
    """Least |supp(Z rel E^Ψ)| over Ψ of bounded depth."""
    _guard(E, depth)
    start = tuple(WordSet.of(Z))
    return min(len(support(state, E)) for state in _orbit(start, E.rank, depth))


def basis_images(rank: int, depth: int) -> Iterator[GeneratorMap]:
    """Every E^Ψ with Ψ a product of ≤ depth moves, each yielded once."""
    identity = GeneratorMap.identity(rank)
    seen = {identity.images}
    frontier = [identity]
    yield identity
    for _ in range(depth):
        nxt: List[GeneratorMap] = []
        for current in frontier:
            for m in whitehead_moves(rank):
                image = compose(current, m)
                if image.images in seen:
                    continue
                seen.add(image.images)
                nxt.append(image)
                yield image
        frontier = nxt


def best_basis_hits(Z: Iterable[Word], E: Alphabet, depth: int) -> int:
    """max |E^Ψ ∩ ⟨Z⟩| over Ψ of bounded depth."""
    _guard(E, depth)
    N = nielsen_reduce(Z)
    best = 0
    for basis in basis_images(E.rank, depth):
        hits = sum(1 for img in basis.images if oracle_membership(N, img))
        best = max(best, hits)
    logger.debug(f"oracle: best basis hit count {best} at depth {depth}")
    return best
