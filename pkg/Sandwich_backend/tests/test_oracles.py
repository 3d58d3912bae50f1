"""
Tests for Graph/oracles.py and the cross-checks between the brute-force
answers and the graph-based ones.

The agreement suites stay at ranks 2 and 3 with short words so the whole
module runs in a few seconds.
"""
import random

import pytest

from Graph.core_graph import core_of, is_member
from Graph.errors import OracleGuardError
from Graph.explorer import enumerate_cuts
from Graph.free_words import Alphabet, Word, WordSet, reduce, total_length, words_up_to
from Graph.oracles import (
    best_basis_hits,
    members_up_to,
    min_support_size,
    nielsen_reduce,
    oracle_membership,
    primitivity_oracle,
    subbasis_oracle,
    whitehead_moves,
    whitehead_search,
)
from Graph.whitehead import (
    closure_rank,
    cut_vertex_algorithm,
    find_cut_vertex,
    is_subbasis,
    phi_of_cut,
    whitehead_graph,
)


def _ws(E, *texts):
    return WordSet.of(E.parse_word(t) for t in texts)


def _random_set(seed: int, budget: int = 8, rank: int = 2) -> WordSet:
    rng = random.Random(seed)
    letters = [c for g in range(1, rank + 1) for c in (g, -g)]
    words = []
    left = budget
    while left > 1 and len(words) < 3:
        n = rng.randint(1, min(left, 4))
        left -= n
        words.append(reduce(rng.choice(letters) for _ in range(n)))
    return WordSet.of(words)


# ========================================================================
# Nielsen reduction
# ========================================================================

class TestNielsen:
    """nielsen_reduce(), oracle_membership() and members_up_to()."""

    def test_reduces_to_letters(self, xy, words):
        N = nielsen_reduce(words("x", "xy"))
        assert set(N.words) == set(words("x", "y"))

    def test_drops_identity_and_inverse_pairs(self, xy, words):
        N = nielsen_reduce(words("xy", "YX", "1"))
        assert len(N) == 1

    @pytest.mark.parametrize("text, expected", [("xxy", True), ("x", False), ("", True), ("yXXy", True)])
    def test_membership(self, xy, words, text, expected):
        N = nielsen_reduce(words("xx", "y"))
        assert oracle_membership(N, xy.parse_word(text)) is expected

    def test_members_up_to(self, xy, words):
        found = members_up_to(nielsen_reduce(words("xx", "y")), 2)
        assert {xy.format_word(w) for w in found} == {"1", "xx", "XX", "y", "Y", "yy", "YY"}

    @pytest.mark.parametrize("seed", range(20))
    def test_agrees_with_core_graph(self, xy, seed):
        Z = _random_set(seed)
        if not Z:
            return
        N = nielsen_reduce(Z)
        g = core_of(Z, xy)
        for w in words_up_to(2, 6):
            assert oracle_membership(N, w) == is_member(g, w)


# ========================================================================
# Whitehead search
# ========================================================================

class TestWhiteheadMoves:
    """whitehead_moves() and the guards."""

    @pytest.mark.parametrize("rank, count", [(1, 0), (2, 12), (3, 90)])
    def test_move_counts(self, rank, count):
        assert len(whitehead_moves(rank)) == count

    def test_cut_automorphisms_are_moves(self, xy):
        cut_maps = {phi_of_cut(c).forward for c in enumerate_cuts(xy) if not phi_of_cut(c).forward.is_identity()}
        assert cut_maps == set(whitehead_moves(2))

    def test_rank_guard(self):
        with pytest.raises(OracleGuardError):
            whitehead_search([Word((1,))], Alphabet.of_rank(4), 1)

    def test_depth_guard(self, xy, words):
        with pytest.raises(OracleGuardError):
            whitehead_search(words("xy"), xy, 5)

    def test_monotone_lifts_depth_guard(self, xy, words):
        assert whitehead_search(words("xxxxy"), xy, 10, monotone=True) == 1

    def test_guard_follows_settings(self, xy, words, monkeypatch):
        monkeypatch.setenv("FGS_ORACLE_MAX_DEPTH", "1")
        from Graph.config import get_settings
        get_settings.cache_clear()
        with pytest.raises(OracleGuardError):
            whitehead_search(words("xy"), xy, 2)


class TestWhiteheadSearch:
    """whitehead_search(), primitivity_oracle() and subbasis_oracle()."""

    @pytest.mark.parametrize("text, depth, expected", [("xxy", 2, 1), ("xxyy", 4, 4), ("x", 0, 1), ("xyXY", 3, 4)])
    def test_examples(self, xy, text, depth, expected):
        assert whitehead_search(_ws(xy, text), xy, depth) == expected

    @pytest.mark.parametrize("text, expected", [("xxy", True), ("xxyy", False), ("xyXY", False), ("Y", True), ("", False)])
    def test_primitivity(self, xy, text, expected):
        assert primitivity_oracle(xy.parse_word(text), xy) is expected

    @pytest.mark.parametrize("texts, expected", [
        (("xxy",), True),
        (("xy", "y"), True),
        (("xxyy",), False),
        (("x", "X"), False),
        (("xx", "y"), False),
    ])
    def test_subbasis(self, xy, texts, expected):
        assert subbasis_oracle(_ws(xy, *texts), xy) is expected

    def test_min_support(self, xy):
        assert min_support_size(_ws(xy, "xxy"), xy, 2) == 1
        assert min_support_size(_ws(xy, "xxyy"), xy, 2) == 2

    def test_best_basis_hits(self, xy):
        assert best_basis_hits(_ws(xy, "x", "y"), xy, 1) == 2
        assert best_basis_hits(_ws(xy, "xxyy"), xy, 2) == 0
        assert best_basis_hits(_ws(xy, "xxy"), xy, 2) == 1


# ========================================================================
# Agreement with the graph-based algorithms
# ========================================================================

class TestAgreement:
    """The oracles and the cut-vertex algorithm answer the same questions alike."""

    def test_primitivity_matches_is_subbasis(self, xy):
        for w in words_up_to(2, 6):
            if w.is_identity:
                continue
            assert primitivity_oracle(w, xy) == is_subbasis(WordSet.of([w]), xy).is_subbasis, xy.format_word(w)

    def test_closure_rank_is_min_support(self, xy):
        """rk cl(z) equals the least support over automorphic images."""
        for z in words_up_to(2, 4):
            if z.is_identity:
                continue
            Z = WordSet.of([z])
            steps = len(cut_vertex_algorithm(Z, xy).steps)
            assert steps <= 3
            assert min_support_size(Z, xy, steps) == closure_rank(Z, xy), xy.format_word(z)

    @pytest.mark.parametrize("seed", range(60))
    def test_no_image_has_smaller_support(self, xy, seed):
        """Every automorphic image of Z within three moves uses at least rk cl(Z) generators."""
        Z = _random_set(100 + seed)
        if not Z:
            return
        trace = cut_vertex_algorithm(Z, xy)
        assert min_support_size(Z, xy, 3) >= closure_rank(Z, xy)
        if len(trace.steps) <= 3:
            assert whitehead_search(Z, xy, 3) <= total_length(trace.final_set)

    @pytest.mark.parametrize("seed", range(40))
    def test_no_image_has_smaller_support_rank_three(self, xyz, seed):
        Z = _random_set(300 + seed, budget=10, rank=3)
        if not Z:
            return
        assert min_support_size(Z, xyz, 2) >= closure_rank(Z, xyz)

    @pytest.mark.parametrize("seed", range(10))
    def test_subbasis_oracle_matches_is_subbasis(self, xy, seed):
        Z = _random_set(200 + seed, budget=6)
        assert subbasis_oracle(Z, xy) == is_subbasis(Z, xy).is_subbasis

    def test_single_words_are_reduced_to_shortest(self, xy):
        """Output length of the cut-vertex algorithm equals the depth-3 search minimum."""
        for w in words_up_to(2, 4):
            if w.is_identity:
                continue
            trace = cut_vertex_algorithm(WordSet.of([w]), xy)
            assert len(trace.steps) <= 3
            assert whitehead_search([w], xy, 3) == total_length(trace.final_set), xy.format_word(w)

    def test_no_cut_vertex_does_not_mean_shortest(self, xy):
        """xxyxyy has no cut vertex, yet y -> Xy shortens it to xyyXy."""
        w = xy.parse_word("xxyxyy")
        assert find_cut_vertex(whitehead_graph([w], xy)) is None
        assert total_length(cut_vertex_algorithm(WordSet.of([w]), xy).final_set) == 6
        assert whitehead_search([w], xy, 1) == 5
