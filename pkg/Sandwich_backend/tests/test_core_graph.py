"""
Tests for Graph/core_graph.py — Stallings folding, trimming, membership,
canonical keys and Schreier bases.
"""
import random

import pytest
from hypothesis import given, settings, strategies as st

from Graph.core_graph import (
    LabeledGraph,
    basepoint_loop_letters,
    canonical_key,
    certify,
    core_from_edges,
    core_of,
    fold,
    is_member,
    lollipop,
    rank_of,
    subgroup_basis,
    trace,
    trim,
    wedge,
)
from Graph.errors import AlphabetMismatchError, ContractViolation
from Graph.free_words import Alphabet, Word, WordSet, reduce

word_lists = st.lists(
    st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=7).map(reduce),
    min_size=1,
    max_size=4,
).map(lambda ws: [w for w in ws if not w.is_identity])


# ========================================================================
# Construction
# ========================================================================

class TestConstruction:
    """lollipop(), wedge() and core_of()."""

    def test_lollipop_has_stem_and_cycle(self, words):
        g = lollipop(words("xyyX")[0], rank=2)
        assert g.vertex_count == 3
        assert len(g.edges) == 3

    def test_wedge_shares_basepoint(self, words):
        g = wedge([lollipop(w, 2) for w in words("xx", "y")], rank=2)
        assert g.vertex_count == 2
        assert (0, 2, 0) in g.edges

    def test_core_of_power_and_letter(self, xy, words):
        g = core_of(words("xx", "y"), xy)
        assert g.vertex_count == 2
        assert sorted(g.edges) == [(0, 1, 1), (0, 2, 0), (1, 1, 0)]
        assert basepoint_loop_letters(g) == {2}
        assert rank_of(g) == 2

    def test_whole_group_is_a_bouquet(self, xy, words):
        g = core_of(words("x", "y"), xy)
        assert g.vertex_count == 1
        assert basepoint_loop_letters(g) == {1, 2}

    def test_folding_merges_shared_prefix(self, xy, words):
        g = core_of(words("xy", "xY"), xy)
        assert g.vertex_count == 2
        assert len(g.edges) == 3

    def test_conjugate_keeps_stem_at_basepoint(self, xy, words):
        g = core_of(words("xyX"), xy)
        assert g.vertex_count == 2
        assert basepoint_loop_letters(g) == frozenset()

    def test_trivial_subgroup(self, xy):
        g = core_of(WordSet(), xy)
        assert g.vertex_count == 1
        assert g.edges == ()
        assert canonical_key(g) == b"2|1|"

    def test_rejects_words_beyond_rank(self, xy):
        with pytest.raises(AlphabetMismatchError):
            core_of([Word((3,))], xy)


class TestCertify:
    """certify() guards FOLDED and CORE."""

    def test_unfolded(self):
        with pytest.raises(ContractViolation):
            core_from_edges(2, 2, [(0, 1, 1), (0, 1, 0), (1, 2, 1)])

    def test_hanging_vertex(self):
        with pytest.raises(ContractViolation):
            core_from_edges(2, 2, [(0, 1, 0), (0, 2, 1)])

    def test_label_out_of_range(self):
        with pytest.raises(AlphabetMismatchError):
            core_from_edges(1, 1, [(0, 2, 0)])

    def test_trim_drops_hanging_trees(self):
        g = LabeledGraph(2, 3, ((0, 1, 0), (0, 2, 1), (1, 1, 2)))
        trimmed = trim(g)
        assert trimmed.vertex_count == 1
        assert trimmed.edges == ((0, 1, 0),)


# ========================================================================
# Membership
# ========================================================================

class TestMembership:
    """trace() and is_member()."""

    @pytest.fixture
    def g(self, xy, words):
        return core_of(words("xx", "y"), xy)

    @pytest.mark.parametrize("text, expected", [
        ("xxy", True),
        ("x", False),
        ("", True),
        ("yXXy", True),
        ("xyx", False),
    ])
    def test_membership(self, g, xy, text, expected):
        assert is_member(g, xy.parse_word(text)) is expected

    def test_trace_stops_on_missing_edge(self, xy, words):
        g = core_of(words("xy"), xy)
        assert trace(g, xy.parse_word("y")) is None

    def test_trace_rejects_foreign_letters(self, g):
        with pytest.raises(AlphabetMismatchError):
            trace(g, Word((3,)))

    @settings(max_examples=60, deadline=None)
    @given(word_lists)
    def test_generators_are_members(self, Z):
        g = core_of(Z, Alphabet.of_rank(2))
        assert all(is_member(g, z) for z in Z)


# ========================================================================
# Canonical keys
# ========================================================================

class TestCanonicalKey:
    """canonical_key() identifies basepointed isomorphism classes."""

    def test_order_of_words_is_irrelevant(self, xy, words):
        assert canonical_key(core_of(words("xy", "yx"), xy)) == canonical_key(core_of(words("yx", "xy"), xy))

    def test_same_subgroup_different_generators(self, xy, words):
        assert canonical_key(core_of(words("x", "y"), xy)) == canonical_key(core_of(words("xy", "y"), xy))

    def test_distinguishes_subgroups(self, xy, words):
        assert canonical_key(core_of(words("xx"), xy)) != canonical_key(core_of(words("yy"), xy))

    def test_renumbering_does_not_change_key(self):
        a = core_from_edges(1, 3, [(0, 1, 1), (1, 1, 2), (2, 1, 0)])
        b = core_from_edges(1, 3, [(0, 1, 2), (2, 1, 1), (1, 1, 0)])
        assert canonical_key(a) == canonical_key(b)

    @settings(max_examples=60, deadline=None)
    @given(word_lists, st.integers(min_value=0, max_value=10_000))
    def test_fold_is_confluent(self, Z, seed):
        """Any merge order folds to the same core graph."""
        E = Alphabet.of_rank(2)
        raw = wedge([lollipop(z, 2) for z in Z], rank=2)
        shuffled = certify(trim(fold(raw, rng=random.Random(seed))))
        assert canonical_key(shuffled) == canonical_key(core_of(Z, E))


# ========================================================================
# Schreier bases
# ========================================================================

class TestSubgroupBasis:
    """subgroup_basis() reads a free basis off the core graph."""

    @pytest.mark.parametrize("texts", [("xx", "y"), ("xy", "xY"), ("xyX",), ("xxyy", "yx")])
    def test_basis_generates_same_subgroup(self, xy, texts):
        Z = WordSet.of(xy.parse_word(t) for t in texts)
        g = core_of(Z, xy)
        basis = subgroup_basis(g)
        assert len(basis) == rank_of(g)
        assert all(is_member(g, b) for b in basis)
        back = core_of(basis, xy)
        assert canonical_key(back) == canonical_key(g)
