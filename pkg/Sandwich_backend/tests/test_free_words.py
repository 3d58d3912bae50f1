"""
Tests for Graph/free_words.py — reduced words, alphabets and maps.

Everything here is pure arithmetic on tuples of signed codes, so the
property tests run on hypothesis-generated raw letter sequences.
"""
import pytest
from hypothesis import given, strategies as st

from Graph.errors import AlphabetMismatchError, WordSyntaxError
from Graph.free_words import (
    Alphabet,
    Automorphism,
    GeneratorMap,
    Letter,
    Word,
    WordSet,
    all_letters,
    apply_map,
    compose,
    concat,
    cyclic_decomposition,
    invert,
    is_cyclically_reduced,
    letter_rank,
    parse_word_set,
    reduce,
    support,
    total_length,
    words_up_to,
)

raw_letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=14)


def _is_reduced(w: Word) -> bool:
    return all(a != -b for a, b in zip(w.letters, w.letters[1:]))


# ========================================================================
# Letters and the alphabet
# ========================================================================

class TestLetters:
    """Letter codes and the x < X < y < Y order."""

    def test_letter_round_trip(self):
        assert Letter.from_code(-2) == Letter(1, -1)
        assert Letter.from_code(-2).code == -2

    def test_letter_order(self):
        assert sorted([-2, 2, -1, 1], key=letter_rank) == [1, -1, 2, -2]

    def test_all_letters_rank_two(self):
        assert all_letters(2) == (1, -1, 2, -2)


class TestAlphabet:
    """Alphabet.from_string, parse_word and format_word."""

    def test_parses_upper_case_as_inverse(self, xy):
        assert xy.parse_word("xY").letters == (1, -2)

    def test_parses_caret_suffix(self, xy):
        assert xy.parse_word("x^-1y").letters == (-1, 2)

    def test_parse_reduces(self, xy):
        assert xy.format_word(xy.parse_word("xyYx")) == "xx"

    @pytest.mark.parametrize("text", ["", "1", "   ", "xX"])
    def test_identity_spellings(self, xy, text):
        assert xy.parse_word(text).is_identity

    def test_identity_prints_as_one(self, xy):
        assert xy.format_word(Word()) == "1"

    def test_unknown_generator_rejected(self, xy):
        with pytest.raises(WordSyntaxError):
            xy.parse_word("xz")

    @pytest.mark.parametrize("text", ["", "xx", "X", "x1", "x^", "x,y"])
    def test_bad_generator_strings(self, text):
        with pytest.raises(WordSyntaxError):
            Alphabet.from_string(text)

    def test_non_letter_symbol_prints_with_caret(self):
        E = Alphabet.from_string("ab$")
        assert E.format_word(E.parse_word("$^-1a")) == "$^-1a"

    def test_of_rank_default_names(self):
        assert str(Alphabet.of_rank(3)) == "xyz"

    def test_check_rejects_foreign_word(self, xy):
        with pytest.raises(AlphabetMismatchError):
            xy.check(Word((3,)))


# ========================================================================
# Reduction
# ========================================================================

class TestReduce:
    """reduce(), concat() and invert()."""

    def test_cancels_nested_pairs(self):
        assert reduce([1, 2, -2, -1, 2]).letters == (2,)

    def test_accepts_letters(self):
        assert reduce([Letter(0, 1), Letter(0, -1)]).is_identity

    def test_concat_cancels_at_seam(self, words):
        a, b = words("xyx", "XYy")
        assert concat(a, b).letters == (1, 2)

    def test_operators(self, words):
        a, = words("xy")
        assert (a * ~a).is_identity

    @given(raw_letters)
    def test_reduce_output_is_reduced(self, raw):
        assert _is_reduced(reduce(raw))

    @given(raw_letters, raw_letters)
    def test_reduction_is_confluent(self, a, b):
        """Reducing in pieces gives the same word as reducing at once."""
        assert concat(reduce(a), reduce(b)) == reduce(a + b)

    @given(raw_letters)
    def test_inverse_cancels(self, raw):
        w = reduce(raw)
        assert concat(w, invert(w)).is_identity
        assert invert(invert(w)) == w


class TestCyclic:
    """Cyclic reduction helpers used by lollipop()."""

    def test_cyclically_reduced(self, words):
        w, = words("xyX")
        assert not is_cyclically_reduced(w)
        assert is_cyclically_reduced(words("xy")[0])

    def test_decomposition(self, words):
        w, = words("xyyX")
        prefix, core = cyclic_decomposition(w)
        assert prefix.letters == (1,)
        assert core.letters == (2, 2)

    @given(raw_letters)
    def test_decomposition_rebuilds_word(self, raw):
        w = reduce(raw)
        prefix, core = cyclic_decomposition(w)
        assert is_cyclically_reduced(core)
        assert concat(concat(prefix, core), invert(prefix)) == w


class TestWordsUpTo:
    """words_up_to() enumerates every reduced word once."""

    @pytest.mark.parametrize("n, count", [(0, 1), (1, 5), (2, 17), (3, 53)])
    def test_counts_rank_two(self, n, count):
        assert len(list(words_up_to(2, n))) == count

    def test_all_distinct_and_reduced(self):
        found = list(words_up_to(2, 4))
        assert len(set(found)) == len(found)
        assert all(_is_reduced(w) for w in found)


# ========================================================================
# Word sets
# ========================================================================

class TestWordSet:
    """WordSet.of() drops identities and repeats, keeps first-seen order."""

    def test_drops_identity_and_repeats(self, words):
        ws = WordSet.of(words("xy", "1", "xy", "y"))
        assert [w.letters for w in ws] == [(1, 2), (2,)]
        assert ws.dropped_identities == 1

    def test_meets_inverse(self, words):
        assert WordSet.of(words("xy", "YX")).meets_inverse()
        assert not WordSet.of(words("xy", "yx")).meets_inverse()

    def test_parse_word_set_warns_on_identity(self, xy, caplog):
        with caplog.at_level("WARNING", logger="free_sandwich"):
            ws = parse_word_set(["", "x"], xy)
        assert len(ws) == 1
        assert "identity" in caplog.text

    def test_support_and_length(self, xy, words):
        Z = words("xxY", "Y")
        assert support(Z, xy) == frozenset({1, 2})
        assert total_length(Z) == 4


# ========================================================================
# Maps
# ========================================================================

class TestMaps:
    """GeneratorMap, compose() and Automorphism."""

    @pytest.fixture
    def swap_mult(self, words):
        # x -> xy, y -> y and its inverse x -> xY
        f = GeneratorMap(words("xy", "y"))
        g = GeneratorMap(words("xY", "y"))
        return Automorphism(f, g)

    def test_apply_map(self, swap_mult, words):
        w, = words("xxY")
        assert swap_mult.apply(w).letters == (1, 2, 1)

    def test_certified(self, swap_mult):
        assert swap_mult.is_certified()

    def test_uncertified_pair(self, words):
        f = GeneratorMap(words("xy", "y"))
        assert not Automorphism(f, f).is_certified()

    def test_compose_is_right_action(self, words):
        f = GeneratorMap(words("y", "x"))
        s = GeneratorMap(words("xx", "y"))
        w, = words("x")
        assert apply_map(compose(f, s), w) == apply_map(s, apply_map(f, w))

    def test_then_keeps_inverse(self, swap_mult):
        double = swap_mult.then(swap_mult)
        assert double.is_certified()
        assert double.then(double.inverted()).forward.is_identity()

    def test_rank_mismatch(self, words):
        with pytest.raises(AlphabetMismatchError):
            compose(GeneratorMap.identity(2), GeneratorMap.identity(3))
        with pytest.raises(AlphabetMismatchError):
            apply_map(GeneratorMap.identity(1), Word((2,)))

    @given(raw_letters, raw_letters)
    def test_homomorphism(self, a, b):
        m = GeneratorMap((Word((1, 2)), Word((-3,)), Word((2, 1, 1))))
        u, v = reduce(a), reduce(b)
        assert apply_map(m, concat(u, v)) == concat(apply_map(m, u), apply_map(m, v))

    @given(raw_letters)
    def test_commutes_with_invert(self, a):
        m = GeneratorMap((Word((1, 2)), Word((-3,)), Word((2, 1, 1))))
        u = reduce(a)
        assert apply_map(m, invert(u)) == invert(apply_map(m, u))

    def test_identity_word_is_fixed(self):
        m = GeneratorMap((Word((1, 2)), Word((-3,)), Word((2, 1, 1))))
        assert apply_map(m, Word()).is_identity
