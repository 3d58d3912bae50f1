"""
free_words.py — Reduced-Word Arithmetic
=======================================
Words in the free group on a finite alphabet E.

Letters are stored as signed generator codes: the i-th generator (0-based)
is ``i + 1`` and its inverse is ``-(i + 1)``. Every published Word is
reduced. Maps act on the right: ``apply_map(compose(f, s), w)`` first applies
``f`` and then ``s``.

Text syntax: a lower-case symbol is a generator, its upper-case form is the
inverse, and any symbol may carry a ``^-1`` suffix.

    >>> E = Alphabet.from_string("xy")
    >>> E.format_word(E.parse_word("xyYx"))
    'xx'
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from Graph.errors import AlphabetMismatchError, WordSyntaxError
from Graph.utils import logger

# Characters with a meaning of their own in the word syntax / file format.
RESERVED_SYMBOLS = frozenset("1^,#")


# ============================================================================
# 1. LETTERS AND ORDERING
# ============================================================================

class Letter(NamedTuple):
    """One element of E^±1."""
    generator_index: int
    sign: int

    @property
    def code(self) -> int:
        return self.sign * (self.generator_index + 1)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(abs(code) - 1, 1 if code > 0 else -1)


def letter_rank(code: int) -> int:
    """Position of a letter in the order x < x⁻¹ < y < y⁻¹ < …"""
    return 2 * (abs(code) - 1) + (1 if code < 0 else 0)


def all_letters(rank: int) -> Tuple[int, ...]:
    """E^±1 in letter order."""
    return tuple(c for i in range(1, rank + 1) for c in (i, -i))


# ============================================================================
# 2. ALPHABET
# ============================================================================

class Alphabet(BaseModel):
    """Ordered, duplicate-free list of single-character generator names."""

    model_config = ConfigDict(frozen=True)

    generators: Tuple[str, ...]

    @field_validator("generators")
    @classmethod
    def _check_symbols(cls, value: Tuple[str, ...]) -> Tuple[str, ...]:
        if not value:
            raise ValueError("at least one generator is required")
        for symbol in value:
            if len(symbol) != 1 or symbol.isspace():
                raise ValueError(f"generator {symbol!r} must be a single visible character")
            if symbol in RESERVED_SYMBOLS:
                raise ValueError(f"generator {symbol!r} is reserved by the word syntax")
            if symbol.isupper():
                raise ValueError(f"generator {symbol!r}: upper-case letters denote inverses")
        if len(set(value)) != len(value):
            raise ValueError("generator names must be distinct")
        return value

    @classmethod
    def from_string(cls, text: str) -> "Alphabet":
        """'xyz' -> Alphabet(('x', 'y', 'z')). Raises WordSyntaxError on bad input."""
        try:
            return cls(generators=tuple(text.strip()))
        except ValidationError as exc:
            reason = exc.errors()[0].get("msg", str(exc))
            raise WordSyntaxError(f"invalid generators {text!r}: {reason}") from exc

    @classmethod
    def of_rank(cls, rank: int) -> "Alphabet":
        """Default names x, y, z, then a, b, c, …"""
        pool = "xyzabcdefghijklmnopqrstuvw"
        if rank > len(pool):
            raise ValueError(f"no default names for rank {rank}")
        return cls(generators=tuple(pool[:rank]))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        return "".join(self.generators)

    def letters(self) -> Tuple[int, ...]:
        return all_letters(self.rank)

    def codes(self) -> Tuple[int, ...]:
        """Positive codes, one per generator."""
        return tuple(range(1, self.rank + 1))

    def symbol(self, code: int) -> str:
        name = self.generators[abs(code) - 1]
        if code > 0:
            return name
        return name.upper() if name.isalpha() and name.islower() else f"{name}^-1"

    def parse_word(self, text: str) -> "Word":
        index = {g: i + 1 for i, g in enumerate(self.generators)}
        text = text.strip()
        if text in ("", "1"):
            return Word()
        raw: List[int] = []
        pos = 0
        while pos < len(text):
            ch = text[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch in index:
                code = index[ch]
            elif ch.isupper() and ch.lower() in index:
                code = -index[ch.lower()]
            else:
                raise WordSyntaxError(f"unknown generator {ch!r} in word {text!r} (generators: {self})")
            pos += 1
            if text.startswith("^-1", pos):
                code = -code
                pos += 3
            raw.append(code)
        return reduce(raw)

    def format_word(self, w: "Word") -> str:
        if not w.letters:
            return "1"
        return "".join(self.symbol(c) for c in w.letters)

    def check(self, w: "Word") -> "Word":
        """Raise AlphabetMismatchError when w uses a generator outside this alphabet."""
        if w.letters and max(abs(c) for c in w.letters) > self.rank:
            raise AlphabetMismatchError(f"word uses generators beyond rank {self.rank}")
        return w


# ============================================================================
# 3. WORDS
# ============================================================================

@dataclass(frozen=True)
class Word:
    """A reduced word. Build through reduce() unless the letters are known reduced."""

    letters: Tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @property
    def is_letter(self) -> bool:
        return len(self.letters) == 1


def word_key(w: Word) -> Tuple[int, Tuple[int, ...]]:
    """Shortlex key in letter order; used wherever output order must be fixed."""
    return len(w.letters), tuple(letter_rank(c) for c in w.letters)


def reduce(raw: Iterable[Union[int, Letter]]) -> Word:
    stack: List[int] = []
    for item in raw:
        code = item.code if isinstance(item, Letter) else item
        if stack and stack[-1] == -code:
            stack.pop()
        else:
            stack.append(code)
    return Word(tuple(stack))


def concat(a: Word, b: Word) -> Word:
    # both inputs are reduced, so cancellation only happens at the seam
    left, right = a.letters, b.letters
    k = 0
    limit = min(len(left), len(right))
    while k < limit and left[-1 - k] == -right[k]:
        k += 1
    return Word(left[:len(left) - k] + right[k:])


def invert(w: Word) -> Word:
    return Word(tuple(-c for c in reversed(w.letters)))


def is_cyclically_reduced(w: Word) -> bool:
    return len(w.letters) < 2 or w.letters[0] != -w.letters[-1]


def cyclic_decomposition(w: Word) -> Tuple[Word, Word]:
    """Split w = p·c·p⁻¹ with c cyclically reduced and p maximal."""
    n = len(w.letters)
    k = 0
    while k < n - 1 - k and w.letters[k] == -w.letters[n - 1 - k]:
        k += 1
    return Word(w.letters[:k]), Word(w.letters[k:n - k])


def words_up_to(rank: int, max_length: int) -> Iterator[Word]:
    """All reduced words of length ≤ max_length, in shortlex letter order."""
    letters = all_letters(rank)
    layer: List[Tuple[int, ...]] = [()]
    yield Word()
    for _ in range(max_length):
        nxt: List[Tuple[int, ...]] = []
        for prefix in layer:
            for code in letters:
                if prefix and prefix[-1] == -code:
                    continue
                nxt.append(prefix + (code,))
        for letters_ in nxt:
            yield Word(letters_)
        layer = nxt


# ============================================================================
# 4. WORD SETS
# ============================================================================

@dataclass(frozen=True)
class WordSet:
    """Distinct non-identity words, in first-seen order."""

    words: Tuple[Word, ...] = ()
    dropped_identities: int = 0

    @classmethod
    def of(cls, words: Iterable[Word]) -> "WordSet":
        seen: Dict[Word, None] = {}
        dropped = 0
        for w in words:
            if w.is_identity:
                dropped += 1
                continue
            seen.setdefault(w, None)
        return cls(tuple(seen), dropped)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: object) -> bool:
        return w in self.words

    def meets_inverse(self) -> bool:
        """True when Z ∩ Z⁻¹ ≠ ∅."""
        members = set(self.words)
        return any(invert(w) in members for w in self.words)


def parse_word_set(texts: Sequence[str], alphabet: Alphabet) -> WordSet:
    ws = WordSet.of(alphabet.parse_word(t) for t in texts)
    if ws.dropped_identities:
        logger.warning(f"⚠️ dropped {ws.dropped_identities} identity word(s) from the input set")
    return ws


def support(Z: Iterable[Word], E: Alphabet) -> FrozenSet[int]:
    """Positive codes of the generators occurring in Z."""
    found = frozenset(abs(c) for w in Z for c in w.letters)
    if found and max(found) > E.rank:
        raise AlphabetMismatchError(f"word set uses generators beyond rank {E.rank}")
    return found


def total_length(Z: Iterable[Word]) -> int:
    return sum(len(w.letters) for w in Z)


# ============================================================================
# 5. GENERATOR MAPS AND AUTOMORPHISMS
# ============================================================================

@dataclass(frozen=True)
class GeneratorMap:
    """Endomorphism given by the image of every generator."""

    images: Tuple[Word, ...]

    @classmethod
    def identity(cls, rank: int) -> "GeneratorMap":
        return cls(tuple(Word((i,)) for i in range(1, rank + 1)))

    @property
    def rank(self) -> int:
        return len(self.images)

    @cached_property
    def _signed(self) -> Dict[int, Tuple[int, ...]]:
        table: Dict[int, Tuple[int, ...]] = {}
        for i, img in enumerate(self.images, start=1):
            table[i] = img.letters
            table[-i] = invert(img).letters
        return table

    def image(self, code: int) -> Word:
        return Word(self._signed[code])

    def is_identity(self) -> bool:
        return all(img.letters == (i,) for i, img in enumerate(self.images, start=1))

    def __call__(self, w: Word) -> Word:
        return apply_map(self, w)


def apply_map(m: GeneratorMap, w: Word) -> Word:
    table = m._signed
    out: List[int] = []
    for code in w.letters:
        try:
            piece = table[code]
        except KeyError:
            raise AlphabetMismatchError(f"map of rank {m.rank} applied to a word using generator {abs(code)}") from None
        for c in piece:
            if out and out[-1] == -c:
                out.pop()
            else:
                out.append(c)
    return Word(tuple(out))


def compose(first: GeneratorMap, second: GeneratorMap) -> GeneratorMap:
    """Right action: w^(first·second) = (w^first)^second."""
    if first.rank != second.rank:
        raise AlphabetMismatchError(f"cannot compose maps of rank {first.rank} and {second.rank}")
    return GeneratorMap(tuple(apply_map(second, img) for img in first.images))


@dataclass(frozen=True)
class Automorphism:
    """A GeneratorMap together with a formulaic inverse."""

    forward: GeneratorMap
    inverse: GeneratorMap

    @classmethod
    def identity(cls, rank: int) -> "Automorphism":
        ident = GeneratorMap.identity(rank)
        return cls(ident, ident)

    @property
    def rank(self) -> int:
        return self.forward.rank

    def then(self, other: "Automorphism") -> "Automorphism":
        """self first, other second."""
        return Automorphism(compose(self.forward, other.forward), compose(other.inverse, self.inverse))

    def inverted(self) -> "Automorphism":
        return Automorphism(self.inverse, self.forward)

    def apply(self, w: Word) -> Word:
        return apply_map(self.forward, w)

    def apply_inverse(self, w: Word) -> Word:
        return apply_map(self.inverse, w)

    def is_certified(self) -> bool:
        """Both composites are the identity on generators."""
        return (compose(self.forward, self.inverse).is_identity()
                and compose(self.inverse, self.forward).is_identity())
