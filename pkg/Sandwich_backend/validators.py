from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

from Graph.errors import WordSyntaxError
from Graph.free_words import Alphabet, WordSet
from Graph.utils import logger, _plural


# ============================================================================
# 1. WORD LIST VALIDATOR
# ============================================================================
# Called by main.run() before any pipeline stage executes. Turns the raw
# --gens / --words values into an Alphabet and a WordSet, or a reason why not.

class WordListValidator:
    def __init__(self, max_word_length: int = 10_000):
        self.max_word_length = max_word_length

    def _basic_syntax_check(self, text: str) -> Tuple[bool, str]:
        """Cheap checks before handing the text to the parser."""
        stripped = text.strip()
        if len(stripped) > self.max_word_length:
            return False, f"❌ Word longer than {self.max_word_length} characters"
        if "#" in stripped:
            return False, "❌ '#' starts a comment and only belongs in word files"
        if stripped.replace("^-1", "").count("^"):
            return False, f"❌ Dangling '^' in {stripped!r}; only '^-1' is understood"
        if "1" in stripped.replace("^-1", "") and stripped != "1":
            return False, f"❌ '1' denotes the empty word and cannot appear inside {stripped!r}"
        return True, "OK"

    def expand(self, entries: Iterable[str]) -> List[str]:
        """Inline comma lists and @file references, flattened in order.

        A word file holds one word per line; everything after '#' is a comment
        and blank lines are skipped.
        """
        texts: List[str] = []
        for entry in entries:
            if entry.startswith("@"):
                texts.extend(self._read_file(entry[1:]))
            else:
                texts.extend(part.strip() for part in entry.split(","))
        return texts

    def _read_file(self, path: str) -> List[str]:
        try:
            raw = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise WordSyntaxError(f"cannot read word file {path!r}: {exc.strerror}") from exc
        words = []
        for line in raw.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                words.append(line)
        return words

    def normalise(self, texts: List[str], alphabet: Alphabet) -> Tuple[WordSet, List[str]]:
        """Parse every word and drop identities and repeats.

        Returns:
            (word_set, list_of_fix_descriptions)
        """
        parsed = []
        for text in texts:
            ok, msg = self._basic_syntax_check(text)
            if not ok:
                raise WordSyntaxError(msg)
            parsed.append(alphabet.parse_word(text))

        word_set = WordSet.of(parsed)
        fixes_applied: List[str] = []
        if word_set.dropped_identities:
            fixes_applied.append(f"Dropped {_plural(word_set.dropped_identities, 'identity word')}")
        repeats = len(parsed) - word_set.dropped_identities - len(word_set)
        if repeats:
            fixes_applied.append(f"Removed {_plural(repeats, 'repeated word')}")
        return word_set, fixes_applied

    def rank_check(self, alphabet: Alphabet, max_rank: int, force: bool = False) -> Tuple[bool, str]:
        if alphabet.rank <= max_rank or force:
            return True, "OK"
        return False, f"❌ Rank {alphabet.rank} is above the limit of {max_rank} (use --force)"

    def validate(self, generators: str, entries: Iterable[str], max_rank: Optional[int] = None, force: bool = False) -> Dict[str, Any]:
        """Validate a generator string and word list with every check.

        Raises WordSyntaxError on text that cannot be parsed; a rank above
        ``max_rank`` is reported through the returned dict instead.
        """
        alphabet = Alphabet.from_string(generators)
        if max_rank is not None:
            ok, msg = self.rank_check(alphabet, max_rank, force)
            if not ok:
                return {"valid": False, "reason": msg, "alphabet": alphabet}

        word_set, fixes = self.normalise(self.expand(entries), alphabet)
        for fix in fixes:
            logger.warning(f"⚠️ {fix}")
        return {"valid": True, "reason": "OK", "alphabet": alphabet, "word_set": word_set, "fixes": fixes}
