# Public entry points
from .free_words import Alphabet, Automorphism, Word, WordSet, parse_word_set
from .whitehead import closure_basis, cut_vertex_algorithm, is_subbasis, whitehead_graph
from .core_graph import core_of, is_member
from .boundary import boundary
from .explorer import enumerate_cuts, explore, sandwich

__all__ = [
    "Alphabet",
    "Automorphism",
    "Word",
    "WordSet",
    "parse_word_set",
    "closure_basis",
    "cut_vertex_algorithm",
    "is_subbasis",
    "whitehead_graph",
    "core_of",
    "is_member",
    "boundary",
    "enumerate_cuts",
    "explore",
    "sandwich",
]
