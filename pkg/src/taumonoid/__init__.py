"""Finite J-trivial monoids from marked-word rewriting, and an equational
engine for checking identities, isoterms and tau-terms against them."""

from .construct import build_monoid, leq_tau, lower_set
from .identities import Identity, long_identity, parse_identity, satisfies
from .monoid import (FiniteMonoid, Presentation, adjoin_identity, dual,
                     direct_product, find_isomorphism, from_presentation,
                     is_aperiodic, is_j_trivial, submonoid)
from .rewrite import TauWord, TauWordSet, canonical, compose, tau_equal
from .words import Word, content, islands, is_two_island_limited, parse_word, print_word

__all__ = [
    "Word", "TauWord", "TauWordSet", "FiniteMonoid", "Identity", "Presentation",
    "parse_word", "print_word", "content", "islands", "is_two_island_limited",
    "canonical", "compose", "tau_equal", "leq_tau", "lower_set", "build_monoid",
    "from_presentation", "adjoin_identity", "dual", "direct_product",
    "submonoid", "find_isomorphism", "is_j_trivial", "is_aperiodic",
    "parse_identity", "long_identity", "satisfies",
]

__version__ = "0.1.0"
