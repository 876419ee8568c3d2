"""Labelled hypergraphs, homomorphisms and cospans of hypergraphs."""

from .cospan import (
    Cospan,
    CospanEquality,
    Interface,
    compose,
    cospan_equal,
    empty_cospan,
    fold_cospan,
    identity_cospan,
    permutation_cospan,
    tensor,
)
from .dot import cospan_to_dot, hypergraph_to_dot
from .hypergraph import (
    Homomorphism,
    Hyperedge,
    Hypergraph,
    coproduct,
    mediating_morphism,
    pullback,
    pushout_discrete,
    quotient,
)
from .matching import find_homomorphisms, invariant_key, is_isomorphic, iter_homomorphisms
from .text_format import parse_cospan, parse_hypergraph, print_cospan, print_hypergraph

__all__ = [
    # Hypergraphs
    "Hyperedge",
    "Hypergraph",
    "Homomorphism",
    "coproduct",
    "quotient",
    "pushout_discrete",
    "pullback",
    "mediating_morphism",
    # Matching
    "iter_homomorphisms",
    "find_homomorphisms",
    "is_isomorphic",
    "invariant_key",
    # Cospans
    "Interface",
    "Cospan",
    "CospanEquality",
    "compose",
    "tensor",
    "identity_cospan",
    "permutation_cospan",
    "empty_cospan",
    "fold_cospan",
    "cospan_equal",
    # Text and DOT
    "parse_hypergraph",
    "print_hypergraph",
    "parse_cospan",
    "print_cospan",
    "hypergraph_to_dot",
    "cospan_to_dot",
]
