"""
Cospans of hypergraphs with ordered discrete interfaces.

A Cospan w -> v is a carrier hypergraph with two ordered node listings, the
left leg (spelling w) and the right leg (spelling v). Legs are listings, not
subsets: a node may appear several times, as in the multiplication cospan
whose left leg is [x, x].

Composition glues along the shared interface by pushout; the monoidal
product is disjoint union. Arrows of the free hypergraph category are
isomorphism classes of cospans, so equality is decided by cospan_equal.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from src.errors import HypergraphError, InterfaceMismatchError, PermutationError
from src.graphs.hypergraph import Homomorphism, Hypergraph, coproduct, pushout_discrete
from src.graphs.matching import is_isomorphic
from src.logger import get_logger
from src.syntax.signature import Signature, Word

logger = get_logger(__name__)

# An ordered listing of carrier nodes; its colours spell an object of the prop
Interface = tuple[int, ...]


@dataclass(frozen=True)
class Cospan:
    """A cospan left -> carrier <- right."""

    carrier: Hypergraph
    left: Interface
    right: Interface

    def __post_init__(self):
        for leg_name, leg in (("left", self.left), ("right", self.right)):
            for node in leg:
                if not 0 <= node < self.carrier.node_count:
                    raise HypergraphError(f"{leg_name} leg references missing node {node}")

    @property
    def signature(self) -> Signature:
        return self.carrier.signature

    @property
    def dom(self) -> Word:
        return self.carrier.colour_word(self.left)

    @property
    def cod(self) -> Word:
        return self.carrier.colour_word(self.right)

    def markings(self) -> dict[str, Interface]:
        return {"l": self.left, "r": self.right}


@dataclass(frozen=True)
class CospanEquality:
    """Outcome of cospan_equal; truthy when an isomorphism exists."""

    equal: bool
    witness: Optional[Homomorphism] = None

    def __bool__(self) -> bool:
        return self.equal


def empty_cospan(signature: Signature) -> Cospan:
    return Cospan(Hypergraph(signature), (), ())


def identity_cospan(w: Word) -> Cospan:
    """w -> w with a discrete carrier and both legs listing every node once."""
    listing = tuple(range(len(w)))
    return Cospan(Hypergraph.discrete(w.signature, w), listing, listing)


def permutation_cospan(p: Sequence[int], w: Word, target: Optional[Word] = None) -> Cospan:
    """The permutation cospan w -> w' with w'[j] = w[p[j]].

    Args:
        p: Right leg as a list of source positions
        w: Source word
        target: Expected target word, checked when given

    Raises:
        PermutationError: if p is not a bijection, or it does not carry w to target
    """
    p = tuple(p)
    if sorted(p) != list(range(len(w))):
        raise PermutationError(f"{list(p)} is not a permutation of {len(w)} positions")
    result = Cospan(Hypergraph.discrete(w.signature, w), tuple(range(len(w))), p)
    if target is not None and result.cod != target:
        raise PermutationError(f"permutation maps {w} to {result.cod}, not {target}")
    return result


def compose(f: Cospan, g: Cospan) -> Cospan:
    """Sequential composite f ; g, glued by pushout over the shared interface.

    Raises:
        InterfaceMismatchError: if the right word of f differs from the left word of g
    """
    if f.cod != g.dom:
        raise InterfaceMismatchError("cannot compose cospans", f.cod, g.dom)
    apex = Hypergraph.discrete(f.signature, f.cod)
    into_f = Homomorphism.from_discrete(apex, f.carrier, f.right)
    into_g = Homomorphism.from_discrete(apex, g.carrier, g.left)
    carrier, from_f, from_g = pushout_discrete(apex, into_f, into_g)
    return Cospan(
        carrier,
        tuple(from_f.node_map[n] for n in f.left),
        tuple(from_g.node_map[n] for n in g.right),
    )


def tensor(f: Cospan, g: Cospan) -> Cospan:
    """Monoidal product: disjoint carriers, interfaces concatenated with f first."""
    carrier, from_f, from_g = coproduct(f.carrier, g.carrier)
    return Cospan(
        carrier,
        tuple(from_f.node_map[n] for n in f.left) + tuple(from_g.node_map[n] for n in g.left),
        tuple(from_f.node_map[n] for n in f.right) + tuple(from_g.node_map[n] for n in g.right),
    )


def fold_cospan(f: Cospan) -> Cospan:
    """Bend the left interface over: ε -> w1 w2 with right leg left + right."""
    return Cospan(f.carrier, (), f.left + f.right)


def cospan_equal(f: Cospan, g: Cospan, strict: bool = False) -> CospanEquality:
    """Decide whether two cospans are isomorphic.

    An isomorphism is a carrier isomorphism that carries each leg of f onto
    the corresponding leg of g position by position. Cospans with different
    interface words are never equal.

    Args:
        f: First cospan
        g: Second cospan
        strict: Raise instead of answering False when the interface words differ

    Raises:
        InterfaceMismatchError: if strict and the interface words differ
    """
    if f.dom != g.dom:
        if strict:
            raise InterfaceMismatchError("left interfaces differ", f.dom, g.dom)
        return CospanEquality(False, None)
    if f.cod != g.cod:
        if strict:
            raise InterfaceMismatchError("right interfaces differ", f.cod, g.cod)
        return CospanEquality(False, None)
    witness = is_isomorphic(f.carrier, g.carrier, f.markings(), g.markings())
    return CospanEquality(witness is not None, witness)
