"""
Interpretation of string-diagram terms as cospans of hypergraphs, and back.

translate is the structural functor: an operation becomes a single hyperedge
whose tentacles are the interface nodes, the Frobenius generators become
discrete cospans that copy or merge one node, Seq becomes pushout
composition and Par becomes disjoint union.

extract goes the other way. A cospan is factored as

    (discrete left factor) ; (id on all nodes + every edge) ; (discrete right factor)

and each discrete factor is written with Frobenius generators only: sort the
interface wires by the node they reach, merge the wires of each node with a
tree of Mult/Unit, copy it out with a tree of Comult/Counit, and undo the
sorting on the other side.

Example:
    >>> sig = parse_signature("colour c")
    >>> f = translate(parse_diagram("mult[c]", sig))
    >>> f.left, f.right
    ((0, 0), (0,))
"""

from dataclasses import dataclass

from src.errors import HyperRewriteError, NotDiscreteError, TypeMismatchError
from src.graphs.cospan import (
    Cospan,
    compose,
    cospan_equal,
    empty_cospan,
    identity_cospan,
    permutation_cospan,
    tensor,
)
from src.graphs.hypergraph import Hyperedge, Hypergraph
from src.logger import get_logger
from src.syntax.diagram import (
    Comult,
    Counit,
    Diagram,
    Empty,
    Gen,
    Id,
    Mult,
    Par,
    Seq,
    Sym,
    Unit,
    id_word,
    is_frobenius_free,
    par_all,
    permutation_term,
    seq_all,
)
from src.syntax.signature import Colour, Word

logger = get_logger(__name__)


@dataclass(frozen=True)
class FiniteFunction:
    """A function {0..domain-1} -> {0..codomain-1} given by its value table."""

    codomain: int
    values: tuple[int, ...]

    def __post_init__(self):
        for v in self.values:
            if not 0 <= v < self.codomain:
                raise ValueError(f"value {v} outside codomain of size {self.codomain}")

    @property
    def domain(self) -> int:
        return len(self.values)

    def fibre_sizes(self) -> list[int]:
        sizes = [0] * self.codomain
        for v in self.values:
            sizes[v] += 1
        return sizes

    def sorting_permutation(self) -> list[int]:
        """Domain positions listed by increasing value (stable)."""
        return sorted(range(self.domain), key=lambda i: self.values[i])


def _one_node(colour: Colour, left: tuple[int, ...], right: tuple[int, ...]) -> Cospan:
    return Cospan(Hypergraph.discrete(colour.signature, (colour.index,)), left, right)


def translate(d: Diagram) -> Cospan:
    """Interpret a term as a cospan; its interface words are d's type."""
    if isinstance(d, Seq):
        return compose(translate(d.left), translate(d.right))
    if isinstance(d, Par):
        return tensor(translate(d.top), translate(d.bottom))
    if isinstance(d, Gen):
        op = d.op
        m, n = len(op.arity), len(op.coarity)
        carrier = Hypergraph(
            d.signature,
            op.arity.colours + op.coarity.colours,
            (Hyperedge(op.index, tuple(range(m)), tuple(range(m, m + n))),),
        )
        return Cospan(carrier, tuple(range(m)), tuple(range(m, m + n)))
    if isinstance(d, Id):
        return identity_cospan(d.colour.word)
    if isinstance(d, Sym):
        return permutation_cospan((1, 0), d.dom)
    if isinstance(d, Mult):
        return _one_node(d.colour, (0, 0), (0,))
    if isinstance(d, Unit):
        return _one_node(d.colour, (), (0,))
    if isinstance(d, Comult):
        return _one_node(d.colour, (0,), (0, 0))
    if isinstance(d, Counit):
        return _one_node(d.colour, (0,), ())
    if isinstance(d, Empty):
        return empty_cospan(d.signature)
    raise TypeError(f"not a diagram: {d!r}")


def _merge_tree(colour: Colour, p: int) -> Diagram:
    """c^p -> c, left-combed."""
    if p == 0:
        return Unit(colour)
    if p == 1:
        return Id(colour)
    return Seq(Par(_merge_tree(colour, p - 1), Id(colour)), Mult(colour))


def _copy_tree(colour: Colour, q: int) -> Diagram:
    """c -> c^q, left-combed."""
    if q == 0:
        return Counit(colour)
    if q == 1:
        return Id(colour)
    return Seq(Comult(colour), Par(_copy_tree(colour, q - 1), Id(colour)))


def _spider(colour: Colour, p: int, q: int) -> Diagram:
    """The Frobenius term c^p -> c^q whose translation is one node."""
    if p == 1:
        return _copy_tree(colour, q)
    if q == 1:
        return _merge_tree(colour, p)
    return Seq(_merge_tree(colour, p), _copy_tree(colour, q))


def _is_identity(p: list[int]) -> bool:
    return all(i == v for i, v in enumerate(p))


def discrete_to_frobenius(f: Cospan) -> Diagram:
    """Write a cospan with an edge-free carrier as a Frobenius-only term.

    Raises:
        NotDiscreteError: if the carrier has hyperedges
    """
    g = f.carrier
    if not g.is_discrete():
        raise NotDiscreteError(f"carrier has {g.edge_count} hyperedges")
    signature = f.signature
    colours = signature.colours

    node_order = sorted(range(g.node_count), key=lambda n: (g.nodes[n], n))
    rank = {node: r for r, node in enumerate(node_order)}
    left_fn = FiniteFunction(g.node_count, tuple(rank[n] for n in f.left))
    right_fn = FiniteFunction(g.node_count, tuple(rank[n] for n in f.right))

    parts: list[Diagram] = []
    left_sort = left_fn.sorting_permutation()
    if not _is_identity(left_sort):
        parts.append(permutation_term(f.dom, left_sort))

    p_sizes, q_sizes = left_fn.fibre_sizes(), right_fn.fibre_sizes()
    spiders = [_spider(colours[g.nodes[node]], p_sizes[r], q_sizes[r]) for r, node in enumerate(node_order)]
    parts.append(par_all(spiders, signature))

    right_sort = right_fn.sorting_permutation()
    if not _is_identity(right_sort):
        sorted_word = g.colour_word([f.right[i] for i in right_sort])
        inverse = [0] * len(right_sort)
        for j, i in enumerate(right_sort):
            inverse[i] = j
        parts.append(permutation_term(sorted_word, inverse))

    return seq_all(parts)


def extract(f: Cospan) -> Diagram:
    """Recover a term whose translation is isomorphic to f.

    Nodes and edges are taken in index order. The term is generally larger
    than necessary.
    """
    g = f.carrier
    signature = f.signature
    all_nodes = tuple(range(g.node_count))
    every_node = Hypergraph.discrete(signature, g.nodes)

    sources = tuple(n for edge in g.edges for n in edge.sources)
    targets = tuple(n for edge in g.edges for n in edge.targets)
    gens = [Gen(g.operation(j)) for j in range(g.edge_count)]
    middle = par_all([id_word(Word(signature, g.nodes))] + gens, signature)

    before = discrete_to_frobenius(Cospan(every_node, f.left, all_nodes + sources))
    after = discrete_to_frobenius(Cospan(every_node, all_nodes + targets, f.right))
    return seq_all([before, middle, after])


def faithfulness_probe(a: Diagram, b: Diagram, pure_sigma: bool = False) -> bool:
    """Decide equality of two parallel terms in the free hypergraph category.

    When both terms avoid the Frobenius generators, the answer is also
    equality in the free symmetric monoidal category on the signature.

    Args:
        a: First term
        b: Second term, of the same type
        pure_sigma: Require both terms to be Frobenius-free

    Raises:
        TypeMismatchError: if the terms have different types
    """
    if a.dom != b.dom or a.cod != b.cod:
        raise TypeMismatchError("terms are not parallel", f"{a.dom} -> {a.cod}", f"{b.dom} -> {b.cod}")
    if pure_sigma and not (is_frobenius_free(a) and is_frobenius_free(b)):
        raise HyperRewriteError("pure_sigma requested but a term uses Frobenius generators")
    equal = cospan_equal(translate(a), translate(b)).equal
    logger.debug("faithfulness_probe: %s", "equal" if equal else "different")
    return equal
