"""
Finite directed hypergraphs labelled over a signature, and the limits and
colimits the rewriting engine needs.

Nodes carry a colour, hyperedges carry an operation symbol and ordered
source/target tentacle lists whose colour words must match the operation's
arity and coarity. Nodes and edges are identified by their index inside one
hypergraph; every relation between two hypergraphs is an explicit
Homomorphism.

Colimits are restricted to what rewriting uses: coproducts, quotients by a
congruence, and pushouts along a discrete apex. Pullbacks are computed
componentwise.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from networkx.utils import UnionFind

from src.errors import (
    DiscreteApexError,
    HypergraphError,
    QuotientError,
    SignatureMismatchError,
)
from src.syntax.signature import OperationSymbol, Signature, Word


@dataclass(frozen=True)
class Hyperedge:
    """An edge labelled by operation index `label`, with ordered tentacles."""

    label: int
    sources: tuple[int, ...]
    targets: tuple[int, ...]

    def endpoints(self) -> tuple[int, ...]:
        return self.sources + self.targets


@dataclass(frozen=True)
class Hypergraph:
    """An immutable (Σ, C)-labelled hypergraph.

    Args:
        signature: Signature giving colours and operation symbols
        nodes: Colour index of each node
        edges: Hyperedges, endpoints given as node indices

    Raises:
        HypergraphError: if a label or endpoint is out of range, or an edge's
            tentacle colours do not spell its operation's type
    """

    signature: Signature = field(compare=False, repr=False)
    nodes: tuple[int, ...] = ()
    edges: tuple[Hyperedge, ...] = ()

    def __post_init__(self):
        colour_count = len(self.signature.colours)
        for i, colour in enumerate(self.nodes):
            if not 0 <= colour < colour_count:
                raise HypergraphError(f"node {i} has unknown colour index {colour}")
        operations = self.signature.operations
        for j, edge in enumerate(self.edges):
            if not 0 <= edge.label < len(operations):
                raise HypergraphError(f"edge {j} has unknown operation index {edge.label}")
            for node in edge.endpoints():
                if not 0 <= node < len(self.nodes):
                    raise HypergraphError(f"edge {j} references missing node {node}")
            op = operations[edge.label]
            if self.colour_word(edge.sources) != op.arity:
                raise HypergraphError(
                    f"edge {j} ({op.name}) sources have colours {self.colour_word(edge.sources)}, expected {op.arity}"
                )
            if self.colour_word(edge.targets) != op.coarity:
                raise HypergraphError(
                    f"edge {j} ({op.name}) targets have colours {self.colour_word(edge.targets)}, expected {op.coarity}"
                )

    @classmethod
    def discrete(cls, signature: Signature, colours: Iterable[int] | Word = ()) -> "Hypergraph":
        """Edge-free hypergraph with one node per listed colour."""
        return cls(signature, tuple(colours))

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def is_discrete(self) -> bool:
        return not self.edges

    def operation(self, edge: int) -> OperationSymbol:
        return self.signature.operations[self.edges[edge].label]

    def colour_word(self, nodes: Sequence[int]) -> Word:
        """The word spelled by the colours of a node listing."""
        return Word(self.signature, tuple(self.nodes[i] for i in nodes))

    def incident_edges(self, node: int) -> list[int]:
        return [j for j, edge in enumerate(self.edges) if node in edge.endpoints()]


@dataclass(frozen=True)
class Homomorphism:
    """A label- and incidence-preserving map between two hypergraphs."""

    source: Hypergraph
    target: Hypergraph
    node_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    def __post_init__(self):
        src, tgt = self.source, self.target
        if src.signature is not tgt.signature:
            raise SignatureMismatchError("homomorphism between hypergraphs of different signatures")
        if len(self.node_map) != src.node_count or len(self.edge_map) != src.edge_count:
            raise HypergraphError("homomorphism maps must be total on the source")
        for i, image in enumerate(self.node_map):
            if not 0 <= image < tgt.node_count:
                raise HypergraphError(f"node {i} maps outside the target")
            if src.nodes[i] != tgt.nodes[image]:
                raise HypergraphError(f"node {i} maps to node {image} of another colour")
        for j, image in enumerate(self.edge_map):
            if not 0 <= image < tgt.edge_count:
                raise HypergraphError(f"edge {j} maps outside the target")
            edge, target_edge = src.edges[j], tgt.edges[image]
            if edge.label != target_edge.label:
                raise HypergraphError(f"edge {j} maps to edge {image} with another label")
            if tuple(self.node_map[n] for n in edge.sources) != target_edge.sources:
                raise HypergraphError(f"edge {j} sources do not commute with edge {image}")
            if tuple(self.node_map[n] for n in edge.targets) != target_edge.targets:
                raise HypergraphError(f"edge {j} targets do not commute with edge {image}")

    @classmethod
    def identity(cls, g: Hypergraph) -> "Homomorphism":
        return cls(g, g, tuple(range(g.node_count)), tuple(range(g.edge_count)))

    @classmethod
    def from_discrete(cls, source: Hypergraph, target: Hypergraph, node_map: Sequence[int]) -> "Homomorphism":
        """A homomorphism out of an edge-free hypergraph, given by its nodes."""
        if not source.is_discrete():
            raise HypergraphError("from_discrete needs an edge-free source")
        return cls(source, target, tuple(node_map), ())

    def compose(self, after: "Homomorphism") -> "Homomorphism":
        """Return `self` followed by `after`."""
        if after.source != self.target:
            raise HypergraphError("cannot compose homomorphisms whose ends do not meet")
        return Homomorphism(
            self.source,
            after.target,
            tuple(after.node_map[n] for n in self.node_map),
            tuple(after.edge_map[e] for e in self.edge_map),
        )

    def is_injective(self) -> bool:
        return len(set(self.node_map)) == len(self.node_map) and len(set(self.edge_map)) == len(self.edge_map)

    def is_surjective(self) -> bool:
        return set(self.node_map) == set(range(self.target.node_count)) and set(self.edge_map) == set(
            range(self.target.edge_count)
        )

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


def _check_same_signature(*graphs: Hypergraph) -> Signature:
    signature = graphs[0].signature
    for g in graphs[1:]:
        if g.signature is not signature:
            raise SignatureMismatchError("hypergraphs over different signatures")
    return signature


def coproduct(a: Hypergraph, b: Hypergraph) -> tuple[Hypergraph, Homomorphism, Homomorphism]:
    """Disjoint union with its injections; a's nodes and edges come first."""
    signature = _check_same_signature(a, b)
    offset = a.node_count
    shifted = tuple(
        Hyperedge(
            e.label,
            tuple(n + offset for n in e.sources),
            tuple(n + offset for n in e.targets),
        )
        for e in b.edges
    )
    total = Hypergraph(signature, a.nodes + b.nodes, a.edges + shifted)
    inj_a = Homomorphism(a, total, tuple(range(a.node_count)), tuple(range(a.edge_count)))
    inj_b = Homomorphism(
        b,
        total,
        tuple(range(offset, offset + b.node_count)),
        tuple(range(a.edge_count, a.edge_count + b.edge_count)),
    )
    return total, inj_a, inj_b


def _block_index(blocks: Iterable[Iterable[int]], size: int, kind: str) -> list[int]:
    """Number the blocks of a partial partition of range(size) by their least element.

    Elements not mentioned form singleton blocks.
    """
    owner: dict[int, int] = {}
    explicit: list[list[int]] = []
    for block in blocks:
        members = sorted(set(block))
        for x in members:
            if not 0 <= x < size:
                raise QuotientError(f"{kind} {x} out of range", block=members)
            if x in owner:
                raise QuotientError(f"{kind} {x} appears in two blocks", block=members)
            owner[x] = len(explicit)
        explicit.append(members)

    all_blocks = [m for m in explicit if m] + [[x] for x in range(size) if x not in owner]
    all_blocks.sort(key=lambda members: members[0])
    index = [0] * size
    for number, members in enumerate(all_blocks):
        for x in members:
            index[x] = number
    return index


def quotient(
    g: Hypergraph,
    node_blocks: Iterable[Iterable[int]] = (),
    edge_blocks: Iterable[Iterable[int]] = (),
) -> tuple[Hypergraph, Homomorphism]:
    """Quotient a hypergraph by node and edge equivalences.

    Args:
        g: Hypergraph to quotient
        node_blocks: Blocks of identified nodes; unlisted nodes stay alone
        edge_blocks: Blocks of identified edges; unlisted edges stay alone

    Returns:
        (quotient hypergraph, surjective projection g -> quotient). Blocks are
        numbered in the order of their least element.

    Raises:
        QuotientError: if a node block mixes colours, or an edge block mixes
            labels or is not congruent with the node equivalence
    """
    node_index = _block_index(node_blocks, g.node_count, "node")
    edge_index = _block_index(edge_blocks, g.edge_count, "edge")

    node_colours: dict[int, int] = {}
    for i, block in enumerate(node_index):
        if node_colours.setdefault(block, g.nodes[i]) != g.nodes[i]:
            raise QuotientError("node block mixes colours", block=[x for x, b in enumerate(node_index) if b == block])

    new_edges: dict[int, Hyperedge] = {}
    for j, block in enumerate(edge_index):
        edge = g.edges[j]
        image = Hyperedge(
            edge.label,
            tuple(node_index[n] for n in edge.sources),
            tuple(node_index[n] for n in edge.targets),
        )
        existing = new_edges.setdefault(block, image)
        if existing != image:
            members = [x for x, b in enumerate(edge_index) if b == block]
            raise QuotientError("edge block is not a congruence", block=members)

    result = Hypergraph(
        g.signature,
        tuple(node_colours[b] for b in range(len(node_colours))),
        tuple(new_edges[b] for b in range(len(new_edges))),
    )
    return result, Homomorphism(g, result, tuple(node_index), tuple(edge_index))


def pushout_discrete(
    apex: Hypergraph, a: Homomorphism, b: Homomorphism
) -> tuple[Hypergraph, Homomorphism, Homomorphism]:
    """Pushout of A <- J -> B along an edge-free J.

    The result is A + B with a(j) and b(j) identified for every node j of J.
    No edges are merged.

    Raises:
        DiscreteApexError: if J has edges
        HypergraphError: if a or b does not start at J
    """
    if not apex.is_discrete():
        raise DiscreteApexError(f"pushout apex has {apex.edge_count} hyperedges")
    if a.source != apex or b.source != apex:
        raise HypergraphError("pushout legs must start at the apex")

    total, inj_a, inj_b = coproduct(a.target, b.target)
    classes = UnionFind(range(total.node_count))
    for j in range(apex.node_count):
        classes.union(inj_a.node_map[a.node_map[j]], inj_b.node_map[b.node_map[j]])

    result, proj = quotient(total, classes.to_sets())
    return result, inj_a.compose(proj), inj_b.compose(proj)


def pullback(f: Homomorphism, g: Homomorphism) -> tuple[Hypergraph, Homomorphism, Homomorphism]:
    """Pullback of A -> S <- B, computed componentwise.

    Nodes are pairs (a, b) with f(a) = g(b) and edges pairs (e, e') with
    f(e) = g(e'), both in lexicographic order.
    """
    if f.target != g.target:
        raise HypergraphError("pullback needs homomorphisms into the same hypergraph")
    a, b = f.source, g.source
    node_pairs = [
        (x, y) for x in range(a.node_count) for y in range(b.node_count) if f.node_map[x] == g.node_map[y]
    ]
    node_number = {pair: i for i, pair in enumerate(node_pairs)}
    edge_pairs = [
        (x, y) for x in range(a.edge_count) for y in range(b.edge_count) if f.edge_map[x] == g.edge_map[y]
    ]

    edges = []
    for x, y in edge_pairs:
        ea, eb = a.edges[x], b.edges[y]
        edges.append(
            Hyperedge(
                ea.label,
                tuple(node_number[pair] for pair in zip(ea.sources, eb.sources)),
                tuple(node_number[pair] for pair in zip(ea.targets, eb.targets)),
            )
        )

    result = Hypergraph(a.signature, tuple(a.nodes[x] for x, _ in node_pairs), tuple(edges))
    to_a = Homomorphism(result, a, tuple(x for x, _ in node_pairs), tuple(x for x, _ in edge_pairs))
    to_b = Homomorphism(result, b, tuple(y for _, y in node_pairs), tuple(y for _, y in edge_pairs))
    return result, to_a, to_b


def mediating_morphism(
    pa: Homomorphism, pb: Homomorphism, f: Homomorphism, g: Homomorphism
) -> Optional[Homomorphism]:
    """The map u : P -> X with pa;u = f and pb;u = g, if the cocone allows one.

    P is the common target of pa and pb, which must be jointly surjective
    (true for pushouts along a discrete apex). Returns None when the data
    f, g disagree on an element of P.
    """
    p = pa.target
    if pb.target != p or f.source != pa.source or g.source != pb.source or f.target != g.target:
        raise HypergraphError("mediating morphism needs a cocone over the same span")

    node_map: dict[int, int] = {}
    edge_map: dict[int, int] = {}
    for leg, cocone in ((pa, f), (pb, g)):
        for x, image in enumerate(leg.node_map):
            if node_map.setdefault(image, cocone.node_map[x]) != cocone.node_map[x]:
                return None
        for e, image in enumerate(leg.edge_map):
            if edge_map.setdefault(image, cocone.edge_map[e]) != cocone.edge_map[e]:
                return None

    if len(node_map) != p.node_count or len(edge_map) != p.edge_count:
        raise HypergraphError("pushout legs are not jointly surjective")
    return Homomorphism(
        p,
        f.target,
        tuple(node_map[i] for i in range(p.node_count)),
        tuple(edge_map[j] for j in range(p.edge_count)),
    )
