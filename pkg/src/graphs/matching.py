"""
Homomorphism search and isomorphism testing for hypergraphs.

Homomorphisms are found by backtracking: edges first, in index order, since
operation labels prune hardest; isolated nodes last. Enumeration order is
deterministic.

Isomorphism (optionally respecting ordered interface listings) is delegated
to networkx's VF2 matcher on a plain labelled digraph encoding:

    ("n", i)          node i, label "node:<colour>"
    ("e", j)          edge j, label "edge:<operation>"
    ("s", j, k)       k-th source tentacle of edge j, label "s<k>"
    ("t", j, k)       k-th target tentacle of edge j, label "t<k>"
    ("m", tag, pos)   interface marker, label "<tag><pos>"

with arcs edge -> tentacle -> node and marker -> node. Weisfeiler-Lehman
hashes of the undirected encoding, prefixed by colour and label counts,
serve as state keys in rewriting searches.
"""

from collections import Counter
from typing import Iterator, Mapping, Optional, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher, categorical_node_match

from src.graphs.hypergraph import Homomorphism, Hypergraph
from src.logger import get_logger

logger = get_logger(__name__)

# tag -> ordered listing of nodes, e.g. {"l": cospan.left, "r": cospan.right}
Markings = Mapping[str, Sequence[int]]

_node_match = categorical_node_match("label", None)

# marker -> node -> tentacle -> edge -> tentacle -> node -> marker
WL_ITERATIONS = 6


def iter_homomorphisms(
    pattern: Hypergraph,
    host: Hypergraph,
    *,
    edge_injective: bool = False,
) -> Iterator[Homomorphism]:
    """Yield every homomorphism pattern -> host in deterministic order.

    Args:
        pattern: Hypergraph to embed (L)
        host: Hypergraph searched (G)
        edge_injective: Only yield maps that are injective on edges

    Yields:
        Homomorphism values; node placement is not required to be injective
    """
    if pattern.signature is not host.signature:
        return

    host_edges_by_label: dict[int, list[int]] = {}
    for j, edge in enumerate(host.edges):
        host_edges_by_label.setdefault(edge.label, []).append(j)

    covered = {n for edge in pattern.edges for n in edge.endpoints()}
    free_nodes = [n for n in range(pattern.node_count) if n not in covered]

    node_map: dict[int, int] = {}
    edge_map: list[int] = []

    def place_edges(index: int) -> Iterator[Homomorphism]:
        if index == pattern.edge_count:
            yield from place_nodes(0)
            return
        edge = pattern.edges[index]
        for candidate in host_edges_by_label.get(edge.label, []):
            if edge_injective and candidate in edge_map:
                continue
            target = host.edges[candidate]
            added: list[int] = []
            consistent = True
            for mine, theirs in zip(edge.endpoints(), target.endpoints()):
                bound = node_map.get(mine)
                if bound is None:
                    node_map[mine] = theirs
                    added.append(mine)
                elif bound != theirs:
                    consistent = False
                    break
            if consistent:
                edge_map.append(candidate)
                yield from place_edges(index + 1)
                edge_map.pop()
            for n in added:
                del node_map[n]

    def place_nodes(index: int) -> Iterator[Homomorphism]:
        if index == len(free_nodes):
            yield Homomorphism(
                pattern,
                host,
                tuple(node_map[n] for n in range(pattern.node_count)),
                tuple(edge_map),
            )
            return
        node = free_nodes[index]
        for candidate in range(host.node_count):
            if host.nodes[candidate] == pattern.nodes[node]:
                node_map[node] = candidate
                yield from place_nodes(index + 1)
                del node_map[node]

    yield from place_edges(0)


def find_homomorphisms(pattern: Hypergraph, host: Hypergraph, *, edge_injective: bool = False) -> list[Homomorphism]:
    """All homomorphisms pattern -> host (empty list if there is none)."""
    matches = list(iter_homomorphisms(pattern, host, edge_injective=edge_injective))
    logger.debug("Found %d homomorphisms", len(matches))
    return matches


def to_networkx(g: Hypergraph, markings: Optional[Markings] = None) -> nx.DiGraph:
    """Encode a hypergraph (with optional interface markings) as a labelled digraph."""
    encoded = nx.DiGraph()
    for i, colour in enumerate(g.nodes):
        encoded.add_node(("n", i), label=f"node:{colour}")
    for j, edge in enumerate(g.edges):
        encoded.add_node(("e", j), label=f"edge:{edge.label}")
        for side, listing in (("s", edge.sources), ("t", edge.targets)):
            for k, node in enumerate(listing):
                tentacle = (side, j, k)
                encoded.add_node(tentacle, label=f"{side}{k}")
                encoded.add_edge(("e", j), tentacle)
                encoded.add_edge(tentacle, ("n", node))
    for tag, listing in (markings or {}).items():
        for pos, node in enumerate(listing):
            marker = ("m", tag, pos)
            encoded.add_node(marker, label=f"{tag}{pos}")
            encoded.add_edge(marker, ("n", node))
    return encoded


def _profile(g: Hypergraph, markings: Optional[Markings]) -> tuple:
    marking_profile = tuple(
        sorted((tag, tuple(g.nodes[n] for n in listing)) for tag, listing in (markings or {}).items())
    )
    return (
        g.node_count,
        g.edge_count,
        tuple(sorted(Counter(g.nodes).items())),
        tuple(sorted(Counter(e.label for e in g.edges).items())),
        marking_profile,
    )


def is_isomorphic(
    g: Hypergraph,
    h: Hypergraph,
    markings_g: Optional[Markings] = None,
    markings_h: Optional[Markings] = None,
) -> Optional[Homomorphism]:
    """Find an isomorphism g -> h that also maps each marking listing onto h's.

    Args:
        g: First hypergraph
        h: Second hypergraph
        markings_g: Ordered interface listings into g, by tag
        markings_h: Listings into h with the same tags

    Returns:
        A bijective Homomorphism witness, or None
    """
    if g.signature is not h.signature:
        return None
    if _profile(g, markings_g) != _profile(h, markings_h):
        return None

    matcher = DiGraphMatcher(to_networkx(g, markings_g), to_networkx(h, markings_h), node_match=_node_match)
    if not matcher.is_isomorphic():
        return None
    mapping = matcher.mapping
    return Homomorphism(
        g,
        h,
        tuple(mapping[("n", i)][1] for i in range(g.node_count)),
        tuple(mapping[("e", j)][1] for j in range(g.edge_count)),
    )


def invariant_key(g: Hypergraph, markings: Optional[Markings] = None) -> str:
    """Isomorphism-invariant hash of a hypergraph with interface markings.

    Equal keys do not prove isomorphism; callers confirm with is_isomorphic.
    Hashing runs on the undirected encoding: in the digraph, node vertices
    have no successors, so they never see the tentacles and markers that
    reach them. Tentacle and marker labels already carry direction.
    """
    encoded = to_networkx(g, markings).to_undirected(as_view=True)
    wl = nx.weisfeiler_lehman_graph_hash(encoded, node_attr="label", iterations=WL_ITERATIONS)
    return f"{_profile(g, markings)!r}|{wl}"
