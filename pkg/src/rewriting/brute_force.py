"""
Exhaustive reference implementations used to cross-check the fast paths.

Each function here trades speed for directness: homomorphisms by trying
every label-preserving map, pushout complements by trying every small
context, joinability by computing full reachable sets. They are only meant
for instances with a handful of nodes.
"""

import itertools
from typing import Iterable, Optional

from src.errors import HypergraphError
from src.graphs.hypergraph import Homomorphism, Hyperedge, Hypergraph, pushout_discrete
from src.rewriting.dpoi import (
    DpoRule,
    GraphWithInterface,
    IsoIndex,
    is_pushout_square,
    rewrite_all,
    same_up_to_iso,
)


def all_homomorphisms(pattern: Hypergraph, host: Hypergraph) -> list[Homomorphism]:
    """Every label- and incidence-preserving map pattern -> host.

    Tries every colour-preserving node map; given one, each pattern edge may
    go to any host edge with the same label and the mapped endpoints.
    """
    node_choices = [[y for y in range(host.node_count) if host.nodes[y] == c] for c in pattern.nodes]
    result = []
    for node_map in itertools.product(*node_choices):
        edge_choices = []
        for edge in pattern.edges:
            image = Hyperedge(
                edge.label,
                tuple(node_map[n] for n in edge.sources),
                tuple(node_map[n] for n in edge.targets),
            )
            edge_choices.append([j for j, other in enumerate(host.edges) if other == image])
        for edge_map in itertools.product(*edge_choices):
            try:
                result.append(Homomorphism(pattern, host, tuple(node_map), tuple(edge_map)))
            except HypergraphError:
                continue
    return result


def _grouped_partitions(items: list[int], key) -> Iterable[list[list[int]]]:
    """Set partitions of items whose blocks share the same key."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _grouped_partitions(rest, key):
        yield [[first]] + partition
        for i, block in enumerate(partition):
            if key(block[0]) == key(first):
                yield partition[:i] + [[first] + block] + partition[i + 1:]


def brute_force_rewrites(rule: DpoRule, g: GraphWithInterface, max_extra: int = 1) -> list[GraphWithInterface]:
    """Results of all DPOI steps, found by trying every small context.

    For each edge-injective match, contexts are built from a partition of K
    (blocks mapping to one node of G), up to max_extra further nodes over
    every node of G, the unmatched edges of G with any endpoints over the
    right nodes, and any factorisation of the interface. Every candidate is
    validated as a pushout; results are deduplicated up to isomorphism.
    """
    host = g.graph
    k = rule.interface
    seen: IsoIndex[None] = IsoIndex()
    results: list[GraphWithInterface] = []

    for match in all_homomorphisms(rule.lhs, host):
        if len(set(match.edge_map)) != len(match.edge_map):
            continue
        image = [match.node_map[n] for n in rule.lhs_leg]
        kept_edges = [j for j in range(host.edge_count) if j not in match.edge_map]

        for partition in _grouped_partitions(list(range(k.node_count)), lambda n: image[n]):
            for extras in itertools.product(range(max_extra + 1), repeat=host.node_count):
                to_graph = [image[block[0]] for block in partition]
                k_map = [0] * k.node_count
                for b, block in enumerate(partition):
                    for n in block:
                        k_map[n] = b
                for x, count in enumerate(extras):
                    to_graph.extend([x] * count)
                over = {x: [c for c, y in enumerate(to_graph) if y == x] for x in range(host.node_count)}
                colours = tuple(host.nodes[x] for x in to_graph)

                slots = [over[n] for j in kept_edges for n in host.edges[j].endpoints()]
                for endpoints in itertools.product(*slots):
                    edges, cursor = [], 0
                    for j in kept_edges:
                        edge = host.edges[j]
                        m, n = len(edge.sources), len(edge.targets)
                        chosen = endpoints[cursor:cursor + m + n]
                        edges.append(Hyperedge(edge.label, tuple(chosen[:m]), tuple(chosen[m:])))
                        cursor += m + n
                    context = Hypergraph(host.signature, colours, tuple(edges))
                    k_into_c = Homomorphism.from_discrete(k, context, k_map)
                    c_into_g = Homomorphism(context, host, tuple(to_graph), tuple(kept_edges))
                    if not is_pushout_square(k_into_c, rule.left, c_into_g, match):
                        continue
                    h, c_into_h, _ = pushout_discrete(k, k_into_c, rule.right)
                    for boundary in itertools.product(*(over[n] for n in g.interface)):
                        result = GraphWithInterface(h, tuple(c_into_h.node_map[c] for c in boundary))
                        if seen.add(result, None):
                            results.append(result)
    return results


def reachable(
    g: GraphWithInterface, rules: Iterable[DpoRule], max_states: int = 2_000
) -> list[GraphWithInterface]:
    """Everything reachable from g (g included), up to isomorphism."""
    rules = list(rules)
    seen: IsoIndex[None] = IsoIndex()
    seen.add(g, None)
    order = [g]
    index = 0
    while index < len(order):
        for step in rewrite_all(rules, order[index]):
            if seen.add(step.target, None):
                order.append(step.target)
        index += 1
        if len(order) > max_states:
            raise RuntimeError(f"more than {max_states} reachable states")
    return order


def brute_force_joinable(
    first: GraphWithInterface, second: GraphWithInterface, rules: Iterable[DpoRule]
) -> Optional[GraphWithInterface]:
    """A common reduct of two graphs, found by intersecting full reachable sets."""
    rules = list(rules)
    theirs = reachable(second, rules)
    for state in reachable(first, rules):
        if any(same_up_to_iso(state, other) for other in theirs):
            return state
    return None


def brute_force_normal_forms(g: GraphWithInterface, rules: Iterable[DpoRule]) -> list[GraphWithInterface]:
    """Irreducible states among everything reachable from g."""
    rules = list(rules)
    return [state for state in reachable(g, rules) if not rewrite_all(rules, state)]
