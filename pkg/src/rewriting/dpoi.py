"""
Double-pushout rewriting with interfaces (DPOI) on hypergraphs.

A rule is a span L <- K -> R with K discrete, given as two ordered node
listings of K into L and into R. A graph with interface (G <- I) rewrites to
(H <- I) when there is a match m : L -> G, a context C with K -> C and
I -> C, and both squares

    L <-- K --> R
    |     |     |
    G <-- C --> H

are pushouts, with I -> G factoring through C.

Pushouts along a discrete apex never merge edges, so every match used here is
injective on edges. Because K -> L may be non-injective, a match can have
several pushout complements; all of them are enumerated and each is checked
by recomputing the left square (see docs/adr/0001-pushout-complement-enumeration.md).

Syntactic rules l => r between terms become DPOI rules by folding both sides:
L and R are the carriers of the folded translations and K lists the shared
boundary.
"""

import itertools
from dataclasses import dataclass
from typing import Generic, Iterable, Iterator, Optional, Sequence, TypeVar

from src.errors import InterfaceMismatchError, TypeMismatchError
from src.graphs.cospan import Cospan, Interface, fold_cospan
from src.graphs.hypergraph import (
    Homomorphism,
    Hyperedge,
    Hypergraph,
    mediating_morphism,
    pushout_discrete,
)
from src.graphs.matching import invariant_key, is_isomorphic, iter_homomorphisms
from src.graphs.text_format import print_hypergraph
from src.logger import get_logger
from src.semantics.functor import extract, translate
from src.syntax.diagram import Diagram, Rule, fold_term
from src.syntax.signature import Word

logger = get_logger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class DpoRule:
    """A DPOI rule L <- K -> R with discrete K.

    Args:
        name: Rule name
        lhs: L
        rhs: R
        lhs_leg: Node of L reached by each node of K
        rhs_leg: Node of R reached by each node of K

    Raises:
        TypeMismatchError: if the two listings spell different colour words
    """

    name: str
    lhs: Hypergraph
    rhs: Hypergraph
    lhs_leg: Interface
    rhs_leg: Interface

    def __post_init__(self):
        if len(self.lhs_leg) != len(self.rhs_leg):
            raise TypeMismatchError(f"rule '{self.name}' interface listings differ in length")
        if self.lhs.colour_word(self.lhs_leg) != self.rhs.colour_word(self.rhs_leg):
            raise TypeMismatchError(
                f"rule '{self.name}' interface colours differ",
                self.lhs.colour_word(self.lhs_leg),
                self.rhs.colour_word(self.rhs_leg),
            )

    @property
    def interface(self) -> Hypergraph:
        return Hypergraph.discrete(self.lhs.signature, self.lhs.colour_word(self.lhs_leg))

    @property
    def left(self) -> Homomorphism:
        return Homomorphism.from_discrete(self.interface, self.lhs, self.lhs_leg)

    @property
    def right(self) -> Homomorphism:
        return Homomorphism.from_discrete(self.interface, self.rhs, self.rhs_leg)

    def covered_nodes(self) -> frozenset[int]:
        """Nodes of L in the image of K."""
        return frozenset(self.lhs_leg)


@dataclass(frozen=True)
class GraphWithInterface:
    """A hypergraph G with an ordered discrete interface I -> G."""

    graph: Hypergraph
    interface: Interface

    @property
    def word(self) -> Word:
        return self.graph.colour_word(self.interface)

    @classmethod
    def from_cospan(cls, f: Cospan) -> "GraphWithInterface":
        """View a cospan out of the empty word as a graph with interface."""
        if f.left:
            raise InterfaceMismatchError("expected a cospan from the empty word", f.dom, f.signature.epsilon)
        return cls(f.carrier, f.right)

    def to_cospan(self) -> Cospan:
        return Cospan(self.graph, (), self.interface)

    def markings(self) -> dict[str, Interface]:
        return {"i": self.interface}


def unfold(g: GraphWithInterface, n: int) -> Cospan:
    """Read the first n interface positions as a left boundary."""
    return Cospan(g.graph, g.interface[:n], g.interface[n:])


def same_up_to_iso(a: GraphWithInterface, b: GraphWithInterface) -> bool:
    return is_isomorphic(a.graph, b.graph, a.markings(), b.markings()) is not None


class IsoIndex(Generic[T]):
    """A collection of graphs with interface keyed up to isomorphism.

    Buckets by Weisfeiler-Lehman hash, then confirms with a full isomorphism test.
    """

    def __init__(self):
        self._buckets: dict[str, list[tuple[GraphWithInterface, T]]] = {}
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def __iter__(self) -> Iterator[tuple[GraphWithInterface, T]]:
        for bucket in self._buckets.values():
            yield from bucket

    def _bucket(self, g: GraphWithInterface) -> list[tuple[GraphWithInterface, T]]:
        return self._buckets.setdefault(invariant_key(g.graph, g.markings()), [])

    def find(self, g: GraphWithInterface) -> Optional[tuple[GraphWithInterface, T]]:
        for entry in self._bucket(g):
            if same_up_to_iso(entry[0], g):
                return entry
        return None

    def add(self, g: GraphWithInterface, value: T) -> bool:
        """Insert unless an isomorphic graph is present; True if inserted."""
        bucket = self._bucket(g)
        for existing, _ in bucket:
            if same_up_to_iso(existing, g):
                return False
        bucket.append((g, value))
        self._size += 1
        return True


@dataclass(frozen=True)
class RewriteStep:
    """One validated DPOI step (G <- I) => (H <- I)."""

    rule: DpoRule
    source: GraphWithInterface
    match: Homomorphism  # L -> G
    context: Hypergraph  # C
    interface_into_context: Homomorphism  # K -> C
    context_into_graph: Homomorphism  # C -> G
    boundary: Interface  # I -> C
    result: Hypergraph  # H
    context_into_result: Homomorphism  # C -> H
    rhs_into_result: Homomorphism  # R -> H

    @property
    def target(self) -> GraphWithInterface:
        return GraphWithInterface(
            self.result, tuple(self.context_into_result.node_map[n] for n in self.boundary)
        )


@dataclass(frozen=True)
class GluingCheck:
    """Outcome of the gluing conditions for one match; truthy when a complement exists."""

    ok: bool
    dangling: tuple[int, ...] = ()  # deleted nodes of G touched by other edges
    identified: tuple[int, ...] = ()  # nodes of G where the match glues material K does not cover
    orphaned_interface: tuple[int, ...] = ()  # interface nodes of G that would be deleted
    merged_edges: tuple[int, ...] = ()  # edges of G hit twice by the match

    def __bool__(self) -> bool:
        return self.ok


def rule_from_diagrams(rule: Rule) -> DpoRule:
    """Fold both sides of a syntactic rule and translate them to a DPOI rule."""
    left = translate(fold_term(rule.lhs))
    right = translate(fold_term(rule.rhs))
    return DpoRule(rule.name, left.carrier, right.carrier, left.right, right.right)


def _preimages(match: Homomorphism) -> dict[int, list[int]]:
    result: dict[int, list[int]] = {}
    for l_node, g_node in enumerate(match.node_map):
        result.setdefault(g_node, []).append(l_node)
    return result


def _interface_preimages(rule: DpoRule, match: Homomorphism) -> dict[int, list[int]]:
    """For each node of G, the K nodes whose image lands on it."""
    result: dict[int, list[int]] = {}
    for k, l_node in enumerate(rule.lhs_leg):
        result.setdefault(match.node_map[l_node], []).append(k)
    return result


def dangling_and_identification_check(
    rule: DpoRule, match: Homomorphism, g: Optional[GraphWithInterface] = None
) -> GluingCheck:
    """Check whether a match admits at least one pushout complement.

    A node of G hit by the match but by no node of K is deleted: it must be
    hit by exactly one node of L, touched by no edge outside the match and not
    be an interface node. A node hit by K may only be hit by L nodes that K
    covers. The match must be injective on edges.
    """
    host = match.target
    interface = g.interface if g is not None else ()
    covered = rule.covered_nodes()
    l_pre = _preimages(match)
    k_pre = _interface_preimages(rule, match)
    matched_edges = set(match.edge_map)

    merged_edges = tuple(sorted(e for e in matched_edges if match.edge_map.count(e) > 1))
    dangling: list[int] = []
    identified: list[int] = []
    orphaned: list[int] = []
    for x, l_nodes in sorted(l_pre.items()):
        if x in k_pre:
            if any(n not in covered for n in l_nodes):
                identified.append(x)
            continue
        if len(l_nodes) > 1:
            identified.append(x)
        if any(e not in matched_edges for e in host.incident_edges(x)):
            dangling.append(x)
        if x in interface:
            orphaned.append(x)

    ok = not (dangling or identified or orphaned or merged_edges)
    return GluingCheck(ok, tuple(dangling), tuple(identified), tuple(orphaned), merged_edges)


def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions of items, blocks in order of first element."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [[first]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]


def _links_connected(rule: DpoRule, blocks: list[list[int]], l_nodes: list[int]) -> bool:
    """Whether L nodes and context blocks over one G node form one connected piece."""
    parent = {("l", n): ("l", n) for n in l_nodes}
    parent.update({("b", i): ("b", i) for i in range(len(blocks))})

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, block in enumerate(blocks):
        for k in block:
            parent[find(("l", rule.lhs_leg[k]))] = find(("b", i))
    return len({find(x) for x in parent}) == 1


def pushout_complements(
    rule: DpoRule, match: Homomorphism, g: GraphWithInterface
) -> Iterator[tuple[Hypergraph, Homomorphism, Homomorphism, Interface]]:
    """Enumerate contexts (C, K -> C, C -> G, I -> C) for a match.

    Each G node outside the match keeps one context node. Over a node x hit
    by K, the K nodes landing on x are partitioned into context nodes, as
    long as the links to L stay connected. Endpoints of unmatched edges and
    interface positions over x then pick one of those context nodes.
    """
    if not dangling_and_identification_check(rule, match, g):
        return

    host = g.graph
    k_pre = _interface_preimages(rule, match)
    l_pre = _preimages(match)
    untouched = [x for x in range(host.node_count) if x not in l_pre]

    # Per G node in the K image, the admissible partitions of its K preimage
    image_nodes = sorted(k_pre)
    options: list[list[list[list[int]]]] = []
    for x in image_nodes:
        admissible = [p for p in _set_partitions(k_pre[x]) if _links_connected(rule, p, l_pre[x])]
        options.append(admissible)

    kept_edges = [j for j in range(host.edge_count) if j not in set(match.edge_map)]

    for choice in itertools.product(*options):
        # Context nodes: untouched nodes first, then blocks in image-node order
        colours: list[int] = []
        over: dict[int, list[int]] = {}
        to_graph: list[int] = []
        for x in untouched:
            over[x] = [len(colours)]
            colours.append(host.nodes[x])
            to_graph.append(x)
        k_map = [0] * len(rule.lhs_leg)
        for x, blocks in zip(image_nodes, choice):
            over[x] = []
            for block in blocks:
                node = len(colours)
                over[x].append(node)
                colours.append(host.nodes[x])
                to_graph.append(x)
                for k in block:
                    k_map[k] = node

        endpoint_slots = [n for j in kept_edges for n in host.edges[j].endpoints()]
        slot_options = [over[n] for n in endpoint_slots]
        boundary_options = [over[n] for n in g.interface]

        for endpoints in itertools.product(*slot_options):
            edges = []
            cursor = 0
            for j in kept_edges:
                edge = host.edges[j]
                m, n = len(edge.sources), len(edge.targets)
                chosen = endpoints[cursor:cursor + m + n]
                edges.append(Hyperedge(edge.label, tuple(chosen[:m]), tuple(chosen[m:])))
                cursor += m + n
            context = Hypergraph(host.signature, tuple(colours), tuple(edges))
            k_into_c = Homomorphism.from_discrete(rule.interface, context, k_map)
            c_into_g = Homomorphism(context, host, tuple(to_graph), tuple(kept_edges))
            for boundary in itertools.product(*boundary_options):
                yield context, k_into_c, c_into_g, tuple(boundary)


def is_pushout_square(
    apex_to_first: Homomorphism,
    apex_to_second: Homomorphism,
    first_to_target: Homomorphism,
    second_to_target: Homomorphism,
) -> bool:
    """Whether the commuting square over a discrete apex is a pushout."""
    apex = apex_to_first.source
    _, p_first, p_second = pushout_discrete(apex, apex_to_first, apex_to_second)
    u = mediating_morphism(p_first, p_second, first_to_target, second_to_target)
    return u is not None and u.is_isomorphism()


def _build_step(
    rule: DpoRule,
    g: GraphWithInterface,
    match: Homomorphism,
    context: Hypergraph,
    k_into_c: Homomorphism,
    c_into_g: Homomorphism,
    boundary: Interface,
) -> Optional[RewriteStep]:
    if not is_pushout_square(k_into_c, rule.left, c_into_g, match):
        logger.debug("Rejected pushout complement for rule %s", rule.name)
        return None
    if tuple(c_into_g.node_map[n] for n in boundary) != g.interface:
        return None
    result, c_into_h, r_into_h = pushout_discrete(rule.interface, k_into_c, rule.right)
    return RewriteStep(rule, g, match, context, k_into_c, c_into_g, boundary, result, c_into_h, r_into_h)


def steps_for_match(rule: DpoRule, g: GraphWithInterface, match: Homomorphism) -> list[RewriteStep]:
    """All validated steps for one match, before deduplication."""
    steps = []
    for context, k_into_c, c_into_g, boundary in pushout_complements(rule, match, g):
        step = _build_step(rule, g, match, context, k_into_c, c_into_g, boundary)
        if step is not None:
            steps.append(step)
    return steps


def find_rewrite_steps(rule: DpoRule, g: GraphWithInterface) -> list[RewriteStep]:
    """All DPOI steps of a rule on (G <- I), deduplicated up to isomorphism of (H <- I).

    Args:
        rule: DPOI rule
        g: Graph with interface to rewrite

    Returns:
        Validated steps in match enumeration order; empty if there is no redex
    """
    if rule.lhs.signature is not g.graph.signature:
        return []
    seen: IsoIndex[None] = IsoIndex()
    steps: list[RewriteStep] = []
    match_count = 0
    for match in iter_homomorphisms(rule.lhs, g.graph, edge_injective=True):
        match_count += 1
        for step in steps_for_match(rule, g, match):
            if seen.add(step.target, None):
                steps.append(step)
    logger.debug("Rule %s: %d matches, %d distinct steps", rule.name, match_count, len(steps))
    return steps


def rewrite_all(rules: Iterable[DpoRule], g: GraphWithInterface) -> list[RewriteStep]:
    """One-step successors of (G <- I) under all rules, deduplicated up to isomorphism."""
    seen: IsoIndex[None] = IsoIndex()
    steps = []
    for rule in rules:
        for step in find_rewrite_steps(rule, g):
            if seen.add(step.target, None):
                steps.append(step)
    return steps


def apply_step(step: RewriteStep) -> GraphWithInterface:
    """The rewritten graph (H <- I)."""
    return step.target


def validate_step(step: RewriteStep) -> bool:
    """Re-check both pushout squares and the interface factorisation of a step."""
    rule = step.rule
    left_ok = is_pushout_square(step.interface_into_context, rule.left, step.context_into_graph, step.match)
    right_ok = is_pushout_square(
        step.interface_into_context, rule.right, step.context_into_result, step.rhs_into_result
    )
    boundary_ok = tuple(step.context_into_graph.node_map[n] for n in step.boundary) == step.source.interface
    word_ok = step.target.word == step.source.word
    return left_ok and right_ok and boundary_ok and word_ok


def describe_step(step: RewriteStep) -> str:
    """Text dump of L, K, R, G, C, H for tracing."""
    rule = step.rule
    k_line = " ".join(f"n{n}" for n in rule.lhs_leg)
    sections = [
        f"# rule {rule.name}",
        "## L",
        print_hypergraph(rule.lhs).rstrip(),
        f"## K (into L: {k_line})",
        print_hypergraph(rule.interface).rstrip(),
        "## R",
        print_hypergraph(rule.rhs).rstrip(),
        "## G",
        print_hypergraph(step.source.graph).rstrip(),
        "## C",
        print_hypergraph(step.context).rstrip(),
        "## H",
        print_hypergraph(step.result).rstrip(),
    ]
    return "\n".join(s for s in sections if s) + "\n"


def _as_dpo_rules(rules: Iterable[Rule | DpoRule]) -> list[DpoRule]:
    return [r if isinstance(r, DpoRule) else rule_from_diagrams(r) for r in rules]


def folded(a: Diagram) -> GraphWithInterface:
    """The folded translation of a term as a graph with interface dom(a) cod(a)."""
    return GraphWithInterface.from_cospan(fold_cospan(translate(a)))


def syntactic_step(rules: Iterable[Rule | DpoRule], a: Diagram) -> list[GraphWithInterface]:
    """Rewrite a term modulo the Frobenius laws by rewriting its folded translation.

    Returns:
        The distinct (H <- I) reachable in one step; unfold with len(dom(a))
        and extract to get terms back
    """
    return [step.target for step in rewrite_all(_as_dpo_rules(rules), folded(a))]


def successor_terms(rules: Iterable[Rule | DpoRule], a: Diagram) -> list[Diagram]:
    """One-step successors of a term, as extracted terms of the same type."""
    return [extract(unfold(h, len(a.dom))) for h in syntactic_step(rules, a)]
