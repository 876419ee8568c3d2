"""
Critical pairs, joinability and the confluence verdict for DPOI systems.

A critical pair of rules (L1 <- K1 -> R1), (L2 <- K2 -> R2) is a quotient S
of L1 + L2 together with a rewrite step for each induced match, and the
interface J obtained by pulling back the two contexts over S. Both steps are
then read as steps (S <- J) => (H1 <- J) and (S <- J) => (H2 <- J). The pair is
joinable when both results rewrite to a common (W <- J).

For a terminating system, confluence holds exactly when every critical pair
is joinable. Termination is never inferred: callers assert it or give a step
bound, and a search cut short by the bound yields INCONCLUSIVE.

Quotients are built node block by node block, rejecting early any block that
glues two nodes of one left-hand side unless the rule interface covers both.
Edge merges (one edge from each side, same label, same endpoint blocks) are
enumerated afterwards, then the dangling condition is checked for both
matches before any step is computed.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Optional, Sequence

from src.constants import DEFAULT_STEP_BOUND, MAX_SEARCH_STATES
from src.errors import InterfaceNotDiscreteError
from src.graphs.hypergraph import Homomorphism, Hypergraph, coproduct, pullback, quotient
from src.graphs.matching import invariant_key, is_isomorphic
from src.logger import get_logger, log_timing, timed
from src.rewriting.dpoi import (
    DpoRule,
    GraphWithInterface,
    IsoIndex,
    RewriteStep,
    rewrite_all,
    rule_from_diagrams,
    same_up_to_iso,
    steps_for_match,
)
from src.syntax.diagram import Rule

logger = get_logger(__name__)

CONFLUENT = "CONFLUENT"
NOT_CONFLUENT = "NOT_CONFLUENT"
INCONCLUSIVE = "INCONCLUSIVE"
Verdict = Literal["CONFLUENT", "NOT_CONFLUENT", "INCONCLUSIVE"]


@dataclass(frozen=True)
class CriticalPair:
    """Two steps out of a common (S <- J), with S covered by both matches."""

    first_rule: DpoRule
    second_rule: DpoRule
    overlap: Hypergraph  # S
    first_match: Homomorphism  # L1 -> S
    second_match: Homomorphism  # L2 -> S
    interface: Hypergraph  # J
    into_first_context: Homomorphism  # J -> C1
    into_second_context: Homomorphism  # J -> C2
    first_step: RewriteStep
    second_step: RewriteStep

    def _listing(self, into_context: Homomorphism, context_to: Homomorphism) -> tuple[int, ...]:
        return tuple(context_to.node_map[n] for n in into_context.node_map)

    @property
    def source(self) -> GraphWithInterface:
        return GraphWithInterface(
            self.overlap, self._listing(self.into_first_context, self.first_step.context_into_graph)
        )

    @property
    def first_result(self) -> GraphWithInterface:
        return GraphWithInterface(
            self.first_step.result, self._listing(self.into_first_context, self.first_step.context_into_result)
        )

    @property
    def second_result(self) -> GraphWithInterface:
        return GraphWithInterface(
            self.second_step.result, self._listing(self.into_second_context, self.second_step.context_into_result)
        )


@dataclass(frozen=True)
class JoinabilityCertificate:
    """Rewrite sequences from both results of a pair to isomorphic (W <- J)."""

    target: GraphWithInterface
    first_steps: tuple[RewriteStep, ...] = ()
    second_steps: tuple[RewriteStep, ...] = ()


@dataclass(frozen=True)
class JoinSearch:
    """Outcome of a joinability search.

    complete is True when the search explored everything reachable, so a
    missing certificate proves the pair is not joinable.
    """

    certificate: Optional[JoinabilityCertificate]
    complete: bool

    @property
    def joinable(self) -> bool:
        return self.certificate is not None


@dataclass(frozen=True)
class NormalForms:
    forms: tuple[GraphWithInterface, ...]
    complete: bool


@dataclass
class ConfluenceReport:
    """Verdict of check_confluence with the evidence behind it."""

    verdict: Verdict
    pairs: list[CriticalPair] = field(default_factory=list)
    certificates: list[Optional[JoinabilityCertificate]] = field(default_factory=list)
    counterexample: Optional[CriticalPair] = None
    unresolved: list[CriticalPair] = field(default_factory=list)


def is_overlapping(pair: CriticalPair) -> bool:
    """Whether the two matches share a node or an edge of S."""
    f1, f2 = pair.first_match, pair.second_match
    return bool(set(f1.node_map) & set(f2.node_map) or set(f1.edge_map) & set(f2.edge_map))


def _node_partitions(
    total: Hypergraph, side: Sequence[int], covered: Sequence[bool]
) -> Iterator[list[list[int]]]:
    """Colour-respecting partitions where same-side nodes only meet if both are covered."""
    blocks: list[list[int]] = []

    def fits(block: list[int], v: int) -> bool:
        if total.nodes[block[0]] != total.nodes[v]:
            return False
        return all(covered[u] and covered[v] for u in block if side[u] == side[v])

    def place(v: int) -> Iterator[list[list[int]]]:
        if v == total.node_count:
            yield [list(b) for b in blocks]
            return
        for block in blocks:
            if fits(block, v):
                block.append(v)
                yield from place(v + 1)
                block.pop()
        blocks.append([v])
        yield from place(v + 1)
        blocks.pop()

    yield from place(0)


def _edge_matchings(candidates: dict[int, list[int]], first_edges: list[int]) -> Iterator[list[tuple[int, int]]]:
    """Partial injective matchings of first-side edges with compatible second-side edges."""
    used: set[int] = set()
    chosen: list[tuple[int, int]] = []

    def step(i: int) -> Iterator[list[tuple[int, int]]]:
        if i == len(first_edges):
            yield list(chosen)
            return
        yield from step(i + 1)
        e = first_edges[i]
        for other in candidates.get(e, []):
            if other not in used:
                used.add(other)
                chosen.append((e, other))
                yield from step(i + 1)
                chosen.pop()
                used.discard(other)

    yield from step(0)


def _no_dangling(
    total: Hypergraph,
    block_of: list[int],
    side: Sequence[int],
    covered: Sequence[bool],
    edge_side: Sequence[int],
    merged: set[int],
) -> bool:
    """Deleted nodes of either side may only touch edges of their own side's image."""
    for this in (0, 1):
        deleted_blocks = {block_of[v] for v in range(total.node_count) if side[v] == this and not covered[v]}
        if not deleted_blocks:
            continue
        for j, edge in enumerate(total.edges):
            if edge_side[j] == this or j in merged:
                continue
            if any(block_of[n] in deleted_blocks for n in edge.endpoints()):
                return False
    return True


def _mirror_first(
    blocks: list[list[int]], matching: list[tuple[int, int]], n1: int, e1: int
) -> bool:
    """For a rule overlapped with itself, whether this quotient is not larger than its side swap."""

    def swap(v: int, size: int) -> int:
        return v + size if v < size else v - size

    own = (
        sorted(sorted(members) for members in blocks),
        sorted(matching),
    )
    mirrored = (
        sorted(sorted(swap(v, n1) for v in members) for members in blocks),
        sorted((b - e1, a + e1) for a, b in matching),
    )
    return own <= mirrored


def _overlaps(
    first: DpoRule, second: DpoRule, keep_disjoint: bool
) -> Iterator[tuple[Hypergraph, Homomorphism, Homomorphism]]:
    """Quotients S of L1 + L2 whose induced matches satisfy the gluing conditions.

    A rule overlapped with itself yields each quotient and its side swap;
    only one of the two is kept.
    """
    total, inj1, inj2 = coproduct(first.lhs, second.lhs)
    n1, e1 = first.lhs.node_count, first.lhs.edge_count
    side = [0 if v < n1 else 1 for v in range(total.node_count)]
    covered1, covered2 = first.covered_nodes(), second.covered_nodes()
    covered = [(v in covered1) if v < n1 else (v - n1 in covered2) for v in range(total.node_count)]
    edge_side = [0 if j < e1 else 1 for j in range(total.edge_count)]

    for blocks in _node_partitions(total, side, covered):
        block_of = [0] * total.node_count
        for b, members in enumerate(blocks):
            for v in members:
                block_of[v] = b
        mixed = any(len({side[v] for v in members}) == 2 for members in blocks)

        candidates: dict[int, list[int]] = {}
        for a in range(e1):
            ea = total.edges[a]
            for b in range(e1, total.edge_count):
                eb = total.edges[b]
                if ea.label == eb.label and [block_of[n] for n in ea.endpoints()] == [
                    block_of[n] for n in eb.endpoints()
                ]:
                    candidates.setdefault(a, []).append(b)

        for matching in _edge_matchings(candidates, list(range(e1))):
            if not keep_disjoint and not mixed and not matching:
                continue
            merged = {j for pair in matching for j in pair}
            if not _no_dangling(total, block_of, side, covered, edge_side, merged):
                continue
            if first is second and not _mirror_first(blocks, matching, n1, e1):
                continue
            s, proj = quotient(total, blocks, [list(pair) for pair in matching])
            yield s, inj1.compose(proj), inj2.compose(proj)


def _pairs_for(first: DpoRule, second: DpoRule, keep_disjoint: bool) -> Iterator[CriticalPair]:
    for s, f1, f2 in _overlaps(first, second, keep_disjoint):
        source = GraphWithInterface(s, ())
        steps1 = steps_for_match(first, source, f1)
        if not steps1:
            continue
        steps2 = steps_for_match(second, source, f2)
        for step1, step2 in itertools.product(steps1, steps2):
            j, into_c1, into_c2 = pullback(step1.context_into_graph, step2.context_into_graph)
            if not j.is_discrete():
                raise InterfaceNotDiscreteError(
                    f"critical pair of {first.name} and {second.name} has an interface with {j.edge_count} hyperedges"
                )
            yield CriticalPair(first, second, s, f1, f2, j, into_c1, into_c2, step1, step2)


def _pair_key(pair: CriticalPair) -> tuple[str, str, str]:
    return tuple(
        invariant_key(g.graph, g.markings()) for g in (pair.source, pair.first_result, pair.second_result)
    )


def _same_pair(a: CriticalPair, b: CriticalPair) -> bool:
    return all(
        same_up_to_iso(x, y)
        for x, y in (
            (a.source, b.source),
            (a.first_result, b.first_result),
            (a.second_result, b.second_result),
        )
    )


def _as_dpo_rules(rules: Iterable[Rule | DpoRule]) -> list[DpoRule]:
    return [r if isinstance(r, DpoRule) else rule_from_diagrams(r) for r in rules]


@timed(logger, "enumerate_critical_pairs")
def enumerate_critical_pairs(rules: Iterable[Rule | DpoRule], keep_disjoint: bool = False) -> list[CriticalPair]:
    """Critical pairs of every ordered pair of rules, a rule with itself included.

    Args:
        rules: DPOI rules, or syntactic rules to be folded
        keep_disjoint: Also return pairs whose matches share no node or edge

    Returns:
        Pairs deduplicated up to isomorphism of (S <- J), (H1 <- J), (H2 <- J)

    Raises:
        InterfaceNotDiscreteError: if some pair has an interface with hyperedges
    """
    dpo_rules = _as_dpo_rules(rules)
    buckets: dict[tuple[str, str, str], list[CriticalPair]] = {}
    pairs: list[CriticalPair] = []
    for first, second in itertools.product(dpo_rules, repeat=2):
        found = 0
        for pair in _pairs_for(first, second, keep_disjoint):
            bucket = buckets.setdefault((first.name, second.name) + _pair_key(pair), [])
            if any(_same_pair(pair, other) for other in bucket):
                continue
            bucket.append(pair)
            pairs.append(pair)
            found += 1
        logger.debug("Rules %s/%s: %d critical pairs", first.name, second.name, found)
    logger.info("Enumerated %d critical pairs for %d rules", len(pairs), len(dpo_rules))
    return pairs


class _SearchSide:
    def __init__(self, start: GraphWithInterface):
        self.index: IsoIndex[tuple[RewriteStep, ...]] = IsoIndex()
        self.index.add(start, ())
        self.frontier: list[tuple[GraphWithInterface, tuple[RewriteStep, ...]]] = [(start, ())]


def search_join(
    first: GraphWithInterface,
    second: GraphWithInterface,
    rules: Sequence[DpoRule],
    bound: Optional[int] = DEFAULT_STEP_BOUND,
    max_states: int = MAX_SEARCH_STATES,
) -> JoinSearch:
    """Breadth-first search for a common reduct of two graphs with interface.

    Args:
        first: One result of a critical pair
        second: The other result
        rules: Rewriting system
        bound: Steps explored from each side; None explores until closure
        max_states: Cap on states kept per side

    Returns:
        JoinSearch with a certificate if the sides meet, and whether the
        search was exhaustive
    """
    if same_up_to_iso(first, second):
        return JoinSearch(JoinabilityCertificate(first), True)

    sides = (_SearchSide(first), _SearchSide(second))
    depth = 0
    while any(side.frontier for side in sides):
        if bound is not None and depth >= bound:
            # states at the bound were compared on arrival; only their successors are unseen
            stuck = all(not rewrite_all(rules, state) for side in sides for state, _ in side.frontier)
            return JoinSearch(None, stuck)
        depth += 1
        for this, other in ((0, 1), (1, 0)):
            expanding, opposite = sides[this], sides[other]
            next_frontier = []
            for state, path in expanding.frontier:
                for step in rewrite_all(rules, state):
                    target = step.target
                    extended = path + (step,)
                    if not expanding.index.add(target, extended):
                        continue
                    met = opposite.index.find(target)
                    if met is not None:
                        first_path, second_path = (extended, met[1]) if this == 0 else (met[1], extended)
                        return JoinSearch(JoinabilityCertificate(target, first_path, second_path), True)
                    next_frontier.append((target, extended))
                    if len(expanding.index) > max_states:
                        logger.warning("Join search stopped after %d states", max_states)
                        return JoinSearch(None, False)
            expanding.frontier = next_frontier
    return JoinSearch(None, True)


def is_joinable(
    pair: CriticalPair, rules: Iterable[Rule | DpoRule], bound: Optional[int] = DEFAULT_STEP_BOUND
) -> Optional[JoinabilityCertificate]:
    """Certificate that both results of a pair rewrite to a common graph, or None."""
    return search_join(pair.first_result, pair.second_result, _as_dpo_rules(rules), bound).certificate


@timed(logger, "normal_forms")
def normal_forms(
    g: GraphWithInterface,
    rules: Iterable[Rule | DpoRule],
    bound: Optional[int] = None,
    max_states: int = MAX_SEARCH_STATES,
) -> NormalForms:
    """Irreducible graphs reachable from g, deduplicated up to isomorphism.

    Args:
        g: Start graph with interface
        rules: Rewriting system
        bound: Maximum number of steps; None runs until closure
        max_states: Cap on states visited

    Returns:
        NormalForms; complete is False when the bound or the cap cut the
        search short, in which case forms lists only those found
    """
    dpo_rules = _as_dpo_rules(rules)
    seen: IsoIndex[None] = IsoIndex()
    seen.add(g, None)
    frontier = [g]
    forms: list[GraphWithInterface] = []
    depth = 0
    truncated = False
    while frontier:
        at_bound = bound is not None and depth >= bound
        depth += 1
        next_frontier = []
        for state in frontier:
            steps = rewrite_all(dpo_rules, state)
            if not steps:
                forms.append(state)
            elif at_bound:
                truncated = True
                continue
            for step in steps:
                if seen.add(step.target, None):
                    next_frontier.append(step.target)
            if len(seen) > max_states:
                logger.warning("Normal form search stopped after %d states", max_states)
                return NormalForms(tuple(forms), False)
        frontier = next_frontier
    if truncated:
        logger.warning("Normal form search hit the bound of %d steps", bound)
        return NormalForms(tuple(forms), False)
    return NormalForms(tuple(forms), True)


@timed(logger, "check_confluence")
def check_confluence(
    rules: Iterable[Rule | DpoRule],
    assert_terminating: bool = False,
    bound: Optional[int] = None,
    keep_disjoint: bool = False,
) -> ConfluenceReport:
    """Decide confluence by critical pair analysis.

    Args:
        rules: Rewriting system
        assert_terminating: Caller guarantees termination; joinability is
            then searched to closure unless a bound is also given
        bound: Steps explored per side of each pair
        keep_disjoint: Also analyse pairs whose matches do not overlap

    Returns:
        ConfluenceReport. NOT_CONFLUENT when some pair was searched
        exhaustively without meeting, INCONCLUSIVE when some search was cut
        short, CONFLUENT otherwise.

    Raises:
        InterfaceNotDiscreteError: if a critical pair has an interface with hyperedges
    """
    dpo_rules = _as_dpo_rules(rules)
    if bound is None and not assert_terminating:
        bound = DEFAULT_STEP_BOUND

    pairs = enumerate_critical_pairs(dpo_rules, keep_disjoint=keep_disjoint)
    report = ConfluenceReport(CONFLUENT, pairs=pairs)
    for index, pair in enumerate(pairs):
        with log_timing(logger, f"join search for pair {index}", level=logging.DEBUG):
            search = search_join(pair.first_result, pair.second_result, dpo_rules, bound)
        report.certificates.append(search.certificate)
        if search.joinable:
            continue
        if search.complete:
            if report.counterexample is None:
                report.counterexample = pair
            logger.info(
                "Pair %d of %s/%s is not joinable", index, pair.first_rule.name, pair.second_rule.name
            )
        else:
            report.unresolved.append(pair)

    if report.counterexample is not None:
        report.verdict = NOT_CONFLUENT
    elif report.unresolved:
        report.verdict = INCONCLUSIVE
    elif not assert_terminating:
        logger.warning("All critical pairs are joinable; confluence follows only if the system terminates")
    logger.info("Confluence verdict: %s (%d critical pairs)", report.verdict, len(pairs))
    return report


def is_jointly_surjective(pair: CriticalPair) -> bool:
    """Every node and edge of S is hit by one of the two matches."""
    s = pair.overlap
    f1, f2 = pair.first_match, pair.second_match
    nodes = set(f1.node_map) | set(f2.node_map)
    edges = set(f1.edge_map) | set(f2.edge_map)
    return nodes == set(range(s.node_count)) and edges == set(range(s.edge_count))


def interface_is_pullback(pair: CriticalPair) -> bool:
    """Re-derive J from the two contexts and compare."""
    expected, _, _ = pullback(pair.first_step.context_into_graph, pair.second_step.context_into_graph)
    return is_isomorphic(expected, pair.interface) is not None
