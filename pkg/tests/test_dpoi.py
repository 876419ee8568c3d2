"""
Unit tests for DPOI rewriting: rule construction, gluing conditions,
pushout complements and rewriting of terms modulo the Frobenius laws.
"""

import pytest
from hypothesis import given, settings

from src.errors import InterfaceMismatchError, TypeMismatchError
from src.graphs.cospan import cospan_equal
from src.graphs.hypergraph import Hypergraph
from src.graphs.matching import find_homomorphisms
from src.rewriting.brute_force import brute_force_rewrites
from src.rewriting.dpoi import (
    DpoRule,
    GraphWithInterface,
    IsoIndex,
    dangling_and_identification_check,
    describe_step,
    find_rewrite_steps,
    folded,
    rewrite_all,
    rule_from_diagrams,
    same_up_to_iso,
    successor_terms,
    syntactic_step,
    unfold,
    validate_step,
)
from src.semantics.functor import translate
from src.syntax.diagram import Gen, Id, Rule
from src.syntax.parser import parse_diagram, parse_rules
from tests.strategies import diagrams

# Deletes an o1 edge together with both outputs
KILL = "rule kill : o1 ; (counit[c] + counit[d]) => counit[c]"

# Deletes an o2 edge and both of its (non-interface) inputs
MAKE = "rule make : unit[d] + unit[d] ; o2 => unit[c]"

SPLIT = "rule split : id[c] => comult[c] ; mult[c]"


def one_rule(text, sig):
    (rule,) = parse_rules(text, sig)
    return rule_from_diagrams(rule)


def contains_iso(graphs, target):
    return any(same_up_to_iso(g, target) for g in graphs)


class TestRuleFromDiagrams:
    """Tests for folding syntactic rules into DPOI rules."""

    def test_identity_side(self, twocolour_sig):
        rule = one_rule(SPLIT, twocolour_sig)
        assert rule.lhs.node_count == 1
        assert rule.lhs.edge_count == 0
        assert rule.lhs_leg == (0, 0)
        assert rule.rhs.node_count == 1

    def test_shrink_interface(self, twocolour_rules):
        shrink = twocolour_rules[0]
        assert shrink.name == "shrink"
        assert len(shrink.lhs_leg) == 3
        assert str(shrink.lhs.colour_word(shrink.lhs_leg)) == "ddc"
        assert shrink.lhs.edge_count == 2 and shrink.rhs.edge_count == 1

    def test_interface_colours_must_agree(self, twocolour_sig):
        c, d = twocolour_sig.colour("c").index, twocolour_sig.colour("d").index
        with pytest.raises(TypeMismatchError):
            DpoRule("bad", Hypergraph(twocolour_sig, (c,)), Hypergraph(twocolour_sig, (d,)), (0,), (0,))

    def test_interface_lengths_must_agree(self, twocolour_sig):
        c = twocolour_sig.colour("c").index
        with pytest.raises(TypeMismatchError):
            DpoRule("bad", Hypergraph(twocolour_sig, (c,)), Hypergraph(twocolour_sig, (c,)), (0,), (0, 0))

    def test_interface_is_discrete(self, twocolour_rules):
        for rule in twocolour_rules:
            assert rule.interface.is_discrete()
            assert rule.left.target == rule.lhs and rule.right.target == rule.rhs


class TestGraphWithInterface:
    """Tests for folding and unfolding."""

    def test_from_cospan_needs_empty_left(self, twocolour_sig):
        with pytest.raises(InterfaceMismatchError):
            GraphWithInterface.from_cospan(translate(Id(twocolour_sig.colour("c"))))

    def test_folded_word(self, twocolour_sig):
        g = folded(Gen(twocolour_sig.operation("o1")))
        assert str(g.word) == "ccd"

    @given(diagrams())
    @settings(max_examples=40, deadline=None)
    def test_unfold_inverts_fold(self, d):
        assert cospan_equal(unfold(folded(d), len(d.dom)), translate(d))

    def test_iso_index(self, twocolour_sig):
        index = IsoIndex()
        g = folded(Gen(twocolour_sig.operation("o2")))
        assert index.add(g, "first")
        assert not index.add(folded(Gen(twocolour_sig.operation("o2"))), "second")
        assert len(index) == 1
        assert index.find(g)[1] == "first"
        assert index.find(folded(Gen(twocolour_sig.operation("o1")))) is None


class TestGluingConditions:
    """Tests for dangling_and_identification_check."""

    def test_dangling_and_orphaned(self, twocolour_sig):
        kill = one_rule(KILL, twocolour_sig)
        g = folded(parse_diagram("o1 ; (o1 + id[d])", twocolour_sig))
        matches = find_homomorphisms(kill.lhs, g.graph, edge_injective=True)
        assert len(matches) == 2
        checks = {m.edge_map: dangling_and_identification_check(kill, m, g) for m in matches}

        first = checks[(0,)]
        assert not first
        assert len(first.dangling) == 1
        assert len(first.orphaned_interface) == 1

        second = checks[(1,)]
        assert not second
        assert second.dangling == ()
        assert len(second.orphaned_interface) == 2
        assert find_rewrite_steps(kill, g) == []

    def test_identified_deleted_nodes(self, twocolour_sig):
        make = one_rule(MAKE, twocolour_sig)
        g = folded(parse_diagram("unit[d] ; comult[d] ; o2", twocolour_sig))
        (match,) = find_homomorphisms(make.lhs, g.graph, edge_injective=True)
        check = dangling_and_identification_check(make, match, g)
        assert not check.ok
        assert len(check.identified) == 1
        assert check.dangling == () and check.merged_edges == ()
        assert find_rewrite_steps(make, g) == []

    def test_clean_match(self, twocolour_sig):
        make = one_rule(MAKE, twocolour_sig)
        lhs = parse_diagram("unit[d] + unit[d] ; o2", twocolour_sig)
        (step,) = find_rewrite_steps(make, folded(lhs))
        assert same_up_to_iso(step.target, folded(parse_diagram("unit[c]", twocolour_sig)))

    def test_identification_covered_by_interface_is_allowed(self, twocolour_sig):
        split = one_rule(SPLIT, twocolour_sig)
        (match,) = find_homomorphisms(split.lhs, folded(Id(twocolour_sig.colour("c"))).graph)
        assert dangling_and_identification_check(split, match, folded(Id(twocolour_sig.colour("c"))))


class TestRewriteSteps:
    """Tests for find_rewrite_steps and step validation."""

    def test_shrink(self, twocolour_sig, twocolour_rules):
        shrink = twocolour_rules[0]
        g = folded(parse_diagram("o2 ; o1 ; (id[c] + counit[d])", twocolour_sig))
        steps = find_rewrite_steps(shrink, g)
        assert len(steps) == 1
        assert same_up_to_iso(steps[0].target, folded(parse_diagram("o2", twocolour_sig)))
        assert validate_step(steps[0])

    def test_loop(self, twocolour_sig, twocolour_rules):
        loop = twocolour_rules[1]
        g = folded(parse_diagram("o1 ; (counit[c] + id[d]) ; comult[d] ; o2", twocolour_sig))
        targets = [step.target for step in find_rewrite_steps(loop, g)]
        assert contains_iso(targets, folded(Id(twocolour_sig.colour("c"))))

    def test_no_redex(self, twocolour_sig, twocolour_rules):
        assert rewrite_all(twocolour_rules, folded(Id(twocolour_sig.colour("c")))) == []

    def test_split_on_identity(self, twocolour_sig):
        split = one_rule(SPLIT, twocolour_sig)
        g = folded(Id(twocolour_sig.colour("c")))
        (step,) = find_rewrite_steps(split, g)
        assert same_up_to_iso(step.target, g)
        assert validate_step(step)

    def test_interface_is_preserved(self, twocolour_sig, twocolour_rules):
        g = folded(parse_diagram("o2 ; o1 ; (id[c] + counit[d])", twocolour_sig))
        for step in rewrite_all(twocolour_rules, g):
            assert step.target.word == g.word
            assert validate_step(step)

    def test_describe_step(self, twocolour_sig, twocolour_rules):
        g = folded(parse_diagram("o2 ; o1 ; (id[c] + counit[d])", twocolour_sig))
        (step,) = find_rewrite_steps(twocolour_rules[0], g)
        text = describe_step(step)
        assert text.startswith("# rule shrink\n")
        for header in ("## L", "## K (into L:", "## R", "## G", "## C", "## H"):
            assert header in text


class TestAgreesWithExhaustiveSearch:
    """The complement enumeration finds exactly what trying every context finds."""

    @pytest.mark.parametrize(
        "rule_text, term",
        [
            (SPLIT, "id[c]"),
            (SPLIT, "comult[c] ; mult[c]"),
            (MAKE, "unit[d] + unit[d] ; o2"),
            (MAKE, "unit[d] ; comult[d] ; o2"),
            (KILL, "o1 ; (counit[c] + counit[d])"),
            (KILL, "o1 ; (id[c] + counit[d])"),
        ],
    )
    def test_same_results(self, twocolour_sig, rule_text, term):
        rule = one_rule(rule_text, twocolour_sig)
        g = folded(parse_diagram(term, twocolour_sig))
        fast = [step.target for step in find_rewrite_steps(rule, g)]
        slow = brute_force_rewrites(rule, g, max_extra=1)
        assert len(fast) == len(slow)
        assert all(contains_iso(slow, h) for h in fast)


class TestTermRewriting:
    """Tests for syntactic_step and successor_terms."""

    def test_shrink_gives_rhs(self, twocolour_sig):
        rules = parse_rules("rule shrink : o2 ; o1 ; (id[c] + counit[d]) => o2", twocolour_sig)
        lhs, rhs = rules[0].lhs, rules[0].rhs
        assert contains_iso(syntactic_step(rules, lhs), folded(rhs))

    def test_successor_terms_keep_the_type(self, twocolour_sig):
        rules = parse_rules("rule shrink : o2 ; o1 ; (id[c] + counit[d]) => o2", twocolour_sig)
        lhs = rules[0].lhs
        (term,) = successor_terms(rules, lhs)
        assert (term.dom, term.cod) == (lhs.dom, lhs.cod)
        assert cospan_equal(translate(term), translate(Gen(twocolour_sig.operation("o2"))))

    def test_rewrites_modulo_frobenius(self, twocolour_sig):
        # the redex only appears once the spider laws merge the d wires
        lhs = parse_diagram("comult[d] ; o2", twocolour_sig)
        rule = Rule("merge", lhs, parse_diagram("counit[d] ; unit[c]", twocolour_sig))
        term = parse_diagram("comult[d] ; (comult[d] + id[d]) ; (id[d] + mult[d]) ; o2", twocolour_sig)
        results = syntactic_step([rule], term)
        assert contains_iso(results, folded(rule.rhs))
