"""
Unit tests for cospan composition, monoidal product and equality.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import InterfaceMismatchError, PermutationError
from src.graphs.cospan import (
    Cospan,
    compose,
    cospan_equal,
    empty_cospan,
    fold_cospan,
    identity_cospan,
    permutation_cospan,
    tensor,
)
from src.graphs.hypergraph import Hypergraph
from src.semantics.functor import translate
from src.syntax.diagram import Comult, Counit, Id, Mult, Par, Seq, Unit
from tests.strategies import MIXED, composable_pairs, cospans, diagrams

C = MIXED.colour("c")


class TestCompose:
    """Tests for sequential composition."""

    def test_interface_mismatch(self, twocolour_sig):
        f = identity_cospan(twocolour_sig.word("c"))
        g = identity_cospan(twocolour_sig.word("d"))
        with pytest.raises(InterfaceMismatchError):
            compose(f, g)

    def test_glues_shared_boundary(self):
        f = compose(translate(Comult(C)), translate(Mult(C)))
        assert f.carrier.node_count == 1
        assert (f.left, f.right) == ((0,), (0,))

    @given(cospans())
    @settings(max_examples=50, deadline=None)
    def test_unit_laws(self, f):
        assert cospan_equal(compose(identity_cospan(f.dom), f), f)
        assert cospan_equal(compose(f, identity_cospan(f.cod)), f)

    @given(composable_pairs(), st.data())
    @settings(max_examples=40, deadline=None)
    def test_associative(self, pair, data):
        a, b = pair
        c = data.draw(diagrams(dom=b.cod))
        fa, fb, fc = translate(a), translate(b), translate(c)
        assert cospan_equal(compose(compose(fa, fb), fc), compose(fa, compose(fb, fc)))


class TestTensor:
    """Tests for the monoidal product."""

    def test_concatenates_interfaces(self, twocolour_sig):
        f = tensor(identity_cospan(twocolour_sig.word("c")), identity_cospan(twocolour_sig.word("d d")))
        assert str(f.dom) == "cdd"
        assert f.left == f.right == (0, 1, 2)

    @given(cospans())
    @settings(max_examples=30, deadline=None)
    def test_empty_is_unit(self, f):
        assert cospan_equal(tensor(empty_cospan(MIXED), f), f)
        assert cospan_equal(tensor(f, empty_cospan(MIXED)), f)

    @given(composable_pairs(), composable_pairs())
    @settings(max_examples=30, deadline=None)
    def test_interchange(self, first, second):
        f, g = (translate(d) for d in first)
        h, k = (translate(d) for d in second)
        assert cospan_equal(tensor(compose(f, g), compose(h, k)), compose(tensor(f, h), tensor(g, k)))


class TestFrobeniusCospans:
    """The special Frobenius equations hold on the nose."""

    def test_separable(self):
        assert cospan_equal(translate(Seq(Comult(C), Mult(C))), translate(Id(C)))

    def test_frobenius_law(self):
        left = translate(Seq(Par(Comult(C), Id(C)), Par(Id(C), Mult(C))))
        assert cospan_equal(left, translate(Seq(Mult(C), Comult(C))))

    def test_unit_then_counit_is_an_isolated_node(self):
        f = translate(Seq(Unit(C), Counit(C)))
        assert f.carrier.node_count == 1
        assert not cospan_equal(f, empty_cospan(MIXED))


class TestPermutations:
    """Tests for permutation cospans."""

    def test_not_a_bijection(self, twocolour_sig):
        with pytest.raises(PermutationError):
            permutation_cospan((0, 0), twocolour_sig.word("c c"))

    def test_target_check(self, twocolour_sig):
        w = twocolour_sig.word("c d")
        assert permutation_cospan((1, 0), w, twocolour_sig.word("d c")).cod == twocolour_sig.word("d c")
        with pytest.raises(PermutationError):
            permutation_cospan((0, 1), w, twocolour_sig.word("d c"))

    @given(st.permutations(range(4)), st.permutations(range(4)))
    @settings(max_examples=40, deadline=None)
    def test_composition_follows_positions(self, p, q):
        w = MIXED.word("c c c c")
        composite = compose(permutation_cospan(p, w), permutation_cospan(q, w))
        assert cospan_equal(composite, permutation_cospan([p[k] for k in q], w))

    @given(st.permutations(range(4)))
    @settings(max_examples=20, deadline=None)
    def test_inverse(self, p):
        w = MIXED.word("c c c c")
        inverse = [0] * 4
        for j, i in enumerate(p):
            inverse[i] = j
        assert cospan_equal(compose(permutation_cospan(p, w), permutation_cospan(inverse, w)), identity_cospan(w))


class TestCospanEqual:
    """Tests for cospan_equal."""

    def test_witness(self):
        f = translate(Mult(C))
        result = cospan_equal(f, f)
        assert result.equal
        assert result.witness.is_isomorphism()

    def test_leg_order_matters(self):
        w = MIXED.word("c c")
        assert not cospan_equal(permutation_cospan((1, 0), w), identity_cospan(w))

    def test_different_words_are_not_equal(self, twocolour_sig):
        f = identity_cospan(twocolour_sig.word("c"))
        g = identity_cospan(twocolour_sig.word("d"))
        result = cospan_equal(f, g)
        assert not result
        assert result.witness is None

    def test_strict_raises(self, twocolour_sig):
        f = identity_cospan(twocolour_sig.word("c"))
        g = identity_cospan(twocolour_sig.word("d"))
        with pytest.raises(InterfaceMismatchError):
            cospan_equal(f, g, strict=True)

    def test_extra_isolated_node(self):
        f = identity_cospan(MIXED.word("c"))
        g = Cospan(Hypergraph.discrete(MIXED, MIXED.word("c c")), (0,), (0,))
        assert not cospan_equal(f, g)


class TestFold:
    """Tests for fold_cospan."""

    def test_moves_left_leg_to_the_right(self):
        f = fold_cospan(translate(Mult(C)))
        assert f.left == ()
        assert f.right == (0, 0, 0)

    @given(cospans())
    @settings(max_examples=30, deadline=None)
    def test_fold_keeps_carrier(self, f):
        folded = fold_cospan(f)
        assert folded.carrier == f.carrier
        assert folded.cod == f.dom + f.cod
