"""
Unit tests for diagram construction, typing and the derived constructors.
"""

import pytest
from hypothesis import given, settings

from src.errors import PermutationError, SignatureMismatchError, TypeMismatchError
from src.graphs.cospan import cospan_equal, fold_cospan, identity_cospan, permutation_cospan
from src.semantics.functor import translate
from src.syntax.diagram import (
    Comult,
    Counit,
    Empty,
    Gen,
    Id,
    Mult,
    Par,
    Rule,
    Seq,
    Sym,
    Unit,
    cap,
    cup,
    dual,
    fold_term,
    id_word,
    is_frobenius_free,
    par_all,
    permutation_term,
    seq_all,
    size,
    sym_word,
    type_of,
)
from src.syntax.signature import parse_signature
from tests.strategies import MIXED, diagrams, words


def snake(w):
    """(cup(w) + id) ; (id + cap(w)) : w -> w."""
    return Seq(Par(cup(w), id_word(w)), Par(id_word(w), cap(w)))


class TestTyping:
    """Tests for the cached types and Seq checking."""

    def test_generator_type(self, twocolour_sig):
        dom, cod = type_of(Gen(twocolour_sig.operation("o2")))
        assert str(dom) == "dd" and str(cod) == "c"

    def test_post_composition_with_identity(self, twocolour_sig):
        c, d = twocolour_sig.colours
        diagram = Seq(Gen(twocolour_sig.operation("o1")), Par(Id(c), Id(d)))
        assert (str(diagram.dom), str(diagram.cod)) == ("c", "cd")

    def test_ill_typed_sequence(self, twocolour_sig):
        o1 = Gen(twocolour_sig.operation("o1"))
        with pytest.raises(TypeMismatchError) as info:
            Seq(o1, o1)
        assert str(info.value.expected) == "cd"
        assert str(info.value.found) == "c"

    def test_par_concatenates(self, twocolour_sig):
        c, d = twocolour_sig.colours
        diagram = Par(Mult(c), Unit(d))
        assert (str(diagram.dom), str(diagram.cod)) == ("cc", "cd")

    def test_frobenius_leaves(self, twocolour_sig):
        c = twocolour_sig.colour("c")
        assert (str(Unit(c).dom), str(Unit(c).cod)) == ("ε", "c")
        assert (str(Counit(c).dom), str(Counit(c).cod)) == ("c", "ε")
        assert (str(Comult(c).dom), str(Comult(c).cod)) == ("c", "cc")

    def test_mixed_signatures(self, twocolour_sig):
        other = parse_signature("colour c")
        with pytest.raises(SignatureMismatchError):
            Seq(Id(twocolour_sig.colour("c")), Id(other.colour("c")))

    def test_rule_sides_must_be_parallel(self, twocolour_sig):
        c = twocolour_sig.colour("c")
        with pytest.raises(TypeMismatchError):
            Rule("bad", Id(c), Comult(c))

    def test_structural_equality(self, twocolour_sig):
        c = twocolour_sig.colour("c")
        assert Seq(Unit(c), Comult(c)) == Seq(Unit(c), Comult(c))
        assert Empty(twocolour_sig) == Empty(twocolour_sig)


class TestHelpers:
    """Tests for folds, size and Frobenius detection."""

    def test_id_word(self, twocolour_sig):
        c, d = twocolour_sig.colours
        assert id_word(twocolour_sig.word("c d")) == Par(Id(c), Id(d))
        assert id_word(twocolour_sig.word("c")) == Id(c)
        assert isinstance(id_word(twocolour_sig.epsilon), Empty)

    def test_seq_all_requires_items(self):
        with pytest.raises(ValueError):
            seq_all([])

    def test_par_all_empty(self, twocolour_sig):
        assert isinstance(par_all([], twocolour_sig), Empty)

    def test_size_and_frobenius_free(self, twocolour_sig):
        c = twocolour_sig.colour("c")
        term = Seq(Gen(twocolour_sig.operation("o1")), Par(Counit(c), Id(twocolour_sig.colour("d"))))
        assert size(term) == 3
        assert not is_frobenius_free(term)
        assert is_frobenius_free(Gen(twocolour_sig.operation("o1")))


class TestSymmetries:
    """Tests for sym_word and permutation_term."""

    def test_single_swap_is_leaf(self, twocolour_sig):
        c, d = twocolour_sig.colours
        assert sym_word(c.word, d.word) == Sym(c, d)

    def test_empty_side_is_identity(self, twocolour_sig):
        u = twocolour_sig.word("c d")
        assert sym_word(twocolour_sig.epsilon, u) == id_word(u)

    def test_three_wire_symmetry(self, twocolour_sig):
        w, u = twocolour_sig.word("c c"), twocolour_sig.word("d")
        expected = permutation_cospan((2, 0, 1), w + u)
        assert cospan_equal(translate(sym_word(w, u)), expected)

    def test_permutation_term_contract(self, twocolour_sig):
        w = twocolour_sig.word("c d d c")
        p = [3, 1, 0, 2]
        term = permutation_term(w, p)
        assert [w[i] for i in p] == list(term.cod.colours)
        assert cospan_equal(translate(term), permutation_cospan(p, w))

    def test_bad_permutation(self, twocolour_sig):
        with pytest.raises(PermutationError):
            permutation_term(twocolour_sig.word("c d"), [0, 0])

    @given(words(), words())
    @settings(max_examples=50, deadline=None)
    def test_symmetry_is_involutive(self, w, u):
        round_trip = Seq(sym_word(w, u), sym_word(u, w))
        assert cospan_equal(translate(round_trip), identity_cospan(w + u))


class TestCompactClosure:
    """Tests for cup, cap, fold_term and dual."""

    def test_cup_on_colour(self, twocolour_sig):
        c = twocolour_sig.colour("c")
        assert cup(c.word) == Seq(Unit(c), Comult(c))

    def test_cup_on_word(self, twocolour_sig):
        f = translate(cup(twocolour_sig.word("c d")))
        assert f.left == ()
        assert f.carrier.node_count == 2
        x, y = f.right[0], f.right[1]
        assert f.right == (x, y, x, y)
        assert f.carrier.nodes[x] == 0 and f.carrier.nodes[y] == 1

    def test_cap_type(self, twocolour_sig):
        w = twocolour_sig.word("c d")
        assert (cap(w).dom, cap(w).cod) == (w + w, twocolour_sig.epsilon)

    @given(words())
    @settings(max_examples=40, deadline=None)
    def test_snake(self, w):
        assert cospan_equal(translate(snake(w)), identity_cospan(w))

    def test_fold_identity_is_cup(self, twocolour_sig):
        c = twocolour_sig.colour("c")
        assert cospan_equal(translate(fold_term(Id(c))), translate(cup(c.word)))

    def test_fold_generator(self, twocolour_sig):
        o1 = Gen(twocolour_sig.operation("o1"))
        folded = translate(fold_term(o1))
        assert str(folded.cod) == "ccd"
        assert folded.left == ()
        assert folded.carrier.edge_count == 1
        assert cospan_equal(folded, fold_cospan(translate(o1)))

    def test_fold_mult(self, twocolour_sig):
        folded = translate(fold_term(Mult(twocolour_sig.colour("c"))))
        assert folded.carrier.node_count == 1
        assert folded.carrier.edge_count == 0
        assert folded.right == (0, 0, 0)

    @given(diagrams())
    @settings(max_examples=60, deadline=None)
    def test_fold_commutes_with_translation(self, a):
        assert cospan_equal(translate(fold_term(a)), fold_cospan(translate(a)))

    def test_dual_type(self, twocolour_sig):
        o1 = Gen(twocolour_sig.operation("o1"))
        flipped = dual(o1)
        assert (str(flipped.dom), str(flipped.cod)) == ("cd", "c")

    @given(diagrams())
    @settings(max_examples=30, deadline=None)
    def test_double_dual(self, a):
        assert cospan_equal(translate(dual(dual(a))), translate(a))

    def test_dual_of_mult_is_comult(self):
        c = MIXED.colour("c")
        assert cospan_equal(translate(dual(Mult(c))), translate(Comult(c)))
