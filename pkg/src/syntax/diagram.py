"""
Terms of the free hypergraph category over a signature.

A Diagram is an immutable tree. Leaves are operation symbols, identities,
symmetries and the four Frobenius generators of each colour; internal
nodes are sequential (Seq) and parallel (Par) composition. Every node caches
its type (dom, cod) at construction, so an ill-typed term cannot be built:
Seq checks that the codomain of its left factor equals the domain of its
right factor and raises TypeMismatchError otherwise.

Equality of Diagram values is syntactic (same tree). Equality modulo the
symmetric monoidal and Frobenius laws is decided by translating to cospans,
see src.semantics.functor.

Derived constructors (id_word, sym_word, permutation_term, cup, cap, the
Frobenius structure on words, fold_term, dual) only paste leaves together.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from src.errors import PermutationError, SignatureMismatchError, TypeMismatchError
from src.syntax.signature import Colour, OperationSymbol, Signature, Word


@dataclass(frozen=True)
class Diagram:
    """Base class of all term constructors; dom and cod are cached."""

    dom: Word = field(init=False, repr=False, compare=False)
    cod: Word = field(init=False, repr=False, compare=False)

    def _set_type(self, dom: Word, cod: Word) -> None:
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)

    @property
    def signature(self) -> Signature:
        return self.dom.signature

    def children(self) -> tuple["Diagram", ...]:
        return ()


@dataclass(frozen=True)
class Gen(Diagram):
    """An operation symbol of the signature."""

    op: OperationSymbol

    def __post_init__(self):
        self._set_type(self.op.arity, self.op.coarity)


@dataclass(frozen=True)
class Id(Diagram):
    colour: Colour

    def __post_init__(self):
        self._set_type(self.colour.word, self.colour.word)


@dataclass(frozen=True)
class Sym(Diagram):
    """The symmetry cd -> dc."""

    first: Colour
    second: Colour

    def __post_init__(self):
        self._set_type(self.first.word + self.second.word, self.second.word + self.first.word)


@dataclass(frozen=True)
class Mult(Diagram):
    colour: Colour

    def __post_init__(self):
        c = self.colour.word
        self._set_type(c + c, c)


@dataclass(frozen=True)
class Unit(Diagram):
    colour: Colour

    def __post_init__(self):
        self._set_type(self.colour.signature.epsilon, self.colour.word)


@dataclass(frozen=True)
class Comult(Diagram):
    colour: Colour

    def __post_init__(self):
        c = self.colour.word
        self._set_type(c, c + c)


@dataclass(frozen=True)
class Counit(Diagram):
    colour: Colour

    def __post_init__(self):
        self._set_type(self.colour.word, self.colour.signature.epsilon)


@dataclass(frozen=True)
class Empty(Diagram):
    """The empty diagram ε -> ε, unit of parallel composition."""

    owner: Signature = field(compare=False, repr=False)

    def __post_init__(self):
        self._set_type(self.owner.epsilon, self.owner.epsilon)


@dataclass(frozen=True)
class Seq(Diagram):
    """Sequential composition left ; right."""

    left: Diagram
    right: Diagram

    def __post_init__(self):
        if self.left.signature is not self.right.signature:
            raise SignatureMismatchError("cannot compose diagrams of different signatures")
        if self.left.cod != self.right.dom:
            raise TypeMismatchError(
                "sequential composition needs cod(left) = dom(right)",
                self.left.cod,
                self.right.dom,
            )
        self._set_type(self.left.dom, self.right.cod)

    def children(self) -> tuple[Diagram, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Par(Diagram):
    """Parallel composition top + bottom; top comes first in the words."""

    top: Diagram
    bottom: Diagram

    def __post_init__(self):
        self._set_type(self.top.dom + self.bottom.dom, self.top.cod + self.bottom.cod)

    def children(self) -> tuple[Diagram, ...]:
        return (self.top, self.bottom)


FROBENIUS_LEAVES = (Mult, Unit, Comult, Counit)


@dataclass(frozen=True)
class Rule:
    """A rewriting rule lhs => rhs between parallel diagrams."""

    name: str
    lhs: Diagram
    rhs: Diagram

    def __post_init__(self):
        if self.lhs.dom != self.rhs.dom:
            raise TypeMismatchError(f"rule '{self.name}' sides differ in domain", self.lhs.dom, self.rhs.dom)
        if self.lhs.cod != self.rhs.cod:
            raise TypeMismatchError(f"rule '{self.name}' sides differ in codomain", self.lhs.cod, self.rhs.cod)

    @property
    def signature(self) -> Signature:
        return self.lhs.signature


def type_of(d: Diagram) -> tuple[Word, Word]:
    """Return (dom, cod) of a diagram.

    Typing is checked when a Seq node is built, so a Diagram value is always
    well typed; ill-typed compositions raise TypeMismatchError at construction.
    """
    return d.dom, d.cod


def walk(d: Diagram) -> Iterator[Diagram]:
    """Pre-order traversal of all nodes of a diagram."""
    stack = [d]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def is_frobenius_free(d: Diagram) -> bool:
    return not any(isinstance(node, FROBENIUS_LEAVES) for node in walk(d))


def size(d: Diagram) -> int:
    """Number of leaves, ignoring Empty."""
    return sum(1 for node in walk(d) if not node.children() and not isinstance(node, Empty))


# --- n-ary folds ---


def seq_all(diagrams: Iterable[Diagram]) -> Diagram:
    """Left-associated sequential composite of a non-empty sequence."""
    items = list(diagrams)
    if not items:
        raise ValueError("seq_all needs at least one diagram")
    result = items[0]
    for item in items[1:]:
        result = Seq(result, item)
    return result


def par_all(diagrams: Iterable[Diagram], signature: Signature) -> Diagram:
    """Left-associated parallel composite; Empty for no diagrams."""
    items = list(diagrams)
    if not items:
        return Empty(signature)
    result = items[0]
    for item in items[1:]:
        result = Par(result, item)
    return result


# --- Symmetric monoidal structure on words ---


def _colours_of(w: Word) -> list[Colour]:
    return [w.signature.colours[i] for i in w]


def id_word(w: Word) -> Diagram:
    """Identity on a word: the parallel composite of Id leaves."""
    return par_all((Id(c) for c in _colours_of(w)), w.signature)


def permutation_term(w: Word, p: Sequence[int]) -> Diagram:
    """A term w -> w' with w'[j] = w[p[j]], built from adjacent symmetries.

    Its translation is the permutation cospan whose right leg lists p.

    Raises:
        PermutationError: if p is not a bijection on the positions of w
    """
    n = len(w)
    p = list(p)
    if sorted(p) != list(range(n)):
        raise PermutationError(f"{p} is not a permutation of {n} positions")

    colours = _colours_of(w)
    rank = {source: target for target, source in enumerate(p)}
    wires = list(range(n))  # wires[i] = source position currently at position i
    layers: list[Diagram] = []
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if rank[wires[i]] > rank[wires[i + 1]]:
                before = [Id(colours[s]) for s in wires[:i]]
                after = [Id(colours[s]) for s in wires[i + 2:]]
                swap = Sym(colours[wires[i]], colours[wires[i + 1]])
                layers.append(par_all(before + [swap] + after, w.signature))
                wires[i], wires[i + 1] = wires[i + 1], wires[i]
                changed = True

    if not layers:
        return id_word(w)
    return seq_all(layers)


def sym_word(w: Word, u: Word) -> Diagram:
    """The symmetry wu -> uw."""
    p = [len(w) + k for k in range(len(u))] + list(range(len(w)))
    return permutation_term(w + u, p)


# --- Frobenius structure on words ---


def _interleave(n: int) -> list[int]:
    """Positions of w w read in the order c1 c1 c2 c2 ... cn cn."""
    p: list[int] = []
    for i in range(n):
        p.extend([i, n + i])
    return p


def _deinterleave(n: int) -> list[int]:
    """Positions of c1 c1 ... cn cn read in the order w w."""
    return [2 * j for j in range(n)] + [2 * j + 1 for j in range(n)]


def _doubled(w: Word) -> Word:
    return w.signature.word([name for name in w.names for _ in range(2)])


def unit_word(w: Word) -> Diagram:
    return par_all((Unit(c) for c in _colours_of(w)), w.signature)


def counit_word(w: Word) -> Diagram:
    return par_all((Counit(c) for c in _colours_of(w)), w.signature)


def mult_word(w: Word) -> Diagram:
    """w w -> w from the per-colour multiplications."""
    per_colour = par_all((Mult(c) for c in _colours_of(w)), w.signature)
    return _seq_skip_identity(permutation_term(w + w, _interleave(len(w))), per_colour)


def comult_word(w: Word) -> Diagram:
    """w -> w w from the per-colour comultiplications."""
    per_colour = par_all((Comult(c) for c in _colours_of(w)), w.signature)
    return _seq_skip_identity(per_colour, permutation_term(_doubled(w), _deinterleave(len(w))))


def cup(w: Word) -> Diagram:
    """ε -> w w, the unit of the self-dual compact closed structure."""
    per_colour = par_all((Seq(Unit(c), Comult(c)) for c in _colours_of(w)), w.signature)
    return _seq_skip_identity(per_colour, permutation_term(_doubled(w), _deinterleave(len(w))))


def cap(w: Word) -> Diagram:
    """w w -> ε, the counit of the self-dual compact closed structure."""
    per_colour = par_all((Seq(Mult(c), Counit(c)) for c in _colours_of(w)), w.signature)
    return _seq_skip_identity(permutation_term(w + w, _interleave(len(w))), per_colour)


def _seq_skip_identity(first: Diagram, second: Diagram) -> Diagram:
    """Seq that drops a side consisting only of Id leaves (or Empty)."""
    if _is_plain_wiring(first):
        return second
    if _is_plain_wiring(second):
        return first
    return Seq(first, second)


def _is_plain_wiring(d: Diagram) -> bool:
    return all(isinstance(node, (Id, Empty, Par)) for node in walk(d))


# --- Folding and duals ---


def fold_term(a: Diagram) -> Diagram:
    """Bend the input boundary of a : w1 -> w2 to the output side: ε -> w1 w2."""
    return Seq(cup(a.dom), Par(id_word(a.dom), a))


def dual(a: Diagram) -> Diagram:
    """The compact closed dual a* : w2 -> w1 of a : w1 -> w2."""
    w1, w2 = a.dom, a.cod
    bend_in = Par(cup(w1), id_word(w2))
    middle = Par(Par(id_word(w1), a), id_word(w2))
    bend_out = Par(id_word(w1), cap(w2))
    return seq_all([bend_in, middle, bend_out])
