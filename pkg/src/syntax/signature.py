"""
Monoidal theories: colours, words over colours and typed operation symbols.

A signature is immutable once built. Colours and operations are interned
as indices in declaration order; words store colour indices, so equality in
search loops is tuple equality.

Signature file format (one declaration per line, `#` starts a comment):

    colour c
    colour d
    op o1 : c -> c d
    op o2 : d d -> c
    op drop : c ->          # empty coarity; `()` is accepted too

Example:
    >>> sig = parse_signature("colour c\\ncolour d\\nop o1 : c -> c d")
    >>> str(sig.operation("o1").coarity)
    'cd'
"""

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, overload

from src.constants import EPSILON_SYMBOL
from src.errors import ParseError, SignatureError, SignatureMismatchError
from src.logger import get_logger

logger = get_logger(__name__)

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Bare keyword of the term grammar; cannot name an operation
RESERVED_OPERATION_NAMES = frozenset({"empty"})

_OP_LINE = re.compile(r"op\s+(?P<name>\S+)\s*:\s*(?P<arity>.*?)\s*->\s*(?P<coarity>.*?)\s*\Z")
_COLOUR_LINE = re.compile(r"colou?r\s+(?P<name>\S+)\s*\Z")


@dataclass(frozen=True)
class Word:
    """A finite sequence of colours; the empty word is the monoidal unit."""

    signature: "Signature" = field(repr=False)
    colours: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.colours)

    def __iter__(self) -> Iterator[int]:
        return iter(self.colours)

    @overload
    def __getitem__(self, item: int) -> int: ...

    @overload
    def __getitem__(self, item: slice) -> "Word": ...

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.signature, self.colours[item])
        return self.colours[item]

    def __add__(self, other: "Word") -> "Word":
        return word_concat(self, other)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.signature.colours[i].name for i in self.colours)

    def __str__(self) -> str:
        names = self.names
        if not names:
            return EPSILON_SYMBOL
        if all(len(name) == 1 for name in names):
            return "".join(names)
        return " ".join(names)


@dataclass(frozen=True)
class Colour:
    """A sort of the theory."""

    name: str
    index: int
    signature: "Signature" = field(repr=False, compare=False)

    @property
    def word(self) -> Word:
        return Word(self.signature, (self.index,))


@dataclass(frozen=True)
class OperationSymbol:
    """An operation o : arity -> coarity."""

    name: str
    index: int
    arity: Word
    coarity: Word

    def __str__(self) -> str:
        return f"{self.name} : {self.arity} -> {self.coarity}"


class Signature:
    """A monoidal theory (Σ, C): finite colours plus typed operations.

    Args:
        colours: Colour names in declaration order
        operations: (name, arity names, coarity names) triples

    Raises:
        SignatureError: on bad identifiers, duplicates, reserved names or
            operation types mentioning undeclared colours
    """

    def __init__(
        self,
        colours: Iterable[str],
        operations: Iterable[tuple[str, Sequence[str], Sequence[str]]] = (),
    ):
        colour_list: list[Colour] = []
        self._colour_index: dict[str, int] = {}
        for name in colours:
            _check_identifier(name, "colour")
            if name in self._colour_index:
                raise SignatureError(f"duplicate colour '{name}'")
            self._colour_index[name] = len(colour_list)
            colour_list.append(Colour(name, len(colour_list), self))
        self._colours = tuple(colour_list)

        op_list: list[OperationSymbol] = []
        self._op_index: dict[str, int] = {}
        for name, arity, coarity in operations:
            _check_identifier(name, "operation")
            if name in RESERVED_OPERATION_NAMES:
                raise SignatureError(f"'{name}' is reserved and cannot name an operation")
            if name in self._op_index:
                raise SignatureError(f"duplicate operation '{name}'")
            op = OperationSymbol(name, len(op_list), self.word(arity), self.word(coarity))
            self._op_index[name] = op.index
            op_list.append(op)
        self._operations = tuple(op_list)

    @property
    def colours(self) -> tuple[Colour, ...]:
        return self._colours

    @property
    def operations(self) -> tuple[OperationSymbol, ...]:
        return self._operations

    @property
    def epsilon(self) -> Word:
        return Word(self, ())

    def colour(self, name: str) -> Colour:
        try:
            return self._colours[self._colour_index[name]]
        except KeyError:
            raise SignatureError(f"undeclared colour '{name}'") from None

    def operation(self, name: str) -> OperationSymbol:
        try:
            return self._operations[self._op_index[name]]
        except KeyError:
            raise SignatureError(f"unknown operation '{name}'") from None

    def has_operation(self, name: str) -> bool:
        return name in self._op_index

    def word(self, names: Iterable[str] | str) -> Word:
        """Build a word from colour names (a string is split on whitespace)."""
        if isinstance(names, str):
            names = names.split()
        return Word(self, tuple(self.colour(name).index for name in names))

    def __repr__(self) -> str:
        return (
            f"Signature(colours={[c.name for c in self._colours]}, "
            f"operations={[str(o) for o in self._operations]})"
        )


def _check_identifier(name: str, kind: str) -> None:
    if not IDENTIFIER.match(name):
        raise SignatureError(f"invalid {kind} name '{name}'")


def word_concat(w1: Word, w2: Word) -> Word:
    """Concatenate two words of the same signature."""
    if w1.signature is not w2.signature:
        raise SignatureMismatchError("cannot concatenate words of different signatures")
    return Word(w1.signature, w1.colours + w2.colours)


def strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_word_names(text: str) -> list[str]:
    text = text.strip()
    if text in ("", "()"):
        return []
    return text.split()


def parse_signature(text: str) -> Signature:
    """Parse a signature file.

    Args:
        text: Signature source, one declaration per line

    Returns:
        Validated Signature with declaration order preserved

    Raises:
        ParseError: on malformed lines, duplicates or undeclared colours,
            reported with the 1-based line number
    """
    colours: list[str] = []
    operations: list[tuple[str, list[str], list[str]]] = []
    seen_ops: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue

        colour_match = _COLOUR_LINE.match(line)
        if colour_match:
            name = colour_match.group("name")
            if name in colours:
                raise ParseError(f"duplicate colour '{name}'", line=lineno)
            if not IDENTIFIER.match(name):
                raise ParseError(f"invalid colour name '{name}'", line=lineno)
            colours.append(name)
            continue

        op_match = _OP_LINE.match(line)
        if op_match:
            name = op_match.group("name")
            if name in seen_ops:
                raise ParseError(f"duplicate operation '{name}'", line=lineno)
            if not IDENTIFIER.match(name):
                raise ParseError(f"invalid operation name '{name}'", line=lineno)
            if name in RESERVED_OPERATION_NAMES:
                raise ParseError(f"'{name}' is reserved and cannot name an operation", line=lineno)
            arity = _parse_word_names(op_match.group("arity"))
            coarity = _parse_word_names(op_match.group("coarity"))
            for colour in arity + coarity:
                if colour not in colours:
                    raise ParseError(
                        f"undeclared colour '{colour}' in type of '{name}'", line=lineno
                    )
            seen_ops.add(name)
            operations.append((name, arity, coarity))
            continue

        raise ParseError(f"expected 'colour <name>' or 'op <name> : <word> -> <word>', got {line!r}", line=lineno)

    try:
        signature = Signature(colours, operations)
    except SignatureError as exc:
        raise ParseError(str(exc)) from exc

    logger.debug(
        "Parsed signature: %d colours, %d operations",
        len(signature.colours),
        len(signature.operations),
    )
    return signature


def print_signature(signature: Signature) -> str:
    """Render a signature in the file format accepted by parse_signature."""
    lines = [f"colour {colour.name}" for colour in signature.colours]
    for op in signature.operations:
        arity = " ".join(op.arity.names)
        coarity = " ".join(op.coarity.names)
        lines.append(f"op {op.name} : {arity} -> {coarity}".replace("  ", " ").rstrip())
    return "\n".join(lines) + "\n"
