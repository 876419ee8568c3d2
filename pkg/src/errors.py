"""Exception hierarchy for hyperrewrite.

Every error raised on purpose by the library derives from HyperRewriteError,
itself a ValueError, so callers that only care about bad input can keep
catching ValueError.
"""

from typing import Any, Optional


class HyperRewriteError(ValueError):
    """Base class for all library errors."""


class SignatureError(HyperRewriteError):
    """Invalid signature: duplicate or reserved names, undeclared colours."""


class ParseError(HyperRewriteError):
    """Syntax error in a signature, term, rule, hypergraph or cospan text."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        prefix = ""
        if line is not None:
            prefix = f"line {line}"
            if column is not None:
                prefix += f", column {column}"
            prefix += ": "
        super().__init__(prefix + message)


class TypeMismatchError(HyperRewriteError):
    """Two words that had to agree do not (Seq typing, rule sides)."""

    def __init__(self, message: str, expected: Any = None, found: Any = None):
        self.expected = expected
        self.found = found
        if expected is not None or found is not None:
            message = f"{message}: {expected} != {found}"
        super().__init__(message)


class SignatureMismatchError(HyperRewriteError):
    """Values built over different signatures were combined."""


class HypergraphError(HyperRewriteError):
    """Ill-formed hypergraph or homomorphism."""


class QuotientError(HyperRewriteError):
    """A partition is not a congruence for the hypergraph being quotiented."""

    def __init__(self, message: str, block: Any = None):
        self.block = block
        super().__init__(f"{message} (block {block!r})" if block is not None else message)


class DiscreteApexError(HyperRewriteError):
    """Pushout requested along an apex that has hyperedges."""


class InterfaceMismatchError(HyperRewriteError):
    """Cospan interfaces do not have the same colour word."""

    def __init__(self, message: str, left: Any = None, right: Any = None):
        self.left = left
        self.right = right
        if left is not None or right is not None:
            message = f"{message}: {left} vs {right}"
        super().__init__(message)


class PermutationError(HyperRewriteError):
    """Not a bijection on positions, or not colour preserving."""


class NotDiscreteError(HyperRewriteError):
    """A discrete carrier was required but the hypergraph has hyperedges."""


class InterfaceNotDiscreteError(HyperRewriteError):
    """A critical pair interface turned out not to be discrete."""
