"""
Parser and printer for the term grammar and rule files.

Grammar (`+` binds tighter than `;`, both left-associative):

    term ::= term ';' term | term '+' term | '(' term ')' | atom
    atom ::= OPNAME | 'id[' word ']' | 'sym[' word ',' word ']'
           | 'mult[' COLOUR ']' | 'unit[' COLOUR ']'
           | 'comult[' COLOUR ']' | 'counit[' COLOUR ']' | 'empty'

A word is a space-separated list of colour names; it may be empty. When
every colour has a one-character name, `id[cd]` is read as `id[c d]`.

Rule files hold one rule per line:

    rule assoc : (m + id[c]) ; m => (id[c] + m) ; m
"""

import re
from dataclasses import dataclass

from src.errors import ParseError
from src.logger import get_logger
from src.syntax.diagram import (
    Comult,
    Counit,
    Diagram,
    Empty,
    Gen,
    Id,
    Mult,
    Par,
    Rule,
    Seq,
    Sym,
    Unit,
    id_word,
    sym_word,
)
from src.syntax.signature import Signature, Word, strip_comment

logger = get_logger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[;+()\[\],])|(?P<bad>\S))")
_RULE_LINE = re.compile(r"rule\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*:\s*(?P<lhs>.+?)\s*=>\s*(?P<rhs>.+?)\s*\Z")

_FROBENIUS_KEYWORDS = {"mult": Mult, "unit": Unit, "comult": Comult, "counit": Counit}


@dataclass(frozen=True)
class _Token:
    kind: str  # "name", "punct" or "end"
    text: str
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:  # only trailing whitespace left
            break
        if match.group("bad"):
            raise ParseError(f"unexpected character {match.group('bad')!r}", column=match.start("bad") + 1)
        kind = "name" if match.group("name") else "punct"
        tokens.append(_Token(kind, match.group(kind), match.start(kind) + 1))
        pos = match.end()
    tokens.append(_Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    """Recursive descent over the token list."""

    def __init__(self, text: str, signature: Signature):
        self.signature = signature
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, text: str) -> _Token:
        token = self.advance()
        if token.text != text:
            found = token.text or "end of input"
            raise ParseError(f"expected '{text}', found '{found}'", column=token.column)
        return token

    def parse(self) -> Diagram:
        result = self.seq()
        token = self.peek()
        if token.kind != "end":
            raise ParseError(f"unexpected '{token.text}'", column=token.column)
        return result

    def seq(self) -> Diagram:
        result = self.par()
        while self.peek().text == ";":
            self.advance()
            result = Seq(result, self.par())
        return result

    def par(self) -> Diagram:
        result = self.atom()
        while self.peek().text == "+":
            self.advance()
            result = Par(result, self.atom())
        return result

    def atom(self) -> Diagram:
        token = self.advance()
        if token.text == "(":
            inner = self.seq()
            self.expect(")")
            return inner
        if token.kind != "name":
            found = token.text or "end of input"
            raise ParseError(f"expected a term, found '{found}'", column=token.column)

        if self.peek().text == "[":
            return self.bracketed(token)
        if token.text == "empty":
            return Empty(self.signature)
        if not self.signature.has_operation(token.text):
            raise ParseError(f"unknown operation '{token.text}'", column=token.column)
        return Gen(self.signature.operation(token.text))

    def bracketed(self, keyword: _Token) -> Diagram:
        self.expect("[")
        if keyword.text == "id":
            w = self.word()
            self.expect("]")
            return id_word(w)
        if keyword.text == "sym":
            w = self.word()
            self.expect(",")
            u = self.word()
            self.expect("]")
            if len(w) == 1 and len(u) == 1:
                colours = self.signature.colours
                return Sym(colours[w[0]], colours[u[0]])
            return sym_word(w, u)
        if keyword.text in _FROBENIUS_KEYWORDS:
            w = self.word()
            self.expect("]")
            if len(w) != 1:
                raise ParseError(f"{keyword.text}[...] takes exactly one colour", column=keyword.column)
            return _FROBENIUS_KEYWORDS[keyword.text](self.signature.colours[w[0]])
        raise ParseError(f"unknown constructor '{keyword.text}[...]'", column=keyword.column)

    def word(self) -> Word:
        names: list[str] = []
        while self.peek().kind == "name":
            token = self.advance()
            names.extend(self.colour_names(token))
        return self.signature.word(names)

    def colour_names(self, token: _Token) -> list[str]:
        known = {c.name for c in self.signature.colours}
        if token.text in known:
            return [token.text]
        if all(len(name) == 1 for name in known) and all(ch in known for ch in token.text):
            return list(token.text)
        raise ParseError(f"undeclared colour '{token.text}'", column=token.column)


def parse_diagram(text: str, signature: Signature) -> Diagram:
    """Parse a term over a signature.

    Args:
        text: Term in the grammar above
        signature: Signature resolving operation and colour names

    Returns:
        The parsed, well-typed Diagram

    Raises:
        ParseError: on syntax errors and unknown names
        TypeMismatchError: on an ill-typed sequential composition

    Example:
        >>> d = parse_diagram("o2 ; o1", sig)
        >>> str(d.dom), str(d.cod)
        ('dd', 'cd')
    """
    return _Parser(text, signature).parse()


def print_diagram(d: Diagram) -> str:
    """Render a diagram so that parse_diagram gives back an equal tree."""
    if isinstance(d, Seq):
        right = print_diagram(d.right)
        if isinstance(d.right, Seq):
            right = f"({right})"
        return f"{print_diagram(d.left)} ; {right}"
    if isinstance(d, Par):
        top = print_diagram(d.top)
        bottom = print_diagram(d.bottom)
        if isinstance(d.top, Seq):
            top = f"({top})"
        if isinstance(d.bottom, (Seq, Par)):
            bottom = f"({bottom})"
        return f"{top} + {bottom}"
    if isinstance(d, Gen):
        return d.op.name
    if isinstance(d, Id):
        return f"id[{d.colour.name}]"
    if isinstance(d, Sym):
        return f"sym[{d.first.name}, {d.second.name}]"
    if isinstance(d, Empty):
        return "empty"
    for keyword, cls in _FROBENIUS_KEYWORDS.items():
        if isinstance(d, cls):
            return f"{keyword}[{d.colour.name}]"
    raise TypeError(f"not a diagram: {d!r}")


def parse_rules(text: str, signature: Signature) -> list[Rule]:
    """Parse a rule file, one `rule <name> : <term> => <term>` per line.

    Raises:
        ParseError: on malformed lines, bad terms or duplicate rule names
        TypeMismatchError: when a side is ill-typed or the sides differ in type
    """
    rules: list[Rule] = []
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        match = _RULE_LINE.match(line)
        if not match:
            raise ParseError(f"expected 'rule <name> : <term> => <term>', got {line!r}", line=lineno)
        name = match.group("name")
        if name in names:
            raise ParseError(f"duplicate rule '{name}'", line=lineno)
        try:
            lhs = parse_diagram(match.group("lhs"), signature)
            rhs = parse_diagram(match.group("rhs"), signature)
            rule = Rule(name, lhs, rhs)
        except ParseError as exc:
            raise ParseError(f"rule '{name}': {exc}", line=lineno) from exc
        except ValueError as exc:
            exc.add_note(f"in rule '{name}' on line {lineno}")
            raise
        rules.append(rule)
        names.add(name)

    logger.debug("Parsed %d rules", len(rules))
    return rules


def print_rule(rule: Rule) -> str:
    return f"rule {rule.name} : {print_diagram(rule.lhs)} => {print_diagram(rule.rhs)}"
