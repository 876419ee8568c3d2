"""
Plain-text format for hypergraphs and cospans.

    node n0 : c
    node n1 : d
    edge e0 : o1 (n0) -> (n0 n1)
    left: n0
    right: n0 n1

Nodes are numbered in declaration order; identifiers are free-form names.
`left:`/`right:` lines are only read by parse_cospan. `#` starts a comment.
"""

import re

from src.errors import HypergraphError, ParseError, SignatureError
from src.graphs.cospan import Cospan
from src.graphs.hypergraph import Hyperedge, Hypergraph
from src.syntax.signature import Signature, strip_comment

_NODE_LINE = re.compile(r"node\s+(?P<id>\S+)\s*:\s*(?P<colour>\S+)\s*\Z")
_EDGE_LINE = re.compile(
    r"edge\s+(?P<id>\S+)\s*:\s*(?P<op>\S+)\s*\((?P<sources>[^)]*)\)\s*->\s*\((?P<targets>[^)]*)\)\s*\Z"
)
_LEG_LINE = re.compile(r"(?P<side>left|right)\s*:(?P<nodes>.*)\Z")


def _split_ids(text: str) -> list[str]:
    return text.replace(",", " ").split()


def _parse(text: str, signature: Signature, allow_legs: bool) -> tuple[Hypergraph, dict[str, tuple[int, ...]]]:
    node_ids: dict[str, int] = {}
    colours: list[int] = []
    edges: list[Hyperedge] = []
    edge_ids: set[str] = set()
    legs: dict[str, tuple[int, ...]] = {}

    def resolve(names: list[str], lineno: int) -> tuple[int, ...]:
        try:
            return tuple(node_ids[name] for name in names)
        except KeyError as exc:
            raise ParseError(f"unknown node '{exc.args[0]}'", line=lineno) from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue

        if match := _NODE_LINE.match(line):
            node_id = match.group("id")
            if node_id in node_ids:
                raise ParseError(f"duplicate node '{node_id}'", line=lineno)
            try:
                colours.append(signature.colour(match.group("colour")).index)
            except SignatureError as exc:
                raise ParseError(str(exc), line=lineno) from exc
            node_ids[node_id] = len(colours) - 1
        elif match := _EDGE_LINE.match(line):
            edge_id = match.group("id")
            if edge_id in edge_ids:
                raise ParseError(f"duplicate edge '{edge_id}'", line=lineno)
            try:
                op = signature.operation(match.group("op"))
            except SignatureError as exc:
                raise ParseError(str(exc), line=lineno) from exc
            sources = resolve(_split_ids(match.group("sources")), lineno)
            targets = resolve(_split_ids(match.group("targets")), lineno)
            edges.append(Hyperedge(op.index, sources, targets))
            edge_ids.add(edge_id)
        elif allow_legs and (match := _LEG_LINE.match(line)):
            side = match.group("side")
            if side in legs:
                raise ParseError(f"duplicate '{side}:' line", line=lineno)
            legs[side] = resolve(_split_ids(match.group("nodes")), lineno)
        else:
            raise ParseError(f"cannot read line {line!r}", line=lineno)

    try:
        graph = Hypergraph(signature, tuple(colours), tuple(edges))
    except HypergraphError as exc:
        raise ParseError(str(exc)) from exc
    return graph, legs


def parse_hypergraph(text: str, signature: Signature) -> Hypergraph:
    """Parse the node/edge text format.

    Raises:
        ParseError: on malformed lines, unknown names or ill-typed edges
    """
    graph, _ = _parse(text, signature, allow_legs=False)
    return graph


def parse_cospan(text: str, signature: Signature) -> Cospan:
    """Parse a hypergraph followed by `left:` and `right:` listings (missing legs are empty)."""
    graph, legs = _parse(text, signature, allow_legs=True)
    return Cospan(graph, legs.get("left", ()), legs.get("right", ()))


def print_hypergraph(g: Hypergraph) -> str:
    lines = [f"node n{i} : {g.signature.colours[c].name}" for i, c in enumerate(g.nodes)]
    for j, edge in enumerate(g.edges):
        sources = " ".join(f"n{n}" for n in edge.sources)
        targets = " ".join(f"n{n}" for n in edge.targets)
        lines.append(f"edge e{j} : {g.operation(j).name} ({sources}) -> ({targets})")
    return "\n".join(lines) + ("\n" if lines else "")


def print_cospan(f: Cospan) -> str:
    left = " ".join(f"n{n}" for n in f.left)
    right = " ".join(f"n{n}" for n in f.right)
    return print_hypergraph(f.carrier) + f"left: {left}".rstrip() + "\n" + f"right: {right}".rstrip() + "\n"
