"""Graphviz DOT export for hypergraphs and cospans.

Nodes are drawn as small colour-labelled circles, hyperedges as boxes.
Tentacles are arcs labelled s0, s1, ... (node -> box) and t0, t1, ...
(box -> node). Cospan interfaces are drawn as numbered boundary points on
the left and right.
"""

from typing import Optional

from src.graphs.cospan import Cospan
from src.graphs.hypergraph import Hypergraph

_TEMPLATE = """digraph %s {
  rankdir = "LR" ;
  node [fontname="Helvetica", fontsize=10] ;

  // Nodes
  %s

  // Hyperedges
  %s

  // Tentacles
  %s
%s}
"""


def _quote(text: str) -> str:
    return '"%s"' % text.replace('"', '\\"')


def _body(g: Hypergraph) -> tuple[list[str], list[str], list[str]]:
    nodes = [
        '%s [shape=circle, width=0.3, label=%s] ;' % (_quote(f"n{i}"), _quote(g.signature.colours[c].name))
        for i, c in enumerate(g.nodes)
    ]
    boxes = [
        '%s [shape=box, label=%s] ;' % (_quote(f"e{j}"), _quote(g.operation(j).name)) for j in range(g.edge_count)
    ]
    tentacles = []
    for j, edge in enumerate(g.edges):
        for k, n in enumerate(edge.sources):
            tentacles.append('%s -> %s [label="s%d"] ;' % (_quote(f"n{n}"), _quote(f"e{j}"), k))
        for k, n in enumerate(edge.targets):
            tentacles.append('%s -> %s [label="t%d"] ;' % (_quote(f"e{j}"), _quote(f"n{n}"), k))
    return nodes, boxes, tentacles


def hypergraph_to_dot(g: Hypergraph, name: str = "G", extra: Optional[list[str]] = None) -> str:
    """Render a hypergraph as a DOT digraph.

    Args:
        g: Hypergraph to draw
        name: Graph name in the output
        extra: Additional DOT statements appended to the body
    """
    nodes, boxes, tentacles = _body(g)
    tail = "".join("  %s\n" % line for line in extra or [])
    return _TEMPLATE % (
        _quote(name),
        "\n  ".join(nodes),
        "\n  ".join(boxes),
        "\n  ".join(tentacles),
        tail,
    )


def cospan_to_dot(f: Cospan, name: str = "cospan") -> str:
    """Render a cospan: the carrier plus numbered left/right boundary points."""
    extra: list[str] = []
    for side, leg in (("left", f.left), ("right", f.right)):
        points = []
        for pos, n in enumerate(leg):
            point = _quote(f"{side}{pos}")
            points.append(point)
            extra.append('%s [shape=point, xlabel="%d"] ;' % (point, pos))
            arc = (point, _quote(f"n{n}")) if side == "left" else (_quote(f"n{n}"), point)
            extra.append('%s -> %s [style=dashed, arrowhead=none] ;' % arc)
        if points:
            rank = "source" if side == "left" else "sink"
            extra.append("{ rank=%s; %s }" % (rank, "; ".join(points)))
    return hypergraph_to_dot(f.carrier, name=name, extra=extra)
