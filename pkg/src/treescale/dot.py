"""DOT export of tree balls with axis and minimal-set overlays."""

from __future__ import annotations

from .automorphism import MinSetWindow
from .errors import AddressError
from .tree_core import Segment, TreeParams, Vertex

MAX_DEPTH = 8

_PALETTE = ("red", "blue", "forestgreen", "orange", "purple")


def _node_id(v: Vertex) -> str:
    return "root" if v.is_root else "v" + "_".join(str(c) for c in v.address)


def _node_label(v: Vertex) -> str:
    return "()" if v.is_root else ".".join(str(c) for c in v.address)


def export_dot(params: TreeParams, depth: int, annotations=()) -> str:
    """A stable DOT digraph of the ball of the given depth.  Annotations
    are Segments (axes, paths) or MinSetWindows; each gets a palette
    color, vertices are filled and covered edges drawn bold."""
    if depth > MAX_DEPTH:
        raise AddressError(f"export depth {depth} exceeds the budget {MAX_DEPTH}")
    ball = params.ball(depth)
    in_ball = {v.address for v in ball}

    vertex_color: dict[tuple, str] = {}
    edge_color: dict[frozenset, str] = {}
    for i, ann in enumerate(annotations):
        color = _PALETTE[i % len(_PALETTE)]
        if isinstance(ann, Segment):
            verts = list(ann)
            edges = [e.unordered_key() for e in ann.edges()]
        elif isinstance(ann, MinSetWindow):
            verts = sorted(ann.vertices, key=Vertex.sort_key)
            edges = list(ann.midpoints)
        else:
            raise AddressError(f"unsupported annotation {ann!r}")
        for v in verts:
            if v.address in in_ball:
                vertex_color.setdefault(v.address, color)
        for key in edges:
            if all(a in in_ball for a in key):
                edge_color.setdefault(key, color)

    lines = ["digraph tree {", "  node [shape=circle fontsize=10];"]
    for v in ball:
        style = ""
        color = vertex_color.get(v.address)
        if color:
            style = f' style=filled fillcolor="{color}"'
        lines.append(f'  {_node_id(v)} [label="{_node_label(v)}"{style}];')
    for e in params.ball_edges(depth):
        key = e.unordered_key()
        color = edge_color.get(key)
        deco = f' [color="{color}" penwidth=2.5]' if color else ""
        lines.append(f"  {_node_id(e.origin)} -> {_node_id(e.terminus)}{deco};")
    lines.append("}")
    return "\n".join(lines) + "\n"
