"""Plain-text graph files and DOT export.

File format: '#' starts a comment, an optional ``nodes:`` directive
declares labels (required for isolated nodes), and each remaining line
holds one edge::

    nodes: a b c d
    a -- b      # line
    a -> c      # arrow with the head at c
    b <-> d     # arc

Rendering is canonical (nodes sorted, edges sorted by type then
endpoints), so ``parse(render(g)) == g`` and equal graphs render to
identical bytes.
"""

from __future__ import annotations

from .errors import ParseError
from .graph import ARC, ARROW, LINE, MixedGraph, build_graph

_OPS = {"--": LINE, "->": ARROW, "<->": ARC}


def parse(text: str) -> MixedGraph:
    nodes: set[str] = set()
    edges: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("nodes:"):
            labels = line[len("nodes:") :].split()
            for label in labels:
                _check_label(label, lineno)
            nodes.update(labels)
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(lineno, f"expected 'x OP y', got {line!r}")
        x, op, y = parts
        if op not in _OPS:
            raise ParseError(lineno, f"unknown edge operator {op!r}")
        _check_label(x, lineno)
        _check_label(y, lineno)
        if x == y:
            raise ParseError(lineno, f"loop edge at {x!r}")
        nodes.update((x, y))
        edges.append((x, y, _OPS[op]))
    return build_graph(nodes, edges)


def _check_label(label: str, lineno: int) -> None:
    if not label or label in _OPS or label.startswith("#"):
        raise ParseError(lineno, f"bad node label {label!r}")


def parse_file(path: str) -> MixedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


_OP_OF = {LINE: "--", ARROW: "->", ARC: "<->"}


def render(g: MixedGraph) -> str:
    out = []
    if g.nodes:
        out.append("nodes: " + " ".join(g.nodes))
    for kind, x, y in g.edge_list():
        out.append(f"{x} {_OP_OF[kind]} {y}")
    return "\n".join(out) + "\n"


def to_dot(g: MixedGraph, name: str = "G") -> str:
    """DOT digraph: plain edges for lines, double-headed edges for arcs."""
    lines = [f"digraph {name} {{"]
    for v in g.nodes:
        lines.append(f'  "{v}";')
    for kind, x, y in g.edge_list():
        if kind == LINE:
            lines.append(f'  "{x}" -> "{y}" [dir=none];')
        elif kind == ARROW:
            lines.append(f'  "{x}" -> "{y}";')
        else:
            lines.append(f'  "{x}" -> "{y}" [dir=both];')
    lines.append("}")
    return "\n".join(lines) + "\n"
