"""DOT export for diagrams and margin graphs."""
from __future__ import annotations

from .margins import MarginGraph, weak_defeat_edges
from .methods import Diagram


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(d: Diagram | MarginGraph, name: str | None = None) -> str:
    """Deterministic DOT text: sorted vertices and edges, margins as labels, zero margins gray."""
    if isinstance(d, Diagram):
        alts, edges, root = d.alternatives, d.edges, d.root
        name = name or d.method
    else:
        alts, edges, root = d.alternatives, weak_defeat_edges(d), None
        name = name or "margins"
    lines = [f"digraph {_quote(name)} {{"]
    for a in sorted(alts):
        attrs = [f"label={_quote(a)}"]
        if a == root:
            attrs += ["winner=true", "peripheries=2"]
        lines.append(f"  {_quote(a)} [{', '.join(attrs)}];")
    for e in sorted(edges):
        attrs = [f'label="{e.margin}"']
        if e.margin == 0:
            attrs += ["color=gray", "fontcolor=gray"]
        lines.append(f"  {_quote(e.source)} -> {_quote(e.target)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
