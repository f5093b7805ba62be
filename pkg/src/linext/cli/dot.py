"""Stable DOT output for Hasse diagrams."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..poset import CoverPair, Poset


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(poset: Poset, names: Sequence[str] | None = None,
             highlights: Iterable[CoverPair] = (), graph_name: str = "P") -> str:
    """Covers drawn bottom to top; ``highlights`` (cover pairs) drawn red and bold."""
    names = [str(i) for i in range(poset.n)] if names is None else list(names)
    marked = set(highlights)
    lines = [f"digraph {_quote(graph_name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    lines += [f"  {_quote(names[x])};" for x in range(poset.n)]
    for x, y in sorted(poset.covers):
        attr = " [color=red, penwidth=2]" if (x, y) in marked else ""
        lines.append(f"  {_quote(names[x])} -> {_quote(names[y])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
