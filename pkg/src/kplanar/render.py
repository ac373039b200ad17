"""Deterministic SVG figures of drawings."""

from __future__ import annotations

from xml.sax.saxutils import escape

import networkx as nx

from .drawing import Drawing

SIZE = 480
MARGIN = 24


def layout(d: Drawing):
    """Vertex positions and whether they are the drawing's own coordinates.

    Drawings without stored coordinates get a schematic layout: a planar
    layout of the uncrossed edges when one exists, a circle otherwise.
    Crossings in a schematic figure need not match the combinatorial drawing.
    """
    if d.points is not None and all(p is not None for p in d.points):
        return [tuple(float(c) for c in p) for p in d.points], True
    g = nx.Graph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from(e for i, e in enumerate(d.edges) if not d.crossings[i])
    try:
        pos = nx.planar_layout(g)
    except nx.NetworkXException:
        pos = nx.circular_layout(g)
    return [tuple(float(c) for c in pos[v]) for v in range(d.n)], False


def _fit(pts):
    xs = [p[0] for p in pts] or [0.0]
    ys = [p[1] for p in pts] or [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (SIZE - 2 * MARGIN) / span
    # y grows downwards in SVG
    return [(MARGIN + (x - min(xs)) * scale, SIZE - MARGIN - (y - min(ys)) * scale) for x, y in pts]


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def to_svg(d: Drawing, title: str | None = None) -> str:
    pts, exact = layout(d)
    pts = _fit(pts)
    worst = max((len(c) for c in d.crossings), default=0)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{escape(title or f'n={d.n} m={d.m}')}</title>",
    ]
    if not exact:
        lines.append("<desc>schematic layout; crossings are not to scale</desc>")
    lines.append('<g stroke-linecap="round" fill="none">')
    for i, (u, v) in enumerate(d.edges):
        c = len(d.crossings[i])
        if c == 0:
            style = 'stroke="#222" stroke-width="2"'
        else:
            shade = 40 + int(160 * c / worst)
            style = f'stroke="rgb({shade},60,{220 - shade})" stroke-width="1"'
        (x1, y1), (x2, y2) = pts[u], pts[v]
        lines.append(f'<line id="e{i}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                     f'y2="{_fmt(y2)}" {style}/>')
    lines.append("</g>")
    lines.append('<g fill="#fff" stroke="#222" font-family="sans-serif" font-size="9" '
                 'text-anchor="middle">')
    for v, (x, y) in enumerate(pts):
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="7"/>')
        lines.append(f'<text x="{_fmt(x)}" y="{_fmt(y + 3)}" fill="#222" stroke="none">{v}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

