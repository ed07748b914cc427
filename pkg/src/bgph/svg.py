"""Barcodes as SVG: one panel per grade.

Bigraded barcodes are laid out with one row per ``-i`` and one column per
``2j``; degree-graded ones as a single row. Inside a panel, bar ``[b, d)`` spans
``x = PLOT_LEFT + SCALE * b`` to ``x = PLOT_LEFT + SCALE * d`` where
``SCALE = PLOT_WIDTH / (RAY_FACTOR * t_max)``. Rays run to ``t_max * RAY_FACTOR``.
"""

from __future__ import annotations

import math

from .persistence import Barcode

PANEL_WIDTH = 220
PLOT_LEFT = 10
PLOT_WIDTH = 200
TITLE_HEIGHT = 18
BAR_HEIGHT = 6
BAR_GAP = 4
AXIS_HEIGHT = 14
MARGIN = 10
RAY_FACTOR = 1.1


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def bar_extent(birth: float, death: float, t_max: float) -> tuple:
    """Horizontal span of a bar within its panel."""
    scale = PLOT_WIDTH / (RAY_FACTOR * t_max)
    end = RAY_FACTOR * t_max if math.isinf(death) else death
    return PLOT_LEFT + scale * birth, PLOT_LEFT + scale * end


def _panel_cells(B: Barcode) -> dict:
    groups = B.by_grade()
    if B.kind == "bigraded":
        return {(g.i, g.j): (g.label(), bars) for g, bars in groups.items()}
    return {(0, g): (f"degree {g}", bars) for g, bars in groups.items()}


def render_svg(B: Barcode) -> str:
    grid_max = float(B.grid[-1]) if B.grid is not None and len(B.grid) else 0.0
    finite = [d for bar in B for d in (bar.birth, bar.death) if not math.isinf(d)]
    t_max = max([grid_max] + finite) or 1.0
    cells = _panel_cells(B)
    rows = sorted({r for r, _ in cells}) or [0]
    cols = sorted({c for _, c in cells}) or [0]
    most = max((len(bars) for _, bars in cells.values()), default=0)
    panel_h = TITLE_HEIGHT + max(most, 1) * (BAR_HEIGHT + BAR_GAP) + AXIS_HEIGHT
    width = 2 * MARGIN + len(cols) * PANEL_WIDTH
    height = 2 * MARGIN + len(rows) * panel_h
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="10">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for (r, c), (title, bars) in sorted(cells.items()):
        x0 = MARGIN + cols.index(c) * PANEL_WIDTH
        y0 = MARGIN + rows.index(r) * panel_h
        out.append(f'<g transform="translate({x0},{y0})">')
        out.append(f'<rect width="{PANEL_WIDTH}" height="{panel_h}" fill="none" stroke="#ccc"/>')
        out.append(f'<text x="{PLOT_LEFT}" y="12">{title}</text>')
        for k, (b, d) in enumerate(bars):
            xa, xb = bar_extent(b, d, t_max)
            y = TITLE_HEIGHT + k * (BAR_HEIGHT + BAR_GAP)
            cls = "ray" if math.isinf(d) else "bar"
            color = "#c0392b" if math.isinf(d) else "#2c3e50"
            out.append(f'<rect class="{cls}" x="{_fmt(xa)}" y="{y}" width="{_fmt(xb - xa)}" '
                       f'height="{BAR_HEIGHT}" fill="{color}"/>')
        ya = panel_h - AXIS_HEIGHT + 2
        xa, xb = bar_extent(0.0, t_max, t_max)
        out.append(f'<line x1="{_fmt(xa)}" y1="{ya}" x2="{_fmt(xb)}" y2="{ya}" stroke="black"/>')
        out.append(f'<text x="{_fmt(xa)}" y="{ya + 10}">0</text>')
        out.append(f'<text x="{_fmt(xb)}" y="{ya + 10}" text-anchor="end">{_fmt(t_max)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
