"""Deterministic SVG scatter plots for pairwise distance reports.

Text-based SVG keeps outputs golden-file testable: no timestamps, no
randomness, fixed float formatting.
"""

from __future__ import annotations

import io

from .distance import SemanticDistanceReport


def _fmt(v):
    return f"{v:.2f}"


def _panel(buf, report, which, title, y_max, x0, y0, width, height, hexes):
    n = len(report.color_ids)
    matrix = report.delta_s if which == "delta_s" else report.delta_e
    step = width / max(n - 1, 1)
    buf.write(f'<text x="{x0}" y="{y0 - 8}" font-size="13" font-family="sans-serif">{title}</text>\n')
    buf.write(
        f'<rect x="{x0}" y="{y0}" width="{width}" height="{height}" fill="none" stroke="#888"/>\n'
    )
    # x-axis swatches and labels
    for j in range(n):
        cx = x0 + j * step
        buf.write(
            f'<rect x="{_fmt(cx - 6)}" y="{y0 + height + 6}" width="12" height="12" '
            f'fill="{hexes[j]}" stroke="#444" stroke-width="0.5"/>\n'
        )
        buf.write(
            f'<text x="{_fmt(cx)}" y="{y0 + height + 32}" font-size="10" '
            f'font-family="sans-serif" text-anchor="middle">{report.color_ids[j]}</text>\n'
        )
    # one point per ordered pair position: x = second color, fill = first color
    for i in range(n):
        for j in range(i + 1, n):
            v = float(matrix[i, j])
            cx = x0 + j * step
            cy = y0 + height - (v / y_max) * height
            buf.write(
                f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="5" fill="{hexes[i]}" '
                f'stroke="#333" stroke-width="0.75"/>\n'
            )


def distances_svg(report: SemanticDistanceReport, colors) -> str:
    """Two stacked scatter panels (semantic on top, perceptual below)."""
    hexes = [c.hex for c in colors]
    width, height = 520, 180
    x0 = 50
    buf = io.StringIO()
    buf.write(
        '<svg xmlns="http://www.w3.org/2000/svg" width="620" height="560" '
        'viewBox="0 0 620 560">\n<rect width="620" height="560" fill="white"/>\n'
    )
    de_max = max(float(report.delta_e.max()), 1.0)
    _panel(buf, report, "delta_s", "semantic distance", 1.0, x0, 40, width, height, hexes)
    _panel(buf, report, "delta_e", f"perceptual distance (max {de_max:.1f})", de_max, x0, 320, width, height, hexes)
    buf.write("</svg>\n")
    return buf.getvalue()
