"""Static SVG 1.1 orthographic views of curves on the unit sphere (camera on +y)."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _project(points, size, margin):
    # camera on +y looking toward the origin, z up: screen right is -x
    scale = (size - 2 * margin) / 2
    sx = size / 2 - scale * points[:, 0]
    sy = size / 2 - scale * points[:, 2]
    return sx, sy


def sphere_view(curves, size=480, margin=24, title="") -> str:
    """Render ``[(label, points), ...]``; far-side segments (y < 0) are dashed."""
    r = (size - 2 * margin) / 2
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size + 20 * len(curves) + 10}">',
        f'<circle cx="{size / 2:.3f}" cy="{size / 2:.3f}" r="{r:.3f}" fill="none" stroke="#888" stroke-width="1"/>',
    ]
    if title:
        out.append(f'<title>{escape(title)}</title>')
    for k, (label, pts) in enumerate(curves):
        pts = np.asarray(pts, dtype=float)
        color = COLORS[k % len(COLORS)]
        sx, sy = _project(pts, size, margin)
        front = pts[:, 1] >= 0
        for lo in range(len(pts) - 1):
            dash = "" if front[lo] and front[lo + 1] else ' stroke-dasharray="4 3"'
            out.append(f'<line x1="{sx[lo]:.3f}" y1="{sy[lo]:.3f}" x2="{sx[lo + 1]:.3f}" y2="{sy[lo + 1]:.3f}" '
                       f'stroke="{color}" stroke-width="2"{dash}/>')
        y = size + 20 * k + 14
        out.append(f'<line x1="{margin}" y1="{y - 4}" x2="{margin + 24}" y2="{y - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{margin + 32}" y="{y}" font-family="sans-serif" font-size="12">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
