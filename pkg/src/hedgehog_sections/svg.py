"""Static SVG 1.1 drawing of a hedgehog envelope and optional supporting lines."""

from __future__ import annotations

import math

import numpy as np

from .sections import sample_thetas
from .support_fn import TWO_PI, SupportFunction, support_points


def _envelope_runs(h: SupportFunction, n: int) -> list:
    """Support-point polylines, split wherever a derivative jump falls between samples."""
    thetas = sample_thetas(h, n)
    pts = support_points(h, thetas)
    kinks = h.kinks()
    if not kinks:
        return [np.vstack([pts, pts[:1]])]
    runs, start = [], 0
    for i in range(1, len(thetas) + 1):
        a = thetas[i - 1]
        b = thetas[i] if i < len(thetas) else thetas[0] + TWO_PI
        if any(a < k < b or a < k + TWO_PI < b for k in kinks):
            runs.append(pts[start:i])
            start = i
    if start < len(thetas):
        runs.append(pts[start:])
    return [r for r in runs if len(r) > 1]


def envelope_svg(h: SupportFunction, n: int = 4096, lines: tuple = (), size_px: int = 600) -> str:
    runs = _envelope_runs(h, n)
    allpts = np.vstack(runs)
    xmin, ymin = allpts.min(axis=0)
    xmax, ymax = allpts.max(axis=0)
    span = max(xmax - xmin, ymax - ymin, 1e-6)
    margin = 0.1 * span
    xmin, xmax = xmin - margin, xmax + margin
    ymin, ymax = ymin - margin, ymax + margin
    width, height = xmax - xmin, ymax - ymin
    stroke = span / 300.0

    # SVG y grows downward; draw in (x, -y)
    def fmt(p):
        return f"{p[0]:.6f},{-p[1]:.6f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size_px}" '
        f'height="{int(round(size_px * height / width))}" '
        f'viewBox="{xmin:.6f} {-ymax:.6f} {width:.6f} {height:.6f}">',
        f'<g fill="none" stroke="black" stroke-width="{stroke:.6f}">',
    ]
    for run in runs:
        out.append(f'<polyline points="{" ".join(fmt(p) for p in run)}"/>')
    out.append("</g>")
    if lines:
        out.append(f'<g stroke="#1f5fbf" stroke-width="{stroke:.6f}">')
        reach = 2.0 * math.hypot(width, height)
        for theta in lines:
            c, s = math.cos(theta), math.sin(theta)
            v = h(theta)
            p0 = (v * c + reach * s, v * s - reach * c)
            p1 = (v * c - reach * s, v * s + reach * c)
            out.append(
                f'<line x1="{p0[0]:.6f}" y1="{-p0[1]:.6f}" x2="{p1[0]:.6f}" y2="{-p1[1]:.6f}"/>'
            )
        out.append("</g>")
    out.append(f'<circle cx="0" cy="0" r="{2 * stroke:.6f}" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
