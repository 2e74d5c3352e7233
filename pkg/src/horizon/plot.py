"""Minimal self-contained SVG line plots for optimization trajectories."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _panel(series, x0, y0, w, h, title, log):
    pts_all = [(i, v) for _, ys in series for i, v in enumerate(ys) if v is not None and (v > 0 or not log)]
    out = [f'<rect x="{x0}" y="{y0}" width="{w}" height="{h}" fill="none" stroke="#444"/>']
    out.append(f'<text x="{x0 + w / 2}" y="{y0 - 6}" text-anchor="middle" font-size="12">{escape(title)}</text>')
    if not pts_all:
        return out
    f = (lambda v: math.log10(v)) if log else (lambda v: v)
    xmax = max(1, max(i for i, _ in pts_all))
    lo, hi = min(f(v) for _, v in pts_all), max(f(v) for _, v in pts_all)
    if hi - lo < 1e-12:
        lo, hi = lo - 1, hi + 1
    for t in range(5):
        val = lo + (hi - lo) * t / 4
        y = y0 + h - h * t / 4
        lab = f"1e{val:.1f}" if log else f"{val:.3g}"
        out.append(f'<text x="{x0 - 4}" y="{y + 4}" text-anchor="end" font-size="10">{lab}</text>')
    out.append(f'<text x="{x0 + w}" y="{y0 + h + 14}" text-anchor="end" font-size="10">{xmax}</text>')
    out.append(f'<text x="{x0}" y="{y0 + h + 14}" font-size="10">0</text>')
    for n, (name, ys) in enumerate(series):
        pts = [
            f"{x0 + w * i / xmax:.2f},{y0 + h - h * (f(v) - lo) / (hi - lo):.2f}"
            for i, v in enumerate(ys)
            if v is not None and (v > 0 or not log)
        ]
        if not pts:
            continue
        color = _COLORS[n % len(_COLORS)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(pts)}"/>')
        out.append(f'<text x="{x0 + w - 4}" y="{y0 + 14 + 13 * n}" text-anchor="end" font-size="10" fill="{color}">{escape(name)}</text>')
    return out


def trajectory_svg(runs: dict, width: int = 640, panel_height: int = 220) -> str:
    """SVG with Delta E on a log axis and, when recorded, <S^2> below it.

    ``runs`` maps a legend label to an object with ``delta_e`` and ``s2``.
    """
    with_spin = any(getattr(r, "s2", None) for r in runs.values())
    height = 40 + panel_height + (panel_height + 50 if with_spin else 0) + 30
    body = _panel([(k, r.delta_e) for k, r in runs.items()], 70, 30, width - 90, panel_height, "Delta E (log scale)", True)
    if with_spin:
        body += _panel(
            [(k, r.s2) for k, r in runs.items() if r.s2], 70, 80 + panel_height, width - 90, panel_height, "<S^2>", False
        )
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif">'
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"
