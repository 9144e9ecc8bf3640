"""Minimal dependency-free SVG rendering of sweep curves.

One polyline per series plus red reference lines at the ideal values
(1 for a present target, 0 for an absent one). Output is deterministic:
coordinates are formatted to fixed precision.
"""

from __future__ import annotations

import math
from typing import Sequence

__all__ = ["sweep_svg"]

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 60, 20, 30, 45

_SERIES_STYLE = (
    ("mean_present", "#1f6fb4", "present"),
    ("mean_absent", "#3a9a3a", "absent"),
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def sweep_svg(
    ks: Sequence[int],
    present: Sequence[float],
    absent: Sequence[float],
    title: str = "",
    present_ideal: float = 1.0,
    absent_ideal: float = 0.0,
) -> str:
    """Render present/absent score curves against k."""
    if not ks or len(ks) != len(present) or len(ks) != len(absent):
        raise ValueError("ks, present and absent must be equal-length and nonempty")
    finite = [v for v in list(present) + list(absent) if math.isfinite(v)]
    lo = min(finite + [absent_ideal, present_ideal])
    hi = max(finite + [absent_ideal, present_ideal])
    pad = 0.05 * (hi - lo or 1.0)
    lo, hi = lo - pad, hi + pad
    kmin, kmax = min(ks), max(ks)
    kspan = (kmax - kmin) or 1

    def sx(k):
        return _ML + (_W - _ML - _MR) * (k - kmin) / kspan

    def sy(v):
        return _H - _MB - (_H - _MT - _MB) * (v - lo) / (hi - lo)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W // 2}" y="18" text-anchor="middle" font-size="13">{title}</text>',
    ]
    # axes
    parts.append(
        f'<line x1="{_ML}" y1="{sy(lo):.2f}" x2="{_ML}" y2="{sy(hi):.2f}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>'
    )
    for k in ks:
        x = sx(k)
        parts.append(
            f'<line x1="{x:.2f}" y1="{_H - _MB}" x2="{x:.2f}" y2="{_H - _MB + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{_H - _MB + 16}" text-anchor="middle" font-size="10">{k}</text>'
        )
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        v = lo + frac * (hi - lo)
        y = sy(v)
        parts.append(
            f'<line x1="{_ML - 4}" y1="{y:.2f}" x2="{_ML}" y2="{y:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_ML - 7}" y="{y + 3:.2f}" text-anchor="end" font-size="10">{_fmt(v)}</text>'
        )
    # ideal reference lines
    for ideal, label in ((present_ideal, "ideal present"), (absent_ideal, "ideal absent")):
        y = sy(ideal)
        parts.append(
            f'<line x1="{_ML}" y1="{y:.2f}" x2="{_W - _MR}" y2="{y:.2f}" '
            f'stroke="#cc0000" stroke-dasharray="5,4"/>'
        )
        parts.append(
            f'<text x="{_W - _MR - 4}" y="{y - 4:.2f}" text-anchor="end" '
            f'font-size="10" fill="#cc0000">{label}</text>'
        )
    for series, (_, color, label) in zip((present, absent), _SERIES_STYLE):
        pts = " ".join(f"{sx(k):.2f},{sy(v):.2f}" for k, v in zip(ks, series) if math.isfinite(v))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for k, v in zip(ks, series):
            if math.isfinite(v):
                parts.append(f'<circle cx="{sx(k):.2f}" cy="{sy(v):.2f}" r="2.5" fill="{color}"/>')
    parts.append(
        f'<text x="{_ML + 8}" y="{_MT + 12}" font-size="11" fill="{_SERIES_STYLE[0][1]}">present</text>'
    )
    parts.append(
        f'<text x="{_ML + 8}" y="{_MT + 26}" font-size="11" fill="{_SERIES_STYLE[1][1]}">absent</text>'
    )
    parts.append(
        f'<text x="{(_W + _ML) // 2}" y="{_H - 8}" text-anchor="middle" font-size="11">'
        "edges in superposition (k)</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
