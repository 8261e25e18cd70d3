"""A tiny deterministic SVG line-chart writer."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from xml.sax.saxutils import escape

PALETTE = ("#1f4e79", "#c0392b", "#27864a", "#8e44ad", "#7f7f7f")

WIDTH, HEIGHT = 720, 400
LEFT, RIGHT, TOP, BOTTOM = 64, 20, 40, 56


@dataclass(frozen=True)
class Line:
    label: str
    values: Sequence[float]
    dashed: bool = False
    color: str | None = None


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * step:
        ticks.append(round(t, 10))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def line_chart(
    x_labels: Sequence[str],
    lines: Sequence[Line],
    title: str,
    y_label: str = "",
    zero_line: bool = True,
) -> str:
    """Render aligned series as polylines with axes, ticks and a legend."""
    n = len(x_labels)
    vals = [v for ln in lines for v in ln.values if math.isfinite(v)]
    lo, hi = (min(vals), max(vals)) if vals else (0.0, 1.0)
    if zero_line:
        lo, hi = min(lo, 0.0), max(hi, 0.0)
    pad = 0.05 * (hi - lo or 1.0)
    lo, hi = lo - pad, hi + pad
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(i: int) -> float:
        return LEFT + (pw * i / (n - 1) if n > 1 else pw / 2)

    def sy(v: float) -> float:
        return TOP + ph * (hi - v) / (hi - lo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]
    for t in _nice_ticks(lo, hi):
        y = sy(t)
        out.append(f'<line x1="{LEFT}" y1="{_fmt(y)}" x2="{WIDTH - RIGHT}" y2="{_fmt(y)}" stroke="#e5e5e5"/>')
        out.append(f'<text x="{LEFT - 6}" y="{_fmt(y + 4)}" text-anchor="end">{t:g}</text>')
    if zero_line and lo < 0 < hi:
        out.append(f'<line x1="{LEFT}" y1="{_fmt(sy(0))}" x2="{WIDTH - RIGHT}" y2="{_fmt(sy(0))}" stroke="#555"/>')
    out.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}" stroke="black"/>')
    out.append(f'<line x1="{LEFT}" y1="{TOP + ph}" x2="{WIDTH - RIGHT}" y2="{TOP + ph}" stroke="black"/>')
    step = max(1, n // 8)
    for i in range(0, n, step):
        out.append(
            f'<text x="{_fmt(sx(i))}" y="{TOP + ph + 16}" text-anchor="middle">{escape(x_labels[i])}</text>'
        )
    if y_label:
        out.append(
            f'<text x="16" y="{TOP + ph / 2:.0f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {TOP + ph / 2:.0f})">{escape(y_label)}</text>'
        )
    for idx, ln in enumerate(lines):
        color = ln.color or PALETTE[idx % len(PALETTE)]
        pts = " ".join(f"{_fmt(sx(i))},{_fmt(sy(v))}" for i, v in enumerate(ln.values) if math.isfinite(v))
        dash = ' stroke-dasharray="6 4"' if ln.dashed else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.6"{dash} points="{pts}"/>')
        ly = HEIGHT - 14
        lx = LEFT + idx * 170
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{lx + 30}" y="{ly}">{escape(ln.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
