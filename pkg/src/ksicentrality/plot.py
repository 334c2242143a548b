"""Dependency-free SVG rendering for ksi histograms and sweep heatmaps.

Output is plain text with fixed number formatting, so identical inputs give
identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from html import escape

import numpy as np

from .distribution import Histogram
from .graph import atomic_write_text

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=20, top=40, bottom=55)


@dataclass(frozen=True)
class PlotSpec:
    y_scale: str = "linear"  # "linear" or "log"
    title: str = ""
    xlabel: str = "ksi"
    ylabel: str = "number of vertices"
    fit: tuple | None = None  # (slope, intercept) of ln(count) vs ksi

    def __post_init__(self):
        if self.y_scale not in ("linear", "log"):
            raise ValueError("y_scale must be 'linear' or 'log'")


def _f(x: float) -> str:
    return f"{x:.2f}"


def _nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 5, 10) if s * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.2f}" y="24" text-anchor="middle" font-size="15">{escape(title)}</text>',
    ]


def histogram_svg(h: Histogram, spec: PlotSpec = PlotSpec()) -> str:
    """Bar chart of ``h`` with an optional fitted exponential overlay.

    On a log axis, zero-count bins are omitted. The bars form one ``<path>``
    and the fit curve, when given, a second one.
    """
    x0, x1 = float(h.edges[0]), float(h.edges[-1])
    counts = np.asarray(h.counts, dtype=np.float64)
    log = spec.y_scale == "log"
    shown = counts > 0
    if log:
        ymax = math.log10(max(counts.max(), 1.0)) + 0.5
        # headroom below the smallest count so single-vertex bins stay visible
        ymin = math.floor(math.log10(counts[shown].min())) - 0.3
        yval = lambda c: math.log10(c)  # noqa: E731
    else:
        ymax = max(counts.max(), 1.0) * 1.05
        ymin = 0.0
        yval = lambda c: c  # noqa: E731
    fit_x = fit_y = None
    if spec.fit is not None:
        slope, intercept = spec.fit
        fit_x = np.linspace(x0, x1, 101)
        fc = np.exp(intercept + slope * fit_x)
        fit_y = np.log10(fc) if log else fc
        if not log:
            ymax = max(ymax, float(fit_y.max()) * 1.05)

    pl, pr, pt, pb = MARGIN["left"], WIDTH - MARGIN["right"], MARGIN["top"], HEIGHT - MARGIN["bottom"]
    sx = lambda x: pl + (x - x0) / (x1 - x0) * (pr - pl)  # noqa: E731
    sy = lambda y: pb - (min(max(y, ymin), ymax) - ymin) / (ymax - ymin) * (pb - pt)  # noqa: E731

    out = _header(spec.title)
    out.append(f'<line x1="{pl}" y1="{pb}" x2="{pr}" y2="{pb}" stroke="#000000"/>')
    out.append(f'<line x1="{pl}" y1="{pb}" x2="{pl}" y2="{pt}" stroke="#000000"/>')
    for t in _nice_ticks(x0, x1):
        x = sx(t)
        out.append(f'<line x1="{_f(x)}" y1="{pb}" x2="{_f(x)}" y2="{pb + 5}" stroke="#000000"/>')
        out.append(f'<text x="{_f(x)}" y="{pb + 18}" text-anchor="middle">{t:.4g}</text>')
    if log:
        yt = [float(e) for e in range(int(math.ceil(ymin)), int(math.floor(ymax)) + 1)]
        lab = lambda t: f"1e{int(t)}"  # noqa: E731
    else:
        yt = _nice_ticks(0.0, ymax)
        lab = lambda t: f"{t:.4g}"  # noqa: E731
    for t in yt:
        y = sy(t)
        out.append(f'<line x1="{pl - 5}" y1="{_f(y)}" x2="{pl}" y2="{_f(y)}" stroke="#000000"/>')
        out.append(f'<text x="{pl - 8}" y="{_f(y + 4)}" text-anchor="end">{lab(t)}</text>')
    out.append(f'<text x="{(pl + pr) / 2:.2f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(spec.xlabel)}</text>')
    ylab = spec.ylabel + (" (log scale)" if log else "")
    out.append(
        f'<text x="16" y="{(pt + pb) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(pt + pb) / 2:.2f})">{escape(ylab)}</text>'
    )

    bars = []
    for a, b, c in zip(h.edges[:-1], h.edges[1:], counts):
        if c <= 0:
            continue
        xa, xb = sx(a), sx(b)
        ytop = sy(yval(c))
        base = sy(ymin)
        bars.append(f"M{_f(xa)},{_f(base)}H{_f(xb)}V{_f(ytop)}H{_f(xa)}Z")
    out.append(f'<path class="histogram" d="{"".join(bars)}" fill="#4c72b0" stroke="#ffffff" stroke-width="0.5"/>')
    if fit_x is not None:
        pts = "L".join(f"{_f(sx(x))},{_f(sy(y))}" for x, y in zip(fit_x, fit_y))
        out.append(f'<path class="fit" d="M{pts}" fill="none" stroke="#c44e52" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _color(t: float) -> str:
    # white -> dark red
    t = 0.0 if math.isnan(t) else min(max(t, 0.0), 1.0)
    r = 255 - int(round(t * 100))
    g = b = 255 - int(round(t * 220))
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap_svg(col_labels, row_labels, data, title: str = "", xlabel: str = "k", ylabel: str = "p") -> str:
    """Cell-colored matrix; rows are drawn bottom-up so the y axis increases upward."""
    data = np.asarray(data, dtype=np.float64)
    nr, nc = data.shape
    finite = data[np.isfinite(data)]
    lo, hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    span = hi - lo if hi > lo else 1.0
    pl, pr, pt, pb = MARGIN["left"], WIDTH - MARGIN["right"], MARGIN["top"], HEIGHT - MARGIN["bottom"]
    cw, ch = (pr - pl) / nc, (pb - pt) / nr
    out = _header(title)
    for r in range(nr):
        y = pb - (r + 1) * ch
        out.append(f'<text x="{pl - 8}" y="{_f(y + ch / 2 + 4)}" text-anchor="end">{escape(str(row_labels[r]))}</text>')
        for c in range(nc):
            v = data[r, c]
            x = pl + c * cw
            out.append(
                f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(cw)}" height="{_f(ch)}" '
                f'fill="{_color((v - lo) / span)}" stroke="#ffffff"/>'
            )
            txt = "nan" if math.isnan(v) else f"{v:.3g}"
            out.append(f'<text x="{_f(x + cw / 2)}" y="{_f(y + ch / 2 + 4)}" text-anchor="middle">{txt}</text>')
    for c in range(nc):
        out.append(
            f'<text x="{_f(pl + (c + 0.5) * cw)}" y="{pb + 18}" text-anchor="middle">{escape(str(col_labels[c]))}</text>'
        )
    out.append(f'<text x="{(pl + pr) / 2:.2f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{(pt + pb) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(pt + pb) / 2:.2f})">{escape(ylabel)}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(text: str, path) -> None:
    atomic_write_text(path, text)
