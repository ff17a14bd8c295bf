"""SVG rendering of the mean-value control chart.

Failure number on x, successive difference of m(t) on y, with horizontal
UCL/CL/LCL lines. Output is plain SVG 1.1 with inline styling and every
number printed to six significant digits, so identical inputs give
identical bytes.
"""
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import DomainError
from .spc import Signal

COLORS = {
    Signal.ALARM: "#d62728",
    Signal.IN_CONTROL: "#1f77b4",
    Signal.ABOVE_UPPER: "#2ca02c",
    None: "#7f7f7f",
}
CSS_CLASS = {
    Signal.ALARM: "point alarm",
    Signal.IN_CONTROL: "point in-control",
    Signal.ABOVE_UPPER: "point above-upper",
    None: "point",
}
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 90, 40, 50


@dataclass(frozen=True)
class ChartConfig:
    width: int = 800
    height: int = 500
    y_scale: str = "log10"
    title: str = "Mean value control chart"
    show_labels: bool = True

    def __post_init__(self):
        if self.width < 100 or self.height < 100:
            raise DomainError("chart width and height must be at least 100 pixels")
        if self.y_scale not in ("log10", "linear"):
            raise DomainError(f"unknown y scale {self.y_scale!r}")


def _f(v):
    return f"{v:.6g}"


class _Axes:
    def __init__(self, config, n_points, values):
        self.cfg = config
        self.x0 = MARGIN_LEFT
        self.x1 = config.width - MARGIN_RIGHT
        self.y0 = MARGIN_TOP
        self.y1 = config.height - MARGIN_BOTTOM
        self.x_max = max(n_points, 1) + 1
        lo, hi = min(values), max(values)
        if config.y_scale == "log10":
            self.v_lo = math.floor(math.log10(lo))
            self.v_hi = math.ceil(math.log10(hi))
            if self.v_hi == self.v_lo:
                self.v_hi += 1
        else:
            self.v_lo = 0.0
            self.v_hi = hi * 1.1

    def x(self, index):
        return self.x0 + (self.x1 - self.x0) * index / self.x_max

    def y(self, value):
        v = math.log10(value) if self.cfg.y_scale == "log10" else value
        frac = (v - self.v_lo) / (self.v_hi - self.v_lo)
        return self.y1 - (self.y1 - self.y0) * frac

    def y_ticks(self):
        if self.cfg.y_scale == "log10":
            return [10.0**k for k in range(self.v_lo, self.v_hi + 1)]
        step = self.v_hi / 5
        return [step * i for i in range(6)]

    def x_ticks(self):
        n = self.x_max - 1
        step = 1 if n <= 10 else 5 if n <= 60 else 10 * math.ceil(n / 100)
        ticks = list(range(step, n + 1, step))
        return [1] + [t for t in ticks if t != 1]


def render_chart(points, limits, config=None):
    cfg = config or ChartConfig()
    diffs = [p.diff for p in points]
    if cfg.y_scale == "log10" and any(not d > 0 for d in diffs):
        raise DomainError("log10 y scale requires every successive difference to be positive")
    levels = [("LCL", limits.m_low), ("CL", limits.m_center), ("UCL", limits.m_high)]
    ax = _Axes(cfg, len(points), diffs + [m for _, m in levels])

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{cfg.width}" '
        f'height="{cfg.height}" viewBox="0 0 {cfg.width} {cfg.height}">',
        f'<rect x="0" y="0" width="{cfg.width}" height="{cfg.height}" fill="#ffffff"/>',
        f'<text x="{_f(cfg.width / 2)}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">{escape(cfg.title)}</text>',
    ]

    # axes
    out.append('<g class="axes" stroke="#000000" stroke-width="1">')
    out.append(f'<line x1="{_f(ax.x0)}" y1="{_f(ax.y1)}" x2="{_f(ax.x1)}" y2="{_f(ax.y1)}"/>')
    out.append(f'<line x1="{_f(ax.x0)}" y1="{_f(ax.y0)}" x2="{_f(ax.x0)}" y2="{_f(ax.y1)}"/>')
    out.append("</g>")
    out.append('<g class="ticks" font-family="sans-serif" font-size="11" fill="#000000">')
    for t in ax.x_ticks():
        x = _f(ax.x(t))
        out.append(f'<line x1="{x}" y1="{_f(ax.y1)}" x2="{x}" y2="{_f(ax.y1 + 5)}" stroke="#000000"/>')
        out.append(f'<text x="{x}" y="{_f(ax.y1 + 18)}" text-anchor="middle">{t}</text>')
    for v in ax.y_ticks():
        y = _f(ax.y(v))
        out.append(f'<line x1="{_f(ax.x0 - 5)}" y1="{y}" x2="{_f(ax.x0)}" y2="{y}" stroke="#000000"/>')
        out.append(f'<text x="{_f(ax.x0 - 8)}" y="{y}" text-anchor="end" '
                   f'dominant-baseline="middle">{_f(v)}</text>')
    out.append("</g>")
    y_name = "successive difference of m(t)" + (" (log scale)" if cfg.y_scale == "log10" else "")
    out.append(f'<text x="{_f((ax.x0 + ax.x1) / 2)}" y="{_f(cfg.height - 12)}" text-anchor="middle" '
               'font-family="sans-serif" font-size="12">failure number</text>')
    out.append(f'<text x="16" y="{_f((ax.y0 + ax.y1) / 2)}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12" '
               f'transform="rotate(-90 16 {_f((ax.y0 + ax.y1) / 2)})">{y_name}</text>')

    # limit lines
    for name, level in levels:
        y = _f(ax.y(level))
        dash = "" if name == "CL" else ' stroke-dasharray="6 4"'
        out.append(f'<line class="limit {name.lower()}" x1="{_f(ax.x0)}" y1="{y}" x2="{_f(ax.x1)}" '
                   f'y2="{y}" stroke="#444444" stroke-width="1.5"{dash}/>')
        label = f"{name} {_f(level)}" if cfg.show_labels else name
        out.append(f'<text class="limit-label" x="{_f(ax.x1 + 4)}" y="{y}" '
                   f'dominant-baseline="middle" font-family="sans-serif" font-size="11">{label}</text>')

    if points:
        coords = " ".join(f"{_f(ax.x(p.index))},{_f(ax.y(p.diff))}" for p in points)
        out.append(f'<polyline class="series" points="{coords}" fill="none" stroke="#9ecae1" '
                   'stroke-width="1"/>')
    for p in points:
        x, y = _f(ax.x(p.index)), _f(ax.y(p.diff))
        out.append(f'<circle class="{CSS_CLASS[p.signal]}" data-index="{p.index}" cx="{x}" cy="{y}" '
                   f'r="4" fill="{COLORS[p.signal]}"/>')
        if p.signal is Signal.ALARM:
            out.append(f'<text class="alarm-label" x="{x}" y="{_f(ax.y(p.diff) + 16)}" '
                       'text-anchor="middle" font-family="sans-serif" font-size="11" '
                       f'fill="{COLORS[Signal.ALARM]}">{p.index}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
