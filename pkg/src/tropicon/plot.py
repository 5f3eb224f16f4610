"""
Sampled plot data (CSV) and minimal SVG renderings.

Data outputs keep exact values: zeros and tops are written as ``-inf`` /
``+inf`` markers, never as large finite sentinels.  Only the SVG layer maps
them onto the edge of the drawing, and only the SVG layer applies the
exponential-coordinate transform ``z -> exp(z)``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .convexfn import EpiSet, Hull
from .diffaffine import DiffAffine, classify_1d, evaluate
from .projection import ConvexSet, in_down, in_up, member
from .semifield import MAX_PLUS, Scalar, SemifieldKind, scalar
from .separation import KbarHyperplane, contains
from .vectors import Vector

__all__ = [
    "PlotTarget",
    "PlotSpec",
    "grid",
    "GALLERY",
    "function_graph",
    "hyperplane_region",
    "shadow_upperset",
    "diffaffine_gallery",
    "render",
]


class PlotTarget(enum.Enum):
    FUNCTION_GRAPH = "function-graph"
    HYPERPLANE_REGION_2D = "hyperplane-region-2d"
    SHADOW_UPPERSET_2D = "shadow-upperset-2d"
    DIFFAFFINE_GALLERY = "diffaffine-gallery"


@dataclass(frozen=True)
class PlotSpec:
    target: PlotTarget
    lo: Fraction = Fraction(-4)
    hi: Fraction = Fraction(4)
    resolution: int = 17
    output: str = "csv"
    exp_coords: bool = False

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        if not self.lo < self.hi:
            raise ValueError("plot range must satisfy lo < hi")
        if self.output not in ("csv", "svg"):
            raise ValueError(f"unknown plot output {self.output!r}")


def grid(lo: Fraction, hi: Fraction, resolution: int) -> list[Fraction]:
    step = (hi - lo) / (resolution - 1)
    return [lo + k * step for k in range(resolution)]


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([[str(c) if not isinstance(c, bool) else int(c) for c in r] for r in rows])
    return buf.getvalue()


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- sampled data -------------------------------------------------------------------

def function_graph(f: Callable[[Vector], Scalar], spec: PlotSpec,
                   kind: SemifieldKind = MAX_PLUS) -> list[tuple[Fraction, Scalar]]:
    return [(x, f(Vector([scalar(x, kind)], kind))) for x in grid(spec.lo, spec.hi, spec.resolution)]


def _grid2(spec: PlotSpec, kind: SemifieldKind):
    g = grid(spec.lo, spec.hi, spec.resolution)
    for x1 in g:
        for x2 in g:
            yield x1, x2, Vector([scalar(x1, kind), scalar(x2, kind)], kind)


def hyperplane_region(H: KbarHyperplane, spec: PlotSpec) -> list[tuple[Fraction, Fraction, bool]]:
    """Grid points of the plane with a flag telling whether they lie on H."""
    if H.n != 2:
        raise ValueError("hyperplane-region-2d needs a hyperplane in dimension 2")
    return [(x1, x2, contains(H, x)) for x1, x2, x in _grid2(spec, H.kind)]


def shadow_upperset(C: ConvexSet, spec: PlotSpec) -> list[tuple[Fraction, Fraction, bool, bool, bool]]:
    if C.n != 2:
        raise ValueError("shadow-upperset-2d needs a convex set in dimension 2")
    return [(x1, x2, member(C, x), in_down(C, x), in_up(C, x)) for x1, x2, x in _grid2(spec, C.kind)]


# representative (a, b, c, d) for the four sign cells of (a x + b) - (c x + d)
GALLERY = {
    "identically-bottom": (0, 0, 1, 1),
    "ray-right": (1, 0, 0, 2),
    "plateau": (0, 2, 1, 0),
    "affine": (1, 1, 0, 0),
}


def diffaffine_gallery(spec: PlotSpec, kind: SemifieldKind = MAX_PLUS):
    """Per shape: parameters, closed-form shape and sampled ``(x, u(x))`` rows."""
    blocks = []
    for name, params in GALLERY.items():
        a, b, c, d = (scalar(p, kind) for p in params)
        shape = classify_1d(a, b, c, d)
        u = DiffAffine(Vector([a], kind), b, Vector([c], kind), d)
        rows = [(x, evaluate(u, Vector([scalar(x, kind)], kind)))
                for x in grid(spec.lo, spec.hi, spec.resolution)]
        blocks.append((name, params, shape, rows))
    return blocks


# -- rendering ------------------------------------------------------------------------

_W = _H = 400
_PAD = 20


def _svg_axis(spec: PlotSpec):
    if spec.exp_coords:
        lo, hi = 0.0, math.exp(float(spec.hi))
        to = lambda q: math.exp(float(q))
    else:
        lo, hi = float(spec.lo), float(spec.hi)
        to = float

    def px(q, vertical=False):
        if q == "-inf":
            t = 0.0
        elif q == "+inf":
            t = 1.0
        else:
            t = min(max((to(q) - lo) / (hi - lo), 0.0), 1.0)
        return round(_PAD + t * (_H - 2 * _PAD), 2) if not vertical else round(_H - _PAD - t * (_H - 2 * _PAD), 2)
    return px


def _svg(body: list[str]) -> str:
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">'
    frame = f'<rect x="{_PAD}" y="{_PAD}" width="{_W - 2 * _PAD}" height="{_H - 2 * _PAD}" fill="none" stroke="#888"/>'
    return "\n".join([head, frame, *body, "</svg>"]) + "\n"


def _polyline(points: list[tuple[float, float]], colour: str) -> str:
    pts = " ".join(f"{x},{y}" for x, y in points)
    return f'<polyline points="{pts}" fill="none" stroke="{colour}" stroke-width="2"/>'


def _graph_svg(rows, spec: PlotSpec, colour: str = "#1f77b4") -> list[str]:
    px = _svg_axis(spec)
    out, run = [], []
    for x, fx in rows:
        v = fx.to_user()
        if v == "+inf":
            if len(run) > 1:
                out.append(_polyline(run, colour))
            run = []
            continue
        run.append((px(x), px(v, vertical=True)))
    if len(run) > 1:
        out.append(_polyline(run, colour))
    return out


def _cells_svg(cells, spec: PlotSpec, colour: str) -> list[str]:
    px = _svg_axis(spec)
    return [f'<circle cx="{px(x1)}" cy="{px(x2, vertical=True)}" r="2" fill="{colour}"/>'
            for x1, x2, flag in cells if flag]


def render(spec: PlotSpec, payload=None, kind: SemifieldKind = MAX_PLUS) -> str:
    """CSV or SVG text for ``spec``; ``payload`` is the object being plotted."""
    t = spec.target
    if t is PlotTarget.FUNCTION_GRAPH:
        if not isinstance(payload, (Hull, EpiSet, DiffAffine)):
            raise ValueError("function-graph needs a hull, an epigraph or a difference of affine functions")
        f = (lambda x: evaluate(payload, x)) if isinstance(payload, DiffAffine) else payload
        rows = function_graph(f, spec, kind)
        if spec.output == "svg":
            return _svg(_graph_svg(rows, spec))
        return _csv(["x", "f(x)"], [(_fmt(x), fx) for x, fx in rows])
    if t is PlotTarget.HYPERPLANE_REGION_2D:
        cells = hyperplane_region(payload, spec)
        if spec.output == "svg":
            return _svg(_cells_svg(cells, spec, "#d62728"))
        return _csv(["x1", "x2", "on_hyperplane"], [(_fmt(a), _fmt(b), f) for a, b, f in cells])
    if t is PlotTarget.SHADOW_UPPERSET_2D:
        cells = shadow_upperset(payload, spec)
        if spec.output == "svg":
            body = _cells_svg([(a, b, d) for a, b, _, d, _ in cells], spec, "#aec7e8")
            body += _cells_svg([(a, b, u) for a, b, _, _, u in cells], spec, "#ffbb78")
            body += _cells_svg([(a, b, m) for a, b, m, _, _ in cells], spec, "#2ca02c")
            return _svg(body)
        return _csv(["x1", "x2", "member", "in_down", "in_up"],
                    [(_fmt(a), _fmt(b), m, d, u) for a, b, m, d, u in cells])
    blocks = diffaffine_gallery(spec, kind)
    if spec.output == "svg":
        body = []
        for (_, _, _, rows), colour in zip(blocks, ["#7f7f7f", "#1f77b4", "#2ca02c", "#d62728"]):
            body += _graph_svg(rows, spec, colour)
        return _svg(body)
    parts = []
    for name, (a, b, c, d), shape, rows in blocks:
        head = f"# {name}: a={a} b={b} c={c} d={d} shape={shape.case.value}"
        if shape.threshold is not None:
            head += f" threshold={shape.threshold}"
        parts.append(head + "\n" + _csv(["x", "u(x)"], [(_fmt(x), v) for x, v in rows]))
    return "\n".join(parts)
