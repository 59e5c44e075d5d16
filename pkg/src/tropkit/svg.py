"""Static SVG diagrams of plane polygons and plane fans.

Output is a pure function of the input, so identical objects give identical
bytes.  Coordinates are formatted with fixed precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError
from .fan import Fan, WeightedFan
from .polytope import LatticePolytope, _ccw_hull_2d

SIZE = 320
MARGIN = 30


def _fmt(x) -> str:
    return f"{float(x):.3f}"


def _header(title):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]


def _polygon_svg(P: LatticePolytope) -> str:
    verts = [tuple(Fraction(x) for x in v) for v in P.vertices]
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    lo_x, hi_x = math.floor(min(xs)), math.ceil(max(xs))
    lo_y, hi_y = math.floor(min(ys)), math.ceil(max(ys))
    span = max(hi_x - lo_x, hi_y - lo_y, 1)
    unit = Fraction(SIZE - 2 * MARGIN, span)

    def to_px(x, y):
        return MARGIN + (x - lo_x) * unit, SIZE - MARGIN - (y - lo_y) * unit

    out = _header("polygon")
    for gx in range(lo_x, hi_x + 1):
        for gy in range(lo_y, hi_y + 1):
            px, py = to_px(gx, gy)
            out.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="2" fill="#999"/>')
    ring = _ccw_hull_2d(verts) if P.dim == 2 else sorted(verts)
    pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in (to_px(*v) for v in ring))
    out.append(f'<polygon points="{pts}" fill="#cde" stroke="black" stroke-width="2"/>')
    for v in ring:
        px, py = to_px(*v)
        out.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _fan_svg(f) -> str:
    weights = f.weights if isinstance(f, WeightedFan) else {}
    fan = f.fan if isinstance(f, WeightedFan) else f
    c = Fraction(SIZE, 2)
    reach = Fraction(SIZE, 2) - MARGIN

    def tip(r):
        norm = math.hypot(*r)
        return c + reach * Fraction(r[0]) / Fraction(norm), c - reach * Fraction(r[1]) / Fraction(norm)

    out = _header("fan")
    out.append(f'<circle cx="{_fmt(c)}" cy="{_fmt(c)}" r="3" fill="black"/>')
    cones = fan.sorted_cones()
    for k in cones:
        if k.dim == 2:
            a, b = (tip(r) for r in k.rays)
            out.append(
                f'<polygon points="{_fmt(c)},{_fmt(c)} {_fmt(a[0])},{_fmt(a[1])} '
                f'{_fmt(b[0])},{_fmt(b[1])}" fill="#cde" stroke="none"/>'
            )
    for k in cones:
        if k.dim == 1:
            x, y = tip(k.rays[0])
            out.append(
                f'<line x1="{_fmt(c)}" y1="{_fmt(c)}" x2="{_fmt(x)}" y2="{_fmt(y)}" '
                'stroke="black" stroke-width="2"/>'
            )
            w = weights.get(k)
            if w is not None and w != 1:
                out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="14">{w}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def svg_text(obj) -> str:
    if isinstance(obj, LatticePolytope):
        if obj.ambient_dim != 2:
            raise DomainError("SVG output is only available in the plane")
        return _polygon_svg(obj)
    if isinstance(obj, (Fan, WeightedFan)):
        if obj.ambient_dim != 2:
            raise DomainError("SVG output is only available in the plane")
        return _fan_svg(obj)
    raise DomainError(f"cannot draw a {type(obj).__name__}")


def render_svg(obj, path) -> None:
    """Write the diagram of a plane polygon or fan to ``path``."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg_text(obj))
