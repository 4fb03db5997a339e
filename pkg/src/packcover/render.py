"""SVG pictures of planar periodic arrangements.

The fundamental domain is drawn with every translate clipped to it and the
uncovered part shaded.  Output is a pure function of the input: elements are
emitted in a fixed order with fixed precision.
"""
from __future__ import annotations

from . import polygon
from ._numeric import format_number
from .torus import _sweep, _translates_in_coords, uncovered_volume

UNIT_SQUARE = ((0, 0), (1, 0), (1, 1), (0, 1))


def _fmt(x, precision):
    s = f"{float(x):.{precision}f}"
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _path(points, precision):
    return " ".join(f"{_fmt(x, precision)},{_fmt(y, precision)}" for x, y in points)


def render_svg(A, trace=None, width=480, precision=6):
    """SVG text for the planar arrangement ``A``.

    ``trace`` (a :class:`~packcover.greedy.GreedyTrace` or parsed trace
    dict) adds witness crosses and highlights inserted points.
    """
    if A.d != 2:
        raise ValueError("only planar arrangements can be rendered")
    L = A.lattice
    flip = L.det < 0
    domain = [L.from_coords(t) for t in UNIT_SQUARE]
    xs = [float(p[0]) for p in domain]
    ys = [float(p[1]) for p in domain]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0)
    pad = 0.05 * span
    vb = (x0 - pad, -(y1 + pad), (x1 - x0) + 2 * pad, (y1 - y0) + 2 * pad)
    height = round(width * vb[3] / vb[2])
    stroke = _fmt(span / 400, precision)
    r_pt = _fmt(span / 120, precision)

    rep = uncovered_volume(A, witness=False)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{" ".join(_fmt(v, precision) for v in vb)}">',
        f'<metadata>points={len(A.points)} density={format_number(A.density())} '
        f'uncovered_area={format_number(rep.uncovered_volume)}</metadata>',
        '<g transform="scale(1,-1)">',
        f'<polygon class="domain" points="{_path(domain, precision)}" fill="white" '
        f'stroke="black" stroke-width="{stroke}"/>',
    ]
    for _, verts in _translates_in_coords(A):
        poly = tuple(verts[::-1]) if flip else tuple(verts)
        piece = polygon.clip(poly, UNIT_SQUARE)
        if len(piece) < 3 or polygon.area(piece) == 0:
            continue
        world = [L.from_coords(p) for p in piece]
        out.append(f'<polygon class="translate" points="{_path(world, precision)}" '
                   f'fill="#9ecae1" fill-opacity="0.6" stroke="#3182bd" stroke-width="{stroke}"/>')
    if not rep.is_covering:
        for world in uncovered_polygons(A):
            out.append(f'<polygon class="uncovered" points="{_path(world, precision)}" '
                       f'fill="#e34a33" stroke="none"/>')
    inserted = set()
    witnesses = []
    if trace is not None:
        steps = trace["steps"] if isinstance(trace, dict) else trace.steps
        direction = trace.get("direction") if isinstance(trace, dict) else trace.direction
        for s in steps:
            y = s["y"] if isinstance(s, dict) else s.y
            pt = s["point"] if isinstance(s, dict) else s.point
            witnesses.append(y)
            if direction != "cover-to-pack":
                inserted.add(tuple(float(c) for c in pt))
    for p in A.points:
        cls, fill = ("inserted", "#31a354") if tuple(float(c) for c in p) in inserted else ("point", "black")
        out.append(f'<circle class="{cls}" cx="{_fmt(p[0], precision)}" cy="{_fmt(p[1], precision)}" '
                   f'r="{r_pt}" fill="{fill}"/>')
    for y in witnesses:
        a = span / 80
        yx, yy = float(y[0]), float(y[1])
        out.append(f'<path class="witness" d="M{_fmt(yx - a, precision)},{_fmt(yy - a, precision)} '
                   f'L{_fmt(yx + a, precision)},{_fmt(yy + a, precision)} '
                   f'M{_fmt(yx - a, precision)},{_fmt(yy + a, precision)} '
                   f'L{_fmt(yx + a, precision)},{_fmt(yy - a, precision)}" '
                   f'stroke="#756bb1" stroke-width="{stroke}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def uncovered_polygons(A):
    """World-coordinate quadrilaterals whose union is the uncovered region."""
    sweep = _sweep(A)
    conv = sweep.from_fast or (lambda v: v)
    return [tuple(A.lattice.from_coords((conv(u), conv(v))) for u, v in q)
            for q in sweep.uncovered_trapezoids()]
