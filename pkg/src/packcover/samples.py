"""Random and named test arrangements.

Packings are built from a polygon sitting inside a box or a hexagon whose
lattice tiles the plane; coverings from a polygon containing a tiling
parallelogram.  Rescaling the lattice then moves the density to a target
while keeping the packing (or covering) property.  All coordinates are
rationals with small denominators.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ._numeric import RATIONAL, simplest_between
from .convex import ConvexBody, DegenerateBodyError, centroid, difference_body, homothet
from .torus import Arrangement, Lattice, is_packing, uncovered_volume

GRID = 1000


def _q(x, grid=GRID):
    return Fraction(round(float(x) * grid), grid)


def unit_square(arithmetic=RATIONAL):
    h = Fraction(1, 2) if arithmetic == RATIONAL else 0.5
    return ConvexBody([(-h, -h), (h, -h), (h, h), (-h, h)], arithmetic=arithmetic)


def triangle(arithmetic=RATIONAL):
    """The triangle (0,0), (1,0), (0,1), not recentred."""
    return ConvexBody([(0, 0), (1, 0), (0, 1)], arithmetic=arithmetic)


def recentred(C):
    """``C`` translated so that its centroid is the origin."""
    g = centroid(C)
    return homothet(C, 1, tuple(-c for c in g))


def square_lattice(side, arithmetic=RATIONAL):
    return Lattice([[side, 0], [0, side]], arithmetic)


def random_convex_polygon(rng, n_vertices=None, symmetric=False, grid=GRID):
    """Random convex polygon with 3-12 vertices, recentred at its centroid.

    Vertices are drawn on a random ellipse with jittered angles and rounded
    to a ``1/grid`` lattice.
    """
    for _ in range(100):
        n = int(rng.integers(3, 13)) if n_vertices is None else n_vertices
        if symmetric:
            n = max(2, n // 2)
        ang = np.sort(rng.uniform(0, 2 * math.pi if not symmetric else math.pi, n))
        ax, ay = rng.uniform(0.4, 1.0, 2)
        rot = rng.uniform(0, math.pi)
        pts = []
        for t in ang:
            x, y = ax * math.cos(t), ay * math.sin(t)
            xr = x * math.cos(rot) - y * math.sin(rot)
            yr = x * math.sin(rot) + y * math.cos(rot)
            pts.append((_q(xr, grid), _q(yr, grid)))
        if symmetric:
            pts += [(-x, -y) for x, y in pts]
        try:
            C = ConvexBody(pts)
        except DegenerateBodyError:
            continue
        want = 2 * n if symmetric else n
        if len(C.vertices) != want:
            continue
        return C if symmetric else recentred(C)
    raise RuntimeError("could not draw a polygon")


def _box_cut_polygon(rng, grid=GRID):
    """Box with random corner cuts; nearly fills its bounding box."""
    w, h = (_q(v, grid) for v in rng.uniform(0.6, 1.4, 2))
    pts = []
    corners = [(0, 0), (w, 0), (w, h), (0, h)]
    for k, (cx, cy) in enumerate(corners):
        depth = rng.uniform(0, 0.35)
        if rng.uniform() < 0.3 or depth < 0.02:
            pts.append((cx, cy))
            continue
        nx = corners[(k + 1) % 4]
        pv = corners[k - 1]
        a = _q(depth * rng.uniform(0.3, 1.0), grid)
        b = _q(depth * rng.uniform(0.3, 1.0), grid)
        for (ox, oy), t in ((pv, a), (nx, b)):
            L = max(abs(ox - cx), abs(oy - cy))
            pts.append((cx + (ox - cx) * t / L, cy + (oy - cy) * t / L))
    return ConvexBody(pts)


def _shear_row_lattice(C, rng):
    (x0, y0), (x1, y1) = C.bbox()
    w, h = x1 - x0, y1 - y0
    t = _q(rng.uniform(0, 1) * float(w))
    return Lattice([[w, t], [0, h]])


def _hexagon_lattice(C):
    """Lattice tiling ``(C - C)/2`` when that body is a hexagon (e.g. C a triangle)."""
    D = difference_body(C)
    if len(D.vertices) != 6:
        return None
    h = [tuple(c / 2 for c in v) for v in D.vertices]
    g1 = (h[0][0] + h[1][0], h[0][1] + h[1][1])
    g2 = (h[1][0] + h[2][0], h[1][1] + h[2][1])
    return Lattice.from_generators([g1, g2])


def _scale_factor(ratio, lower=True):
    """Simple rational close to ``sqrt(ratio)``, rounded toward 1 from the safe side."""
    s = math.sqrt(ratio)
    if lower:
        return simplest_between(Fraction(s).limit_denominator(10**4), Fraction(s * (1 + 2e-3)))
    return simplest_between(Fraction(s * (1 - 2e-3)), Fraction(s).limit_denominator(10**4))


def random_packing(rng, density_range=(0.55, 0.999), jitter=True):
    """A random periodic packing with density inside ``density_range``.

    Polygons are recentred at the centroid; the point set has 1 to 4 points.
    """
    lo_d, hi_d = density_range
    for _ in range(200):
        kind = rng.integers(0, 4)
        if kind == 0:
            C = recentred(_box_cut_polygon(rng))
        elif kind == 1:
            C = random_convex_polygon(rng, symmetric=True)
        else:
            C = random_convex_polygon(rng)
        candidates = [_shear_row_lattice(C, rng)]
        hexl = _hexagon_lattice(C)
        if hexl is not None:
            candidates.append(hexl)
        L = max(candidates, key=lambda lat: C.volume / lat.covolume)
        rho0 = float(C.volume / L.covolume)
        if rho0 < lo_d:
            continue
        target = rng.uniform(lo_d, min(rho0, hi_d))
        s = _scale_factor(rho0 / target)
        if s < 1:
            s = Fraction(1)
        L = L.scaled(s)
        pts = [(Fraction(0), Fraction(0))]
        if jitter and rng.uniform() < 0.4:
            from .torus import expand_points
            base = L
            L = L.scaled(2)
            pts = expand_points(pts, base, 2)
            slack = float(s - 1) * 0.5
            moved = []
            for p in pts:
                v = rng.uniform(-slack, slack, 2) * 0.5
                moved.append((p[0] + _q(v[0]), p[1] + _q(v[1])))
            A = Arrangement(C, L, moved)
            if is_packing(A)[0]:
                pts = moved
        A = Arrangement(C, L, pts)
        if not lo_d <= float(A.density()) <= hi_d or not is_packing(A)[0]:
            continue
        return A
    raise RuntimeError("could not draw a packing")


def _bulged_polygon(rng, symmetric, grid=GRID):
    """Polygon containing the parallelogram spanned by two random vectors."""
    for _ in range(100):
        g1 = (_q(rng.uniform(0.5, 1.2), grid), _q(rng.uniform(-0.3, 0.3), grid))
        g2 = (_q(rng.uniform(-0.4, 0.4), grid), _q(rng.uniform(0.5, 1.2), grid))
        half = Fraction(1, 2)
        corners = [(-half * g1[0] - half * g2[0], -half * g1[1] - half * g2[1]),
                   (half * g1[0] - half * g2[0], half * g1[1] - half * g2[1]),
                   (half * g1[0] + half * g2[0], half * g1[1] + half * g2[1]),
                   (-half * g1[0] + half * g2[0], -half * g1[1] + half * g2[1])]
        pts = list(corners)
        n_edges = 2 if symmetric else 4
        for k in range(n_edges):
            if rng.uniform() < 0.25:
                continue
            a, b = corners[k], corners[(k + 1) % 4]
            ex, ey = b[0] - a[0], b[1] - a[1]
            nx, ny = ey, -ex
            for _ in range(int(rng.integers(1, 3))):
                t = rng.uniform(0.1, 0.9)
                hgt = rng.uniform(0.01, 0.35)
                px = float(a[0]) + t * float(ex) + hgt * float(nx)
                py = float(a[1]) + t * float(ey) + hgt * float(ny)
                p = (_q(px, grid), _q(py, grid))
                pts.append(p)
                if symmetric:
                    pts.append((-p[0], -p[1]))
        try:
            C = ConvexBody(pts)
        except DegenerateBodyError:
            continue
        if len(C.vertices) < 4:
            continue
        return C, Lattice.from_generators([g1, g2])
    raise RuntimeError("could not draw a covering body")


def random_covering(rng, density_range=(1.001, 1.9), extra_point=True):
    """A random periodic covering with density inside ``density_range``."""
    lo_d, hi_d = density_range
    for _ in range(200):
        sym = rng.uniform() < 0.3
        C, L = _bulged_polygon(rng, sym)
        if not sym and rng.uniform() < 0.5:
            g = centroid(C)
            shift = tuple(simplest_between(c - Fraction(1, 50), c + Fraction(1, 50)) for c in g)
            C2 = homothet(C, 1, tuple(-c for c in shift))
            if C2.contains_origin_interior():
                C = C2
        rho0 = float(C.volume / L.covolume)
        if rho0 > hi_d:
            continue
        target = rng.uniform(max(lo_d, rho0), hi_d)
        s = _scale_factor(rho0 / target, lower=False)
        if s > 1:
            s = Fraction(1)
        L = L.scaled(s)
        pts = [(Fraction(0), Fraction(0))]
        if extra_point and rng.uniform() < 0.3:
            pts.append(tuple(_q(v) for v in L.from_coords(tuple(rng.uniform(0, 1, 2)))))
        try:
            A = Arrangement(C, L, pts)
        except ValueError:
            continue
        if not lo_d <= float(A.density()) <= hi_d:
            continue
        if not uncovered_volume(A, witness=False).is_covering:
            continue
        return A
    raise RuntimeError("could not draw a covering")


def random_small_arrangement(rng, max_points=3):
    """Unconstrained small arrangement (may or may not pack) for oracle comparisons."""
    C = random_convex_polygon(rng)
    g1 = (_q(rng.uniform(0.5, 2.0)), _q(rng.uniform(-0.6, 0.6)))
    g2 = (_q(rng.uniform(-0.6, 0.6)), _q(rng.uniform(0.5, 2.0)))
    if abs(float(g1[0] * g2[1] - g1[1] * g2[0])) < 0.2:
        g2 = (g2[0], g2[1] + 1)
    L = Lattice.from_generators([g1, g2])
    n = int(rng.integers(1, max_points + 1))
    pts = []
    for _ in range(n):
        t = rng.uniform(0, 1, 2)
        pts.append(tuple(_q(v) for v in L.from_coords(tuple(t))))
    try:
        return Arrangement(C, L, pts)
    except ValueError:
        return Arrangement(C, L, pts[:1])
