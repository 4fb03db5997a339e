"""Independent reference computations used by the tests.

Nothing here goes through the difference body or the slab sweep: packings
are checked by clipping every pair of materialized translates, and areas by
inclusion-exclusion over clipped pieces.
"""
import itertools
import math
from fractions import Fraction

from packcover import polygon


def hull_of_differences(vertices):
    """Brute force ``C - C``: hull of all pairwise vertex differences."""
    diffs = [(a[0] - b[0], a[1] - b[1]) for a in vertices for b in vertices]
    return polygon.convex_hull(diffs)


def materialized_translates(A, reach=3):
    """All polygons ``C + x + B k`` with ``|k_i| <= reach``, tagged by (index, k)."""
    L = A.lattice
    out = []
    for idx, x in enumerate(A.points):
        for k in itertools.product(range(-reach, reach + 1), repeat=2):
            lam = L.from_coords(k)
            shift = (x[0] + lam[0], x[1] + lam[1])
            out.append(((idx, k), polygon.translate(A.body.vertices, shift)))
    return out


def _bbox(P):
    xs = [p[0] for p in P]
    ys = [p[1] for p in P]
    return min(xs), min(ys), max(xs), max(ys)


def _boxes_overlap(a, b):
    return a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]


def brute_force_is_packing(A, reach=3):
    """Packing iff no translate of a point in the fundamental domain overlaps another
    translate with positive area."""
    base = [(tag, P) for tag, P in materialized_translates(A, reach) if not any(tag[1])]
    others = [(tag, P, _bbox(P)) for tag, P in materialized_translates(A, reach)]
    for (ti, P) in base:
        bp = _bbox(P)
        for (tj, Q, bq) in others:
            if ti == tj or not _boxes_overlap(bp, bq):
                continue
            inter = polygon.clip(P, Q)
            if len(inter) >= 3 and polygon.area(inter) > 0:
                return False
    return True


def union_area(pieces):
    """Area of a union of convex polygons by inclusion-exclusion over clipped intersections."""
    pieces = [p for p in pieces if len(p) >= 3 and polygon.area(p) > 0]
    boxes = [_bbox(p) for p in pieces]
    total = 0

    def rec(start, current, depth):
        nonlocal total
        for j in range(start, len(pieces)):
            if current is not None and not _boxes_overlap(_bbox(current), boxes[j]):
                continue
            inter = pieces[j] if current is None else polygon.clip(current, pieces[j])
            if len(inter) < 3:
                continue
            a = polygon.area(inter)
            if a == 0:
                continue
            total += a if depth % 2 == 0 else -a
            rec(j + 1, inter, depth + 1)

    rec(0, None, 0)
    return total


def brute_force_uncovered(A, reach=3):
    """``vol(T)`` minus the union area of all translates clipped to the fundamental domain."""
    L = A.lattice
    domain = [L.from_coords(t) for t in ((0, 0), (1, 0), (1, 1), (0, 1))]
    if polygon.signed_area(domain) < 0:
        domain = domain[::-1]
    pieces = []
    for _, P in materialized_translates(A, reach):
        piece = polygon.clip(P, tuple(domain))
        if len(piece) >= 3:
            pieces.append(piece)
    return L.covolume - union_area(pieces)


def shoelace(points):
    s = 0
    n = len(points)
    for i in range(n):
        s += points[i][0] * points[(i + 1) % n][1] - points[(i + 1) % n][0] * points[i][1]
    return abs(s) / 2


def regular_hexagon(r=1.0):
    return [(r * math.cos(k * math.pi / 3), r * math.sin(k * math.pi / 3)) for k in range(6)]


def F(s):
    return Fraction(s)
