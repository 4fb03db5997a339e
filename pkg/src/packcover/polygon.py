"""Planar polygon primitives shared by the kernel and the torus module.

Every routine is written against the number protocol only, so the same code
runs exactly on :class:`~fractions.Fraction` coordinates and approximately on
floats.  Polygons are tuples of ``(x, y)`` vertices in counterclockwise order.
"""
from __future__ import annotations

from bisect import bisect_left


def cross(o, a, b):
    """Twice the signed area of triangle ``o a b`` (positive for a left turn)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def signed_area(poly):
    s = 0
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s / 2


def area(poly):
    return abs(signed_area(poly))


def perimeter(poly):
    n = len(poly)
    total = 0.0
    for i in range(n):
        dx = float(poly[(i + 1) % n][0] - poly[i][0])
        dy = float(poly[(i + 1) % n][1] - poly[i][1])
        total += (dx * dx + dy * dy) ** 0.5
    return total


def centroid(poly):
    """Area centroid via the triangle-fan formula; vertex mean when degenerate."""
    a2 = 0
    cx = 0
    cy = 0
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        w = x0 * y1 - x1 * y0
        a2 += w
        cx += (x0 + x1) * w
        cy += (y0 + y1) * w
    if a2 == 0:
        return (sum(p[0] for p in poly) / n, sum(p[1] for p in poly) / n)
    return (cx / (3 * a2), cy / (3 * a2))


def convex_hull(points, eps=0):
    """Andrew's monotone chain.  Collinear points are dropped.

    ``eps`` is the turn threshold: a turn counts as left only if the cross
    product exceeds it (use 0 for exact input).  Returns CCW vertices starting
    at the lexicographically smallest point.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return tuple(pts)

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= eps:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return tuple(lower[:-1] + upper[:-1])


def canonical_ccw(poly):
    """Rotate a CCW vertex cycle so it starts at its lexicographic minimum."""
    poly = tuple(poly)
    i = min(range(len(poly)), key=lambda k: poly[k])
    return poly[i:] + poly[:i]


def _lowest_index(poly):
    return min(range(len(poly)), key=lambda k: (poly[k][1], poly[k][0]))


def minkowski_sum(p, q):
    """Minkowski sum of two convex CCW polygons by merging their edge sequences.

    Edges are merged in polar-angle order starting from the bottom-most
    vertices; parallel edges fuse, so the output has no collinear vertices.
    """
    ip, iq = _lowest_index(p), _lowest_index(q)
    p = p[ip:] + p[:ip]
    q = q[iq:] + q[:iq]
    n, m = len(p), len(q)
    out = []
    i = j = 0
    while i < n or j < m:
        out.append((p[i % n][0] + q[j % m][0], p[i % n][1] + q[j % m][1]))
        ep = (p[(i + 1) % n][0] - p[i % n][0], p[(i + 1) % n][1] - p[i % n][1])
        eq = (q[(j + 1) % m][0] - q[j % m][0], q[(j + 1) % m][1] - q[j % m][1])
        if j >= m:
            i += 1
            continue
        if i >= n:
            j += 1
            continue
        c = ep[0] * eq[1] - ep[1] * eq[0]
        if c > 0:
            i += 1
        elif c < 0:
            j += 1
        else:
            i += 1
            j += 1
    return canonical_ccw(_drop_collinear(out))


def _drop_collinear(poly):
    out = list(poly)
    changed = True
    while changed and len(out) > 3:
        changed = False
        for k in range(len(out)):
            if cross(out[k - 1], out[k], out[(k + 1) % len(out)]) == 0:
                del out[k]
                changed = True
                break
    return out


def halfplanes(poly):
    """Outward facet inequalities ``(nx, ny, c)`` meaning ``nx*x + ny*y <= c``."""
    out = []
    n = len(poly)
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        nx, ny = by - ay, ax - bx
        out.append((nx, ny, nx * ax + ny * ay))
    return tuple(out)


def clip(subject, window):
    """Sutherland-Hodgman: intersection of two convex CCW polygons.

    Boundary points are kept, so touching polygons yield a degenerate
    (zero-area) result rather than an empty one.  Returns ``()`` when the
    closed intersection is empty.
    """
    out = list(subject)
    m = len(window)
    for k in range(m):
        if not out:
            break
        a = window[k]
        b = window[(k + 1) % m]
        inp = out
        out = []
        for i in range(len(inp)):
            cur, prv = inp[i], inp[i - 1]
            sc = cross(a, b, cur)
            sp = cross(a, b, prv)
            if sc >= 0:
                if sp < 0 < sc:
                    out.append(_cut(prv, cur, sp, sc))
                out.append(cur)
            elif sp > 0:
                out.append(_cut(prv, cur, sp, sc))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    while len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return tuple(dedup)


def _cut(p, q, sp, sq):
    t = sp / (sp - sq)
    return (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def translate(poly, v):
    return tuple((x + v[0], y + v[1]) for x, y in poly)


class _Chains:
    """Lower and upper boundary of a convex polygon as functions of x."""

    __slots__ = ("xmin", "xmax", "ymin", "ymax", "lower", "upper")

    def __init__(self, poly):
        xs = [p[0] for p in poly]
        ys = [p[1] for p in poly]
        self.xmin, self.xmax = min(xs), max(xs)
        self.ymin, self.ymax = min(ys), max(ys)
        n = len(poly)
        lower, upper = [], []
        for i in range(n):
            a, b = poly[i], poly[(i + 1) % n]
            if a[0] < b[0]:
                lower.append((a, b))
            elif a[0] > b[0]:
                upper.append((b, a))
        lower.sort()
        upper.sort()
        self.lower = lower
        self.upper = upper

    @staticmethod
    def _eval(chain, x):
        for a, b in chain:
            if a[0] <= x <= b[0]:
                return a[1] + (x - a[0]) * (b[1] - a[1]) / (b[0] - a[0])
        raise ValueError("x outside chain")

    def interval(self, x):
        return self._eval(self.lower, x), self._eval(self.upper, x)


def _crossing_x(a, b, c, d):
    """x where segments ``ab`` and ``cd`` (both non-vertical, a.x<b.x, c.x<d.x) cross
    strictly inside their common x-range, else ``None``."""
    x0 = a[0] if a[0] > c[0] else c[0]
    x1 = b[0] if b[0] < d[0] else d[0]
    if not x0 < x1:
        return None
    s1 = (b[1] - a[1]) / (b[0] - a[0])
    s2 = (d[1] - c[1]) / (d[0] - c[0])
    d0 = (a[1] + (x0 - a[0]) * s1) - (c[1] + (x0 - c[0]) * s2)
    d1 = (a[1] + (x1 - a[0]) * s1) - (c[1] + (x1 - c[0]) * s2)
    if (d0 > 0 and d1 < 0) or (d0 < 0 and d1 > 0):
        return x0 + (x1 - x0) * d0 / (d0 - d1)
    return None


def _level_crossing_x(a, b, level):
    if (a[1] - level) * (b[1] - level) < 0:
        return a[0] + (level - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
    return None


class SlabSweep:
    """Union of convex polygons restricted to the unit square ``[0,1]^2``.

    The square is cut into vertical slabs at every vertex abscissa and at
    every abscissa where two boundary edges (or an edge and the lines y=0,
    y=1) cross.  Inside a slab no two boundaries cross, so the covered
    length of a vertical line is an affine function of x and the slab area is
    width times the covered length at the midpoint.  With exact inputs the
    result is exact.
    """

    def __init__(self, polygons, eps=0):
        self.eps = eps
        zero, one = 0, 1
        self.chains = [
            _Chains(p) for p in polygons
            if len(p) >= 3 and not (_max_x(p) <= zero or _min_x(p) >= one
                                    or _max_y(p) <= zero or _min_y(p) >= one)
        ]
        self.events = self._events()

    def _events(self):
        xs = {0, 1}
        edges = []
        for ch in self.chains:
            for seg in ch.lower + ch.upper:
                edges.append(seg)
                for p in seg:
                    if 0 < p[0] < 1:
                        xs.add(p[0])
                for level in (0, 1):
                    x = _level_crossing_x(seg[0], seg[1], level)
                    if x is not None and 0 < x < 1:
                        xs.add(x)
        # candidate pairs by x-overlap, then y-overlap of boxes
        boxes = []
        for a, b in edges:
            ylo = a[1] if a[1] < b[1] else b[1]
            yhi = b[1] if a[1] < b[1] else a[1]
            if b[0] <= 0 or a[0] >= 1 or yhi <= 0 or ylo >= 1:
                continue
            boxes.append((a[0], b[0], ylo, yhi, a, b))
        boxes.sort(key=lambda t: t[0])
        starts = [t[0] for t in boxes]
        for i, (x0, x1, ylo, yhi, a, b) in enumerate(boxes):
            stop = bisect_left(starts, x1, lo=i + 1)
            for j in range(i + 1, stop):
                _, x1b, ylob, yhib, c, d = boxes[j]
                if ylob > yhi or yhib < ylo:
                    continue
                x = _crossing_x(a, b, c, d)
                if x is not None and 0 < x < 1:
                    ycut = a[1] + (x - a[0]) * (b[1] - a[1]) / (b[0] - a[0])
                    if 0 < ycut < 1:
                        xs.add(x)
        return sorted(xs)

    def _intervals(self, x):
        out = []
        for ch in self.chains:
            if ch.xmin < x < ch.xmax:
                lo, hi = ch.interval(x)
                if lo < 0:
                    lo = 0
                if hi > 1:
                    hi = 1
                if lo < hi:
                    out.append((lo, hi, ch))
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def gaps_at(self, x, with_sources=False):
        """Uncovered open sub-intervals of ``{x} x (0, 1)``.

        With ``with_sources`` each gap also names the chains bounding it from
        below and above (``None`` for the square's own edges).
        """
        gaps = []
        reach, below = 0, None
        for lo, hi, ch in self._intervals(x):
            if lo > reach:
                gaps.append((reach, lo, below, ch))
            if hi > reach:
                reach, below = hi, ch
        if reach < 1:
            gaps.append((reach, 1, below, None))
        if with_sources:
            return gaps
        return [(g[0], g[1]) for g in gaps]

    def slabs(self):
        ev = self.events
        for k in range(len(ev) - 1):
            a, b = ev[k], ev[k + 1]
            if b - a > self.eps:
                yield a, b

    def covered_area(self):
        total = 0
        for a, b in self.slabs():
            mid = (a + b) / 2
            covered = 1 - sum(hi - lo for lo, hi in self.gaps_at(mid))
            total += (b - a) * covered
        return total

    def gap_cells(self):
        """Every ``(x0, x1, mid, lo, hi)``: slab walls, slab midpoint and an uncovered
        interval at the midpoint longer than the sweep tolerance."""
        cells = []
        for a, b in self.slabs():
            mid = (a + b) / 2
            for glo, ghi in self.gaps_at(mid):
                if ghi - glo > self.eps:
                    cells.append((a, b, mid, glo, ghi))
        return cells

    def uncovered_trapezoids(self):
        """The uncovered part of the square as a list of quadrilaterals (CCW)."""
        quads = []
        for a, b in self.slabs():
            mid = (a + b) / 2
            for glo, ghi, below, above in self.gaps_at(mid, with_sources=True):
                if ghi - glo <= self.eps:
                    continue

                def bottom(x, ch=below):
                    return 0 if ch is None else max(ch._eval(ch.upper, x), 0)

                def top(x, ch=above):
                    return 1 if ch is None else min(ch._eval(ch.lower, x), 1)

                quads.append(((a, bottom(a)), (b, bottom(b)), (b, top(b)), (a, top(a))))
        return quads


def _min_x(p):
    return min(v[0] for v in p)


def _max_x(p):
    return max(v[0] for v in p)


def _min_y(p):
    return min(v[1] for v in p)


def _max_y(p):
    return max(v[1] for v in p)
