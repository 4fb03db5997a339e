"""Convex polytopes in dimension 2 and 3.

A :class:`ConvexBody` is stored by its vertices (V-representation) together
with the facet inequalities derived from them.  In rational mode every
predicate below is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import polygon
from ._numeric import (
    FLOAT,
    RATIONAL,
    TAU_PT,
    TAU_VOL,
    ArithmeticModeError,
    check_mode,
    parse_number,
    parse_point,
)

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTERIOR = "exterior"


class GeometryError(RuntimeError):
    """An internal geometric postcondition failed (a kernel bug, not bad input)."""


class DegenerateBodyError(ValueError):
    """The input does not span a body with nonempty interior."""


class DegenerateHomothetyError(ValueError):
    pass


class ConvexBody:
    """A convex polytope with nonempty interior.

    Parameters
    ----------
    vertices : sequence of points
        Any finite point set; its convex hull is taken, so interior or
        collinear points are discarded.  In the plane the stored vertices are
        counterclockwise, starting at the lexicographically smallest one.
    symmetric : bool or None
        Declared central symmetry about the origin.  ``None`` detects it;
        ``True`` is verified and rejected if false.
    arithmetic : {"rational", "float"}
    """

    __slots__ = ("vertices", "d", "symmetric", "arithmetic", "facets", "_triangles",
                 "_volume", "_centroid", "_norms")

    def __init__(self, vertices, symmetric=None, arithmetic=RATIONAL):
        self.arithmetic = check_mode(arithmetic)
        pts = [parse_point(v, arithmetic) for v in vertices]
        if not pts:
            raise DegenerateBodyError("no vertices")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise DegenerateBodyError("vertices of mixed dimension")
        if d not in (2, 3):
            raise DegenerateBodyError(f"geometry is implemented for d=2 and d=3, got d={d}")
        self.d = d
        self._triangles = None
        if d == 2:
            self._init_planar(pts)
        else:
            self._init_spatial(pts)
        if self.arithmetic == FLOAT:
            self._norms = tuple(math.sqrt(sum(float(c) ** 2 for c in n)) for n, _ in self.facets)
        else:
            self._norms = None
        self._centroid = None
        detected = _is_origin_symmetric(self.vertices, self.arithmetic)
        if symmetric is None:
            symmetric = detected
        elif symmetric and not detected:
            raise ValueError("body declared centrally symmetric but -C != C")
        self.symmetric = bool(symmetric)

    def _init_planar(self, pts):
        eps = 0 if self.arithmetic == RATIONAL else 1e-14 * _scale(pts) ** 2
        hull = polygon.convex_hull(pts, eps=eps)
        if len(hull) < 3:
            raise DegenerateBodyError("points are collinear; the body has empty interior")
        vol = polygon.signed_area(hull)
        if vol <= 0 or (self.arithmetic == FLOAT and vol <= TAU_VOL * _scale(pts) ** 2):
            raise DegenerateBodyError("zero area")
        self.vertices = hull
        self._volume = vol
        self.facets = tuple(((nx, ny), c) for nx, ny, c in polygon.halfplanes(hull))

    def _init_spatial(self, pts):
        from scipy.spatial import ConvexHull, QhullError

        uniq = sorted(set(pts))
        try:
            hull = ConvexHull([[float(c) for c in p] for p in uniq])
        except (QhullError, ValueError) as exc:
            raise DegenerateBodyError(f"points do not span a 3-dimensional body: {exc}") from None
        idx = sorted(set(int(i) for i in hull.vertices))
        remap = {old: new for new, old in enumerate(idx)}
        verts = tuple(uniq[i] for i in idx)
        inner = tuple(sum(v[k] for v in verts) / len(verts) for k in range(3))
        tris = []
        facets = {}
        for simplex in hull.simplices:
            a, b, c = (verts[remap[int(i)]] for i in simplex)
            n = _cross3(_sub(b, a), _sub(c, a))
            off = _dot(n, a)
            if _dot(n, inner) > off:
                n = tuple(-x for x in n)
                off = -off
                a, b, c = a, c, b
            tris.append((a, b, c))
            key = _facet_key(n, off, self.arithmetic)
            facets.setdefault(key, (n, off))
        vol = sum(_det3(_sub(a, inner), _sub(b, inner), _sub(c, inner)) for a, b, c in tris) / 6
        if vol <= 0:
            raise DegenerateBodyError("zero volume")
        self.vertices = verts
        self._triangles = tuple(tris)
        self._volume = vol
        self.facets = tuple(facets.values())

    # -- basic queries -------------------------------------------------------

    @property
    def volume(self):
        return self._volume

    def __repr__(self):
        return f"ConvexBody(d={self.d}, n_vertices={len(self.vertices)}, {self.arithmetic})"

    def __eq__(self, other):
        if not isinstance(other, ConvexBody):
            return NotImplemented
        return (self.arithmetic == other.arithmetic and self.d == other.d
                and sorted(self.vertices) == sorted(other.vertices))

    def __hash__(self):
        return hash((self.d, tuple(sorted(self.vertices))))

    def circumradius(self):
        """Radius of the smallest origin-centred ball containing the body (float)."""
        return max(math.sqrt(sum(float(c) ** 2 for c in v)) for v in self.vertices)

    def perimeter(self):
        if self.d != 2:
            raise ValueError("perimeter is defined for planar bodies")
        return polygon.perimeter(self.vertices)

    def bbox(self):
        lo = tuple(min(v[k] for v in self.vertices) for k in range(self.d))
        hi = tuple(max(v[k] for v in self.vertices) for k in range(self.d))
        return lo, hi

    def slack(self, p):
        """Largest facet violation ``max(n.p - c)`` (scaled to distance in float mode)."""
        if self.arithmetic == RATIONAL:
            return max(_dot(n, p) - c for n, c in self.facets)
        return max((_dot(n, p) - c) / w for (n, c), w in zip(self.facets, self._norms))

    def contains_origin_interior(self):
        return classify_point(self, (0,) * self.d) == INTERIOR

    def as_mode(self, arithmetic):
        """This body converted to another arithmetic mode."""
        if arithmetic == self.arithmetic:
            return self
        return ConvexBody(self.vertices, symmetric=self.symmetric if arithmetic == FLOAT else None,
                          arithmetic=arithmetic)

    def _from_vertices(self, verts, symmetric=None):
        """Fast constructor for vertex lists known to be in convex position."""
        body = object.__new__(ConvexBody)
        body.arithmetic = self.arithmetic
        body.d = self.d
        body._centroid = None
        if self.d == 2:
            verts = polygon.canonical_ccw(verts)
            body.vertices = verts
            body._volume = polygon.signed_area(verts)
            body.facets = tuple(((nx, ny), c) for nx, ny, c in polygon.halfplanes(verts))
            body._triangles = None
        else:
            return ConvexBody(verts, symmetric=symmetric, arithmetic=self.arithmetic)
        body._norms = (tuple(math.sqrt(sum(float(c) ** 2 for c in n)) for n, _ in body.facets)
                       if body.arithmetic == FLOAT else None)
        body.symmetric = (_is_origin_symmetric(verts, body.arithmetic)
                          if symmetric is None else symmetric)
        return body


@dataclass(frozen=True)
class Homothet:
    """The set ``coefficient * base + translation``, materialized on demand."""

    base: ConvexBody
    coefficient: object
    translation: tuple

    @property
    def vertices(self):
        lam, x = self.coefficient, self.translation
        return tuple(tuple(lam * c + t for c, t in zip(v, x)) for v in self.base.vertices)

    def materialize(self):
        return homothet(self.base, self.coefficient, self.translation)


def _scale(pts):
    return max(max(abs(float(c)) for c in p) for p in pts) or 1.0


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _det3(a, b, c):
    return _dot(a, _cross3(b, c))


def _facet_key(n, off, mode):
    if mode == RATIONAL:
        lead = next(x for x in n if x != 0)
        s = abs(lead)
        return tuple(x / s for x in n) + (off / s,)
    s = math.sqrt(sum(float(x) ** 2 for x in n))
    return tuple(round(float(x) / s, 9) for x in n) + (round(float(off) / s, 9),)


def _is_origin_symmetric(verts, mode):
    if mode == RATIONAL:
        return set(verts) == {tuple(-c for c in v) for v in verts}
    for v in verts:
        neg = tuple(-c for c in v)
        if min(max(abs(a - b) for a, b in zip(neg, w)) for w in verts) > TAU_PT:
            return False
    return True


def _same_mode(*bodies):
    modes = {b.arithmetic for b in bodies}
    if len(modes) > 1:
        raise ArithmeticModeError("rational and float bodies cannot be combined")


# -- operations -----------------------------------------------------------------


def volume(C):
    return C.volume


def homothet(C, lam, x=None):
    """The body ``lam * C + x``.

    A negative coefficient is a half-turn in the plane, so orientation is
    kept; the vertex list is re-based to start at the lowest vertex.
    """
    lam = parse_number(lam, C.arithmetic)
    if lam == 0:
        raise DegenerateHomothetyError("homothety coefficient must be nonzero")
    x = (0,) * C.d if x is None else parse_point(x, C.arithmetic)
    if len(x) != C.d:
        raise ValueError("translation has the wrong dimension")
    verts = [tuple(lam * c + t for c, t in zip(v, x)) for v in C.vertices]
    sym = None
    if C.symmetric and all(t == 0 for t in x):
        sym = True
    if C.d == 2:
        return C._from_vertices(tuple(verts), symmetric=sym)
    return ConvexBody(verts, symmetric=sym, arithmetic=C.arithmetic)


def translate(C, x):
    return homothet(C, 1, x)


def classify_point(C, p):
    """``"interior"``, ``"boundary"`` or ``"exterior"``.

    Exact in rational mode; in float mode points within ``TAU_PT`` of the
    boundary count as boundary.
    """
    p = parse_point(p, C.arithmetic)
    if len(p) != C.d:
        raise ValueError("point has the wrong dimension")
    s = C.slack(p)
    if C.arithmetic == RATIONAL:
        return INTERIOR if s < 0 else BOUNDARY if s == 0 else EXTERIOR
    return INTERIOR if s < -TAU_PT else BOUNDARY if s <= TAU_PT else EXTERIOR


def contains_point(C, p, closed=True):
    cls = classify_point(C, p)
    return cls == INTERIOR or (closed and cls == BOUNDARY)


def contains_body(A, B):
    """Whether ``B`` is a subset of ``A``; vertex checks suffice by convexity."""
    _same_mode(A, B)
    if A.d != B.d:
        raise ValueError("bodies of different dimension")
    return all(classify_point(A, v) != EXTERIOR for v in B.vertices)


def difference_body(C):
    """The centrally symmetric body ``C - C``.

    In the plane this merges the edge sequences of ``C`` and ``-C``; in space
    it is the hull of all pairwise vertex differences.
    """
    if C.d == 2:
        neg = tuple((-x, -y) for x, y in C.vertices)
        neg = polygon.canonical_ccw(neg)
        verts = polygon.minkowski_sum(C.vertices, neg)
        if C.arithmetic == FLOAT:
            return ConvexBody(verts, symmetric=True, arithmetic=FLOAT)
        return C._from_vertices(verts, symmetric=True)
    diffs = {_sub(v, w) for v in C.vertices for w in C.vertices}
    return ConvexBody(diffs, symmetric=True if C.arithmetic == RATIONAL else None,
                      arithmetic=C.arithmetic)


def centroid(C):
    """Volume centroid: the point whose chords are split in ratio at most ``d``."""
    if C._centroid is None:
        if C.d == 2:
            C._centroid = polygon.centroid(C.vertices)
        else:
            inner = tuple(sum(v[k] for v in C.vertices) / len(C.vertices) for k in range(3))
            acc = [0, 0, 0]
            total = 0
            for a, b, c in C._triangles:
                w = _det3(_sub(a, inner), _sub(b, inner), _sub(c, inner))
                total += w
                for k in range(3):
                    acc[k] += w * (inner[k] + a[k] + b[k] + c[k])
            C._centroid = tuple(acc[k] / (4 * total) for k in range(3))
    return C._centroid


def radon_vector(C):
    """A vector ``v`` with ``-(1/d) C + v`` contained in ``C``.

    Uses ``v = (1 + 1/d) * centroid``; the containment is checked before
    returning and a failure raises :class:`GeometryError`.
    """
    d = C.d
    g = centroid(C)
    k = Fraction(d + 1, d) if C.arithmetic == RATIONAL else (d + 1) / d
    v = tuple(k * c for c in g)
    inv = Fraction(-1, d) if C.arithmetic == RATIONAL else -1.0 / d
    if not contains_body(C, homothet(C, inv, v)):
        raise GeometryError("-(1/d)C + v escapes C; the centroid computation is broken")
    return v


def diff_ratio_W(C):
    """``(vol(C - C) / vol(C)) ** (1/d)``; equals 2 exactly for symmetric bodies."""
    ratio = difference_body(C).volume / C.volume
    return float(ratio) ** (1.0 / C.d)


def is_centrally_symmetric(C):
    """Symmetry about some centre (not necessarily the origin)."""
    g = centroid(C)
    shifted = homothet(C, 1, tuple(-c for c in g))
    return _is_origin_symmetric(shifted.vertices, C.arithmetic)


def volume_close(a, b):
    """Equality of volumes, exact for rationals and relative ``TAU_VOL`` for floats."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    scale = max(abs(float(a)), abs(float(b)), 1.0)
    return abs(float(a) - float(b)) <= TAU_VOL * scale
