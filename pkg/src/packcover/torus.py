"""Periodic arrangements ``C + L + X`` viewed on the flat torus ``R^d / L``.

Points of the torus are represented by their unique preimage in the
half-open fundamental parallelepiped ``{B t : t in [0, 1)^d}``.  Coverage
questions are answered either exactly (planar case, by a slab sweep in
lattice coordinates) or approximately on a regular grid.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

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
    simplest_between,
)
from .convex import (
    EXTERIOR,
    INTERIOR,
    ConvexBody,
    GeometryError,
    classify_point,
    difference_body,
    homothet,
)

EXACT2D = "exact2d"
GRID = "grid"

#: default cap on the lattice refinement factor
REFINE_CAP = 64

# float lattice coordinates this close to an integer are snapped onto it
_SNAP = 1e-12


class ParameterError(ValueError):
    pass


class Lattice:
    """A full-rank lattice given by a ``d x d`` basis matrix whose columns generate it."""

    __slots__ = ("matrix", "d", "arithmetic", "det", "inverse")

    def __init__(self, matrix, arithmetic=RATIONAL):
        self.arithmetic = check_mode(arithmetic)
        rows = tuple(parse_point(r, arithmetic) for r in matrix)
        d = len(rows)
        if d not in (2, 3) or any(len(r) != d for r in rows):
            raise ValueError("lattice basis must be a square 2x2 or 3x3 matrix")
        self.matrix = rows
        self.d = d
        self.det = _det(rows)
        if self.det == 0 or (arithmetic == FLOAT and abs(self.det) < 1e-300):
            raise ValueError("lattice basis is singular")
        self.inverse = _inverse(rows, self.det)

    @classmethod
    def from_generators(cls, generators, arithmetic=RATIONAL):
        gens = [tuple(g) for g in generators]
        return cls([tuple(g[r] for g in gens) for r in range(len(gens))], arithmetic)

    @property
    def generators(self):
        return tuple(tuple(self.matrix[r][c] for r in range(self.d)) for c in range(self.d))

    @property
    def covolume(self):
        """Volume of the torus, ``|det B|``."""
        return abs(self.det)

    def to_coords(self, p):
        return tuple(sum(self.inverse[r][c] * p[c] for c in range(self.d)) for r in range(self.d))

    def from_coords(self, t):
        return tuple(sum(self.matrix[r][c] * t[c] for c in range(self.d)) for r in range(self.d))

    def scaled(self, m):
        m = parse_number(m, self.arithmetic)
        return Lattice([[m * x for x in row] for row in self.matrix], self.arithmetic)

    def diameter(self):
        """Diameter of the fundamental parallelepiped (float)."""
        best = 0.0
        gens = [[float(c) for c in g] for g in self.generators]
        for signs in itertools.product((-1, 0, 1), repeat=self.d):
            v = [sum(s * g[k] for s, g in zip(signs, gens)) for k in range(self.d)]
            best = max(best, math.sqrt(sum(c * c for c in v)))
        return best

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"Lattice({[list(map(str, r)) for r in self.matrix]}, {self.arithmetic})"


def _det(m):
    if len(m) == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _inverse(m, det):
    if len(m) == 2:
        (a, b), (c, d) = m
        return ((d / det, -b / det), (-c / det, a / det))
    cof = [[None] * 3 for _ in range(3)]
    for r in range(3):
        for c in range(3):
            minor = [[m[i][j] for j in range(3) if j != c] for i in range(3) if i != r]
            cof[r][c] = (-1) ** (r + c) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    return tuple(tuple(cof[c][r] / det for c in range(3)) for r in range(3))


def _frac_part(t, mode):
    if mode == RATIONAL:
        return t - math.floor(t)
    r = round(t)
    if abs(t - r) <= _SNAP * max(1.0, abs(t)):
        return 0.0
    f = t - math.floor(t)
    return 0.0 if f >= 1.0 else f


def wrap(p, L):
    """Representative of ``p + L`` in the fundamental domain."""
    p = parse_point(p, L.arithmetic)
    t = L.to_coords(p)
    return L.from_coords(tuple(_frac_part(c, L.arithmetic) for c in t))


def wrap_coords(p, L):
    """Fractional lattice coordinates of the representative of ``p + L``."""
    t = L.to_coords(parse_point(p, L.arithmetic))
    return tuple(_frac_part(c, L.arithmetic) for c in t)


class Arrangement:
    """The periodic arrangement ``body + lattice + points``.

    ``points`` are stored as fundamental-domain representatives in the order
    given; duplicates modulo the lattice are rejected.  The body must contain
    the origin in its interior.
    """

    __slots__ = ("body", "lattice", "points", "coords")

    def __init__(self, body, lattice, points, check=True):
        if body.arithmetic != lattice.arithmetic:
            raise ArithmeticModeError("body and lattice use different arithmetic modes")
        if body.d != lattice.d:
            raise ValueError("body and lattice have different dimensions")
        self.body = body
        self.lattice = lattice
        coords = [wrap_coords(p, lattice) for p in points]
        if not coords:
            raise ValueError("an arrangement needs at least one point")
        if check:
            if not body.contains_origin_interior():
                raise ValueError("the body must contain the origin in its interior")
            _check_distinct(coords, lattice)
        self.coords = tuple(coords)
        self.points = tuple(lattice.from_coords(t) for t in coords)

    @property
    def d(self):
        return self.body.d

    @property
    def arithmetic(self):
        return self.body.arithmetic

    def __len__(self):
        return len(self.points)

    def with_body(self, body):
        return Arrangement(body, self.lattice, self.points, check=False)

    def with_points(self, points):
        return Arrangement(self.body, self.lattice, points, check=False)

    def density(self):
        return len(self.points) * self.body.volume / self.lattice.covolume

    def scaled(self, sigma):
        """The arrangement ``(sigma C, sigma L, sigma X)``."""
        sigma = parse_number(sigma, self.arithmetic)
        return Arrangement(homothet(self.body, sigma), self.lattice.scaled(sigma),
                           [tuple(sigma * c for c in p) for p in self.points])

    def __repr__(self):
        return f"Arrangement({self.body!r}, {self.lattice!r}, {len(self.points)} points)"


def _check_distinct(coords, L):
    if L.arithmetic == RATIONAL:
        if len(set(coords)) != len(coords):
            raise ValueError("points coincide modulo the lattice")
        return
    pts = [L.from_coords(t) for t in coords]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            diff = tuple(a - b for a, b in zip(pts[j], pts[i]))
            t = L.to_coords(diff)
            t = tuple(c - round(c) for c in t)
            if math.sqrt(sum(float(c) ** 2 for c in L.from_coords(t))) <= TAU_PT:
                raise ValueError("points coincide modulo the lattice")


# -- lattice enumeration ---------------------------------------------------------


def _coord_box(body, L):
    """Bounding box of the body in lattice coordinates."""
    u = [L.to_coords(v) for v in body.vertices]
    lo = tuple(min(p[k] for p in u) for k in range(L.d))
    hi = tuple(max(p[k] for p in u) for k in range(L.d))
    return lo, hi


def _shift_order(k):
    return (sum(abs(c) for c in k), tuple(-c for c in k))


def _integer_box(lo, hi):
    ranges = [range(math.ceil(a), math.floor(b) + 1) for a, b in zip(lo, hi)]
    return sorted(itertools.product(*ranges), key=_shift_order)


def neighbor_translates(L, C):
    """Lattice vectors of norm at most ``2 R(C) + D(L)``, zero included.

    ``R`` is the circumradius about the origin and ``D`` the diameter of the
    fundamental domain.  Ordered by the l1 norm of the integer coordinates,
    ties broken by descending lexicographic order.
    """
    r = 2 * C.circumradius() + L.diameter()
    r2 = r * r * (1 + 1e-9) + 1e-12
    bounds = []
    for row in L.inverse:
        w = math.sqrt(sum(float(c) ** 2 for c in row))
        bounds.append(math.floor(r * w + 1e-9))
    out = []
    for k in itertools.product(*[range(-b, b + 1) for b in bounds]):
        lam = L.from_coords(k)
        if sum(float(c) ** 2 for c in lam) <= r2:
            out.append((k, lam))
    out.sort(key=lambda kl: _shift_order(kl[0]))
    return [lam for _, lam in out]


@dataclass(frozen=True)
class PairWitness:
    """Translates ``body + x`` and ``body + x_prime + lattice_vector`` meet."""

    i: int
    j: int
    x: tuple
    x_prime: tuple
    lattice_vector: tuple
    y: Optional[tuple] = None


def _pairs(A, D):
    """Candidate pairs ``(i, j, k)`` whose difference lies in the box of ``D``, in scan order."""
    L = A.lattice
    lo, hi = _coord_box(D, L)
    n = len(A.coords)
    for i in range(n):
        ti = A.coords[i]
        for j in range(i, n):
            tj = A.coords[j]
            off = tuple(b - a for a, b in zip(ti, tj))
            shifts = _integer_box(tuple(l - o for l, o in zip(lo, off)),
                                  tuple(h - o for h, o in zip(hi, off)))
            for k in shifts:
                if i == j and not any(k):
                    continue
                yield i, j, k


def _scan(A, closed):
    D = difference_body(A.body)
    L = A.lattice
    for i, j, k in _pairs(A, D):
        lam = L.from_coords(k)
        diff = tuple(b + l - a for a, b, l in zip(A.points[i], A.points[j], lam))
        cls = classify_point(D, diff)
        if cls == INTERIOR or (closed and cls != EXTERIOR):
            yield i, j, lam


def is_packing(A):
    """``(True, None)`` if no two translates share an interior point, else ``(False, witness)``.

    Two translates ``C + a`` and ``C + b`` share an interior point exactly
    when ``b - a`` lies in the interior of ``C - C``; self-pairs with nonzero
    lattice shifts are included.
    """
    for i, j, lam in _scan(A, closed=False):
        return False, PairWitness(i, j, A.points[i], A.points[j], lam)
    return True, None


def find_overlap(A, closed=False):
    """First overlapping pair in scan order together with a common point ``y``.

    ``closed=False`` (default) looks for interior overlaps, matching the
    packing definition; ``closed=True`` also reports translates that only
    touch.  ``y`` lies in ``(C + x) & (C + x' + lambda)`` and, for interior
    overlaps, in the interior of that intersection.
    """
    for i, j, lam in _scan(A, closed):
        x, xp = A.points[i], A.points[j]
        shifted = tuple(a + b for a, b in zip(xp, lam))
        y = _common_point(A.body, x, shifted)
        return PairWitness(i, j, x, xp, lam, y)
    return None


def _common_point(C, a, b):
    if C.d == 2:
        P = polygon.translate(C.vertices, a)
        Q = polygon.translate(C.vertices, b)
        inter = polygon.clip(P, Q)
        if not inter:
            raise GeometryError("difference-body test and polygon clipping disagree")
        y = polygon.centroid(inter)
    else:
        y = _chebyshev_point(C, a, b)
    for shift in (a, b):
        q = tuple(p - s for p, s in zip(y, shift))
        if classify_point(C, q) == EXTERIOR:
            raise GeometryError("common point escapes one of the translates")
    return y


def _chebyshev_point(C, a, b):
    """Centre of the largest ball inside ``(C + a) & (C + b)`` (linear program)."""
    from scipy.optimize import linprog

    rows, rhs = [], []
    for shift in (a, b):
        for n, c in C.facets:
            nf = [float(v) for v in n]
            w = math.sqrt(sum(v * v for v in nf))
            rows.append(nf + [w])
            rhs.append(float(c) + sum(float(v) * float(s) for v, s in zip(n, shift)))
    cost = [0.0] * C.d + [-1.0]
    res = linprog(cost, A_ub=rows, b_ub=rhs, bounds=[(None, None)] * C.d + [(0, None)])
    if not res.success:
        raise GeometryError("no common point found for an overlapping pair")
    y = tuple(float(v) for v in res.x[:C.d])
    if C.arithmetic == RATIONAL:
        y = tuple(Fraction(v).limit_denominator(10**9) for v in y)
    return y


# -- coverage ------------------------------------------------------------------


@dataclass(frozen=True)
class CoverageReport:
    uncovered_volume: object
    is_covering: bool
    witness_uncovered: Optional[tuple]
    method: str
    grid_resolution: Optional[float] = None
    certified: bool = True


def _translates_in_coords(A):
    """Every translate ``body + x + k`` (lattice coordinates) whose box meets the unit cube."""
    L = A.lattice
    base = [L.to_coords(v) for v in A.body.vertices]
    lo, hi = _coord_box(A.body, L)
    out = []
    for t in A.coords:
        klo = tuple(-h - c for h, c in zip(hi, t))
        khi = tuple(1 - l - c for l, c in zip(lo, t))
        ranges = [range(math.floor(a), math.ceil(b) + 1) for a, b in zip(klo, khi)]
        for k in itertools.product(*ranges):
            shift = tuple(c + kk for c, kk in zip(t, k))
            if any(l + s >= 1 or h + s <= 0 for l, h, s in zip(lo, hi, shift)):
                continue
            out.append((shift, [tuple(b + s for b, s in zip(v, shift)) for v in base]))
    return out


def _sweep(A):
    polys = []
    flip = A.lattice.det < 0
    for _, verts in _translates_in_coords(A):
        polys.append(tuple(verts[::-1]) if flip else tuple(verts))
    eps = 0 if A.arithmetic == RATIONAL else 1e-12
    if A.arithmetic == RATIONAL:
        from ._fastq import to_fast, from_fast
        sweep = polygon.SlabSweep([tuple(to_fast(p) for p in P) for P in polys], eps=eps)
        sweep.from_fast = from_fast
    else:
        sweep = polygon.SlabSweep(polys, eps=eps)
        sweep.from_fast = None
    return sweep


def _verify_uncovered(A, p):
    for lam in _relevant_shifts(A):
        for x in A.points:
            q = tuple(pc - xc - lc for pc, xc, lc in zip(p, x, lam))
            if classify_point(A.body, q) != EXTERIOR:
                return False
    return True


def _relevant_shifts(A):
    return neighbor_translates(A.lattice, A.body)


def _exact_witness(A, sweep):
    cells = sweep.gap_cells()
    if not cells:
        return None
    conv = sweep.from_fast or (lambda v: v)
    order = sorted(range(len(cells)),
                   key=lambda n: (-(cells[n][1] - cells[n][0]) * (cells[n][4] - cells[n][3]), n))
    for n in order[:8]:
        a, b, mid, glo, ghi = cells[n]
        if A.arithmetic == RATIONAL:
            xs = simplest_between(conv(a), conv(b))
            gaps = sweep.gaps_at(_to_fast_scalar(xs))
            glo, ghi = max(gaps, key=lambda g: g[1] - g[0])
            ys = simplest_between(conv(glo), conv(ghi))
            u = (xs, ys)
        else:
            u = (mid, (glo + ghi) / 2)
        p = A.lattice.from_coords(u)
        if _verify_uncovered(A, p):
            return p
    return None


def _to_fast_scalar(x):
    from ._fastq import to_fast_scalar
    return to_fast_scalar(x)


def _exact_report(A, witness=True):
    if A.d != 2:
        raise ParameterError("the exact method is planar; use method='grid' in dimension 3")
    sweep = _sweep(A)
    covered = sweep.covered_area()
    if sweep.from_fast is not None:
        covered = sweep.from_fast(covered)
    det = A.lattice.covolume
    unc = (1 - covered) * det
    if A.arithmetic == RATIONAL:
        is_cov = unc == 0
    else:
        unc = max(unc, 0.0)
        is_cov = unc <= TAU_VOL * det
    w = None
    if witness and not is_cov:
        w = _exact_witness(A, sweep)
        if w is None and A.arithmetic == RATIONAL:
            raise GeometryError("positive uncovered area but no verified uncovered point")
    return CoverageReport(unc, is_cov, w, EXACT2D, None, True)


def _grid_nodes(L, h):
    counts = [max(1, math.ceil(math.sqrt(sum(float(c) ** 2 for c in g)) / h)) for g in L.generators]
    axes = [(np.arange(n) + 0.5) / n for n in counts]
    mesh = np.meshgrid(*axes, indexing="ij")
    u = np.stack([m.ravel() for m in mesh], axis=1)
    B = np.array([[float(c) for c in row] for row in L.matrix])
    return counts, u, u @ B.T


def _grid_report(A, h, witness=True):
    if h is None or not h > 0:
        raise ParameterError(f"grid resolution must be positive, got {h!r}")
    L = A.lattice
    counts, u, P = _grid_nodes(L, h)
    B = np.array([[float(c) for c in row] for row in L.matrix])
    N = np.array([[float(c) for c in n] for n, _ in A.body.facets])
    c = np.array([float(c) for _, c in A.body.facets])
    tol = TAU_PT * np.linalg.norm(N, axis=1)
    covered = np.zeros(len(P), dtype=bool)
    for shift, _ in _translates_in_coords(A):
        s = B @ np.array([float(v) for v in shift])
        inside = np.all(P @ N.T - (N @ s + c) <= tol, axis=1)
        covered |= inside
    n_unc = int(np.count_nonzero(~covered))
    cell = float(L.covolume) / float(np.prod(counts))
    unc = n_unc * cell
    w = None
    if witness and n_unc:
        for idx in np.flatnonzero(~covered)[:64]:
            if A.arithmetic == RATIONAL:
                sub = np.unravel_index(idx, counts)
                t = tuple(Fraction(2 * int(s) + 1, 2 * n) for s, n in zip(sub, counts))
            else:
                t = tuple(float(v) for v in u[idx])
            p = L.from_coords(t)
            if _verify_uncovered(A, p):
                w = p
                break
    return CoverageReport(unc, n_unc == 0, w, GRID, float(h), False)


def uncovered_volume(A, method=EXACT2D, h=None, witness=True):
    """Volume of the torus left uncovered by ``body + points``.

    ``method="exact2d"`` (planar only) sweeps the fundamental domain in
    lattice coordinates and is exact in rational mode.  ``method="grid"``
    classifies the nodes of a grid whose cells have sides at most ``h`` and
    reports ``uncovered nodes * cell volume``; its covering verdict is not
    certified since thin holes may fall between nodes.
    """
    if method == EXACT2D:
        return _exact_report(A, witness)
    if method == GRID:
        return _grid_report(A, h, witness)
    raise ParameterError(f"unknown coverage method {method!r}")


def find_uncovered_point(A, method=EXACT2D, h=None):
    """A point of the fundamental domain outside every translate, or ``None``.

    Returned points are always re-checked against each translate with
    :func:`~packcover.convex.classify_point`.
    """
    return uncovered_volume(A, method, h).witness_uncovered


def total_perimeter(A):
    """Summed boundary length of the translates counted once per torus point."""
    return len(A.points) * A.body.perimeter()


# -- refinement ----------------------------------------------------------------


def lattice_translates_disjoint(C, L, m=1):
    """Whether ``C + l1`` and ``C + l2`` are disjoint as closed sets for distinct ``l1, l2 in mL``."""
    D = difference_body(C)
    lo, hi = _coord_box(D, L)
    for k in _integer_box(tuple(a / m for a in lo), tuple(b / m for b in hi)):
        if not any(k):
            continue
        lam = L.from_coords(tuple(m * c for c in k))
        if classify_point(D, lam) != EXTERIOR:
            return False
    return True


def refine_lattice(C, L, cap=REFINE_CAP):
    """Smallest ``m >= 1`` for which translates of ``C`` by ``mL`` are pairwise disjoint."""
    for m in range(1, cap + 1):
        if lattice_translates_disjoint(C, L, m):
            return m
    raise GeometryError(f"no refinement factor up to {cap} separates the translates")


def expand_points(X, L, m):
    """``X + {B k : k in {0..m-1}^d}`` wrapped into the fundamental domain of ``mL``."""
    if int(m) != m or m < 1:
        raise ParameterError("refinement factor must be a positive integer")
    m = int(m)
    big = L.scaled(m)
    out = []
    for x in X:
        x = parse_point(x, L.arithmetic)
        for k in itertools.product(range(m), repeat=L.d):
            k = k[::-1]
            shift = L.from_coords(k)
            out.append(wrap(tuple(a + b for a, b in zip(x, shift)), big))
    return out
