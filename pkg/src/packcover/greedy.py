"""Greedy conversion between dense packings and thin coverings on the torus.

``pack_to_cover`` grows the body to ``(1 + alpha) C`` and keeps inserting a
translate of ``C`` at an uncovered spot until the grown copies cover.
``cover_to_pack`` shrinks the body to ``(1 - alpha) C`` and deletes one
member of an overlapping pair until the shrunken copies pack.  Each step
re-checks the geometric facts that make the potential drop by at least
``alpha^d vol(C)``, so a finished run certifies its own density bound.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import polygon
from ._numeric import FLOAT, RATIONAL, TAU_VOL, format_number, rationalize
from .bounds import (
    BoundDomainError,
    alpha_bound_cover,
    alpha_bound_pack,
    thm_cover_bound,
    thm_pack_bound,
)
from .convex import GeometryError, contains_body, homothet, radon_vector, translate
from .torus import (
    EXACT2D,
    Arrangement,
    ParameterError,
    expand_points,
    find_overlap,
    is_packing,
    neighbor_translates,
    refine_lattice,
    uncovered_volume,
    wrap,
)

log = logging.getLogger(__name__)

PACK_TO_COVER = "pack-to-cover"
COVER_TO_PACK = "cover-to-pack"


class PreconditionError(ValueError):
    """The input arrangement is not a packing (resp. covering)."""


class ProofClaimError(GeometryError):
    """A step violated one of the inequalities the construction guarantees."""


@dataclass
class Step:
    i: int
    y: tuple
    point: tuple
    S_before: object
    S_after: object
    claim_ok: bool
    decrement_ok: bool


@dataclass
class GreedyTrace:
    direction: str
    alpha: object
    epsilon: object
    steps: list = field(default_factory=list)
    certified: bool = True
    step_bound_ok: bool = True

    @property
    def l(self):
        return len(self.steps)


@dataclass
class TransformResult:
    output: Arrangement
    trace: GreedyTrace
    density_before: object
    density_after: object
    bound: object
    bound_satisfied: bool
    start: Arrangement
    refinement: int = 1
    vacuous_bound: bool = False
    output_verified: bool = True
    theorem_bound: Optional[float] = None
    theorem_branch: Optional[str] = None
    theorem_bound_satisfied: Optional[bool] = None

    @property
    def ok(self):
        """Every per-step check, the output verification and the bound held."""
        return (self.output_verified and self.trace.step_bound_ok and self.bound_satisfied
                and all(s.claim_ok and s.decrement_ok for s in self.trace.steps))


def choose_alpha(eps, d, symmetric):
    """Scaling parameter minimizing the greedy bound: ``eps**(1/(d+1))``, capped at ``1/d``
    for bodies that are not centrally symmetric."""
    eps = float(eps)
    if not 0 < eps < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {eps!r}")
    if d < 2:
        raise ParameterError("dimension must be at least 2")
    alpha = eps ** (1.0 / (d + 1))
    if not symmetric:
        alpha = min(alpha, 1.0 / d)
    return alpha


def _alpha_in_mode(alpha, C, cap_by_dimension):
    """``alpha`` as a number of the body's arithmetic, checked for admissibility."""
    d = C.d
    if C.arithmetic == RATIONAL:
        a = alpha if isinstance(alpha, (Fraction, int)) else rationalize(alpha)
        a = Fraction(a)
        if cap_by_dimension and a > Fraction(1, d) and float(alpha) <= 1.0 / d + 1e-12:
            a = Fraction(1, d)
    else:
        a = float(alpha)
    if not 0 < a < 1:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha!r}")
    if cap_by_dimension and a > (Fraction(1, d) if C.arithmetic == RATIONAL else 1.0 / d):
        raise ParameterError(f"alpha must not exceed 1/d = 1/{d} for a body that is not "
                             "centrally symmetric")
    return a


def cover_witness_translate(C, y, alpha, symmetric=None):
    """A point ``y'`` with ``-alpha C + y`` inside ``C + y'``.

    For a symmetric body ``y' = y``.  Otherwise ``y' = y - alpha d v`` where
    ``-(1/d) C + v`` fits in ``C``; this needs ``alpha <= 1/d``.  The
    containment is verified before returning.
    """
    if symmetric is None:
        symmetric = C.symmetric
    if symmetric:
        yp = tuple(y)
    else:
        v = radon_vector(C)
        k = alpha * C.d
        if k > 1:
            raise ParameterError("alpha must not exceed 1/d for a body that is not centrally "
                                 "symmetric")
        yp = tuple(a - k * b for a, b in zip(y, v))
    if not contains_body(translate(C, yp), homothet(C, -alpha, y)):
        raise GeometryError("C + y' does not cover -alpha C + y")
    return yp


def _closed_disjoint(P, Q):
    """Separating-axis test for convex polygons: no common point, boundary included."""
    for poly in (P, Q):
        for nx, ny, _ in polygon.halfplanes(poly):
            pmax = max(nx * x + ny * y for x, y in P)
            pmin = min(nx * x + ny * y for x, y in P)
            qmax = max(nx * x + ny * y for x, y in Q)
            qmin = min(nx * x + ny * y for x, y in Q)
            if pmax < qmin or qmax < pmin:
                return True
    return False


def hole_is_clear(C, L, X, y, alpha):
    """Whether ``-alpha C + y`` misses every translate ``C + x + lambda``.

    Planar bodies are tested by separating axes on the materialized
    polygons; in space through membership of ``y - x - lambda`` in ``(1 + alpha) C``.
    """
    small = homothet(C, -alpha, y)
    grown = homothet(C, 1 + alpha) if C.d == 3 else None
    for lam in neighbor_translates(L, C):
        for x in X:
            shift = tuple(a + b for a, b in zip(x, lam))
            if C.d == 2:
                if not _closed_disjoint(small.vertices, polygon.translate(C.vertices, shift)):
                    return False
            else:
                from .convex import EXTERIOR, classify_point
                q = tuple(a - b for a, b in zip(y, shift))
                if classify_point(grown, q) != EXTERIOR:
                    return False
    return True


def _le(a, b, mode):
    if mode == RATIONAL:
        return a <= b
    return float(a) <= float(b) + TAU_VOL * max(1.0, abs(float(b)))


def _step_cap(eps, vol_T, drop, d):
    return math.ceil(float(eps) * float(vol_T) / float(drop)) + d + 8


def pack_to_cover(A, alpha, method=EXACT2D, h=None, strict=True):
    """Fill holes of the packing ``A`` until ``(1 + alpha) C`` covers the torus.

    Returns a :class:`TransformResult` whose output is the covering
    ``((1 + alpha) C, L, X_l)``.  ``bound`` is ``(1 + eps/alpha^d)(1 + alpha)^d``
    with ``eps = 1 - density(A)``.  With ``strict`` a failed per-step check
    raises :class:`ProofClaimError`; otherwise it is recorded in the trace.
    """
    packing, witness = is_packing(A)
    if not packing:
        raise PreconditionError(f"input is not a packing: translates {witness.i} and "
                                f"{witness.j} overlap (lattice shift {witness.lattice_vector})")
    C, L, mode, d = A.body, A.lattice, A.arithmetic, A.d
    vol_T, vol_C = L.covolume, C.volume
    density = A.density()
    eps = 1 - density
    if mode == FLOAT and eps < 0:
        eps = 0.0
    alpha = _alpha_in_mode(alpha, C, cap_by_dimension=not C.symmetric)
    big = homothet(C, 1 + alpha)
    drop = alpha ** d * vol_C
    cap = _step_cap(eps, vol_T, drop, d)

    trace = GreedyTrace(PACK_TO_COVER, alpha, eps, certified=(method == EXACT2D))
    X = list(A.points)
    S = uncovered_volume(A, method, h, witness=False).uncovered_volume
    covered = False
    while True:
        rep = uncovered_volume(Arrangement(big, L, X, check=False), method, h)
        if rep.is_covering:
            covered = True
            break
        y = rep.witness_uncovered
        if y is None:
            log.warning("uncovered volume %s reported without a verifiable witness", rep.uncovered_volume)
            trace.certified = False
            break
        if len(trace.steps) >= cap:
            raise GeometryError(f"hole filling exceeded {cap} steps; the coverage oracle is broken")
        claim = hole_is_clear(C, L, X, y, alpha)
        yp = wrap(cover_witness_translate(C, y, alpha), L)
        X.append(yp)
        S_new = uncovered_volume(Arrangement(C, L, X, check=False), method, h,
                                 witness=False).uncovered_volume
        dec = _le(S_new, S - drop, mode) if method == EXACT2D else True
        trace.steps.append(Step(len(trace.steps), y, yp, S, S_new, claim, dec))
        if strict and not (claim and dec):
            raise ProofClaimError(f"step {len(trace.steps) - 1}: hole disjointness {claim}, "
                                  f"potential decrement {dec}")
        S = S_new

    l = trace.l
    out = Arrangement(big, L, X, check=False)
    density_after = (len(A.points) + l) * (1 + alpha) ** d * vol_C / vol_T
    bound = alpha_bound_cover(eps, alpha, d)
    trace.step_bound_ok = float(l * vol_C / vol_T) < float(eps / alpha ** d) + TAU_VOL
    trace.certified = trace.certified and covered and trace.step_bound_ok and all(
        s.claim_ok and s.decrement_ok for s in trace.steps)
    return TransformResult(
        output=out, trace=trace, density_before=density, density_after=density_after,
        bound=bound, bound_satisfied=density_after < bound, start=A,
        output_verified=covered)


def _excess(n, vol_C, vol_T, uncovered):
    return n * vol_C - (vol_T - uncovered)


def cover_to_pack(A, alpha, method=EXACT2D, h=None, strict=True):
    """Remove points of the covering ``A`` until ``(1 - alpha) C`` packs.

    The lattice is first refined to ``mL`` (with the points expanded over the
    cosets) so that distinct lattice translates of ``C`` are disjoint.  The
    result's ``bound`` is ``(1 - eps/alpha^d)(1 - alpha)^d`` with
    ``eps = density(A) - 1``; ``vacuous_bound`` flags a nonpositive value.
    """
    rep = uncovered_volume(A, method, h, witness=False)
    if not rep.is_covering:
        raise PreconditionError(f"input is not a covering: uncovered volume {rep.uncovered_volume}")
    C, mode, d = A.body, A.arithmetic, A.d
    density = A.density()
    eps = density - 1
    if mode == FLOAT and eps < 0:
        eps = 0.0
    alpha = _alpha_in_mode(alpha, C, cap_by_dimension=False)

    m = refine_lattice(C, A.lattice)
    if m > 1:
        L = A.lattice.scaled(m)
        start = Arrangement(C, L, expand_points(A.points, A.lattice, m), check=False)
    else:
        L = A.lattice
        start = A
    vol_T, vol_C = L.covolume, C.volume
    small = homothet(C, 1 - alpha)
    scaled = homothet(C, alpha)
    drop = alpha ** d * vol_C
    cap = _step_cap(eps, vol_T, drop, d)

    trace = GreedyTrace(COVER_TO_PACK, alpha, eps, certified=(method == EXACT2D))
    X = list(start.points)
    S = _excess(len(X), vol_C, vol_T,
                uncovered_volume(start, method, h, witness=False).uncovered_volume)
    while True:
        ov = find_overlap(Arrangement(small, L, X, check=False), closed=False)
        if ov is None:
            break
        if len(trace.steps) >= cap:
            raise GeometryError(f"overlap removal exceeded {cap} steps; the pair scan is broken")
        cap_y = homothet(scaled, 1, ov.y)
        other = tuple(a + b for a, b in zip(ov.x_prime, ov.lattice_vector))
        claim = (ov.i != ov.j and contains_body(translate(C, ov.x), cap_y)
                 and contains_body(translate(C, other), cap_y))
        removed = X.pop(ov.j)
        unc = uncovered_volume(Arrangement(C, L, X, check=False), method, h,
                               witness=False).uncovered_volume
        S_new = _excess(len(X), vol_C, vol_T, unc)
        dec = _le(S_new, S - drop, mode) if method == EXACT2D else True
        trace.steps.append(Step(len(trace.steps), ov.y, removed, S, S_new, claim, dec))
        if strict and not (claim and dec):
            raise ProofClaimError(f"step {len(trace.steps) - 1}: sandwich {claim}, "
                                  f"excess decrement {dec}")
        S = S_new

    l = trace.l
    out = Arrangement(small, L, X, check=False)
    packed, _ = is_packing(out)
    density_after = (len(start.points) - l) * (1 - alpha) ** d * vol_C / vol_T
    bound = alpha_bound_pack(eps, alpha, d)
    trace.step_bound_ok = float(l * vol_C / vol_T) < float(eps / alpha ** d) + TAU_VOL
    trace.certified = trace.certified and packed and trace.step_bound_ok and all(
        s.claim_ok and s.decrement_ok for s in trace.steps)
    return TransformResult(
        output=out, trace=trace, density_before=density, density_after=density_after,
        bound=bound, bound_satisfied=density_after > bound, start=start, refinement=m,
        vacuous_bound=bound <= 0 or eps >= 1, output_verified=packed)


#: alpha used by the overlap removal when the covering is too thick for the formula
FALLBACK_ALPHA = 0.5


def theorem_pipeline(A, direction, method=EXACT2D, h=None, alpha=None, strict=True):
    """Run one transform with the optimal ``alpha`` and evaluate the closed-form bound.

    ``alpha`` overrides the automatic choice.  The closed-form bound is
    attached when ``0 < eps < 1``; otherwise ``theorem_bound`` stays ``None``.
    """
    density = A.density()
    d = A.d
    if direction == PACK_TO_COVER:
        eps = 1 - density
        if eps < 0:
            raise PreconditionError(f"density {format_number(density)} exceeds 1: not a packing")
        if alpha is None:
            alpha = choose_alpha(eps, d, A.body.symmetric)
        res = pack_to_cover(A, alpha, method, h, strict)
        try:
            bound, branch = thm_cover_bound(eps, d, A.body.symmetric, with_branch=True)
        except BoundDomainError:
            return res
        res.theorem_bound, res.theorem_branch = bound, branch
        res.theorem_bound_satisfied = float(res.density_after) < bound
    elif direction == COVER_TO_PACK:
        eps = density - 1
        if alpha is None:
            alpha = choose_alpha(eps, d, True) if 0 < eps < 1 else FALLBACK_ALPHA
        res = cover_to_pack(A, alpha, method, h, strict)
        try:
            bound = thm_pack_bound(eps, d)
        except BoundDomainError:
            return res
        res.theorem_bound = bound
        res.theorem_bound_satisfied = float(res.density_after) > bound
    else:
        raise ParameterError(f"unknown direction {direction!r}")
    return res
