"""Closed-form density bounds and the density calculator for periodic arrangements.

All bound formulas are evaluated in floating point; they compare asymptotic
magnitudes and are not certificates.  :func:`periodic_density` keeps the
arithmetic of its input and is exact for rational arrangements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ._numeric import TAU_VOL
from .convex import diff_ratio_W

PACKING = "packing"
COVERING = "covering"

BRANCH_1A = "1a"
BRANCH_1B = "1b"


class BoundDomainError(ValueError):
    pass


def _check_eps(eps):
    if not 0 < eps < 1:
        raise BoundDomainError(f"epsilon must lie in (0, 1), got {eps!r}")


def periodic_density(A):
    """``|X| vol(C) / vol(R^d / L)``."""
    return A.density()


def cover_branch(eps, d, symmetric):
    """Which covering bound applies: ``"1a"`` for symmetric bodies or small epsilon."""
    _check_eps(eps)
    if symmetric or eps <= 1.0 / d ** (d + 1):
        return BRANCH_1A
    return BRANCH_1B


def thm_cover_bound(eps, d, symmetric, with_branch=False):
    """Covering density guaranteed by a packing of density greater than ``1 - eps``.

    ``(1 + eps**(1/(d+1)))**(d+1)`` when the body is centrally symmetric or
    ``eps <= d**-(d+1)``; otherwise ``(1 + eps d**d) (1 + 1/d)**d``.
    """
    eps = float(eps)
    branch = cover_branch(eps, d, symmetric)
    if branch == BRANCH_1A:
        value = (1 + eps ** (1.0 / (d + 1))) ** (d + 1)
    else:
        value = (1 + eps * d ** d) * (1 + 1.0 / d) ** d
    return (value, branch) if with_branch else value


def thm_pack_bound(eps, d):
    """Packing density guaranteed by a covering of density below ``1 + eps``."""
    eps = float(eps)
    _check_eps(eps)
    return (1 - eps ** (1.0 / (d + 1))) ** (d + 1)


def alpha_bound_cover(eps, alpha, d):
    """Covering density after hole filling with a fixed ``alpha``: ``(1 + eps/alpha^d)(1 + alpha)^d``."""
    return (1 + eps / alpha ** d) * (1 + alpha) ** d


def alpha_bound_pack(eps, alpha, d):
    """Packing density after overlap removal with a fixed ``alpha``: ``(1 - eps/alpha^d)(1 - alpha)^d``."""
    return (1 - eps / alpha ** d) * (1 - alpha) ** d


def ft_cover_bound(d, o_term=0.0):
    """Fejes Toth's covering bound ``d ln d + d ln ln d + o(d)``.

    The ``o(d)`` term is unknown; it is passed in explicitly and defaults to
    zero, so the value is indicative only.
    """
    if d < 3:
        raise BoundDomainError("ln ln d is positive only for d >= 3")
    return d * math.log(d) + d * math.log(math.log(d)) + o_term


def schmidt_pack_bound(d, c):
    """Schmidt's lattice packing bound ``c d / 2^d`` for symmetric bodies; ``c`` is unspecified."""
    if not c > 0:
        raise BoundDomainError("the constant c must be positive")
    return c * d / 2 ** d


def minkowski_transfer_bound(C, c):
    """Packing bound ``c d / W(C)^d`` for arbitrary bodies.

    Schmidt's bound for the symmetric body ``C - C`` carried over through
    ``delta(C) = 2^d delta(C - C) vol(C) / vol(C - C)``.
    """
    if not c > 0:
        raise BoundDomainError("the constant c must be positive")
    return c * C.d / diff_ratio_W(C) ** C.d


@dataclass
class Threshold:
    name: str
    value: float
    inner: float
    condition: str
    applicable: bool


def crossover_report(d, c=1.0, symmetric=True, WC=2.0):
    """Excess levels below which the greedy bounds beat the literature bounds.

    Four thresholds, each on ``1 - delta`` or ``theta - 1``.  A threshold is
    inapplicable when its inner expression is not positive or when it needs
    a symmetric body and ``symmetric`` is false.
    """
    if d < 3:
        raise BoundDomainError("crossovers are defined for d >= 3")
    lnd, lnlnd = math.log(d), math.log(math.log(d))
    rows = []

    inner = lnd / (math.e * d ** (d - 1))
    rows.append(Threshold("fejes_toth_general", inner, inner,
                          "1 - delta_T(C) below value; any body", inner > 0))

    inner = math.log(d * lnd + d * lnlnd) / (d + 1)
    rows.append(Threshold("fejes_toth_symmetric", inner ** (d + 1), inner,
                          "1 - delta_T(C) below value; centrally symmetric C",
                          inner > 0 and symmetric))

    inner = 0.5 - math.log(2 * c * d) / (d + 1)
    rows.append(Threshold("schmidt_symmetric", inner ** (d + 1), inner,
                          "theta_T(C) - 1 below value; centrally symmetric C",
                          inner > 0 and symmetric))

    inner = 1 - 1 / WC - math.log(WC * c * d) / (d + 1)
    rows.append(Threshold("schmidt_minkowski", inner ** (d + 1), inner,
                          "theta_T(C) - 1 below value; any body, W(C) given",
                          inner > 0))
    return rows


@dataclass
class Comparison:
    name: str
    value: float
    stronger: bool


@dataclass
class DensityReport:
    density: object
    kind: str
    epsilon_effective: object
    theorem_bound: Optional[float]
    theorem_branch: Optional[str] = None
    comparisons: list = field(default_factory=list)
    consistent: bool = True


def density_report(A, kind, c=1.0, o_term=0.0):
    """Density of ``A`` and what the greedy bounds promise from it.

    For ``kind="packing"`` the theorem bound is the covering density reachable
    by hole filling; for ``kind="covering"`` it is the packing density
    reachable by overlap removal.  Comparisons are against Fejes Toth
    (covering) and Schmidt or its Minkowski transfer (packing).
    """
    den = periodic_density(A)
    d = A.d
    bound = branch = None
    comparisons = []
    if kind == PACKING:
        eps = 1 - den
        consistent = float(den) <= 1 + TAU_VOL
        if 0 < eps < 1:
            bound, branch = thm_cover_bound(eps, d, A.body.symmetric, with_branch=True)
            if d >= 3:
                ft = ft_cover_bound(d, o_term)
                comparisons.append(Comparison("fejes_toth", ft, bound < ft))
    elif kind == COVERING:
        eps = den - 1
        consistent = float(den) >= 1 - TAU_VOL
        if 0 < eps < 1:
            bound = thm_pack_bound(eps, d)
            if A.body.symmetric:
                lit = schmidt_pack_bound(d, c)
                comparisons.append(Comparison("schmidt", lit, bound > lit))
            else:
                lit = minkowski_transfer_bound(A.body, c)
                comparisons.append(Comparison("schmidt_minkowski", lit, bound > lit))
    else:
        raise ValueError(f"kind must be {PACKING!r} or {COVERING!r}")
    return DensityReport(den, kind, eps, bound, branch, comparisons, consistent)
