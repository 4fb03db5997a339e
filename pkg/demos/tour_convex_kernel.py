"""
A tour of the convex kernel
===========================

Bodies are convex polygons with exact rational vertices.  This script walks
through the operations the greedy constructions rely on: homothets, the
difference body ``C - C``, the centroid used as Minkowski-Radon point, and
the ratio ``W(C)``.
"""

from fractions import Fraction as Q

from packcover import (
    ConvexBody,
    centroid,
    classify_point,
    contains_body,
    diff_ratio_W,
    difference_body,
    homothet,
    radon_vector,
)


def show(points):
    return ", ".join(f"({x}, {y})" for x, y in points)


###############################################################################
# A triangle and its difference body
# ----------------------------------
# ``C - C`` of the standard triangle is a hexagon of area 3, six times the
# area of the triangle -- the largest ratio any planar body can reach.

T = ConvexBody([(0, 0), (1, 0), (0, 1)])
D = difference_body(T)
print("triangle area      :", T.volume)
print("difference body    :", show(D.vertices))
print("area of C - C      :", D.volume)
print("W(C) = sqrt(area ratio):", diff_ratio_W(T))

###############################################################################
# Symmetric bodies sit at the other extreme: ``C - C = 2C``, so ``W = 2``.

square = ConvexBody([(-Q(1, 2), -Q(1, 2)), (Q(1, 2), -Q(1, 2)), (Q(1, 2), Q(1, 2)), (-Q(1, 2), Q(1, 2))])
print("square: W =", diff_ratio_W(square), " symmetric flag:", square.symmetric)

###############################################################################
# The Minkowski-Radon point
# -------------------------
# Every chord through the centroid is split in ratio at most ``d``.
# Equivalently a copy of ``-(1/d) C`` fits inside ``C``; the translation is
# ``(1 + 1/d)`` times the centroid.

g = centroid(T)
v = radon_vector(T)
inner = homothet(T, -Q(1, 2), v)
print("centroid           :", show([g]))
print("radon vector       :", show([v]))
print("-(1/2)C + v        :", show(inner.vertices))
print("contained in C     :", contains_body(T, inner))

###############################################################################
# Scaling by anything larger than ``1/d`` breaks the containment for the
# triangle, which is why non-symmetric bodies need ``alpha <= 1/d`` in the
# hole-filling step.

too_big = homothet(T, -Q(3, 5), tuple(Q(8, 5) * c for c in g))
print("-(3/5)C + (8/5)g in C:", contains_body(T, too_big))

###############################################################################
# Point classification is exact: points on an edge are ``boundary``.

for p in [(Q(1, 3), Q(1, 3)), (Q(1, 2), Q(1, 2)), (1, 1)]:
    print(show([p]), "->", classify_point(T, p))
