"""
From a covering to a packing
============================

Shrink the body of a thin covering by ``1 - alpha``.  If two shrunken
translates still meet at ``y``, then ``alpha C + y`` lies in both original
translates, so deleting one of them loses at least ``alpha^d vol(C)`` of
covering excess.  The lattice is first refined so that no translate meets
its own lattice copies.
"""

from fractions import Fraction as Q

import numpy as np

from packcover import Arrangement, cover_to_pack, is_packing, refine_lattice, samples, theorem_pipeline

###############################################################################
# Refinement
# ----------
# On ``Z^2`` the unit square touches its neighbour at ``(1, 0)``; doubling the
# lattice separates the copies.  Points are expanded over the four cosets.

sq = samples.unit_square()
print("m for the square on Z^2:", refine_lattice(sq, samples.square_lattice(1)))

###############################################################################
# An extra point makes the covering thick
# ---------------------------------------

A = Arrangement(sq, samples.square_lattice(1), [(0, 0), (Q(1, 10), Q(1, 10))])
res = cover_to_pack(A, Q(1, 2))
print(f"refined by m={res.refinement}: {len(res.start.points)} points on the big torus")
for s in res.trace.steps:
    print(f"  removed {tuple(map(str, s.point))} at y={tuple(map(str, s.y))}: "
          f"excess {s.S_before} -> {s.S_after}")
print("packing afterwards?", is_packing(res.output)[0], " density", res.density_after)

###############################################################################
# Random coverings
# ----------------
# With ``alpha = eps^(1/3)`` the shrunken bodies rarely overlap, while a small
# fixed ``alpha`` keeps more of the density but needs removals.

rng = np.random.default_rng(2)
print(" density  pipeline(alpha, after, bound)        alpha=1/10 (removals, after)")
for _ in range(8):
    C = samples.random_covering(rng)
    r = theorem_pipeline(C, "cover-to-pack")
    f = cover_to_pack(C, Q(1, 10))
    print(f" {float(C.density()):.4f}  ({float(r.trace.alpha):.3f}, {float(r.density_after):.4f}, "
          f"{r.theorem_bound:.4f})        ({f.trace.l}, {float(f.density_after):.4f})")
