"""
From a packing to a covering
============================

Start from a packing of density ``1 - eps``.  Inflate the body by
``1 + alpha``; wherever a hole remains, its witness ``y`` has room for
``-alpha C + y`` between the translates, and a new translate is added that
swallows it.  Each insertion removes at least ``alpha^d vol(C)`` of the
uncovered area, so few insertions are needed.
"""

from fractions import Fraction as Q
from pathlib import Path

import numpy as np

from packcover import (
    Arrangement,
    io,
    pack_to_cover,
    render_svg,
    samples,
    theorem_pipeline,
    uncovered_volume,
)

OUT = Path(__file__).with_name("_output")
OUT.mkdir(exist_ok=True)

###############################################################################
# Squares on ``(5/4 Z)^2`` with a small ``alpha``
# ------------------------------------------------
# ``alpha = 1/10`` is far from optimal, which forces several insertions.

A = Arrangement(samples.unit_square(), samples.square_lattice(Q(5, 4)), [(0, 0)])
res = pack_to_cover(A, Q(1, 10))
tr = res.trace
print(f"eps = {tr.epsilon}, alpha = {tr.alpha}, insertions = {tr.l}")
print(" i  witness y            inserted            S before -> S after")
for s in tr.steps:
    print(f"{s.i:2d}  {str(tuple(map(str, s.y))):20s} {str(tuple(map(str, s.point))):20s} "
          f"{s.S_before} -> {s.S_after}")
print("covers?", uncovered_volume(res.output).is_covering)
print(f"density after {res.density_after} < bound {res.bound} : {res.bound_satisfied}")

(OUT / "pack_to_cover.svg").write_text(render_svg(res.output, tr))
io.save_trace(tr, OUT / "pack_to_cover_trace.json")

###############################################################################
# The full pipeline on random packings
# ------------------------------------
# ``alpha`` is chosen as ``eps^(1/3)`` (capped at 1/2 for bodies that are not
# centrally symmetric) and the density afterwards is compared with the
# closed-form bound.

rng = np.random.default_rng(1)
print(" density  body-sym  alpha    steps  after    bound   ok")
for _ in range(8):
    P = samples.random_packing(rng)
    r = theorem_pipeline(P, "pack-to-cover")
    print(f" {float(P.density()):.4f}  {str(P.body.symmetric):8s}  {float(r.trace.alpha):.4f}  "
          f"{r.trace.l:5d}  {float(r.density_after):.4f}  {r.theorem_bound:.4f}  {r.ok}")
