"""
The closed-form bounds
======================

A packing of density ``1 - eps`` yields a covering of density at most
``(1 + eps^(1/(d+1)))^(d+1)``, and a covering of density ``1 + eps`` a
packing of density at least ``(1 - eps^(1/(d+1)))^(d+1)``.  Bodies that are
not centrally symmetric switch to ``(1 + eps d^d)(1 + 1/d)^d`` once
``eps > d^-(d+1)``.  Below, the bounds are tabulated and compared with
classical estimates.
"""

import numpy as np

from packcover import crossover_report, ft_cover_bound, thm_cover_bound, thm_pack_bound

###############################################################################
# The bounds in the plane
# -----------------------

print("   eps      cover(sym)  cover(any)  pack")
for eps in np.logspace(-6, -0.5, 8):
    print(f"{eps:9.2e}  {thm_cover_bound(eps, 2, True):10.6f}  "
          f"{thm_cover_bound(eps, 2, False):10.6f}  {thm_pack_bound(eps, 2):8.6f}")

###############################################################################
# Continuity at the branch point
# ------------------------------
# Both covering formulas agree at ``eps = d^-(d+1)``.

for d in range(2, 7):
    t = d ** -(d + 1)
    a = (1 + t ** (1 / (d + 1))) ** (d + 1)
    b = (1 + t * d ** d) * (1 + 1 / d) ** d
    print(f"d={d}: {a:.15f}  {b:.15f}")

###############################################################################
# When does the greedy bound win?
# -------------------------------
# Thresholds on ``1 - delta`` (against Fejes Toth's covering bound) and on
# ``theta - 1`` (against Schmidt's packing bound, with ``c = 1``).

print(" d   FT bound   FT general   FT symmetric  Schmidt sym   Schmidt via W=2.449")
for d in range(3, 11):
    rows = {t.name: t for t in crossover_report(d, 1.0, True, 6 ** 0.5)}
    cells = []
    for name in ("fejes_toth_general", "fejes_toth_symmetric", "schmidt_symmetric", "schmidt_minkowski"):
        t = rows[name]
        cells.append(f"{t.value:11.3e}" if t.applicable else "        n/a")
    print(f"{d:2d}  {ft_cover_bound(d):8.3f}  " + "  ".join(cells))
