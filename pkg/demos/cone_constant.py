"""
The cone distortion constant and the partial-sum bound
======================================================

Two facts about the convex hull of a boundary point and the half-radius
disk, both checkable by machine:

 * the distortion ratio |1 - z| / (1 - |z|) tops out at exactly 3 on the
   cone with apex at 1, attained at z = -1/2;
 * on that cone, an analytic polynomial is bounded by three times the
   maximal partial sum of its coefficients at the apex angle.

The first is a deterministic grid search with a golden-section refine;
the second is a randomized sweep that has never found a counterexample
(and never will: the bound is a theorem, the sweep is a regression net).
"""

import numpy as np

from privalov import CoefficientSeries, cone_contains, cone_kappa_max

rng = np.random.default_rng(2026)

# -- the constant ----------------------------------------------------------

kappa, argmax = cone_kappa_max(samples=65536)
print("distortion constant")
print(f"  max |1-z|/(1-|z|) = {kappa:.12f}")
print(f"  attained at z = {argmax.real:+.9f}{argmax.imag:+.2e}j")
print(f"  distance from -1/2: {abs(argmax + 0.5):.2e}")
print()

# -- the sweep -------------------------------------------------------------

# g*(0) on a one-point grid is the exact maximum over coefficient prefixes,
# by the root-of-unity reduction; no quadrature error enters the bound.
print("partial-sum bound on the cone at angle 0")
worst = 0.0
for trial in range(200):
    deg = int(rng.integers(0, 65))
    coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    series = CoefficientSeries({n: coeffs[n] for n in range(deg + 1)})
    gstar0 = float(series.maximal_partial_sum(1).values[0])

    pts = []
    while len(pts) < 100:
        z = complex(rng.uniform(-0.5, 1.0), rng.uniform(-0.5, 0.5))
        if abs(z) <= 1.0 - 1e-9 and cone_contains(0.0, z):
            pts.append(z)
    vals = np.abs(np.polyval(coeffs[::-1], np.array(pts)))
    worst = max(worst, float(vals.max()) / gstar0)

print(f"  200 random polynomials, 100 cone points each")
print(f"  max |G(z)| / g*(0) observed: {worst:.6f}  (bound: 3)")
