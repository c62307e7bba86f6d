"""
A number whose multiples align, exactly
=======================================

Given frequencies q_1 < q_2 < ... growing faster than doubling, the
construction below produces a rational alpha for which every alpha * q_k
is within a controlled distance of an integer, with the distances
shrinking as fast as the frequency ratios allow.  Everything is done in
exact arithmetic: the enclosures printed here are true statements about
fractions, not floating point estimates.
"""

from fractions import Fraction

from privalov import beta_from_alpha, construct_alpha

Q = [6, 60, 6000, 6_000_000, 60_000_000_000]

enc = construct_alpha(Q)

print("frequencies:", Q)
print(f"alpha = {enc.mid} = {float(enc.mid):.12f}")
print()

# the defining property: alpha * q_k is near-integral at every level,
# and exactly integral at the last one
print("fractional parts of alpha * q (exact):")
for q in Q:
    frac = (enc.mid * q) % 1
    shown = f"{frac}" if frac.denominator < 10**6 else f"~{float(frac):.3e}"
    print(f"  q = {q:>12d}: {{alpha q}} = {shown}")
print()

# interval enclosures: each partial alpha_k pins the remaining tail
print("enclosure widths by level (upper ends, non-increasing):")
rows = enc.frac_parts(mode="interval")
for r in rows:
    if not r.is_vacuous:
        print(f"  level {r.k}: hi = {float(r.hi):.10f}")
print()

report = enc.uniform_bound_check(c=Fraction(2))
print(f"uniform bound with C = 2: {'pass' if report.passed else 'FAIL'}"
      f" (tightest constant {float(report.c_star):.6f})")

beta = beta_from_alpha(enc)
print(f"beta = 2 pi alpha = {beta:.9f}, inside (2 pi/3, 4 pi/3): "
      f"{2.0943951 < beta < 4.1887902}")
