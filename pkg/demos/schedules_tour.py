"""
Three verified coefficient schedules
====================================

Each builder produces amplitudes, frequencies, and a tolerance sequence
satisfying a finite list of inequalities, and the inequalities are
checked in exact rational arithmetic before the bundle is released.  The
three variants answer three different smallness requirements:

 * weight    - amplitudes riding a divergent weight, halving fast enough
               that every tail is dominated by its own tolerance;
 * lacunary  - negative frequencies chosen along an exactly aligned
               rational phase, with certified far-phase and separation;
 * couples   - pairs of adjacent frequencies pushed past a growth
               function, collapsing at an iterated-tolerance rate.

The deep ends get extreme fast: the couples variant at depth 4 already
needs tolerances around 1e-3291, which is why the checks are fractions
and the JSON export switches to scientific-notation strings.
"""

from fractions import Fraction

from privalov import (
    CoefficientSeries,
    GrowthFunction,
    WeightSequence,
    build_couples_schedule,
    build_lacunary_schedule,
    build_weight_schedule,
    case_split,
    gamma_coeffs,
    tail_estimate_check,
)


def show(bundle, label):
    print(f"{label}: depth {bundle.depth}, {len(bundle.checks)} checks, "
          f"all pass: {bundle.passed}")
    for row in bundle.checks[:3]:
        print(f"    {row.name}: {row.passed}")
    print("    ...")


# -- weight ----------------------------------------------------------------

omega = WeightSequence.log_table(1_000_000)
wb = build_weight_schedule(omega, depth=6)
show(wb, "weight   ")
print(f"    amplitude scale chosen: {float(wb.scale):.0e}, "
      f"frequencies {list(wb.frequencies)}")
print()

# -- lacunary --------------------------------------------------------------

Q = [6, 60, 6000, 6_000_000, 60_000_000_000]
lb = build_lacunary_schedule(Q, depth=4)
show(lb, "lacunary ")
print(f"    beta = {lb.beta:.9f}, shifts {list(lb.frequencies)}")

# the induced far tail obeys its energy budget, checked with the exact
# rational phases of the aligned alpha
c = CoefficientSeries({-q: 1.0 / 5**0.5 for q in Q})
gamma = gamma_coeffs(c, lb.f)
for N in range(1, 5):
    budget = Fraction(lb.eps[N - 1]) ** 2 * 10
    rep = tail_estimate_check(gamma, lb.beta, lb.frequencies[N - 1],
                              budget, alpha=lb.alpha_mid)
    print(f"    tail past shift {N}: ratio to budget {float(rep.ratio):.2e} "
          f"({'pass' if rep.passed else 'FAIL'})")
print()

# -- couples ---------------------------------------------------------------

cb = build_couples_schedule(GrowthFunction.identity(), depth=4)
show(cb, "couples  ")
# the exact tolerance underflows a double; the JSON export keeps it as a
# scientific-notation string
eps_json = cb.to_json_dict()["sequences"]["epseps"]
print(f"    last tolerance {eps_json[-1]} (float() of it: {float(cb.eps[-1])})")
print(f"    last frequency has {len(str(cb.frequencies[-1]))} digits")
print()

# -- the case split at the far end -----------------------------------------

# every shift lands in one of two workable cases; both occur in practice
counts = {}
for nu in range(1, 2001):
    rep = case_split(lb.beta, nu, Fraction(1, 2), 3)
    counts[rep.case] = counts.get(rep.case, 0) + 1
print(f"case split over 2000 shifts: {counts}")
