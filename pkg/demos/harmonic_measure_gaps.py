"""
Harmonic measure of slit disks by walk on spheres
=================================================

A closed arc set E on the unit circle leaves finitely many open gaps.
The domain of interest is the unit disk slit along the two tangent
segments and the inner arc that each gap hangs below, and the question
is how much harmonic measure (seen from the center) the extra boundary
of each gap carries.

Three experiments:

 1. E = the whole circle.  The estimate must reproduce the uniform law;
    with the exit angles kept we can bin them and compare against the
    exact value 1/8 per octant.
 2. One gap of varying length.  The gap's share of harmonic measure
    scales roughly linearly with its length, and the table is printed in
    the same CSV shape the command line tool emits.
 3. Same seed, same run: the estimate is reproducible to the last bit.
"""

import math

import numpy as np

from privalov import (
    angle_bin_counts,
    domain_from_arcs,
    gap_table_csv,
    harmonic_measure,
    omega_gap_table,
)

TAU = 2.0 * math.pi
SAMPLES = 50_000

# -- 1: the uniform law ----------------------------------------------------

disk = domain_from_arcs([(0.0, TAU)])
est = harmonic_measure(disk, 0j, samples=SAMPLES, seed=11, keep_endpoints=True)
bounds = [(TAU * k / 8, TAU * (k + 1) / 8) for k in range(8)]
counts = angle_bin_counts(est.endpoints, bounds)

print("full circle, exit angles by octant (expect 1/8 each)")
se = math.sqrt((1 / 8) * (7 / 8) / SAMPLES)
for k, c in enumerate(counts):
    p = c / SAMPLES
    print(f"  octant {k}: {p:.4f}  ({(p - 1/8) / se:+.2f} se)")
print()

# -- 2: one gap, four lengths ----------------------------------------------

print("single gap at angle 0, measure of the gap boundary vs gap length")
print()
for g in (0.4, 0.2, 0.1, 0.05):
    domain = domain_from_arcs([(g / 2, TAU - g / 2)])
    est = harmonic_measure(domain, 0j, samples=SAMPLES, seed=11)
    rows = omega_gap_table(domain, est)
    gap_row = [r for r in rows if r.gap == 0][0]
    print(f"  |J| = {g}: omega = {gap_row.omega:.4f}, "
          f"omega/|J| = {gap_row.omega / g:.3f}")
print()

domain = domain_from_arcs([(0.2, TAU - 0.2)])
est = harmonic_measure(domain, 0j, samples=SAMPLES, seed=11)
print("full gap table for |J| = 0.4, as the CLI prints it:")
print(gap_table_csv(omega_gap_table(domain, est)))

# -- 3: determinism --------------------------------------------------------

again = harmonic_measure(domain, 0j, samples=SAMPLES, seed=11)
same = bool(np.all(again.piece_hits == est.piece_hits))
print(f"re-run with the same seed reproduces every hit count: {same}")
