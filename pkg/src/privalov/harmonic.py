"""Harmonic measure on cone domains by walk on spheres.

Each walk jumps from its current point to a uniform point on the largest
circle around it that fits in the domain, and stops once it is within delta
of the boundary; the stopped point is charged to the nearest boundary piece.
Walks are advanced in vectorized lockstep, and the random stream is split
into named substreams so a run is reproducible bit for bit for a given
(seed, streams) pair regardless of batch internals.

A slow fixed-step random walk over the same geometry serves as an
independent cross-check; it shares nothing with the sphere walk except the
piece distance formulas, which it reimplements in a compiled kernel from the
flat geometry arrays.  On the full circle the domain is the unit disk and
the exact Poisson integral is available in closed form, which pins the
absolute normalization.
"""

from __future__ import annotations

import cmath
import io
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numba
import numpy as np

from privalov.cones import TAU, PrivalovDomain
from privalov.series import CoefficientSeries

__all__ = [
    "WalkAbortError",
    "HMEstimate",
    "GapRow",
    "harmonic_measure",
    "fixed_step_measure",
    "omega_gap_table",
    "gap_table_csv",
    "disk_arc_measure",
    "angle_bin_counts",
    "subharmonic_check",
    "SubharmonicReport",
]

LOG_FLOOR = 1e-300
N_DIRECTIONS = 4096


class WalkAbortError(RuntimeError):
    """A walk exceeded its step budget; results would be biased, so none are
    returned."""


@dataclass
class HMEstimate:
    """Monte Carlo harmonic measure split over the boundary pieces."""

    piece_hits: np.ndarray
    omega: np.ndarray
    stderr: np.ndarray
    piece_tags: Tuple[str, ...]
    piece_gaps: Tuple[int, ...]
    samples: int
    delta: float
    seed: int
    streams: int
    method: str
    step: Optional[float] = None
    endpoints: Optional[np.ndarray] = None

    def to_json_dict(self) -> dict:
        rows = []
        for k in range(len(self.piece_hits)):
            rows.append(
                {
                    "id": k,
                    "tag": self.piece_tags[k],
                    "gap": self.piece_gaps[k],
                    "hits": int(self.piece_hits[k]),
                    "omega": float(self.omega[k]),
                    "stderr": float(self.stderr[k]),
                }
            )
        out = {
            "pieces": rows,
            "samples": self.samples,
            "delta": self.delta,
            "seed": self.seed,
            "streams": self.streams,
            "method": self.method,
        }
        if self.step is not None:
            out["step"] = self.step
        return out


def _binomial_stderr(omega: np.ndarray, n: int) -> np.ndarray:
    return np.sqrt(np.clip(omega * (1.0 - omega), 0.0, None) / n)


def _wos_batch(domain, z0, count, rng, delta, max_steps):
    """Advance `count` walks in lockstep until all stop in the delta shell."""
    z = np.full(count, complex(z0), dtype=np.complex128)
    piece = np.full(count, -1, dtype=np.int64)
    end = np.empty(count, dtype=np.complex128)
    alive = np.arange(count)
    iterations = 0
    while alive.size:
        if iterations >= max_steps:
            raise WalkAbortError(
                f"{alive.size} of {count} walks still running after {iterations} jumps"
            )
        d, idx = domain.nearest_boundary(z[alive])
        done = d <= delta
        if done.any():
            stopped = alive[done]
            piece[stopped] = idx[done]
            end[stopped] = z[stopped]
            alive = alive[~done]
            d = d[~done]
        if alive.size:
            theta = rng.uniform(0.0, TAU, alive.size)
            z[alive] += d * np.exp(1j * theta)
        iterations += 1
    return piece, end


def harmonic_measure(
    domain: PrivalovDomain,
    z0: complex,
    samples: int = 100_000,
    delta: float = 1e-5,
    seed: int = 0,
    streams: int = 1,
    max_steps: int = 10**6,
    keep_endpoints: bool = False,
) -> HMEstimate:
    """Estimate the harmonic measure of every boundary piece from z0."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if streams < 1:
        raise ValueError("streams must be >= 1")
    if not domain.contains(complex(z0)):
        raise ValueError(f"reference point {z0!r} is outside the domain")
    if not (0.0 < delta < 0.5):
        raise ValueError("delta must be in (0, 0.5)")

    children = np.random.SeedSequence(seed).spawn(streams)
    base, extra = divmod(samples, streams)
    counts = [base + (1 if s < extra else 0) for s in range(streams)]

    pieces_list = []
    ends_list = []
    for s in range(streams):
        if counts[s] == 0:
            continue
        rng = np.random.default_rng(children[s])
        p, e = _wos_batch(domain, z0, counts[s], rng, delta, max_steps)
        pieces_list.append(p)
        ends_list.append(e)
    pieces = np.concatenate(pieces_list)
    ends = np.concatenate(ends_list) if keep_endpoints else None

    hits = np.bincount(pieces, minlength=len(domain.pieces))
    omega = hits / samples
    return HMEstimate(
        piece_hits=hits,
        omega=omega,
        stderr=_binomial_stderr(omega, samples),
        piece_tags=tuple(p.tag for p in domain.pieces),
        piece_gaps=tuple(p.gap for p in domain.pieces),
        samples=samples,
        delta=delta,
        seed=seed,
        streams=streams,
        method="wos",
        endpoints=ends,
    )


# ---------------------------------------------------------------------------
# gap aggregation


@dataclass(frozen=True)
class GapRow:
    gap: int
    length: float
    omega: float
    stderr: float


def omega_gap_table(domain: PrivalovDomain, estimate: HMEstimate) -> Tuple[GapRow, ...]:
    """Aggregate piece measures by gap; gap -1 collects the arcs of E."""
    rows = []
    omega_e = sum(
        float(estimate.omega[k]) for k, g in enumerate(estimate.piece_gaps) if g < 0
    )
    rows.append(
        GapRow(-1, domain.base.measure, omega_e, _scalar_stderr(omega_e, estimate.samples))
    )
    for gap_id in domain.gap_ids:
        w = sum(
            float(estimate.omega[k])
            for k, g in enumerate(estimate.piece_gaps)
            if g == gap_id
        )
        rows.append(
            GapRow(gap_id, domain.gap_length(gap_id), w, _scalar_stderr(w, estimate.samples))
        )
    return tuple(rows)


def _scalar_stderr(omega: float, n: int) -> float:
    return math.sqrt(max(omega * (1.0 - omega), 0.0) / n)


def gap_table_csv(rows: Sequence[GapRow]) -> str:
    buf = io.StringIO()
    buf.write("gap,length,omega,stderr\n")
    for r in rows:
        buf.write(f"{r.gap},{r.length!r},{r.omega!r},{r.stderr!r}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# exact disk comparison


def disk_arc_measure(z0: complex, lo: float, hi: float) -> float:
    """Exact harmonic measure of the circle arc [lo, hi] seen from z0 in the
    unit disk, via the disk automorphism sending z0 to 0."""
    z0 = complex(z0)
    if abs(z0) >= 1.0:
        raise ValueError("reference point must be inside the open disk")
    if not 0.0 < hi - lo < TAU:
        raise ValueError("arc must have length strictly between 0 and the full circle")

    def image_angle(t):
        w = cmath.exp(1j * t)
        return cmath.phase((w - z0) / (1.0 - z0.conjugate() * w))

    return ((image_angle(hi) - image_angle(lo)) % TAU) / TAU


def angle_bin_counts(endpoints: np.ndarray, bounds: Sequence[Tuple[float, float]]) -> np.ndarray:
    """Count stopped points by angle bin; bins are half-open [lo, hi) arcs."""
    ang = np.mod(np.angle(np.asarray(endpoints)), TAU)
    out = np.empty(len(bounds), dtype=np.int64)
    for k, (lo, hi) in enumerate(bounds):
        rel = np.mod(ang - (lo % TAU), TAU)
        out[k] = int(np.count_nonzero(rel < (hi - lo)))
    return out


# ---------------------------------------------------------------------------
# fixed-step cross-check


@numba.njit(cache=True)
def _flat_nearest(codes, params, x, y):
    best = 1.0e300
    best_k = -1
    for k in range(codes.size):
        if codes[k] == 1:
            px = params[k, 0]
            py = params[k, 1]
            dx = params[k, 2] - px
            dy = params[k, 3] - py
            ll = dx * dx + dy * dy
            if ll == 0.0:
                ex = x - px
                ey = y - py
            else:
                u = ((x - px) * dx + (y - py) * dy) / ll
                if u < 0.0:
                    u = 0.0
                elif u > 1.0:
                    u = 1.0
                ex = x - (px + u * dx)
                ey = y - (py + u * dy)
            d = math.sqrt(ex * ex + ey * ey)
        else:
            r0 = params[k, 0]
            lo = params[k, 1]
            hi = params[k, 2]
            ang = math.atan2(y, x) % TAU
            rel = (ang - (lo % TAU)) % TAU
            r = math.sqrt(x * x + y * y)
            if rel <= hi - lo:
                d = abs(r - r0)
            else:
                e1 = math.sqrt((x - r0 * math.cos(lo)) ** 2 + (y - r0 * math.sin(lo)) ** 2)
                e2 = math.sqrt((x - r0 * math.cos(hi)) ** 2 + (y - r0 * math.sin(hi)) ** 2)
                d = min(e1, e2)
        if d < best:
            best = d
            best_k = k
    return best, best_k


@numba.njit(cache=True)
def _fixed_step_kernel(codes, params, x0, y0, step, n_walks, max_steps, kernel_seed, dir_x, dir_y):
    np.random.seed(kernel_seed)
    out = np.full(n_walks, -1, dtype=np.int64)
    n_dirs = dir_x.size
    for w in range(n_walks):
        x = x0
        y = y0
        taken = 0
        while taken <= max_steps:
            d, k = _flat_nearest(codes, params, x, y)
            if d <= step:
                out[w] = k
                break
            # blind batch: cannot reach within `step` of the boundary, so no
            # distance checks are needed along the way
            budget = int((d - step) / step)
            if budget < 1:
                budget = 1
            for _ in range(budget):
                j = int(np.random.random() * n_dirs)
                x += dir_x[j]
                y += dir_y[j]
            taken += budget
    return out


def _direction_table(step: float) -> Tuple[np.ndarray, np.ndarray]:
    ang = np.arange(N_DIRECTIONS) * (TAU / N_DIRECTIONS)
    return step * np.cos(ang), step * np.sin(ang)


def fixed_step_measure(
    domain: PrivalovDomain,
    z0: complex,
    samples: int = 500,
    step: float = 1e-3,
    seed: int = 0,
    max_steps: int = 10**8,
) -> HMEstimate:
    """Fixed-step random walk estimate of the same piece measures.

    Directions are drawn from a table of 4096 equally spaced angles, which
    quantizes the walk but is far below the Monte Carlo noise at these sample
    counts.  A walk is absorbed once it is within one step of the boundary.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not (0.0 < step < 0.25):
        raise ValueError("step must be in (0, 0.25)")
    z0 = complex(z0)
    if not domain.contains(z0):
        raise ValueError(f"reference point {z0!r} is outside the domain")

    codes, params = domain.flat_geometry()
    kernel_seed = int(
        np.random.SeedSequence([seed, 0x5AFE]).generate_state(1, dtype=np.uint32)[0]
    )
    dir_x, dir_y = _direction_table(step)
    pieces = _fixed_step_kernel(
        codes, params, z0.real, z0.imag, step, samples, max_steps, kernel_seed, dir_x, dir_y
    )
    if np.any(pieces < 0):
        bad = int(np.count_nonzero(pieces < 0))
        raise WalkAbortError(f"{bad} of {samples} fixed-step walks hit the step budget")

    hits = np.bincount(pieces, minlength=len(domain.pieces))
    omega = hits / samples
    return HMEstimate(
        piece_hits=hits,
        omega=omega,
        stderr=_binomial_stderr(omega, samples),
        piece_tags=tuple(p.tag for p in domain.pieces),
        piece_gaps=tuple(p.gap for p in domain.pieces),
        samples=samples,
        delta=step,
        seed=seed,
        streams=1,
        method="fixed_step",
        step=step,
    )


# ---------------------------------------------------------------------------
# subharmonic sampling


@dataclass(frozen=True)
class SubharmonicReport:
    """Stopped-walk mean of log|1 + G| against its interior value.

    For harmonic log|1 + G| the margin has mean exactly zero; subharmonicity
    only ever pushes it upward, so the one-sided check is margin >= -3 sigma.
    """

    z0: complex
    interior_value: float
    boundary_mean: float
    stderr: float
    samples: int

    @property
    def margin(self) -> float:
        return self.boundary_mean - self.interior_value


def _log_abs_one_plus(series: CoefficientSeries, zs: np.ndarray) -> np.ndarray:
    vals = np.zeros_like(zs, dtype=np.complex128)
    for n, c in series.items():
        vals += c * zs**n
    return np.log(np.maximum(np.abs(1.0 + vals), LOG_FLOOR))


def subharmonic_check(
    series: CoefficientSeries,
    domain: PrivalovDomain,
    z0: complex,
    samples: int = 100_000,
    delta: float = 1e-5,
    seed: int = 0,
    max_steps: int = 10**6,
) -> SubharmonicReport:
    """Sample the sub-mean-value inequality for log|1 + G| at z0.

    G must be a power series (no negative frequencies); it is evaluated
    directly, with the modulus floored at 1e-300 before the log so a zero of
    1 + G gives a large negative value instead of -inf.
    """
    if not series.is_empty and series.n_min < 0:
        raise ValueError("subharmonic check needs a power series, got negative frequencies")
    z0 = complex(z0)
    est = harmonic_measure(
        domain,
        z0,
        samples=samples,
        delta=delta,
        seed=seed,
        max_steps=max_steps,
        keep_endpoints=True,
    )
    values = _log_abs_one_plus(series, est.endpoints)
    interior = float(_log_abs_one_plus(series, np.array([z0]))[0])
    mean = float(np.mean(values))
    spread = float(np.std(values, ddof=1)) if samples > 1 else 0.0
    return SubharmonicReport(
        z0=z0,
        interior_value=interior,
        boundary_mean=mean,
        stderr=spread / math.sqrt(samples),
        samples=samples,
    )
