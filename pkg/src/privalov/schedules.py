"""Counterexample schedule builders.

Each builder produces a finite-depth schedule: a decreasing amplitude
sequence, a strictly increasing frequency sequence, and a table of
verified inequalities tying the two together through the modulus-of-
smoothness model eps(K).  The defining conditions are asymptotic in the
source material; here every instance is checked with an explicit margin
factor (margin * 2^k at depth k), in exact rational arithmetic wherever
the quantities collapse below double precision.

Three variants:

  weight    amplitudes b(k) against a weight omega, frequencies n(k)
            picked so b(k) * eps(k/b(k)) * omega(n(k)) clears the margin,
  lacunary  amplitudes d(N) against a base frequency sequence, shifts
            nu(N) picked by a certified phase criterion,
  couples   amplitudes d(N) with frequency couples {nu(N)-1, nu(N)}
            placed by a growth function through the iterated model.

All schedule arithmetic runs in Fraction: the lacunary depth-4 tolerance
is ~1e-46 and the couples depth-4 tolerance is far below 1e-300, so
doubles underflow long before the builders bottom out.
"""

from __future__ import annotations

import cmath
import json
import math
import numbers
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from privalov.alpha import (
    LacunarySequence,
    beta_from_alpha,
    construct_alpha,
    frac_multiple,
)
from privalov.series import CoefficientSeries, WeightRangeError, WeightSequence

Rational = Union[int, Fraction]

# Rational upper bound on pi (355/113 = 3.14159292... > pi), so that
# 2 * PI_HI * frac certifies the chord bound |1 - e^{2*pi*i*frac}| from above.
PI_HI = Fraction(355, 113)

# Floating slack on the strict phase-separation inequality |1-e^{i*beta*nu}| > 1.
SEPARATION_SLACK = 1e-9


class ScheduleRangeError(ValueError):
    """A builder ran out of table or search range before satisfying a condition."""

    def __init__(self, message: str, needed=None, limit=None):
        super().__init__(message)
        self.needed = needed
        self.limit = limit


class ScheduleCheckError(RuntimeError):
    """Internal guard: a builder assembled a bundle whose recheck failed."""


class CaseSplitError(RuntimeError):
    """The fallback branch of the case split missed its separation constant."""


# -- number formatting -----------------------------------------------------


def number_json(x):
    """JSON-safe value for a possibly huge or tiny exact number.

    ints stay ints (arbitrary precision is legal JSON), Fractions become
    floats when representable and scientific strings like "3.9e-3280"
    when they over- or underflow double range.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a schedule quantity")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return x
    if not isinstance(x, Fraction):
        raise TypeError(f"unsupported number type {type(x).__name__}")
    if x == 0:
        return 0.0
    try:
        f = float(x)
    except OverflowError:
        f = math.inf
    if math.isfinite(f) and f != 0.0:
        return f
    with localcontext() as ctx:
        ctx.prec = 12
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, ".6e")


# -- modulus-of-smoothness model -------------------------------------------


@dataclass(frozen=True)
class EpsilonModel:
    """eps(K) = min(1/2, c_eps * K^-p), the decay model for the companion measure.

    c1 is the measure constant carried alongside in reports; it takes no
    part in the numerics here.
    """

    c_eps: Fraction = Fraction(1)
    p: Union[int, float] = 2
    c1: Fraction = Fraction(1, 4)

    def __post_init__(self):
        if not self.c_eps > 0:
            raise ValueError("c_eps must be positive")
        if not self.p > 0:
            raise ValueError("exponent p must be positive")
        if not (0 < self.c1 < 1):
            raise ValueError("c1 must lie in (0, 1)")

    def eval(self, K: float) -> float:
        if not K > 0:
            raise ValueError("K must be positive")
        return min(0.5, float(self.c_eps) * float(K) ** (-float(self.p)))

    def eval_exact(self, K: Rational) -> Fraction:
        """Exact rational eps(K); requires an integer exponent."""
        if isinstance(K, float) or not isinstance(K, numbers.Rational):
            raise TypeError("exact evaluation needs a rational K")
        K = Fraction(K)
        if not K > 0:
            raise ValueError("K must be positive")
        if not isinstance(self.p, int):
            raise TypeError("exact evaluation needs an integer exponent p")
        return min(Fraction(1, 2), Fraction(self.c_eps) / K**self.p)

    def to_json_dict(self) -> dict:
        return {
            "c_eps": number_json(Fraction(self.c_eps)),
            "p": self.p,
            "c1": number_json(Fraction(self.c1)),
        }


def eps(K: float, model: EpsilonModel | None = None) -> float:
    """Convenience wrapper: eps(K) under `model` (default model if omitted)."""
    return (model or EpsilonModel()).eval(K)


# -- growth functions ------------------------------------------------------


class GrowthFunction:
    """Increasing gauge ell(n) used to place the couples frequencies.

    Two kinds: the identity rule ell(n) = n, evaluated symbolically so
    indices with thousands of digits cost nothing, and an explicit table
    of strictly increasing values.
    """

    def __init__(self, kind: str, values: Tuple[float, ...] = (), n_start: int = 1):
        if kind not in ("identity", "table"):
            raise ValueError(f"unknown growth kind {kind!r}")
        if kind == "table":
            if len(values) == 0:
                raise ValueError("empty growth table")
            for a, b in zip(values, values[1:]):
                if not b > a:
                    raise ValueError("growth table must be strictly increasing")
        self.kind = kind
        self.values = tuple(float(v) for v in values)
        self.n_start = int(n_start)

    @classmethod
    def identity(cls) -> "GrowthFunction":
        return cls("identity")

    @classmethod
    def from_table(cls, values: Sequence[float], n_start: int = 1) -> "GrowthFunction":
        return cls("table", tuple(values), n_start)

    @property
    def n_end(self) -> int:
        if self.kind == "identity":
            raise ValueError("identity growth has no table range")
        return self.n_start + len(self.values) - 1

    def value_exact(self, n: int) -> Fraction:
        if self.kind == "identity":
            return Fraction(int(n))
        if not (self.n_start <= n <= self.n_end):
            raise ScheduleRangeError(
                f"growth table covers [{self.n_start}, {self.n_end}], not {n}",
                needed=n,
                limit=self.n_end,
            )
        return Fraction(self.values[n - self.n_start])

    def value(self, n: int) -> float:
        return float(self.value_exact(n))

    def min_index_exceeding(self, target: Rational) -> int:
        """Smallest n with ell(n) > target (exact comparison)."""
        target = Fraction(target)
        if self.kind == "identity":
            return math.floor(target) + 1
        for i, v in enumerate(self.values):
            if Fraction(v) > target:
                return self.n_start + i
        raise ScheduleRangeError(
            f"growth table tops out at {self.values[-1]!r} <= required {float(target)!r}",
            needed=number_json(target),
            limit=self.values[-1],
        )

    def to_json_dict(self) -> dict:
        if self.kind == "identity":
            return {"kind": "identity"}
        return {
            "kind": "table",
            "n_start": self.n_start,
            "values": list(self.values),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "GrowthFunction":
        if data.get("kind") == "identity":
            return cls.identity()
        return cls.from_table(data["values"], int(data.get("n_start", 1)))

    @classmethod
    def from_file(cls, path) -> "GrowthFunction":
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        stripped = text.strip()
        if stripped == "identity":
            return cls.identity()
        return cls.from_json_dict(json.loads(text))


# -- verified bundles ------------------------------------------------------


@dataclass(frozen=True)
class CheckRow:
    """One verified inequality; lhs and rhs keep their exact values."""

    name: str
    passed: bool
    lhs: object
    rhs: object

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "lhs": number_json(self.lhs),
            "rhs": number_json(self.rhs),
        }


@dataclass(frozen=True)
class ScheduleBundle:
    """A built schedule plus the recheck table that certifies it.

    amplitudes and eps are exact Fractions; frequencies are the positive
    integers n(k) (the induced series f places them on the negative side).
    """

    variant: str
    margin: Fraction
    amplitudes: Tuple[Fraction, ...]
    frequencies: Tuple[int, ...]
    eps: Tuple[Fraction, ...]
    checks: Tuple[CheckRow, ...]
    f: CoefficientSeries
    scale: Optional[Fraction] = None
    beta: Optional[float] = None
    alpha_mid: Optional[Fraction] = None
    base_sequence: Optional[LacunarySequence] = None
    growth: Optional[GrowthFunction] = None
    omega_meta: Optional[dict] = None

    def __post_init__(self):
        if self.variant not in ("weight", "lacunary", "couples"):
            raise ValueError(f"unknown variant {self.variant!r}")
        k = len(self.amplitudes)
        if k < 1 or len(self.frequencies) != k or len(self.eps) != k:
            raise ValueError("amplitude/frequency/eps lengths disagree")
        for a in self.amplitudes:
            if not a > 0:
                raise ValueError("amplitudes must be positive")
        for a, b in zip(self.amplitudes, self.amplitudes[1:]):
            if not b < a:
                raise ValueError("amplitudes must decrease strictly")
        prev = 0
        for n in self.frequencies:
            if not isinstance(n, int) or n <= prev:
                raise ValueError("frequencies must be strictly increasing positive ints")
            prev = n

    @property
    def depth(self) -> int:
        return len(self.amplitudes)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.checks)

    def failing(self) -> Tuple[CheckRow, ...]:
        return tuple(row for row in self.checks if not row.passed)

    def to_json_dict(self) -> dict:
        amp = [number_json(a) for a in self.amplitudes]
        eps_vals = [number_json(e) for e in self.eps]
        if self.variant == "weight":
            seqs = {
                "b": amp,
                "n": list(self.frequencies),
                "eps": eps_vals,
                "scale": number_json(self.scale),
                "omega": dict(self.omega_meta or {}),
            }
        elif self.variant == "lacunary":
            seqs = {
                "d": amp,
                "nu": list(self.frequencies),
                "eps": eps_vals,
                "beta": self.beta,
                "alpha": f"{self.alpha_mid.numerator}/{self.alpha_mid.denominator}",
                "q": list(self.base_sequence),
            }
        else:
            seqs = {
                "d": amp,
                "nu": list(self.frequencies),
                "epseps": eps_vals,
                "ell": self.growth.to_json_dict(),
            }
        return {
            "variant": self.variant,
            "margin": number_json(self.margin),
            "sequences": seqs,
            "checks": [row.to_json_dict() for row in self.checks],
            "f": self.f.to_json_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _sealed(bundle: ScheduleBundle) -> ScheduleBundle:
    # builders must never hand out a bundle whose own recheck fails
    if not bundle.passed:
        names = ", ".join(row.name for row in bundle.failing())
        raise ScheduleCheckError(f"bundle recheck failed: {names}")
    return bundle


# -- certified chord bounds ------------------------------------------------


def _chord_upper(frac: Fraction) -> Fraction:
    """Rational upper bound for |1 - e^{2*pi*i*frac}| = 2*sin(pi*frac)."""
    m = min(frac, 1 - frac)
    return 2 * PI_HI * m


def _chord_float(frac: Fraction) -> float:
    """Accurate double value of |1 - e^{2*pi*i*frac}| from the reduced phase."""
    return 2.0 * abs(math.sin(math.pi * float(frac)))


# -- weight schedule -------------------------------------------------------


def _weight_attempt(
    omega: WeightSequence,
    depth: int,
    margin: Fraction,
    model: EpsilonModel,
    scale: Fraction,
):
    # Thresholds are tested level by level as the amplitude chain grows.
    # Once eps leaves its cap the chain collapses cubically, so a doomed
    # scale must fail fast, before its exact denominators explode.
    b = [scale]
    eps_list = [model.eval_exact(Fraction(1) / scale)]
    freqs = []
    prev = 0
    for k in range(1, depth + 1):
        threshold = margin * 2**k / (b[-1] * eps_list[-1])
        try:
            thr_f = float(threshold)
        except OverflowError:
            raise WeightRangeError(
                "required weight level overflows double precision",
                needed=math.inf,
            ) from None
        n = omega.first_index_at_least(thr_f, start=prev + 1)
        # float threshold may round below the exact one; bump until certain
        while Fraction(omega.value(n)) < threshold:
            if n >= omega.n_end and Fraction(omega.last) < threshold:
                raise WeightRangeError(
                    f"weight table tops out at {omega.last!r} < required {thr_f!r}",
                    needed=thr_f,
                )
            n += 1
        freqs.append(n)
        prev = n
        if k < depth:
            # greedy halving chain: keeps sum_{j>k} b(j) <= b(k)*eps_k/(margin*2^k)
            nxt = min(b[-1] / 2, b[-1] * eps_list[-1] / (margin * 2 ** (k + 1)))
            b.append(nxt)
            eps_list.append(model.eval_exact(Fraction(k + 1) / nxt))
    return b, eps_list, freqs


def build_weight_schedule(
    omega: WeightSequence,
    depth: int,
    margin: Rational = 2,
    model: EpsilonModel | None = None,
    scale: Optional[Rational] = None,
    max_scale_exponent: int = 60,
) -> ScheduleBundle:
    """Amplitudes b(k) and frequencies n(k) against the weight omega.

    Verifies, with margin factor margin * 2^k,

        sum_{j>k} b(j) <= b(k) * eps(k/b(k)) / (margin * 2^k)      (tail_decay)
        b(k) * eps(k/b(k)) * omega(n(k)) >= margin * 2^k           (weight_divergence)

    The naive unit-amplitude chain collapses triple-exponentially and
    pushes the omega thresholds far past any stored table, so b(1) is a
    scale searched upward in powers of 10 until the thresholds land
    inside omega's range; the inequalities are then verified on the
    actual scaled values, so nothing depends on the search itself.  Pass
    `scale` to skip the search (range errors then surface directly).
    """

    model = model or EpsilonModel()
    margin = Fraction(margin)
    if depth < 2:
        raise ValueError("depth must be at least 2")
    if not margin > 1:
        raise ValueError("margin must exceed 1")

    last_err: Optional[WeightRangeError] = None
    if scale is not None:
        candidates = [Fraction(scale)]
    else:
        candidates = [Fraction(10) ** m for m in range(0, max_scale_exponent + 1)]
    for cand in candidates:
        try:
            b, eps_list, freqs = _weight_attempt(omega, depth, margin, model, cand)
        except WeightRangeError as err:
            last_err = err
            continue
        checks = []
        for k in range(1, depth):
            tail = sum(b[k:], Fraction(0))
            rhs = b[k - 1] * eps_list[k - 1] / (margin * 2**k)
            checks.append(CheckRow(f"tail_decay_{k}", tail <= rhs, tail, rhs))
        for k in range(1, depth + 1):
            lhs = b[k - 1] * eps_list[k - 1] * Fraction(omega.value(freqs[k - 1]))
            rhs = margin * Fraction(2) ** k
            checks.append(CheckRow(f"weight_divergence_{k}", lhs >= rhs, lhs, rhs))
        f = CoefficientSeries({-n: float(bk) for n, bk in zip(freqs, b)})
        bundle = ScheduleBundle(
            variant="weight",
            margin=margin,
            amplitudes=tuple(b),
            frequencies=tuple(freqs),
            eps=tuple(eps_list),
            checks=tuple(checks),
            f=f,
            scale=cand,
            omega_meta={
                "n_start": omega.n_start,
                "n_end": omega.n_end,
                "last": omega.last,
            },
        )
        return _sealed(bundle)
    raise ScheduleRangeError(
        "no amplitude scale fits the weight table: "
        + (str(last_err) if last_err else "empty candidate list"),
        needed=None if last_err is None else last_err.needed,
        limit=omega.last,
    )


# -- lacunary schedule -----------------------------------------------------


def build_lacunary_schedule(
    base: Union[LacunarySequence, Sequence[int]],
    depth: int,
    margin: Rational = 2,
    model: EpsilonModel | None = None,
    max_scan: int = 100_000,
) -> ScheduleBundle:
    """Amplitudes d(N) and shifts nu(N) over a base frequency sequence.

    The number alpha is reconstructed from `base` (midpoint of its exact
    enclosure) and beta = 2*pi*alpha.  Verified with margin:

        margin * sum_{n>N} d(n)^2 < eps_N^2                        (tail_energy)
        |1 - e^{i*beta*q}| < eps_N for stored q > nu(N)            (far_phase)
        |1 - e^{i*beta*nu(N)}| > 1                                 (shift_separation)

    where eps_N = (d(N)/N) * eps(N/d(N)).  far_phase is certified, not
    sampled: 2*sin(pi*x) < 2*PI_HI*x for x > 0, so comparing the
    rational bound 2*PI_HI*{alpha q} against eps_N decides the modulus
    inequality exactly.  shift_separation is checked in doubles on the
    reduced phase with slack 1e-9; consecutive candidates cannot both
    fail it, so the scan ends almost immediately.
    """

    model = model or EpsilonModel()
    margin = Fraction(margin)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if not margin > 1:
        raise ValueError("margin must exceed 1")
    if not isinstance(base, LacunarySequence):
        base = LacunarySequence(base)

    enclosure = construct_alpha(base)
    alpha = enclosure.mid
    beta = beta_from_alpha(enclosure)
    fracs = [frac_multiple(alpha, q) for q in base]
    chord_bounds = [_chord_upper(fr) for fr in fracs]

    d = [Fraction(1)]
    eps_list = []
    for N in range(1, depth + 1):
        dn = d[-1]
        eps_n = (dn / N) * model.eval_exact(Fraction(N) / dn)
        eps_list.append(eps_n)
        if N < depth:
            d.append(min(dn / 2, eps_n / (2 * margin)))

    nus = []
    prev = 0
    for N in range(1, depth + 1):
        eps_n = eps_list[N - 1]
        # smallest nu that excludes every uncertified base frequency
        nu_floor = max(
            (q for q, cb in zip(base, chord_bounds) if cb > eps_n), default=1
        )
        cand = max(nu_floor, prev + 1)
        found = None
        scanned = []
        for _ in range(max_scan):
            modulus = _chord_float(frac_multiple(alpha, cand))
            scanned.append((cand, modulus))
            if modulus > 1.0 + SEPARATION_SLACK:
                found = cand
                break
            cand += 1
        if found is None:
            sample = ", ".join(f"|1-e^(ib*{m})|={v:.6f}" for m, v in scanned[:5])
            raise ScheduleRangeError(
                f"no shift below scan cap separates from 1 at depth {N}: {sample}",
                needed=1.0 + SEPARATION_SLACK,
                limit=max_scan,
            )
        nus.append(found)
        prev = found

    checks = []
    for N in range(1, depth + 1):
        eps_n = eps_list[N - 1]
        tail = margin * sum((x * x for x in d[N:]), Fraction(0))
        checks.append(CheckRow(f"tail_energy_{N}", tail < eps_n**2, tail, eps_n**2))
        far = [cb for q, cb in zip(base, chord_bounds) if q > nus[N - 1]]
        lhs = max(far, default=Fraction(0))
        checks.append(CheckRow(f"far_phase_{N}", lhs <= eps_n, lhs, eps_n))
        sep = _chord_float(frac_multiple(alpha, nus[N - 1]))
        checks.append(
            CheckRow(f"shift_separation_{N}", sep > 1.0 + SEPARATION_SLACK, sep, 1.0)
        )

    f = CoefficientSeries({-nu: float(dn) for nu, dn in zip(nus, d)})
    bundle = ScheduleBundle(
        variant="lacunary",
        margin=margin,
        amplitudes=tuple(d),
        frequencies=tuple(nus),
        eps=tuple(eps_list),
        checks=tuple(checks),
        f=f,
        beta=beta,
        alpha_mid=alpha,
        base_sequence=base,
    )
    return _sealed(bundle)


# -- couples schedule ------------------------------------------------------


def iterated_eps(N: int, d: Fraction, model: EpsilonModel) -> Fraction:
    """The twice-composed tolerance

        (d/N)^2 * eps(N/d) * eps((N/d)^2 / eps(N/d)),

    exact.  Collapses like (d/N)^12 under the default model, so depth 4
    already lives thousands of decimal orders below double range.
    """
    d = Fraction(d)
    if not (d > 0 and N >= 1):
        raise ValueError("need d > 0 and N >= 1")
    ratio = Fraction(N) / d
    inner = model.eval_exact(ratio)
    return (1 / ratio**2) * inner * model.eval_exact(ratio**2 / inner)


def build_couples_schedule(
    growth: GrowthFunction,
    depth: int,
    margin: Rational = 2,
    model: EpsilonModel | None = None,
) -> ScheduleBundle:
    """Amplitudes d(N) with frequency couples {nu(N)-1, nu(N)}.

    Verified with margin, writing epseps_N for iterated_eps(N, d(N)):

        margin * sum_{n>N} d(n)^2 < epseps_N^2                     (tail_energy)
        ell(nu(N)) > 1 / epseps_N                                  (growth_threshold)

    nu(N) is the smallest index past nu(N-1)+1 whose gauge value clears
    the threshold; couples therefore never overlap.  With the identity
    gauge the indices are exact Python ints (depth 4 needs thousands of
    digits).  The induced series carries both members of each couple at
    amplitude d(N); those floats underflow to 0.0 beyond depth ~4, which
    is fine for the series algebra but worth knowing when plotting.
    """

    model = model or EpsilonModel()
    margin = Fraction(margin)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if not margin > 1:
        raise ValueError("margin must exceed 1")

    d = [Fraction(1)]
    ee_list = []
    for N in range(1, depth + 1):
        ee = iterated_eps(N, d[-1], model)
        ee_list.append(ee)
        if N < depth:
            d.append(min(d[-1] / 2, ee / (2 * margin)))

    nus = []
    prev = -1
    for N in range(1, depth + 1):
        target = 1 / ee_list[N - 1]
        nu = max(growth.min_index_exceeding(target), prev + 2)
        if nu - 1 <= 0:
            nu = 2  # couple {nu-1, nu} must stay on positive frequencies
        while growth.value_exact(nu) <= target:
            nu += 1
        nus.append(nu)
        prev = nu

    checks = []
    for N in range(1, depth + 1):
        ee = ee_list[N - 1]
        tail = margin * sum((x * x for x in d[N:]), Fraction(0))
        checks.append(CheckRow(f"tail_energy_{N}", tail < ee**2, tail, ee**2))
        lhs = growth.value_exact(nus[N - 1])
        rhs = 1 / ee
        checks.append(CheckRow(f"growth_threshold_{N}", lhs > rhs, lhs, rhs))

    coeffs = {}
    for nu, dn in zip(nus, d):
        coeffs[-nu] = float(dn)
        coeffs[-(nu - 1)] = float(dn)
    bundle = ScheduleBundle(
        variant="couples",
        margin=margin,
        amplitudes=tuple(d),
        frequencies=tuple(nus),
        eps=tuple(ee_list),
        checks=tuple(checks),
        f=CoefficientSeries(coeffs),
        growth=growth,
    )
    return _sealed(bundle)


# -- residual-series operations --------------------------------------------


def gamma_coeffs(c: CoefficientSeries, f: CoefficientSeries) -> CoefficientSeries:
    """Residual coefficients gamma(n) = c(n) - f^(n)."""
    return c - f


def _beta_factor(beta: float, n: int) -> complex:
    # mirror of CoefficientSeries.beta_difference so shared factors cancel
    return cmath.exp(1j * beta * n) - 1.0


@dataclass(frozen=True)
class ShiftedDecomposition:
    """Output of normalized_shift_series: q = analytic part, tail its mirror."""

    analytic: CoefficientSeries
    fourier_tail: CoefficientSeries
    normalization: complex
    shift: int

    def recombined(self) -> CoefficientSeries:
        """Undo normalization and shift; approximates beta_difference(gamma)."""
        total = self.analytic + self.fourier_tail
        return total.scaled(self.normalization).modulate(-self.shift)


def normalized_shift_series(
    gamma: CoefficientSeries,
    beta: float,
    nu: int,
    d: Union[float, Fraction],
    shift_variant: str = "nu",
) -> ShiftedDecomposition:
    """Shift and normalize the difference series of gamma.

    Multiplies gamma(n) by e^{i*beta*n} - 1, shifts frequencies by +nu
    (variant "nu") or +(nu-1) (variant "nu_minus_1"), and divides by

        d * (e^{-i*nu*beta} - 1)          for "nu",
        d * |e^{-i*(nu-1)*beta} - 1|      for "nu_minus_1".

    Returns the strictly-positive-frequency part, the <=0 part, and the
    normalization.  The anchor term (input frequency -shift) lands at
    frequency 0; its coefficient is computed as gamma(-shift)/d times
    the unit phase of the anchor factor, since the factor appearing in
    both numerator and denominator cancels identically.  For "nu" the
    phase is 1 exactly, so gamma(-nu) = d gives constant term 1.
    """

    if shift_variant not in ("nu", "nu_minus_1"):
        raise ValueError(f"unknown shift variant {shift_variant!r}")
    if nu < 1:
        raise ValueError("nu must be a positive integer")
    shift = nu if shift_variant == "nu" else nu - 1
    if shift < 1:
        raise ValueError("nu_minus_1 variant needs nu >= 2")
    d_complex = complex(float(d))
    if d_complex == 0:
        raise ValueError("normalization vanishes: d = 0")

    anchor = -shift
    anchor_coeff = gamma.amplitude(anchor)
    factor = _beta_factor(beta, anchor)
    if factor == 0:
        raise ValueError("normalization vanishes: e^{i*beta*shift} = 1")
    if anchor_coeff == 0:
        raise ValueError(f"normalization vanishes: gamma({anchor}) = 0")

    if shift_variant == "nu":
        norm = d_complex * factor
        constant = anchor_coeff / d_complex
    else:
        norm = d_complex * abs(factor)
        constant = (anchor_coeff / d_complex) * (factor / abs(factor))

    diff = gamma.beta_difference(beta).modulate(shift)
    analytic = {}
    tail = {0: constant}
    for n, c in diff.items():
        if n > 0:
            analytic[n] = c / norm
        elif n < 0:
            tail[n] = c / norm
    return ShiftedDecomposition(
        analytic=CoefficientSeries(analytic),
        fourier_tail=CoefficientSeries(tail),
        normalization=norm,
        shift=shift,
    )


@dataclass(frozen=True)
class TailReport:
    total: float
    budget: float
    passed: bool
    ratio: float
    terms: int


def tail_estimate_check(
    gamma: CoefficientSeries,
    beta: float,
    nu: int,
    budget: Union[float, Fraction],
    alpha: Optional[Fraction] = None,
) -> TailReport:
    """Energy of the difference series strictly below frequency -nu vs a budget.

    Computes sum_{n < -nu} |gamma(n)|^2 * |e^{i*beta*n} - 1|^2.  With
    `alpha` given (beta = 2*pi*alpha exactly), each phase is reduced as
    an exact Fraction first; frequencies near 1e10 otherwise pick up
    O(|n|*ulp) phase noise that swamps budgets this small.  A frequency
    whose reduced phase is exactly 0 contributes exactly 0.
    """

    total = 0.0
    terms = 0
    for n, c in gamma.items():
        if n >= -nu:
            continue
        terms += 1
        if alpha is None:
            factor = abs(_beta_factor(beta, n))
        else:
            factor = _chord_float(frac_multiple(alpha, n))
        total += abs(c) ** 2 * factor**2
    if isinstance(budget, Fraction):
        passed = Fraction(total) <= budget
        budget_f = float(budget)
    else:
        budget_f = float(budget)
        passed = total <= budget_f
    if budget_f > 0:
        ratio = total / budget_f
    else:
        ratio = math.inf if total > 0 else 0.0
    return TailReport(total=total, budget=budget_f, passed=passed, ratio=ratio, terms=terms)


@dataclass(frozen=True)
class CaseReport:
    case: str
    modulus_nu: float
    modulus_prev: float
    threshold: float


def case_split(
    beta: float,
    nu: int,
    d: Union[Fraction, float],
    N: int,
    model: EpsilonModel | None = None,
    c2: float = 0.5,
) -> CaseReport:
    """Classify a shift against the threshold (d/N) * eps(N/d).

    case-1 when |e^{-i*nu*beta} - 1| exceeds the threshold; otherwise
    case-2, which asserts |e^{-i*(nu-1)*beta} - 1| > c2.  For beta in
    the window (2*pi/3, 4*pi/3) the assertion cannot fail: a shift that
    loses case-1 pins e^{-i*nu*beta} near 1, so the previous shift sits
    near e^{i*beta}, at distance >= sqrt(3) - threshold from 1.
    """

    model = model or EpsilonModel()
    if nu < 1:
        raise ValueError("nu must be a positive integer")
    if not (2 * math.pi / 3 < beta < 4 * math.pi / 3):
        raise ValueError("beta must lie in (2*pi/3, 4*pi/3)")
    if isinstance(d, Fraction):
        threshold = float((d / N) * model.eval_exact(Fraction(N) / d))
    else:
        threshold = (float(d) / N) * model.eval(N / float(d))
    modulus_nu = abs(cmath.exp(-1j * beta * nu) - 1.0)
    modulus_prev = abs(cmath.exp(-1j * beta * (nu - 1)) - 1.0)
    if modulus_nu > threshold:
        return CaseReport("case-1", modulus_nu, modulus_prev, threshold)
    if not modulus_prev > c2:
        raise CaseSplitError(
            f"separation constant missed: |e^(-i*nu*b)-1|={modulus_nu:.3e} "
            f"<= threshold {threshold:.3e} but |e^(-i*(nu-1)*b)-1|="
            f"{modulus_prev:.6f} <= {c2}"
        )
    return CaseReport("case-2", modulus_nu, modulus_prev, threshold)
