"""Exact construction of a rotation number resonant with a lacunary sequence.

Given integers q_1 < q_2 < ... with q_1 >= 6 and q_{k+1} > 2 q_k, the
recursion

    a_0 = 1/3,    a_k = a_{k-1} + (1 - {a_{k-1} q_k}) / q_k

makes a_k q_k an integer at every stage while moving the point by at most
1/q_k, so all earlier products a_k q_j keep uniformly small fractional
parts.  Truncating at depth K encloses every deeper continuation in
[a_K, a_K + 2/q_K]; the exported representative is a_K + 1/q_K, for which
{alpha q_K} = 0 holds exactly.

Everything here is rational arithmetic on Python fractions.  Floats appear
only on output; in particular the phase 2 pi alpha n is always reduced
modulo 1 exactly before any trigonometry, because at n around 10^10 the
direct float product has already lost the digits that matter.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple

__all__ = [
    "SequenceValidationError",
    "LacunarySequence",
    "AlphaEnclosure",
    "FracPartRow",
    "BoundRow",
    "UniformBoundReport",
    "validate_sequence",
    "construct_alpha",
    "frac_multiple",
    "phase_delta",
    "beta_from_alpha",
    "read_sequence_file",
]

MIN_FIRST = 6
MIN_RATIO = 2  # strict: q_{k+1} > 2 q_k


class SequenceValidationError(ValueError):
    """Carries every violated constraint, not just the first."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def validate_sequence(qs: Sequence[int]) -> list:
    """All constraint violations for a candidate sequence, empty if valid."""
    violations = []
    if len(qs) == 0:
        violations.append("sequence is empty")
        return violations
    for k, q in enumerate(qs):
        if not isinstance(q, int) or isinstance(q, bool):
            violations.append(f"entry {k + 1} is not an integer: {q!r}")
            return violations
    if qs[0] < MIN_FIRST:
        violations.append(f"first term must be >= {MIN_FIRST}, got {qs[0]}")
    for k in range(1, len(qs)):
        if qs[k] <= MIN_RATIO * qs[k - 1]:
            violations.append(
                f"term {k + 1} must exceed {MIN_RATIO} * term {k}: "
                f"{qs[k]} <= {MIN_RATIO} * {qs[k - 1]}"
            )
    return violations


class LacunarySequence:
    """Strictly lacunary integer frequencies q_1 < q_2 < ..., ratios > 2."""

    def __init__(self, qs: Iterable[int]):
        qs = tuple(qs)
        violations = validate_sequence(qs)
        if violations:
            raise SequenceValidationError(violations)
        self.qs = qs

    def __len__(self):
        return len(self.qs)

    def __getitem__(self, k):
        return self.qs[k]

    def __iter__(self):
        return iter(self.qs)

    def __eq__(self, other):
        return isinstance(other, LacunarySequence) and self.qs == other.qs

    def __hash__(self):
        return hash(self.qs)

    def ratios(self) -> Tuple[Fraction, ...]:
        return tuple(
            Fraction(self.qs[k + 1], self.qs[k]) for k in range(len(self.qs) - 1)
        )

    def to_json_dict(self) -> dict:
        return {"q": list(self.qs)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LacunarySequence":
        if not isinstance(data, dict) or "q" not in data:
            raise ValueError('sequence JSON must be an object with a "q" list')
        return cls([int(q) for q in data["q"]])

    def __repr__(self):
        inner = ", ".join(str(q) for q in self.qs[:4])
        if len(self.qs) > 4:
            inner += ", ..."
        return f"LacunarySequence([{inner}], depth {len(self.qs)})"


def _frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def frac_multiple(alpha: Fraction, n: int) -> Fraction:
    """Exact fractional part of alpha * n."""
    return _frac(alpha * n)


def phase_delta(alpha: Fraction, n: int) -> complex:
    """e^{2 pi i alpha n} - 1 with the phase reduced exactly first.

    Written as 2 i sin(theta/2) e^{i theta/2} so the modulus is correct to
    rounding even when the reduced phase is tiny.
    """
    theta = 2.0 * math.pi * float(frac_multiple(alpha, n))
    half = 0.5 * theta
    return 2j * math.sin(half) * cmath.exp(1j * half)


@dataclass(frozen=True)
class FracPartRow:
    """Enclosure of {alpha q_k}; point queries give lo == hi."""

    k: int
    q: int
    lo: Fraction
    hi: Fraction

    @property
    def value(self) -> Fraction:
        if self.lo != self.hi:
            raise ValueError("interval row has no single value")
        return self.lo

    @property
    def is_vacuous(self) -> bool:
        return self.lo == 0 and self.hi == 1


@dataclass(frozen=True)
class BoundRow:
    k: int
    q: int
    value: Fraction
    bound: Optional[Fraction]
    ok: bool


@dataclass(frozen=True)
class UniformBoundReport:
    rows: Tuple[BoundRow, ...]
    c_star: Fraction
    passed: bool


@dataclass(frozen=True)
class AlphaEnclosure:
    """Depth-K truncation of the construction over a fixed sequence."""

    sequence: LacunarySequence
    partials: Tuple[Fraction, ...]

    @property
    def depth(self) -> int:
        return len(self.sequence)

    @property
    def low(self) -> Fraction:
        return self.partials[-1]

    @property
    def high(self) -> Fraction:
        return self.low + Fraction(2, self.sequence[-1])

    @property
    def mid(self) -> Fraction:
        """The exported representative a_K + 1/q_K; {mid * q_K} = 0."""
        return self.low + Fraction(1, self.sequence[-1])

    def contains(self, x: Fraction) -> bool:
        return self.low <= x <= self.high

    def frac_parts(self, mode: str = "point") -> Tuple[FracPartRow, ...]:
        """Fractional parts {alpha q_k} for k = 1..K.

        mode "point": exact values at the exported representative.
        mode "interval": certified ranges over every alpha in the enclosure;
        the depth-K row is vacuous by construction (the enclosure has width
        2/q_K, so alpha q_K sweeps a full period).
        """
        if mode not in ("point", "interval"):
            raise ValueError(f"unknown mode {mode!r}")
        rows = []
        if mode == "point":
            a = self.mid
            for k, q in enumerate(self.sequence, start=1):
                v = frac_multiple(a, q)
                rows.append(FracPartRow(k, q, v, v))
            return tuple(rows)
        for k, q in enumerate(self.sequence, start=1):
            lo_prod = self.low * q
            width = Fraction(2 * q, self.sequence[-1])
            if width >= 1:
                rows.append(FracPartRow(k, q, Fraction(0), Fraction(1)))
                continue
            lo = _frac(lo_prod)
            hi = lo + width
            if hi > 1:
                rows.append(FracPartRow(k, q, Fraction(0), Fraction(1)))
            else:
                rows.append(FracPartRow(k, q, lo, hi))
        return tuple(rows)

    def uniform_bound_check(self, c: Fraction = Fraction(2)) -> UniformBoundReport:
        """Compare {alpha q_k} with c q_k / q_{k+1} on every computable row.

        The depth-K row has no next term; it checks {alpha q_K} == 0 instead.
        c_star is the smallest constant that would pass all ratio rows.
        """
        qs = self.sequence.qs
        a = self.mid
        rows = []
        c_star = Fraction(0)
        for k in range(1, len(qs) + 1):
            v = frac_multiple(a, qs[k - 1])
            if k < len(qs):
                bound = c * Fraction(qs[k - 1], qs[k])
                ok = v <= bound
                c_star = max(c_star, v * Fraction(qs[k], qs[k - 1]))
            else:
                bound = None
                ok = v == 0
            rows.append(BoundRow(k, qs[k - 1], v, bound, ok))
        return UniformBoundReport(tuple(rows), c_star, all(r.ok for r in rows))

    def to_json_dict(self) -> dict:
        return {
            "q": list(self.sequence.qs),
            "low": _fraction_str(self.low),
            "mid": _fraction_str(self.mid),
            "high": _fraction_str(self.high),
            "alpha_float": float(self.mid),
            "beta": beta_from_alpha(self),
        }


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def construct_alpha(sequence: LacunarySequence | Sequence[int]) -> AlphaEnclosure:
    """Run the recursion to the full depth of the sequence."""
    if not isinstance(sequence, LacunarySequence):
        sequence = LacunarySequence(sequence)
    a = Fraction(1, 3)
    partials = []
    for q in sequence:
        w = 1 - _frac(a * q)
        a = a + w / q
        partials.append(a)
    return AlphaEnclosure(sequence, tuple(partials))


def beta_from_alpha(enclosure: AlphaEnclosure) -> float:
    """The angle 2 pi alpha of the exported representative.

    Rational bookkeeping guarantees alpha in (1/3, 2/3) strictly, so the
    angle always lands in (2 pi / 3, 4 pi / 3); that window is what keeps
    |e^{i beta} - 1| >= sqrt(3) later on.
    """
    mid = enclosure.mid
    assert Fraction(1, 3) < mid < Fraction(2, 3), "construction left its window"
    return 2.0 * math.pi * float(mid)


def read_sequence_file(path) -> LacunarySequence:
    """Load a sequence from a JSON object {"q": [...]} or a plain text file
    of whitespace-separated integers, # comments allowed."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return LacunarySequence.from_json_dict(json.loads(text))
    qs = []
    for line in text.splitlines():
        body = line.split("#", 1)[0]
        for token in body.split():
            try:
                qs.append(int(token))
            except ValueError:
                raise ValueError(f"bad integer {token!r} in {path}")
    return LacunarySequence(qs)
