"""Finite trigonometric series and their partial-sum functionals.

The objects here are finitely supported coefficient maps n -> c(n) on the
integers, together with the grid machinery needed to study their partial sums:
the maximal partial-sum function g*(t) = sup_N |sum_{n<N} c(n) e^{int}|, Abel
evaluation inside the unit disk, and the weighted norms used by the schedule
builders.  Everything is desk scale: supports are finite, grids are uniform,
and there is no truncation policy because nothing here is infinite to begin
with.

Frequencies may be arbitrary Python integers (the schedule builders produce
frequencies far beyond 2**63); grid evaluation reduces n mod the grid size
exactly, so huge frequencies lose no precision on the grid.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Tuple

import numpy as np

__all__ = [
    "CoefficientSeries",
    "GridFunction",
    "WeightSequence",
    "WeightRangeError",
]

TAU = 2.0 * math.pi


class WeightRangeError(ValueError):
    """A weight table was exhausted before the required level was reached."""

    def __init__(self, message: str, needed: float):
        super().__init__(message)
        self.needed = needed


@lru_cache(maxsize=16)
def _unit_roots(grid_size: int) -> np.ndarray:
    j = np.arange(grid_size)
    return np.exp(2j * np.pi * j / grid_size)


def _grid_term_indices(n: int, grid_size: int) -> np.ndarray:
    # e^{i n t_j} on t_j = 2 pi j / M equals the (n*j mod M)-th root of unity;
    # reducing n mod M first keeps the integer products inside int64.
    return (np.arange(grid_size, dtype=np.int64) * (n % grid_size)) % grid_size


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on the uniform grid t_j = 2*pi*j/M."""

    grid_size: int
    values: np.ndarray

    def __post_init__(self):
        if self.grid_size < 1:
            raise ValueError("grid_size must be >= 1")
        arr = np.asarray(self.values)
        if arr.shape != (self.grid_size,):
            raise ValueError("values must have shape (grid_size,)")
        object.__setattr__(self, "values", arr)
        arr.setflags(write=False)

    @property
    def grid(self) -> np.ndarray:
        return TAU * np.arange(self.grid_size) / self.grid_size

    def superlevel_measure(self, level: float) -> float:
        """Measure of {t : value(t) > level}, one cell per grid point."""
        if np.iscomplexobj(self.values):
            raise TypeError("superlevel_measure requires a real-valued grid function")
        return (TAU / self.grid_size) * int(np.count_nonzero(self.values > level))

    def max(self) -> float:
        return float(np.max(np.abs(self.values)))


class CoefficientSeries:
    """Immutable finitely supported map n -> c(n), n in Z, c(n) complex.

    Zero amplitudes may be stored; every operation is insensitive to whether
    an explicit zero is present.  Duplicate frequencies are rejected at
    construction.
    """

    __slots__ = ("_coeffs", "_freqs")

    def __init__(self, coeffs: Mapping[int, complex] | Iterable[Tuple[int, complex]]):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = list(coeffs)
        table: dict[int, complex] = {}
        for n, c in items:
            if not isinstance(n, (int, np.integer)):
                raise TypeError(f"frequency {n!r} is not an integer")
            n = int(n)
            c = complex(c)
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"amplitude at n={n} is not finite: {c!r}")
            if n in table:
                raise ValueError(f"duplicate frequency n={n}")
            table[n] = c
        self._coeffs = table
        self._freqs = tuple(sorted(table))

    # -- basic structure ---------------------------------------------------

    @property
    def support(self) -> Tuple[int, ...]:
        """Stored frequencies in increasing order (explicit zeros included)."""
        return self._freqs

    @property
    def is_empty(self) -> bool:
        return not self._freqs

    @property
    def n_min(self) -> int:
        if not self._freqs:
            raise ValueError("empty series has no n_min")
        return self._freqs[0]

    @property
    def n_max(self) -> int:
        if not self._freqs:
            raise ValueError("empty series has no n_max")
        return self._freqs[-1]

    def amplitude(self, n: int) -> complex:
        return self._coeffs.get(int(n), 0j)

    def items(self) -> Iterator[Tuple[int, complex]]:
        for n in self._freqs:
            yield n, self._coeffs[n]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoefficientSeries):
            return NotImplemented
        return self._trimmed() == other._trimmed()

    def __hash__(self):
        return hash(tuple(sorted(self._trimmed().items())))

    def _trimmed(self) -> dict[int, complex]:
        return {n: c for n, c in self._coeffs.items() if c != 0}

    def __add__(self, other: "CoefficientSeries") -> "CoefficientSeries":
        out = dict(self._coeffs)
        for n, c in other.items():
            out[n] = out.get(n, 0j) + c
        return CoefficientSeries(out)

    def __sub__(self, other: "CoefficientSeries") -> "CoefficientSeries":
        out = dict(self._coeffs)
        for n, c in other.items():
            out[n] = out.get(n, 0j) - c
        return CoefficientSeries(out)

    def scaled(self, factor: complex) -> "CoefficientSeries":
        return CoefficientSeries({n: c * factor for n, c in self._coeffs.items()})

    def __repr__(self):
        if not self._freqs:
            return "CoefficientSeries({})"
        return (
            f"CoefficientSeries(<{len(self._freqs)} freqs, "
            f"n in [{self._freqs[0]}, {self._freqs[-1]}]>)"
        )

    # -- evaluation --------------------------------------------------------

    def partial_sum(self, cutoff: int, grid_size: int) -> GridFunction:
        """sum_{n < cutoff} c(n) e^{int} sampled on the uniform grid."""
        roots = _unit_roots(grid_size)
        acc = np.zeros(grid_size, dtype=np.complex128)
        for n in self._freqs:
            if n >= cutoff:
                break
            acc += self._coeffs[n] * roots[_grid_term_indices(n, grid_size)]
        return GridFunction(grid_size, acc)

    def maximal_partial_sum(self, grid_size: int) -> GridFunction:
        """g*(t): max over all prefixes, the empty prefix included.

        Prefixes are ordered by increasing frequency from n_min; the cutoff N
        ranges over [n_min, n_max + 1], so the empty sum 0 is always a
        candidate and g* >= 0.
        """
        if not self._freqs:
            raise ValueError("maximal_partial_sum of an empty series")
        roots = _unit_roots(grid_size)
        acc = np.zeros(grid_size, dtype=np.complex128)
        best = np.zeros(grid_size, dtype=np.float64)
        for n in self._freqs:
            acc += self._coeffs[n] * roots[_grid_term_indices(n, grid_size)]
            np.maximum(best, np.abs(acc), out=best)
        return GridFunction(grid_size, best)

    def abel_eval(self, z: complex) -> complex:
        """sum c(n) z^n for an analytic-side series, |z| < 1 required."""
        z = complex(z)
        if abs(z) >= 1.0:
            raise ValueError(f"abel_eval requires |z| < 1, got |z| = {abs(z)}")
        for n, c in self._coeffs.items():
            if n < 0 and c != 0:
                raise ValueError(f"abel_eval requires support in n >= 0, found n={n}")
        return self._power_eval(z)

    def _power_eval(self, z: complex) -> complex:
        # Unguarded power evaluation; used internally where the closed disk
        # is legitimate (finite sums are entire in z).
        total = 0j
        for n, c in self._coeffs.items():
            if c != 0:
                total += c * z**n
        return total

    def evaluate(self, t) -> np.ndarray | complex:
        """Pointwise sum c(n) e^{int} at arbitrary angles (test oracle use)."""
        t_arr = np.asarray(t, dtype=np.float64)
        acc = np.zeros(t_arr.shape, dtype=np.complex128)
        for n, c in self._coeffs.items():
            acc += c * np.exp(1j * float(n) * t_arr)
        if np.isscalar(t) or t_arr.shape == ():
            return complex(acc)
        return acc

    # -- norms -------------------------------------------------------------

    def l2_norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self._coeffs.values()))

    def wiener_norm(self) -> float:
        return sum(abs(c) for c in self._coeffs.values())

    def hw_norm(self, weights: "WeightSequence") -> float:
        """Weighted l2 norm sqrt(sum |c(n)|^2 w(|n|)^2)."""
        return math.sqrt(
            sum(abs(c) ** 2 * weights.value(abs(n)) ** 2 for n, c in self._coeffs.items())
        )

    def tail_l2(self, cutoff: int) -> float:
        """l2 norm over the strict tail n < cutoff."""
        return math.sqrt(
            sum(abs(c) ** 2 for n, c in self._coeffs.items() if n < cutoff)
        )

    # -- algebra -----------------------------------------------------------

    def modulate(self, shift: int) -> "CoefficientSeries":
        """Shift every frequency by the integer `shift` (multiply by e^{i*shift*t})."""
        shift = int(shift)
        return CoefficientSeries({n + shift: c for n, c in self._coeffs.items()})

    def beta_difference(self, beta: float) -> "CoefficientSeries":
        """Coefficient map of f(t + beta) - f(t): multiply c(n) by e^{in*beta} - 1.

        Double precision: the phase n*beta is not reduced exactly, so for
        |n| beyond ~1e8 the factor carries O(|n|*ulp) noise.  The schedule
        modules use exact rational phase reduction where that matters.
        """
        factors = {n: cmath.exp(1j * beta * n) - 1.0 for n in self._freqs}
        return CoefficientSeries({n: c * factors[n] for n, c in self._coeffs.items()})

    def split_parts(self) -> Tuple["CoefficientSeries", "CoefficientSeries"]:
        """(analytic-side part n >= 0, fourier-tail part n < 0); parts sum back exactly."""
        pos = {n: c for n, c in self._coeffs.items() if n >= 0}
        neg = {n: c for n, c in self._coeffs.items() if n < 0}
        return CoefficientSeries(pos), CoefficientSeries(neg)

    def reflected(self) -> "CoefficientSeries":
        """Frequency reflection n -> -n (conjugate-free)."""
        return CoefficientSeries({-n: c for n, c in self._coeffs.items()})

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "coeffs": [
                {"n": int(n), "re": c.real, "im": c.imag} for n, c in self.items()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "CoefficientSeries":
        if not isinstance(data, dict) or "coeffs" not in data:
            raise ValueError('series JSON must be an object with a "coeffs" list')
        pairs = []
        for row in data["coeffs"]:
            try:
                pairs.append((int(row["n"]), complex(float(row["re"]), float(row["im"]))))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"bad series row {row!r}: {exc}") from exc
        return cls(pairs)

    @classmethod
    def from_json(cls, text: str) -> "CoefficientSeries":
        return cls.from_json_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "re", "im"])
        for n, c in self.items():
            writer.writerow([n, repr(c.real), repr(c.imag)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "CoefficientSeries":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["n", "re", "im"]:
            raise ValueError('series CSV must start with header "n,re,im"')
        pairs = []
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise ValueError(f"bad series CSV row: {row!r}")
            pairs.append((int(row[0]), complex(float(row[1]), float(row[2]))))
        return cls(pairs)

    @classmethod
    def from_file(cls, path) -> "CoefficientSeries":
        text = open(path, "r", encoding="utf-8").read()
        if str(path).endswith(".csv"):
            return cls.from_csv(text)
        return cls.from_json(text)


@dataclass(frozen=True)
class WeightSequence:
    """Table of weight values w(n) on n = n_start, n_start+1, ...

    Positive and non-decreasing; divergence to infinity is declared rather
    than stored (the table is finite and extends by its last value beyond the
    stored range, and by its first value below it).
    """

    values: np.ndarray
    n_start: int = 0

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("weight table must be a nonempty 1-d array")
        if not np.all(arr > 0):
            raise ValueError("weight values must be positive")
        if np.any(np.diff(arr) < 0):
            raise ValueError("weight values must be non-decreasing")
        object.__setattr__(self, "values", arr)
        arr.setflags(write=False)

    @property
    def n_end(self) -> int:
        """One past the last tabulated index."""
        return self.n_start + self.values.size

    @property
    def last(self) -> float:
        return float(self.values[-1])

    def value(self, n: int) -> float:
        idx = min(max(int(n) - self.n_start, 0), self.values.size - 1)
        return float(self.values[idx])

    def values_at(self, ns: np.ndarray) -> np.ndarray:
        idx = np.clip(np.asarray(ns, dtype=np.int64) - self.n_start, 0, self.values.size - 1)
        return self.values[idx]

    def first_index_at_least(self, threshold: float, start: int | None = None) -> int:
        """Smallest n >= start with w(n) >= threshold.

        Raises WeightRangeError when even the table's last value (which also
        covers the extension beyond the range) falls short.
        """
        lo = self.n_start if start is None else max(int(start), self.n_start)
        if self.value(lo) >= threshold:
            return lo
        if threshold > self.last:
            raise WeightRangeError(
                f"weight table tops out at {self.last!r} < required {threshold!r}",
                needed=float(threshold),
            )
        pos = int(np.searchsorted(self.values, threshold, side="left"))
        n = self.n_start + pos
        return max(n, lo)

    @classmethod
    def log_table(cls, n_max: int, n_start: int = 0) -> "WeightSequence":
        """w(n) = log(2 + n) on [n_start, n_max]."""
        ns = np.arange(n_start, n_max + 1, dtype=np.float64)
        return cls(np.log(2.0 + ns), n_start=n_start)

    @classmethod
    def from_json_dict(cls, data: dict) -> "WeightSequence":
        return cls(np.asarray(data["values"], dtype=np.float64), int(data.get("n_start", 0)))

    def to_json_dict(self) -> dict:
        return {"n_start": self.n_start, "values": [float(v) for v in self.values]}
