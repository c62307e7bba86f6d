"""Ice-cream cone domains over circle arcs.

The basic cone at angle t is the convex hull of the point e^{it} with the
closed disk of radius 1/2: equivalently the union of the disks of radius
(1-s)/2 centered at s e^{it}, s in [0, 1].  A cone domain over a finite arc
union E is the union of the cones at every t in E; its boundary consists of
the arcs of E on the unit circle, tangent segments from arc endpoints, and
(for gaps longer than 2*pi/3) arcs on the inner circle of radius 1/2.  The
pieces chain into a closed Jordan curve; each piece knows which gap of E it
came from, which is what the harmonic-measure tables aggregate over.

Angles are normalized to [0, 2*pi); arcs that cross zero are handled through
a wrapped representation (start + length beyond 2*pi).  Only finite unions of
arcs appear; there is no support for limit sets of arcs.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

__all__ = [
    "Arc",
    "ArcSet",
    "EArc",
    "TangentSegment",
    "InnerArc",
    "PrivalovDomain",
    "cone_contains",
    "cone_gap",
    "tangent_points",
    "cone_kappa_max",
    "domain_from_arcs",
]

TAU = 2.0 * math.pi
INNER_RADIUS = 0.5
# half-angle between an apex and its tangent touch points on the inner circle
TANGENT_OFFSET = math.pi / 3.0
_SQRT3 = math.sqrt(3.0)
_CHAIN_TOL = 1e-12


# ---------------------------------------------------------------------------
# single cone


def cone_gap(t: float, z: complex) -> float:
    """Signed distance-like quantity: <= 0 iff z lies in the cone at angle t.

    Minimizes |w - s| - (1-s)/2 over s in [0, 1] for w = z e^{-it}; the
    minimizer is s = x - |y|/sqrt(3) clamped to [0, 1] (stationarity of the
    convex objective), so the test is closed form.
    """
    w = z * cmath.exp(-1j * t)
    x, y = w.real, abs(w.imag)
    s = min(max(x - y / _SQRT3, 0.0), 1.0)
    return math.hypot(x - s, y) - 0.5 * (1.0 - s)


def cone_contains(t: float, z: complex, tol: float = 1e-12) -> bool:
    """Membership in the closed cone at angle t."""
    return cone_gap(t, z) <= tol


def tangent_points(t: float) -> Tuple[complex, complex]:
    """Touch points of the two tangent segments from e^{it}, as
    (counterclockwise side, clockwise side)."""
    return (
        INNER_RADIUS * cmath.exp(1j * (t + TANGENT_OFFSET)),
        INNER_RADIUS * cmath.exp(1j * (t - TANGENT_OFFSET)),
    )


def _distortion_ratio(z: np.ndarray | complex) -> np.ndarray | float:
    return np.abs(1.0 - z) / (1.0 - np.abs(z))


def cone_kappa_max(samples: int = 200_000) -> Tuple[float, complex]:
    """Maximum of |1-z|/(1-|z|) over the cone at angle 0, with its argmax.

    Deterministic: dense samples of the boundary pieces and a parametric
    sweep of the interior, then golden-section refinement along the boundary
    family that carried the coarse maximum.  Small sample counts still
    converge (the refinement does the work) but give a weak coarse
    certificate; callers that care flag them.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    m = max(samples // 4, 3)

    candidates = []  # (ratio array, z array, refinable family or None)

    # inner boundary arc, the long way around the half-radius circle
    theta = np.linspace(TANGENT_OFFSET, TAU - TANGENT_OFFSET, m)
    z_arc = INNER_RADIUS * np.exp(1j * theta)
    candidates.append((_distortion_ratio(z_arc), z_arc, "arc", theta))

    # the two tangent segments, apex excluded (ratio is 0/0 at z = 1)
    for sign in (+1.0, -1.0):
        touch = INNER_RADIUS * cmath.exp(1j * sign * TANGENT_OFFSET)
        u = np.linspace(1e-9, 1.0 - 1e-9, m)
        z_seg = 1.0 + u * (touch - 1.0)
        candidates.append((_distortion_ratio(z_seg), z_seg, "segment", u))

    # interior sweep through the disk family; any covering sample works since
    # the maximum sits on the boundary, this is just the certificate
    k = max(int(math.sqrt(m)), 2)
    s_grid = np.linspace(0.0, 1.0 - 1e-9, k)
    phi_grid = np.linspace(0.0, TAU, k, endpoint=False)
    ss, pp = np.meshgrid(s_grid, phi_grid)
    z_int = ss + 0.5 * (1.0 - ss) * 0.98 * np.exp(1j * pp)
    z_int = z_int.ravel()
    candidates.append((_distortion_ratio(z_int), z_int, "interior", None))

    best_val = -1.0
    best_z = 0j
    best_family = None
    best_param = 0.0
    for ratios, zs, family, params in candidates:
        i = int(np.argmax(ratios))
        if ratios[i] > best_val:
            best_val = float(ratios[i])
            best_z = complex(zs[i])
            best_family = family
            best_param = None if params is None else float(params[i])

    def refine(f, lo, hi, iters=200):
        phi = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        c = b - phi * (b - a)
        d = a + phi * (b - a)
        fc, fd = f(c), f(d)
        for _ in range(iters):
            if fc >= fd:
                b, d, fd = d, c, fc
                c = b - phi * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + phi * (b - a)
                fd = f(d)
        x = 0.5 * (a + b)
        return x, f(x)

    if best_family == "arc":
        span = (TAU - 2 * TANGENT_OFFSET) / max(m - 1, 1)
        f = lambda th: float(_distortion_ratio(INNER_RADIUS * cmath.exp(1j * th)))
        x, v = refine(f, best_param - 2 * span, best_param + 2 * span)
        if v > best_val:
            best_val, best_z = v, INNER_RADIUS * cmath.exp(1j * x)
    elif best_family == "segment":
        touch = INNER_RADIUS * cmath.exp(1j * math.copysign(TANGENT_OFFSET, best_z.imag or 1.0))
        span = 1.0 / max(m - 1, 1)
        f = lambda u: float(_distortion_ratio(1.0 + u * (touch - 1.0)))
        x, v = refine(f, max(best_param - 2 * span, 1e-9), min(best_param + 2 * span, 1.0 - 1e-12))
        if v > best_val:
            best_val, best_z = v, 1.0 + x * (touch - 1.0)

    return best_val, best_z


# ---------------------------------------------------------------------------
# arc sets


@dataclass(frozen=True)
class Arc:
    """Closed arc on the unit circle: angles [start, start + length]."""

    start: float
    length: float

    @property
    def end(self) -> float:
        return self.start + self.length


class ArcSet:
    """Finite union of closed arcs, normalized and merged.

    Arcs are stored sorted by start angle in [0, 2*pi), pairwise disjoint and
    non-touching after normalization (touching or overlapping input arcs are
    merged, union semantics).  At most one stored arc wraps past 2*pi.  The
    full circle is the single arc (0, 2*pi).  Zero-length point arcs are
    legal and kept.
    """

    def __init__(self, arcs: Sequence[Arc]):
        self.arcs: Tuple[Arc, ...] = tuple(arcs)
        self._validate()

    def _validate(self):
        if not self.arcs:
            return
        total = sum(a.length for a in self.arcs)
        if total > TAU + 1e-9:
            raise ValueError("arc lengths exceed the full circle")
        starts = [a.start for a in self.arcs]
        if starts != sorted(starts):
            raise ValueError("arcs must be sorted by start angle")

    @classmethod
    def from_endpoints(cls, pairs: Iterable[Sequence[float]]) -> "ArcSet":
        """Build from closed [a, b] angle pairs, b >= a, b - a <= 2*pi."""
        segments = []  # half-open bookkeeping on [0, 2*pi)
        full = False
        for pair in pairs:
            if len(pair) != 2:
                raise ValueError(f"arc must be a pair, got {pair!r}")
            a, b = float(pair[0]), float(pair[1])
            if not (math.isfinite(a) and math.isfinite(b)):
                raise ValueError("arc endpoints must be finite")
            if b < a:
                raise ValueError(f"arc endpoints out of order: [{a}, {b}]")
            length = b - a
            if length > TAU:
                raise ValueError(f"arc longer than the circle: [{a}, {b}]")
            start = a % TAU
            if length >= TAU:
                full = True
                break
            if start + length > TAU:
                segments.append((start, TAU))
                segments.append((0.0, start + length - TAU))
            else:
                segments.append((start, start + length))
        if full:
            return cls((Arc(0.0, TAU),))
        if not segments:
            return cls(())

        segments.sort()
        merged = [list(segments[0])]
        for lo, hi in segments[1:]:
            if lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        # stitch across 0 == 2*pi
        wrapped = None
        if len(merged) >= 2 and merged[0][0] == 0.0 and merged[-1][1] == TAU:
            first = merged.pop(0)
            last = merged.pop(-1)
            wrapped = Arc(last[0], (TAU - last[0]) + first[1])
        elif len(merged) == 1 and merged[0][0] == 0.0 and merged[0][1] == TAU:
            return cls((Arc(0.0, TAU),))
        arcs = [Arc(lo, hi - lo) for lo, hi in merged]
        if wrapped is not None:
            arcs.append(wrapped)
        arcs.sort(key=lambda a: a.start)
        out = cls(tuple(arcs))
        if out.measure >= TAU - 1e-12:
            return cls((Arc(0.0, TAU),))
        return out

    @property
    def measure(self) -> float:
        return sum(a.length for a in self.arcs)

    @property
    def is_full_circle(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0].length >= TAU

    def contains_angle(self, t: float, tol: float = 0.0) -> bool:
        if self.is_full_circle:
            return True
        t = t % TAU
        for a in self.arcs:
            rel = (t - a.start) % TAU
            if rel <= a.length + tol or rel >= TAU - tol:
                return True
        return False

    def gaps(self) -> Tuple[Tuple[int, float, float], ...]:
        """Complementary arcs as (gap_index, start_angle, length), cyclic order."""
        if not self.arcs or self.is_full_circle:
            return ()
        out = []
        k = len(self.arcs)
        for i, a in enumerate(self.arcs):
            nxt = self.arcs[(i + 1) % k]
            gap_start = a.end % TAU
            gap_len = (nxt.start - a.end) % TAU
            if k == 1:
                gap_len = TAU - a.length
            if gap_len <= 0 and k > 1:
                raise ValueError("touching arcs survived normalization")
            out.append((i, gap_start, gap_len))
        return tuple(out)

    def to_json_dict(self) -> dict:
        return {"arcs": [[a.start, a.end] for a in self.arcs]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "ArcSet":
        if not isinstance(data, dict) or "arcs" not in data:
            raise ValueError('arcs JSON must be an object with an "arcs" list')
        return cls.from_endpoints(data["arcs"])

    @classmethod
    def from_json(cls, text: str) -> "ArcSet":
        return cls.from_json_dict(json.loads(text))

    def __repr__(self):
        return f"ArcSet({len(self.arcs)} arcs, |E| = {self.measure:.6f})"


# ---------------------------------------------------------------------------
# boundary pieces


@dataclass(frozen=True)
class EArc:
    """Arc of the unit circle belonging to E, angles [lo, hi], hi may pass 2*pi."""

    lo: float
    hi: float

    tag = "earc"
    radius = 1.0
    gap = -1

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def start_point(self) -> complex:
        return cmath.exp(1j * self.lo)

    @property
    def end_point(self) -> complex:
        return cmath.exp(1j * self.hi)


@dataclass(frozen=True)
class TangentSegment:
    """Straight boundary segment across a gap, traversed p -> q."""

    p: complex
    q: complex
    gap: int

    tag = "segment"

    @property
    def length(self) -> float:
        return abs(self.q - self.p)

    @property
    def start_point(self) -> complex:
        return self.p

    @property
    def end_point(self) -> complex:
        return self.q


@dataclass(frozen=True)
class InnerArc:
    """Arc of the inner circle |z| = 1/2 exposed by a gap longer than 2*pi/3."""

    lo: float
    hi: float
    gap: int

    tag = "inner"
    radius = INNER_RADIUS

    @property
    def length(self) -> float:
        return (self.hi - self.lo) * INNER_RADIUS

    @property
    def start_point(self) -> complex:
        return INNER_RADIUS * cmath.exp(1j * self.lo)

    @property
    def end_point(self) -> complex:
        return INNER_RADIUS * cmath.exp(1j * self.hi)


def _crossing_point(apex_angle: float, gap_len: float) -> complex:
    """Intersection of the two gap tangent segments when the gap is shorter
    than 2*pi/3, computed in the frame of the gap's bisector."""
    half = 0.5 * gap_len
    a = cmath.exp(-1j * half)  # first apex in bisector frame
    t = INNER_RADIUS * cmath.exp(1j * (TANGENT_OFFSET - half))  # its touch point
    # intersection with the real axis: Im(a + u (t - a)) = 0
    u = -a.imag / (t.imag - a.imag)
    x = a.real + u * (t.real - a.real)
    return x * cmath.exp(1j * (apex_angle + half))


# ---------------------------------------------------------------------------
# the domain


class PrivalovDomain:
    """Union of cones over an arc set, with its chained boundary pieces."""

    def __init__(self, base: ArcSet):
        if not base.arcs:
            raise ValueError("cone domain needs a nonempty arc set")
        self.base = base
        self.pieces: Tuple = self._build_pieces()
        self._verify_chain()
        self._gap_lengths = {g: glen for g, _, glen in base.gaps()}
        self._piece_cache = None

    # construction ---------------------------------------------------------

    def _build_pieces(self):
        E = self.base
        if E.is_full_circle:
            return (EArc(0.0, TAU),)
        pieces = []
        gaps = E.gaps()
        for i, arc in enumerate(E.arcs):
            if arc.length > 0:
                pieces.append(EArc(arc.start, arc.end))
            gap_id, gap_start, gap_len = gaps[i]
            apex0 = arc.end  # == gap_start up to the 2*pi wrap
            apex1 = apex0 + gap_len
            p0 = cmath.exp(1j * apex0)
            p1 = cmath.exp(1j * apex1)
            if gap_len > TAU / 3.0:
                lo = apex0 + TANGENT_OFFSET
                hi = apex1 - TANGENT_OFFSET
                pieces.append(TangentSegment(p0, INNER_RADIUS * cmath.exp(1j * lo), gap_id))
                pieces.append(InnerArc(lo, hi, gap_id))
                pieces.append(TangentSegment(INNER_RADIUS * cmath.exp(1j * hi), p1, gap_id))
            else:
                x = _crossing_point(apex0, gap_len)
                pieces.append(TangentSegment(p0, x, gap_id))
                pieces.append(TangentSegment(x, p1, gap_id))
        return tuple(pieces)

    def _verify_chain(self):
        n = len(self.pieces)
        if n == 1:
            piece = self.pieces[0]
            if abs(piece.start_point - piece.end_point) > _CHAIN_TOL:
                raise ValueError("single boundary piece does not close")
            return
        for i in range(n):
            a = self.pieces[i]
            b = self.pieces[(i + 1) % n]
            if abs(a.end_point - b.start_point) > _CHAIN_TOL:
                raise ValueError(
                    f"boundary chain breaks between piece {i} and {(i + 1) % n}: "
                    f"{a.end_point} vs {b.start_point}"
                )

    # queries --------------------------------------------------------------

    def gap_length(self, gap_id: int) -> float:
        return self._gap_lengths[gap_id]

    @property
    def gap_ids(self) -> Tuple[int, ...]:
        return tuple(sorted(self._gap_lengths))

    def contains(self, z: complex, tol: float = 1e-9) -> bool:
        """Membership in the closed domain.

        Reduces to the two cones at the edges of the gap containing arg z
        (moving the apex angularly toward arg z preserves cone membership, so
        the gap edges dominate every farther apex).
        """
        z = complex(z)
        r = abs(z)
        if r <= INNER_RADIUS + tol:
            return True
        if r > 1.0 + tol:
            return False
        theta = cmath.phase(z) % TAU
        if self.base.contains_angle(theta, tol=tol):
            return True
        for _, gap_start, gap_len in self.base.gaps():
            rel = (theta - gap_start) % TAU
            if rel <= gap_len:
                t0 = gap_start
                t1 = gap_start + gap_len
                return cone_contains(t0, z, tol) or cone_contains(t1, z, tol)
        return False

    def piece_distances(self, zs: np.ndarray) -> np.ndarray:
        """Distance from each point to each boundary piece, shape (n_pieces, n)."""
        zs = np.asarray(zs, dtype=np.complex128)
        out = np.empty((len(self.pieces), zs.size), dtype=np.float64)
        flat = zs.ravel()
        ang = np.mod(np.angle(flat), TAU)
        rad = np.abs(flat)
        for k, piece in enumerate(self.pieces):
            if isinstance(piece, TangentSegment):
                d = piece.q - piece.p
                L2 = abs(d) ** 2
                if L2 == 0.0:
                    out[k] = np.abs(flat - piece.p)
                    continue
                u = ((flat - piece.p) * d.conjugate()).real / L2
                np.clip(u, 0.0, 1.0, out=u)
                out[k] = np.abs(flat - (piece.p + u * d))
            else:
                r0 = piece.radius
                lo, hi = piece.lo, piece.hi
                span = hi - lo
                rel = np.mod(ang - (lo % TAU), TAU)
                inside = rel <= span
                d_in = np.abs(rad - r0)
                ends = np.minimum(
                    np.abs(flat - r0 * cmath.exp(1j * lo)),
                    np.abs(flat - r0 * cmath.exp(1j * hi)),
                )
                out[k] = np.where(inside, d_in, ends)
        return out

    def nearest_boundary(self, zs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """(distance to the boundary, index of the nearest piece); ties go to
        the lowest piece id (argmin keeps the first hit)."""
        d = self.piece_distances(zs)
        return d.min(axis=0), d.argmin(axis=0)

    def distance_to_boundary(self, z: complex) -> float:
        z = complex(z)
        if not self.contains(z):
            raise ValueError(f"point {z!r} is outside the domain")
        d, _ = self.nearest_boundary(np.array([z]))
        return float(d[0])

    def nearest_boundary_piece(self, z: complex) -> int:
        z = complex(z)
        if not self.contains(z):
            raise ValueError(f"point {z!r} is outside the domain")
        _, idx = self.nearest_boundary(np.array([z]))
        return int(idx[0])

    # export ---------------------------------------------------------------

    def boundary_json_dict(self) -> dict:
        rows = []
        for i, piece in enumerate(self.pieces):
            row = {"id": i, "tag": piece.tag, "gap": piece.gap, "length": piece.length}
            if isinstance(piece, TangentSegment):
                row["p"] = [piece.p.real, piece.p.imag]
                row["q"] = [piece.q.real, piece.q.imag]
            else:
                row["radius"] = piece.radius
                row["lo"] = piece.lo
                row["hi"] = piece.hi
            rows.append(row)
        return {"pieces": rows, "measure_E": self.base.measure}

    def flat_geometry(self) -> Tuple[np.ndarray, np.ndarray]:
        """Boundary pieces as (codes, params) float arrays for jitted kernels.

        code 0: circular arc, params (radius, lo, hi, 0, 0, 0)
        code 1: segment, params (px, py, qx, qy, 0, 0)
        """
        if self._piece_cache is not None:
            return self._piece_cache
        codes = np.empty(len(self.pieces), dtype=np.int64)
        params = np.zeros((len(self.pieces), 6), dtype=np.float64)
        for k, piece in enumerate(self.pieces):
            if isinstance(piece, TangentSegment):
                codes[k] = 1
                params[k, :4] = (piece.p.real, piece.p.imag, piece.q.real, piece.q.imag)
            else:
                codes[k] = 0
                params[k, :3] = (piece.radius, piece.lo, piece.hi)
        self._piece_cache = (codes, params)
        return self._piece_cache

    def __repr__(self):
        return f"PrivalovDomain({self.base!r}, {len(self.pieces)} boundary pieces)"


def domain_from_arcs(arcs: ArcSet | Iterable[Sequence[float]]) -> PrivalovDomain:
    """Build the cone domain over an arc set (or raw [a, b] endpoint pairs)."""
    if not isinstance(arcs, ArcSet):
        arcs = ArcSet.from_endpoints(arcs)
    return PrivalovDomain(arcs)
