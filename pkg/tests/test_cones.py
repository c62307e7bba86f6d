"""Geometry tests for the cone domains.

The single-cone membership test has a brute-force oracle (dense minimization
over the disk family); the domain pieces are checked against hand geometry
and chain/winding invariants rather than stored numbers.
"""

import cmath
import math

import numpy as np
import pytest

from privalov.cones import (
    Arc,
    ArcSet,
    EArc,
    InnerArc,
    PrivalovDomain,
    TangentSegment,
    cone_contains,
    cone_gap,
    cone_kappa_max,
    domain_from_arcs,
    tangent_points,
)

TAU = 2.0 * math.pi


def cone_gap_oracle(t, z, n_grid=20_001):
    """min over a dense s grid of |z - s e^{it}| - (1-s)/2."""
    s = np.linspace(0.0, 1.0, n_grid)
    centers = s * cmath.exp(1j * t)
    return float(np.min(np.abs(z - centers) - 0.5 * (1.0 - s)))


def boundary_samples(domain, per_piece=400):
    """Points along the boundary chain in traversal order."""
    pts = []
    for piece in domain.pieces:
        u = np.linspace(0.0, 1.0, per_piece, endpoint=False)
        if isinstance(piece, TangentSegment):
            pts.append(piece.p + u * (piece.q - piece.p))
        else:
            ang = piece.lo + u * (piece.hi - piece.lo)
            pts.append(piece.radius * np.exp(1j * ang))
    return np.concatenate(pts)


class TestSingleCone:
    def test_gap_matches_dense_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            t = float(rng.uniform(0.0, TAU))
            z = complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2))
            exact = cone_gap(t, z)
            brute = cone_gap_oracle(t, z)
            # the grid oracle overshoots by at most O(grid step)
            assert exact <= brute + 1e-12
            assert abs(exact - brute) < 1e-4

    def test_closed_form_is_rotation_invariant(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            t = float(rng.uniform(0.0, TAU))
            z = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
            assert cone_gap(t, z) == cone_gap(0.0, z * cmath.exp(-1j * t))

    def test_membership_basics(self):
        assert cone_contains(0.0, 0j)
        assert cone_contains(0.0, 1.0 + 0j)
        assert cone_contains(0.0, 0.5j)
        assert cone_contains(0.0, -0.5 + 0j)
        assert not cone_contains(0.0, 0.9 + 0.4j)
        assert not cone_contains(0.0, -0.6 + 0j)
        assert not cone_contains(0.0, 1j)

    def test_tangent_points_sit_on_cone_boundary(self):
        for t in (0.0, 1.0, 2.5, 4.0):
            hi, lo = tangent_points(t)
            for touch in (hi, lo):
                assert abs(abs(touch) - 0.5) < 1e-15
                assert abs(cone_gap(t, touch)) < 1e-12

    def test_tangent_segment_is_orthogonal_to_radius(self):
        for t in (0.0, 0.3, 3.0):
            apex = cmath.exp(1j * t)
            for touch in tangent_points(t):
                inner = ((touch - apex) * touch.conjugate()).real
                assert abs(inner) < 1e-15

    def test_kappa_max_value_and_argmax(self):
        kappa, z_star = cone_kappa_max(samples=200_000)
        assert kappa == pytest.approx(3.0, abs=1e-9)
        assert abs(z_star - (-0.5 + 0j)) < 1e-6

    def test_kappa_max_small_sample_budget(self):
        # the refinement stage carries tiny budgets to the same answer
        kappa, z_star = cone_kappa_max(samples=1)
        assert kappa == pytest.approx(3.0, abs=1e-9)
        assert abs(z_star - (-0.5 + 0j)) < 1e-6

    def test_kappa_max_rejects_nonpositive_budget(self):
        with pytest.raises(ValueError):
            cone_kappa_max(samples=0)

    def test_distortion_bound_holds_on_cone_samples(self):
        # |1 - z| <= 3 (1 - |z|) on the cone at angle 0
        rng = np.random.default_rng(3)
        count = 0
        while count < 2000:
            z = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
            if abs(z) >= 1.0 or not cone_contains(0.0, z):
                continue
            count += 1
            assert abs(1.0 - z) <= 3.0 * (1.0 - abs(z)) + 1e-12


class TestArcSet:
    def test_merge_of_overlapping_and_touching(self):
        E = ArcSet.from_endpoints([[0.0, 1.0], [0.5, 2.0], [2.0, 2.5], [4.0, 4.5]])
        assert len(E.arcs) == 2
        assert E.arcs[0] == Arc(0.0, 2.5)
        assert E.arcs[1] == Arc(4.0, 0.5)
        assert E.measure == pytest.approx(3.0, abs=1e-12)

    def test_wrap_past_two_pi(self):
        E = ArcSet.from_endpoints([[6.0, 6.8]])
        assert len(E.arcs) == 1
        a = E.arcs[0]
        assert a.start == pytest.approx(6.0)
        assert a.length == pytest.approx(0.8, abs=1e-12)
        assert E.contains_angle(6.1)
        assert E.contains_angle(0.3)
        assert not E.contains_angle(1.0)

    def test_wrap_merges_with_leading_arc(self):
        E = ArcSet.from_endpoints([[6.0, TAU + 0.5], [0.3, 1.0]])
        assert len(E.arcs) == 1
        assert E.arcs[0].start == pytest.approx(6.0)
        assert E.arcs[0].length == pytest.approx((TAU - 6.0) + 1.0, abs=1e-12)

    def test_full_circle_normalization(self):
        for pairs in ([[5.0, 5.0 + TAU]], [[0.0, 4.0], [3.5, TAU]], [[0.0, TAU]]):
            E = ArcSet.from_endpoints(pairs)
            assert E.is_full_circle
            assert E.arcs == (Arc(0.0, TAU),)

    def test_point_arcs_survive(self):
        E = ArcSet.from_endpoints([[1.0, 1.0], [2.0, 2.5]])
        assert len(E.arcs) == 2
        assert E.arcs[0].length == 0.0
        assert E.contains_angle(1.0)
        assert not E.contains_angle(1.0001)

    def test_gaps_partition_complement(self):
        E = ArcSet.from_endpoints([[0.0, 0.5], [2.0, 2.5], [4.0, 4.5]])
        gaps = E.gaps()
        assert len(gaps) == 3
        total = E.measure + sum(g[2] for g in gaps)
        assert total == pytest.approx(TAU, abs=1e-12)
        starts = [g[1] for g in gaps]
        assert starts == pytest.approx([0.5, 2.5, 4.5])

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            ArcSet.from_endpoints([[1.0, 0.5]])
        with pytest.raises(ValueError):
            ArcSet.from_endpoints([[0.0, 10.0]])
        with pytest.raises(ValueError):
            ArcSet.from_endpoints([[0.0, math.nan]])
        with pytest.raises(ValueError):
            ArcSet.from_endpoints([[0.0]])

    def test_json_round_trip(self):
        E = ArcSet.from_endpoints([[0.1, 0.7], [3.0, 3.2]])
        E2 = ArcSet.from_json_dict(E.to_json_dict())
        assert E2.arcs == E.arcs


class TestDomainPieces:
    def test_single_arc_long_gap(self):
        dom = domain_from_arcs([[0.0, 0.5]])
        tags = [p.tag for p in dom.pieces]
        assert tags == ["earc", "segment", "inner", "segment"]
        inner = dom.pieces[2]
        assert inner.lo == pytest.approx(0.5 + math.pi / 3)
        assert inner.hi == pytest.approx(TAU - math.pi / 3)
        assert all(p.gap == 0 for p in dom.pieces[1:])

    def test_short_gap_gets_crossing_point(self):
        gap = 0.5
        dom = domain_from_arcs([[0.0, TAU - gap]])
        tags = [p.tag for p in dom.pieces]
        assert tags == ["earc", "segment", "segment"]
        s1, s2 = dom.pieces[1], dom.pieces[2]
        assert s1.q == s2.p
        x = s1.q
        # crossing point lies on both edge cones' boundaries, on the bisector
        assert abs(cone_gap(TAU - gap, x)) < 1e-12
        assert abs(cone_gap(TAU, x)) < 1e-12
        assert cmath.phase(x * cmath.exp(-1j * (TAU - gap / 2))) == pytest.approx(0.0, abs=1e-12)
        assert 0.5 < abs(x) < 1.0

    def test_inner_arc_threshold_flip(self):
        thr = TAU / 3.0
        wide = domain_from_arcs([[0.0, TAU - (thr + 1e-3)]])
        narrow = domain_from_arcs([[0.0, TAU - (thr - 1e-3)]])
        assert any(isinstance(p, InnerArc) for p in wide.pieces)
        assert not any(isinstance(p, InnerArc) for p in narrow.pieces)
        # the geometry is continuous through the threshold: the inner arc is
        # short and the crossing point is near the half circle
        ia = next(p for p in wide.pieces if isinstance(p, InnerArc))
        assert ia.length < 1e-3
        x = narrow.pieces[1].q
        assert abs(x) == pytest.approx(0.5, abs=1e-3)

    def test_two_arc_domain_piece_count_and_gap_ids(self):
        dom = domain_from_arcs([[0.0, 0.5], [math.pi, math.pi + 0.5]])
        # both gaps exceed 2*pi/3, so each contributes segment+inner+segment
        assert len(dom.pieces) == 8
        gap_ids = sorted({p.gap for p in dom.pieces if p.gap >= 0})
        assert gap_ids == [0, 1]
        assert dom.gap_length(0) == pytest.approx(math.pi - 0.5)
        assert dom.gap_length(1) == pytest.approx(math.pi - 0.5)

    def test_point_arc_domain(self):
        dom = domain_from_arcs([[1.0, 1.0]])
        tags = [p.tag for p in dom.pieces]
        assert tags == ["segment", "inner", "segment"]
        assert dom.pieces[0].p == pytest.approx(cmath.exp(1j))
        assert dom.contains(cmath.exp(1j))
        assert dom.contains(0.99 * cmath.exp(1j))
        assert not dom.contains(0.9 * cmath.exp(1j * (1.0 + math.pi)))

    def test_full_circle_domain_is_unit_disk(self):
        dom = domain_from_arcs([[0.0, TAU]])
        assert len(dom.pieces) == 1
        assert isinstance(dom.pieces[0], EArc)
        rng = np.random.default_rng(5)
        for _ in range(100):
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            assert dom.contains(z) == (abs(z) <= 1.0 + 1e-9)
        assert dom.distance_to_boundary(0j) == pytest.approx(1.0)

    def test_boundary_length_dominates_arc_measure(self):
        for pairs in ([[0.0, 1.0]], [[0.0, 0.3], [2.0, 2.2], [4.0, 4.9]]):
            dom = domain_from_arcs(pairs)
            total = sum(p.length for p in dom.pieces)
            assert total >= dom.base.measure

    def test_chain_closure_tolerance_enforced(self):
        # many arcs, all chain joints must agree to 1e-12 by construction
        pairs = [[0.7 * k, 0.7 * k + 0.2] for k in range(8)]
        dom = domain_from_arcs(pairs)
        n = len(dom.pieces)
        for i in range(n):
            a, b = dom.pieces[i], dom.pieces[(i + 1) % n]
            assert abs(a.end_point - b.start_point) < 1e-12

    def test_winding_number_one_around_origin(self):
        for pairs in ([[0.0, 0.5]], [[0.0, 0.4], [3.0, 3.3]], [[1.0, 1.0]]):
            dom = domain_from_arcs(pairs)
            pts = boundary_samples(dom, per_piece=2000)
            dphi = np.angle(np.roll(pts, -1) / pts)
            winding = float(np.sum(dphi)) / TAU
            assert winding == pytest.approx(1.0, abs=1e-6)


class TestDomainQueries:
    def test_contains_E_radial_segments(self):
        dom = domain_from_arcs([[0.2, 0.9], [4.0, 4.1]])
        rng = np.random.default_rng(13)
        for _ in range(200):
            t = float(rng.uniform(0.2, 0.9))
            r = float(rng.uniform(0.0, 1.0))
            assert dom.contains(r * cmath.exp(1j * t))

    def test_contains_rejects_gap_midpoints(self):
        dom = domain_from_arcs([[0.0, 0.1]])
        assert not dom.contains(0.9 * cmath.exp(1j * math.pi))
        assert not dom.contains(0.8 * cmath.exp(1j * 2.0))
        assert dom.contains(0.49 * cmath.exp(1j * math.pi))

    def test_contains_matches_edge_cones_in_gap(self):
        dom = domain_from_arcs([[0.0, 0.5], [2.0, 2.5]])
        rng = np.random.default_rng(17)
        for _ in range(500):
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if abs(z) <= 0.5 or abs(z) > 1.0:
                continue
            theta = cmath.phase(z) % TAU
            if dom.base.contains_angle(theta):
                continue
            expected = any(
                cone_contains(t, z)
                for _, gs, gl in dom.base.gaps()
                for t in (gs, gs + gl)
            )
            assert dom.contains(z) == expected

    def test_nearest_boundary_matches_scalar_queries(self):
        dom = domain_from_arcs([[0.0, 1.0], [3.0, 3.5]])
        rng = np.random.default_rng(19)
        zs = []
        while len(zs) < 50:
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if dom.contains(z):
                zs.append(z)
        zs = np.array(zs)
        dist, idx = dom.nearest_boundary(zs)
        for j, z in enumerate(zs):
            assert dom.distance_to_boundary(z) == dist[j]
            assert dom.nearest_boundary_piece(z) == idx[j]
            # certified lower bound: a disk of that radius stays inside
            for phi in np.linspace(0.0, TAU, 16, endpoint=False):
                assert dom.contains(z + 0.999 * dist[j] * cmath.exp(1j * phi), tol=1e-9)

    def test_distance_raises_outside(self):
        dom = domain_from_arcs([[0.0, 0.5]])
        with pytest.raises(ValueError):
            dom.distance_to_boundary(0.9 * cmath.exp(1j * math.pi))

    def test_boundary_json_shape(self):
        dom = domain_from_arcs([[0.0, 0.5]])
        data = dom.boundary_json_dict()
        assert data["measure_E"] == pytest.approx(0.5)
        assert [row["tag"] for row in data["pieces"]] == ["earc", "segment", "inner", "segment"]
        for row in data["pieces"]:
            assert {"id", "tag", "gap", "length"} <= set(row)

    def test_flat_geometry_round_trip(self):
        dom = domain_from_arcs([[0.0, 0.5], [3.0, 3.2]])
        codes, params = dom.flat_geometry()
        assert len(codes) == len(dom.pieces)
        for k, piece in enumerate(dom.pieces):
            if isinstance(piece, TangentSegment):
                assert codes[k] == 1
                assert params[k, 0] + 1j * params[k, 1] == piece.p
                assert params[k, 2] + 1j * params[k, 3] == piece.q
            else:
                assert codes[k] == 0
                assert params[k, 0] == piece.radius
