import math

import numpy as np
import pytest
from conftest import config_from, random_unit

from geoconfig.errors import (
    DimensionMismatchError,
    InfeasibleConfigError,
    MissingDirectionError,
    NotUnitVectorError,
    ParallelDirectionsError,
    PreconditionError,
)
from geoconfig.oracle import sample_antiparallel_pair
from geoconfig.ordered import (
    BetaMode,
    BoundaryArc,
    GeodesicType,
    beta_of,
    boundary_geodesic,
    classify,
    composite_path,
    contact_points,
    convex_u_identity_check,
    geodesic,
    geodesic_length,
    intersection_min_norm,
    pair_geometry,
    scale_separation,
    seam_scale,
    solve_uv,
    solve_uv_parallel,
    wedge_norm_sq,
)
from geoconfig.planner import plan_ordered
from geoconfig.vecgeo import BoundaryPoint, OrderedConfig, config_distance, min_gap_along, normalize


def random_bc_pair(rng: np.random.Generator, n: int) -> tuple[OrderedConfig, OrderedConfig]:
    """Random pair whose straight path dips below gap 2."""
    while True:
        h = rng.uniform(1.0, 3.0) * random_unit(rng, n)
        k = rng.uniform(1.0, 3.0) * random_unit(rng, n)
        P = config_from(rng.normal(size=n), h)
        Q = config_from(rng.normal(scale=3.0, size=n), k)
        if classify(P, Q).tag is not GeodesicType.TYPE_A:
            return P, Q


def test_example_one(ex1):
    P, Q = ex1
    g = pair_geometry(P, Q)
    assert (g.H, g.K, g.D) == (40.0, 13.0, -22.0)
    assert g.delta**2 == pytest.approx(144 / 97)

    cls = classify(P, Q)
    assert cls.tag is GeodesicType.TYPE_B
    np.testing.assert_allclose(cls.u, [0.4622, -0.8867], atol=1e-3)
    np.testing.assert_allclose(cls.v, [0.3022, -0.9533], atol=1e-3)
    assert cls.beta == pytest.approx(0.1736, abs=1e-3)
    np.testing.assert_allclose(cls.x, [3.1596, -2.8468], atol=1e-3)
    np.testing.assert_allclose(cls.y, [3.2474, -3.0927], atol=1e-3)
    assert geodesic_length(P, Q) == pytest.approx(25.2455, abs=1e-3)
    assert config_distance(P, Q) == pytest.approx(25.2190, abs=1e-3)


def test_example_two_family(ex2):
    P, Q = ex2
    cls = classify(P, Q)
    assert cls.tag is GeodesicType.TYPE_C
    assert cls.u is None
    assert cls.beta == pytest.approx(0.4202, abs=1e-3)
    np.testing.assert_allclose(cls.x, [3.2385, -2.3633], atol=1e-3)
    np.testing.assert_allclose(cls.y, [3.4291, -2.9730], atol=1e-3)
    assert cls.complement_basis.shape == (2, 1)
    np.testing.assert_allclose(cls.geometry.h @ cls.complement_basis, 0.0, atol=1e-12)

    with pytest.raises(MissingDirectionError):
        geodesic(P, Q)

    w = np.array([2.0, -3.0]) / math.sqrt(13.0)
    lengths = []
    for sign in (1.0, -1.0):
        path = geodesic(P, Q, sign * w)
        lengths.append(path.total_length)
        # contact points do not depend on the choice of w
        np.testing.assert_allclose(path.geodesic_class.x, cls.x, atol=1e-12)
    assert lengths == pytest.approx([28.375, 28.375], abs=1e-3)
    assert geodesic_length(P, Q) == pytest.approx(28.375, abs=1e-3)
    assert config_distance(P, Q) == pytest.approx(28.213, abs=1e-3)

    u, _ = solve_uv_parallel(cls.geometry, w)
    np.testing.assert_allclose(u, [0.66471, -0.74709], atol=1e-4)


def test_type_a_is_straight():
    P = OrderedConfig([0.0, 0.0], [4.0, 0.0])
    Q = OrderedConfig([0.0, 5.0], [4.0, 5.0])
    path = geodesic(P, Q)
    assert path.tag is GeodesicType.TYPE_A
    assert path.total_length == pytest.approx(math.sqrt(50.0))
    assert geodesic_length(P, Q) == pytest.approx(math.sqrt(50.0))


def test_positive_parallel_is_type_a():
    P = OrderedConfig([-2.0, 0.0], [2.0, 0.0])
    Q = OrderedConfig([7.0, 1.0], [13.0, 1.0])
    assert classify(P, Q).tag is GeodesicType.TYPE_A


def test_identical_endpoints():
    P = OrderedConfig([1.0, 1.0], [4.0, 5.0])
    assert geodesic_length(P, P) == 0.0
    path = geodesic(P, P)
    assert path.total_length == 0.0
    assert path.eval(0.5).allclose(P)


def test_input_errors():
    P = OrderedConfig([0.0, 0.0], [1.0, 0.0])
    Q = OrderedConfig([0.0, 0.0], [3.0, 0.0])
    with pytest.raises(InfeasibleConfigError):
        classify(P, Q)
    with pytest.raises(DimensionMismatchError):
        classify(Q, OrderedConfig([0.0, 0.0, 0.0], [3.0, 0.0, 0.0]))


def test_solve_uv_preconditions(ex2):
    straight = pair_geometry(OrderedConfig([0.0, 0.0], [4.0, 0.0]), OrderedConfig([0.0, 5.0], [4.0, 5.0]))
    with pytest.raises(PreconditionError):
        solve_uv(straight)
    g = pair_geometry(*ex2)
    with pytest.raises(ParallelDirectionsError):
        solve_uv(g)
    with pytest.raises(ParallelDirectionsError):
        beta_of(g, BetaMode.NON_PARALLEL)
    with pytest.raises(NotUnitVectorError):
        solve_uv_parallel(g, np.array([2.0, -3.0]))
    with pytest.raises(InfeasibleConfigError):
        solve_uv_parallel(g, normalize(np.array([6.0, 4.0])))


def test_beta_parallel_needs_antiparallel(ex1):
    with pytest.raises(PreconditionError):
        beta_of(pair_geometry(*ex1), BetaMode.PARALLEL)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_closed_form_length_matches_constructed_path(rng, n):
    for _ in range(60):
        P, Q = random_bc_pair(rng, n)
        cls = classify(P, Q)
        path = geodesic(P, Q)
        assert path.polyline_length(10_000) == pytest.approx(geodesic_length(P, Q), rel=1e-6)
        assert path.total_length == pytest.approx(geodesic_length(P, Q), rel=1e-9)
        g = cls.geometry
        assert float(g.h @ cls.u) == pytest.approx(1.0, abs=1e-9)
        assert float(g.k @ cls.v) == pytest.approx(1.0, abs=1e-9)
        assert np.linalg.norm(cls.u) == pytest.approx(1.0, abs=1e-9)
        assert np.linalg.norm(cls.v) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_type_c_paths(rng, n):
    for _ in range(30):
        P, Q = sample_antiparallel_pair(rng, n)
        cls = classify(P, Q)
        assert cls.tag is GeodesicType.TYPE_C
        w = cls.complement_basis @ random_unit(rng, n - 1)
        path = geodesic(P, Q, w)
        assert path.polyline_length(10_000) == pytest.approx(geodesic_length(P, Q), rel=1e-6)
        assert min_gap_along(path, 2_000) >= 2.0 - 1e-9


def test_paths_are_feasible_and_hit_endpoints(rng):
    for n in (2, 3):
        for _ in range(40):
            P, Q = random_bc_pair(rng, n)
            path = geodesic(P, Q)
            assert path.eval(0.0).allclose(P, atol=1e-12)
            assert path.eval(1.0).allclose(Q, atol=1e-12)
            assert min_gap_along(path, 10_000) >= 2.0 - 1e-9


def test_constant_speed(ex1):
    path = geodesic(*ex1)
    samples = path.sample(np.linspace(0.0, 1.0, 1001)).reshape(1001, -1)
    steps = np.linalg.norm(np.diff(samples, axis=0), axis=1)
    assert np.max(np.abs(steps - path.total_length / 1000)) < 1e-6


def test_delta_is_the_minimum_gap_of_the_straight_path(rng):
    for _ in range(100):
        n = int(rng.integers(2, 5))
        P, Q = random_bc_pair(rng, n)
        ts = np.linspace(0.0, 1.0, 100_001)[:, None]
        gaps = np.linalg.norm((1 - ts) * (P.second - P.first) + ts * (Q.second - Q.first), axis=1)
        assert pair_geometry(P, Q).delta == pytest.approx(gaps.min(), abs=1e-5)


def test_minimum_norm_intersection_trichotomy(rng):
    checked = 0
    while checked < 1000:
        n = int(rng.integers(2, 5))
        h = rng.uniform(1.0, 4.0) * random_unit(rng, n)
        k = rng.uniform(1.0, 4.0) * random_unit(rng, n)
        g = pair_geometry(config_from(np.zeros(n), h), config_from(np.zeros(n), k))
        if g.gram < 1e-6 * g.H * g.K or min(g.H, g.K) < g.D:
            continue
        u_star = intersection_min_norm(g)
        assert float(h @ u_star) == pytest.approx(1.0, abs=1e-9)
        assert float(k @ u_star) == pytest.approx(1.0, abs=1e-9)
        norm_sq = float(u_star @ u_star)
        assert norm_sq == pytest.approx((g.H + g.K - 2 * g.D) / g.gram, rel=1e-9)
        if abs(g.delta - 2.0) > 1e-6:
            assert (norm_sq < 1.0) == (g.delta > 2.0)
        checked += 1


def seam_pair() -> tuple[OrderedConfig, OrderedConfig]:
    k = np.array([math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3)])
    return OrderedConfig([-2.0, 0.0], [2.0, 0.0]), config_from(np.array([5.0, 5.0]), k)


def test_seam_scale_and_convex_identity():
    P, Q = seam_pair()
    s = seam_scale(P, Q)
    # delta^2 = 12 s^2 / (s^2 + 2 s + 4) crosses 4 at s = 2
    assert s == pytest.approx(2.0, abs=1e-9)
    Qs = scale_separation(Q, s)
    g = pair_geometry(P, Qs)
    assert g.delta == pytest.approx(2.0, abs=1e-9)
    assert convex_u_identity_check(g)
    np.testing.assert_allclose(np.linalg.norm(intersection_min_norm(g)), 1.0, atol=1e-6)

    # both length formulas agree on the seam
    beta = beta_of(g, BetaMode.NON_PARALLEL)
    assert beta == pytest.approx(0.0, abs=1e-6)
    closed = math.sqrt(2) * math.sqrt(float(np.sum((g.A - g.B) ** 2)) + (beta + g.S0 + g.S1) ** 2)
    assert closed == pytest.approx(config_distance(P, Qs), rel=1e-6)


def test_convex_identity_needs_the_seam(ex1):
    with pytest.raises(PreconditionError):
        convex_u_identity_check(pair_geometry(*ex1))


def test_seam_scale_without_crossing():
    P = OrderedConfig([-2.0, 0.0], [2.0, 0.0])
    Q = OrderedConfig([0.0, 10.0], [4.0, 10.0])
    with pytest.raises(PreconditionError):
        seam_scale(P, Q)


def test_perturbed_contacts_never_shorten_the_path(rng):
    for n in (2, 3):
        for _ in range(20):
            P, Q = random_bc_pair(rng, n)
            cls = classify(P, Q)
            g = cls.geometry
            best = geodesic_length(P, Q)
            same = composite_path(P, Q, BoundaryPoint(cls.x, normalize(cls.u)), BoundaryPoint(cls.y, normalize(cls.v)))
            assert same.total_length == pytest.approx(best, rel=1e-9)
            for _ in range(10):
                eps = rng.uniform(1e-3, 0.2)
                # moving u towards h keeps h.u >= 1, so the straight pieces stay feasible
                C0 = BoundaryPoint(cls.x + rng.normal(scale=0.1, size=n), normalize(cls.u + eps * g.h))
                C1 = BoundaryPoint(cls.y + rng.normal(scale=0.1, size=n), normalize(cls.v + eps * g.k))
                assert composite_path(P, Q, C0, C1).total_length >= best - 1e-9


def test_composite_path_rejects_infeasible_piece(ex1):
    P, Q = ex1
    cls = classify(P, Q)
    bad = BoundaryPoint(cls.x, normalize(-cls.geometry.h))
    with pytest.raises(InfeasibleConfigError):
        composite_path(P, Q, bad, BoundaryPoint(cls.y, normalize(cls.v)))


def test_boundary_geodesic_quarter_turn():
    arc = BoundaryArc(x=np.zeros(2), y=np.zeros(2), u=np.array([1.0, 0.0]), v=np.array([0.0, 1.0]), alpha=math.pi / 2)
    path = boundary_geodesic(arc)
    assert path.total_length == pytest.approx(math.sqrt(2) * math.pi / 2)
    assert path.polyline_length(10_000) == pytest.approx(path.total_length, rel=1e-6)
    assert path.eval(1.0).allclose(OrderedConfig([0.0, -1.0], [0.0, 1.0]), atol=1e-12)
    assert min_gap_along(path, 1000) == pytest.approx(2.0, abs=1e-12)


def test_boundary_arc_validation():
    with pytest.raises(PreconditionError):
        BoundaryArc(x=np.zeros(2), y=np.zeros(2), u=np.array([1.0, 0.0]), v=np.array([0.0, 1.0]), alpha=1.0)
    with pytest.raises(NotUnitVectorError):
        BoundaryArc(x=np.zeros(2), y=np.zeros(2), u=np.array([2.0, 0.0]), v=np.array([0.0, 1.0]), alpha=math.pi / 2)


def test_contact_points_collapse_when_weights_vanish():
    P = OrderedConfig([-1.0, 0.0], [1.0, 0.0])
    Q = OrderedConfig([1.0, 0.0], [-1.0, 0.0])
    g = pair_geometry(P, Q)
    x, y = contact_points(g, 0.0)
    np.testing.assert_array_equal(x, g.A)
    np.testing.assert_array_equal(y, g.A)


def test_boundary_start_keeps_its_direction():
    P = OrderedConfig([-1.0, 0.0], [1.0, 0.0])
    Q = OrderedConfig([4.0, -1.0], [0.0, 1.0])
    cls = classify(P, Q)
    assert cls.tag is GeodesicType.TYPE_B
    np.testing.assert_allclose(cls.u, [1.0, 0.0], atol=1e-12)
    path = geodesic(P, Q)
    assert path.polyline_length(10_000) == pytest.approx(geodesic_length(P, Q), rel=1e-6)


def test_half_turn_on_the_boundary():
    P = OrderedConfig([-1.0, 0.0], [1.0, 0.0])
    Q = OrderedConfig([1.0, 0.0], [-1.0, 0.0])
    cls = classify(P, Q)
    assert cls.tag is GeodesicType.TYPE_C
    assert cls.beta == pytest.approx(math.pi)
    path = geodesic(P, Q, np.array([0.0, 1.0]))
    assert path.total_length == pytest.approx(math.sqrt(2) * math.pi)
    assert path.eval(0.5).allclose(OrderedConfig([0.0, -1.0], [0.0, 1.0]), atol=1e-12)
    assert path.eval(1.0).allclose(Q, atol=1e-12)
    assert min_gap_along(path, 1000) == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("theta", [1e-7, 1e-6, 5e-6])
def test_nearly_antiparallel_pairs_keep_their_unique_geodesic(theta):
    P = config_from(np.zeros(2), np.array([2.0, 0.0]))
    Q = config_from(np.array([3.0, 1.0]), 1.5 * np.array([-math.cos(theta), math.sin(theta)]))
    cls = classify(P, Q)
    assert cls.tag is GeodesicType.TYPE_B
    assert cls.geometry.delta > 1e-9
    g = cls.geometry
    assert float(g.h @ cls.u) == pytest.approx(1.0, abs=1e-12)
    assert float(g.k @ cls.v) == pytest.approx(1.0, abs=1e-12)
    path = plan_ordered(P, Q)
    assert path.tag is GeodesicType.TYPE_B
    assert path.total_length == pytest.approx(geodesic_length(P, Q), abs=1e-9)
    assert path.eval(1.0).allclose(Q, atol=1e-12)


def test_exact_antiparallel_pairs_stay_type_c(rng):
    for n in (2, 3, 5):
        for _ in range(20):
            P, Q = sample_antiparallel_pair(rng, n, spread=50.0)
            g = pair_geometry(P, Q)
            assert g.antiparallel
            assert g.delta <= 1e-9


def test_wedge_norm_matches_gram_determinant(rng):
    for n in (2, 3, 4):
        h, k = rng.normal(size=n), rng.normal(size=n)
        expected = float(h @ h) * float(k @ k) - float(h @ k) ** 2
        assert wedge_norm_sq(h, k) == pytest.approx(expected, rel=1e-9, abs=1e-12)
    h = np.array([2.0, 0.0])
    k = 1.5 * np.array([-math.cos(1e-7), math.sin(1e-7)])
    assert wedge_norm_sq(h, k) == pytest.approx(9.0 * math.sin(1e-7) ** 2, rel=1e-12)


@pytest.mark.parametrize("tangent", [[0.0, -1.0, 0.0], [0.0, 0.0, 1.0]])
def test_half_turn_arc_ends_on_v(tangent):
    eps = 5e-7
    u = np.array([1.0, 0.0, 0.0])
    v = np.array([-math.cos(eps), math.sin(eps), 0.0])
    arc = BoundaryArc(x=np.zeros(3), y=np.array([1.0, 2.0, 0.0]), u=u, v=v, alpha=math.pi - eps, tangent=tangent)
    ts = np.linspace(0.0, 1.0, 2001)
    dirs = arc.directions(ts)
    np.testing.assert_allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(dirs[0], u, atol=1e-12)
    np.testing.assert_allclose(dirs[-1], v, atol=1e-12)
    samples = arc.sample(ts)
    assert OrderedConfig(samples[-1, 0], samples[-1, 1]).allclose(arc.end, atol=1e-12)
    steps = np.linalg.norm(np.diff(samples.reshape(len(ts), -1), axis=0), axis=1)
    assert float(steps.max()) < 2.0 * arc.length / (len(ts) - 1)
