import math

import numpy as np
import pytest

from geoconfig.altmetric import (
    AltCoords,
    d_prime,
    from_alt,
    geodesic_alt,
    plan_alt,
    product_length,
    to_alt,
)
from geoconfig.errors import DegenerateConfigError, NonUniqueGeodesicError, NotUnitVectorError
from geoconfig.oracle import sample_antiparallel_pair, sample_f0_pair
from geoconfig.vecgeo import OrderedConfig, angle_between


def test_to_alt_of_example(ex1):
    P, _ = ex1
    coords = to_alt(P)
    np.testing.assert_allclose(coords.A, [0.0, 6.0])
    assert coords.r == pytest.approx(math.sqrt(40.0))
    np.testing.assert_allclose(coords.hhat, np.array([6.0, 2.0]) / math.sqrt(40.0))
    assert from_alt(coords).allclose(P, atol=1e-12)


def test_round_trip(rng):
    for _ in range(200):
        n = int(rng.integers(2, 6))
        P = OrderedConfig(rng.normal(scale=5, size=n), rng.normal(scale=5, size=n))
        assert from_alt(to_alt(P)).allclose(P, atol=1e-11)


def test_degenerate_input():
    with pytest.raises(DegenerateConfigError):
        to_alt(OrderedConfig([1.0, 2.0], [1.0, 2.0]))
    with pytest.raises(NotUnitVectorError):
        AltCoords(A=[0.0, 0.0], hhat=[1.0, 1.0], r=1.0)
    with pytest.raises(DegenerateConfigError):
        AltCoords(A=[0.0, 0.0], hhat=[1.0, 0.0], r=0.0)


def test_d_prime_values(ex1):
    P, Q = ex1
    assert d_prime(P, P) == 0.0
    # same midpoint and radius, quarter turn
    quarter = OrderedConfig([-1.0, 0.0], [1.0, 0.0]), OrderedConfig([0.0, -1.0], [0.0, 1.0])
    assert d_prime(*quarter) == pytest.approx(math.pi / 2)
    p, q = to_alt(P), to_alt(Q)
    expected = math.sqrt(
        float(np.sum((q.A - p.A) ** 2)) + angle_between(p.hhat, q.hhat) ** 2 + (q.r - p.r) ** 2
    )
    assert d_prime(P, Q) == pytest.approx(expected, rel=1e-15)
    assert d_prime(P, Q) == pytest.approx(d_prime(Q, P), rel=1e-15)


def test_geodesic_length_matches_distance(ex1):
    path = geodesic_alt(*ex1)
    assert path.total_length == pytest.approx(d_prime(*ex1), rel=1e-12)
    assert path.product_length(2000) == pytest.approx(d_prime(*ex1), rel=1e-9)
    assert path.eval(0.0).allclose(ex1[0], atol=1e-12)
    assert path.eval(1.0).allclose(ex1[1], atol=1e-12)


def test_geodesic_moves_factors_independently(ex1):
    P, Q = ex1
    path = geodesic_alt(P, Q)
    p, q = to_alt(P), to_alt(Q)
    alpha = angle_between(p.hhat, q.hhat)
    for t in (0.1, 0.35, 0.5, 0.8):
        coords = path.alt_at(t)
        np.testing.assert_allclose(coords.A, (1 - t) * p.A + t * q.A, atol=1e-12)
        assert coords.r == pytest.approx((1 - t) * p.r + t * q.r, rel=1e-12)
        assert angle_between(p.hhat, coords.hhat) == pytest.approx(t * alpha, abs=1e-12)
        assert angle_between(coords.hhat, q.hhat) == pytest.approx((1 - t) * alpha, abs=1e-12)


def test_factor_isometries():
    """Pure translation, rotation and dilation each cost exactly their own factor distance."""
    P = OrderedConfig([-1.0, 0.0], [1.0, 0.0])
    assert d_prime(P, OrderedConfig([2.0, 4.0], [4.0, 4.0])) == pytest.approx(5.0)
    assert d_prime(P, OrderedConfig([-3.0, 0.0], [3.0, 0.0])) == pytest.approx(2.0)
    theta = 2.0
    turned = OrderedConfig([-math.cos(theta), -math.sin(theta)], [math.cos(theta), math.sin(theta)])
    assert d_prime(P, turned) == pytest.approx(theta)


def test_antipodal_geodesic_is_not_unique():
    P = OrderedConfig([-1.0, 0.0], [1.0, 0.0])
    Q = OrderedConfig([4.0, 1.0], [2.0, 1.0])
    with pytest.raises(NonUniqueGeodesicError):
        geodesic_alt(P, Q)
    path = plan_alt(P, Q)
    np.testing.assert_array_equal(path.tangent, [0.0, 1.0])
    assert path.alpha == math.pi
    assert path.total_length == pytest.approx(d_prime(P, Q), rel=1e-12)
    assert path.eval(1.0).allclose(Q, atol=1e-12)
    np.testing.assert_allclose(path.alt_at(0.5).hhat, [0.0, 1.0], atol=1e-12)


def test_antipodal_along_first_axis_in_odd_dimension():
    P = OrderedConfig([-1.0, 0.0, 0.0], [1.0, 0.0, 0.0])
    Q = OrderedConfig([1.0, 0.0, 5.0], [-1.0, 0.0, 5.0])
    path = plan_alt(P, Q)
    np.testing.assert_array_equal(path.tangent, [0.0, 1.0, 0.0])
    assert path.eval(1.0).allclose(Q, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_planner_reaches_every_goal(rng, n):
    queries = [sample_f0_pair(rng, n) for _ in range(300)]
    queries += [sample_antiparallel_pair(rng, n) for _ in range(10)]
    for P, Q in queries:
        path = plan_alt(P, Q)
        assert path.eval(0.0).allclose(P, atol=1e-10)
        assert path.eval(1.0).allclose(Q, atol=1e-10)
        assert path.total_length == pytest.approx(d_prime(P, Q), rel=1e-9)


def test_constant_speed(rng):
    P, Q = sample_f0_pair(rng, 3)
    path = plan_alt(P, Q)
    points = path.sample(np.linspace(0.0, 1.0, 101))
    steps = [product_length(points[i : i + 2]) for i in range(100)]
    np.testing.assert_allclose(steps, path.total_length / 100, rtol=1e-6)


def test_alt_at_returns_unit_direction(rng):
    for _ in range(50):
        P, Q = sample_f0_pair(rng, 4)
        coords = plan_alt(P, Q).alt_at(float(rng.uniform()))
        assert np.linalg.norm(coords.hhat) == pytest.approx(1.0, abs=1e-12)


def test_tangent_is_orthogonal_to_start_direction(rng):
    for _ in range(100):
        P, Q = sample_f0_pair(rng, 3)
        path = plan_alt(P, Q)
        if path.alpha > 0.0:
            assert float(path.tangent @ path.source.hhat) == pytest.approx(0.0, abs=1e-12)
            assert np.linalg.norm(path.tangent) == pytest.approx(1.0, abs=1e-12)
