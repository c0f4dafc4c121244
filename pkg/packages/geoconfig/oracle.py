"""Numerical check that the closed-form geodesics are minimal.

The oracle discretizes a path from P to Q into K waypoints in R^{2n} and runs
projected gradient descent on the chord sum, projecting every waypoint back
onto {gap >= 2} after each step. It knows nothing about the closed form beyond
using it as one of its two starting paths.
"""

from dataclasses import dataclass, field

import numpy as np

from .models import VerifyReport
from .ordered import classify, geodesic_length
from .planner import plan_ordered
from .vecgeo import CLEARANCE, OrderedConfig, check_dims, min_gap_along, polyline_length, require_f0

TOL_PROJ = 1e-9
TOL_CONVERGED = 1e-10
MIN_STEP = 1e-14
DEFAULT_ITERS = 50_000


@dataclass
class OracleResult:
    waypoints: np.ndarray
    length: float
    converged: bool
    iterations: int
    init: str
    starts: dict[str, float] = field(default_factory=dict)


def sample_f0_pair(rng: np.random.Generator, n: int, spread: float = 4.0) -> tuple[OrderedConfig, OrderedConfig]:
    """Random query in F0(R^n, 2) with point separations between 2 and 8."""
    configs = []
    for _ in range(2):
        center = rng.normal(scale=spread, size=n)
        direction = rng.normal(size=n)
        direction /= np.linalg.norm(direction)
        half = rng.uniform(1.0, 4.0) * direction
        configs.append(OrderedConfig(center - half, center + half))
    return configs[0], configs[1]


def sample_antiparallel_pair(rng: np.random.Generator, n: int, spread: float = 1.0) -> tuple[OrderedConfig, OrderedConfig]:
    """Random query whose half-differences are antiparallel, with nearby midpoints."""
    direction = rng.normal(size=n)
    direction /= np.linalg.norm(direction)
    h = rng.uniform(1.0, 3.0) * direction
    k = -rng.uniform(1.0, 3.0) * direction
    A = rng.normal(scale=spread, size=n)
    B = rng.normal(scale=spread, size=n)
    return OrderedConfig(A - h, A + h), OrderedConfig(B - k, B + k)


def project(points: np.ndarray) -> np.ndarray:
    """Push every configuration with gap < 2 apart about its midpoint.

    Args:
        points: Array of shape (K, 2, n)

    Returns:
        New array of the same shape; short configurations become (m - u, m + u)
        with u the unit separation direction, or e1 for coincident points
    """
    out = np.array(points, dtype=np.float64, copy=True)
    diff = out[:, 1] - out[:, 0]
    gaps = np.linalg.norm(diff, axis=1)
    short = gaps < CLEARANCE
    if not np.any(short):
        return out
    mids = (out[short, 0] + out[short, 1]) / 2.0
    dirs = np.zeros_like(mids)
    dirs[:, 0] = 1.0
    nonzero = gaps[short] > 0.0
    dirs[nonzero] = diff[short][nonzero] / gaps[short][nonzero, None]
    out[short, 0] = mids - dirs
    out[short, 1] = mids + dirs
    return out


def _chord_gradient(flat: np.ndarray) -> np.ndarray:
    chords = np.diff(flat, axis=0)
    norms = np.linalg.norm(chords, axis=1, keepdims=True)
    units = np.divide(chords, norms, out=np.zeros_like(chords), where=norms > 0.0)
    grad = np.zeros_like(flat)
    grad[1:-1] = units[:-1] - units[1:]
    return grad


def _descend(points: np.ndarray, iters: int) -> tuple[np.ndarray, float, bool, int]:
    shape = points.shape
    current = project(points)
    length = polyline_length(current)
    for it in range(1, iters + 1):
        grad = _chord_gradient(current.reshape(shape[0], -1)).reshape(shape)
        step = 0.5
        accepted = False
        while step >= MIN_STEP:
            candidate = project(current - step * grad)
            candidate_length = polyline_length(candidate)
            if candidate_length < length:
                accepted = True
                break
            step /= 2.0
        if not accepted:
            return current, length, True, it
        change = (length - candidate_length) / length if length > 0.0 else 0.0
        current, length = candidate, candidate_length
        if change < TOL_CONVERGED:
            return current, length, True, it
    return current, length, False, iters


def optimize_path(P: OrderedConfig, Q: OrderedConfig, K: int = 400, iters: int = DEFAULT_ITERS, seed: int = 0) -> OracleResult:
    """Shortest feasible K-waypoint polyline from P to Q found by projected descent.

    Two starts are optimized: samples of the closed-form geodesic and a randomly
    perturbed straight path. The shorter result is returned.

    Args:
        P: Start configuration in F0(R^n, 2)
        Q: Goal configuration in F0(R^n, 2)
        K: Number of waypoints including both endpoints
        iters: Iteration budget per start
        seed: Seed of the perturbation

    Returns:
        OracleResult of the shorter start, with the final length of every start
        in `starts`; converged is False when the budget ran out first

    Raises:
        ValueError: If K < 16 or iters < 1
    """
    if K < 16:
        raise ValueError(f"K must be >= 16, got {K}")
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    check_dims(P, Q)
    require_f0(P, "start configuration")
    require_f0(Q, "goal configuration")

    ts = np.linspace(0.0, 1.0, K)
    closed_form = plan_ordered(P, Q).sample(ts)

    rng = np.random.default_rng(seed)
    straight = (1.0 - ts)[:, None, None] * P.as_array() + ts[:, None, None] * Q.as_array()
    noise = rng.normal(scale=0.05, size=straight.shape)
    noise[0] = noise[-1] = 0.0
    perturbed = straight + noise

    best: OracleResult | None = None
    starts: dict[str, float] = {}
    for name, start in (("closed_form", closed_form), ("perturbed_linear", perturbed)):
        points, length, converged, used = _descend(start, iters)
        points[0], points[-1] = P.as_array(), Q.as_array()
        starts[name] = length
        if best is None or length < best.length:
            best = OracleResult(waypoints=points, length=length, converged=converged, iterations=used, init=name)
    assert best is not None
    best.starts = starts
    return best


def verify_instance(
    P: OrderedConfig,
    Q: OrderedConfig,
    K: int = 400,
    iters: int = 2000,
    seed: int = 0,
    gap_samples: int = 10_000,
) -> VerifyReport:
    """Compare the closed-form geodesic length with the oracle on one query.

    The report passes when the oracle does not beat the closed form by more
    than 0.1% and the closed-form path keeps gap >= 2 at `gap_samples` times.
    """
    analytic = geodesic_length(P, Q)
    result = optimize_path(P, Q, K=K, iters=iters, seed=seed)
    min_gap = min_gap_along(plan_ordered(P, Q), gap_samples)
    rel_gap = (result.length - analytic) / analytic if analytic > 0.0 else 0.0
    return VerifyReport(
        analytic=analytic,
        oracle=result.length,
        feasible=min_gap >= CLEARANCE - TOL_PROJ,
        rel_gap=rel_gap,
        min_gap=min_gap,
        converged=result.converged,
        tag=classify(P, Q).tag.value,
    )
