"""Minimal geodesics in F0(R^n, 2), the ordered pairs of points at distance >= 2.

A query (P, Q) falls in one of three situations, decided by delta, the smallest
point separation along the straight path from P to Q:

* type (a), delta >= 2: the straight path is the unique geodesic;
* type (b), 0 < delta < 2: the unique geodesic runs straight to the boundary
  configuration C0 = (x - u, x + u), follows the boundary geodesic to
  C1 = (y - v, y + v), then runs straight to Q;
* type (c), delta = 0: h and k are antiparallel and there is one geodesic of the
  same shape for every unit w orthogonal to h.

Everything here is closed form; ``oracle`` checks minimality numerically.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import brentq

from .errors import (
    DimensionMismatchError,
    InfeasibleConfigError,
    MissingDirectionError,
    NotUnitVectorError,
    ParallelDirectionsError,
    PreconditionError,
)
from .vecgeo import (
    BoundaryPoint,
    LinearSegment,
    OrderedConfig,
    PiecewisePath,
    Vec,
    angle_between,
    as_vec,
    check_dims,
    config_distance,
    halving_data,
    require_f0,
    segment_feasible,
)

TOL_CLASS = 1e-9
TOL_PAR = 1e-24
TOL_EQUAL = 1e-12
TOL_UNIT = 1e-9
TOL_ANGLE = 1e-7
TOL_HALF_TURN = 1e-6


class GeodesicType(Enum):
    """Situation of a query pair."""

    TYPE_A = "a"
    TYPE_B = "b"
    TYPE_C = "c"


class BetaMode(Enum):
    NON_PARALLEL = "non_parallel"
    PARALLEL = "parallel"


def wedge_norm_sq(h: Vec, k: Vec) -> float:
    """||h||^2 ||k||^2 - (h.k)^2 as the sum of squared 2x2 minors h_i k_j - h_j k_i.

    Stays accurate to relative rounding when h and k are nearly parallel, where
    HK - D^2 cancels down to noise.
    """
    minors = np.outer(h, k)
    minors = minors - minors.T
    return 0.5 * float(np.sum(minors * minors))


def _unit_orthogonal(vec: Vec, axis: Vec) -> Vec:
    """Unit component of vec orthogonal to the unit vector axis, projected twice."""
    rest = vec - float(vec @ axis) * axis
    rest = rest - float(rest @ axis) * axis
    return rest / np.linalg.norm(rest)


@dataclass(frozen=True, eq=False)
class PairGeometry:
    """Scalars and vectors derived from a query pair (P, Q)."""

    h: Vec
    k: Vec
    A: Vec
    B: Vec
    H: float
    K: float
    D: float
    S0: float
    S1: float
    delta: float

    @property
    def dim(self) -> int:
        return int(self.h.shape[0])

    @property
    def gram(self) -> float:
        """HK - D^2, zero exactly when h and k are parallel."""
        return wedge_norm_sq(self.h, self.k)

    @property
    def parallel(self) -> bool:
        """h and k span one line up to rounding."""
        return self.gram <= TOL_PAR * self.H * self.K

    @property
    def antiparallel(self) -> bool:
        return self.D < 0.0 and self.delta <= TOL_CLASS

    def start(self) -> OrderedConfig:
        return OrderedConfig(self.A - self.h, self.A + self.h)

    def goal(self) -> OrderedConfig:
        return OrderedConfig(self.B - self.k, self.B + self.k)


@dataclass(frozen=True, eq=False)
class GeodesicClass:
    """Classification of a query and the contact data of its geodesic.

    For type (c) the contact points and beta do not depend on w; u and v are
    only filled once a w is chosen. ``complement_basis`` holds an orthonormal
    basis (as columns) of the vectors orthogonal to h, from which every valid w
    is a unit combination.
    """

    tag: GeodesicType
    geometry: PairGeometry
    u: Vec | None = None
    v: Vec | None = None
    beta: float | None = None
    x: Vec | None = None
    y: Vec | None = None
    complement_basis: np.ndarray | None = None
    w: Vec | None = None


@dataclass(frozen=True, eq=False)
class BoundaryArc:
    """Geodesic in the boundary from (x - u, x + u) to (y - v, y + v).

    The midpoint moves linearly from x to y while the direction rotates from u
    to v along the great circle, both at constant speed. When u and v are
    antipodal the half circle is the one leaving u along `tangent`.
    """

    x: Vec
    y: Vec
    u: Vec
    v: Vec
    alpha: float
    tangent: Vec | None = None

    def __post_init__(self) -> None:
        x, y, u, v = (as_vec(vec, name) for vec, name in ((self.x, "x"), (self.y, "y"), (self.u, "u"), (self.v, "v")))
        if not x.shape == y.shape == u.shape == v.shape:
            raise DimensionMismatchError("boundary arc vectors must share one dimension")
        for vec, name in ((u, "u"), (v, "v")):
            if abs(float(np.linalg.norm(vec)) - 1.0) > TOL_UNIT:
                raise NotUnitVectorError(f"{name} must be a unit vector, got norm {np.linalg.norm(vec)!r}")
        if not 0.0 <= self.alpha <= math.pi:
            raise PreconditionError(f"boundary arc angle must lie in [0, pi], got {self.alpha!r}")
        if abs(self.alpha - angle_between(u, v)) > TOL_ANGLE:
            raise PreconditionError(f"alpha={self.alpha!r} is not the angle between u and v ({angle_between(u, v)!r})")
        for name, vec in (("x", x), ("y", y), ("u", u), ("v", v)):
            object.__setattr__(self, name, vec)
        if math.pi - self.alpha <= TOL_HALF_TURN:
            if self.tangent is None:
                raise PreconditionError("u and v are antipodal; pass a tangent choosing the half circle")
            tangent = as_vec(self.tangent, "tangent")
            tangent = tangent - float(tangent @ u) * u
            if float(np.linalg.norm(tangent)) <= TOL_UNIT:
                raise PreconditionError("tangent must not be parallel to u")
            object.__setattr__(self, "tangent", tangent / np.linalg.norm(tangent))

    @property
    def length(self) -> float:
        return math.sqrt(2.0 * (float(np.sum((self.x - self.y) ** 2)) + self.alpha**2))

    @property
    def start(self) -> OrderedConfig:
        return OrderedConfig(self.x - self.u, self.x + self.u)

    @property
    def end(self) -> OrderedConfig:
        return OrderedConfig(self.y - self.v, self.y + self.v)

    def directions(self, ts: np.ndarray) -> np.ndarray:
        """Unit directions u(t) of shape (m, n)."""
        s = np.asarray(ts, dtype=np.float64)[:, None]
        if self.alpha == 0.0:
            # u and v agree up to rounding; interpolate and renormalize.
            blend = (1.0 - s) * self.u + s * self.v
            return blend / np.linalg.norm(blend, axis=1, keepdims=True)
        if math.pi - self.alpha <= TOL_HALF_TURN:
            assert self.tangent is not None
            # Half circle from u to -u, bent by s (v + u) so that it ends on v itself.
            half = np.cos(s * math.pi) * self.u + np.sin(s * math.pi) * self.tangent + s * (self.v + self.u)
            return half / np.linalg.norm(half, axis=1, keepdims=True)
        sin_alpha = math.sin(self.alpha)
        return (np.sin((1.0 - s) * self.alpha) * self.u + np.sin(s * self.alpha) * self.v) / sin_alpha

    def sample(self, ts: np.ndarray) -> np.ndarray:
        s = np.asarray(ts, dtype=np.float64)[:, None]
        centers = (1.0 - s) * self.x + s * self.y
        dirs = self.directions(ts)
        return np.stack([centers - dirs, centers + dirs], axis=1)


@dataclass(frozen=True, eq=False)
class GeodesicPath(PiecewisePath):
    """A minimal geodesic together with the classification that produced it."""

    geodesic_class: GeodesicClass | None = None

    @property
    def tag(self) -> GeodesicType | None:
        return self.geodesic_class.tag if self.geodesic_class else None


def pair_geometry(P: OrderedConfig, Q: OrderedConfig) -> PairGeometry:
    """Compute h, k, A, B, H, K, D, S0, S1 and delta for a query pair.

    Args:
        P: Start configuration in F0(R^n, 2)
        Q: Goal configuration in F0(R^n, 2)

    Returns:
        PairGeometry of the pair

    Raises:
        DimensionMismatchError: If P and Q live in different dimensions
        InfeasibleConfigError: If either endpoint violates the clearance constraint
    """
    check_dims(P, Q)
    require_f0(P, "start configuration")
    require_f0(Q, "goal configuration")
    h, A = halving_data(P)
    k, B = halving_data(Q)
    H = float(h @ h)
    K = float(k @ k)
    D = float(h @ k)

    scale = max(float(np.max(np.abs(h))), float(np.max(np.abs(k))), 1.0)
    if np.allclose(h, k, rtol=0.0, atol=TOL_EQUAL * scale) or min(H, K) <= D:
        delta_sq = 4.0 * min(H, K)
    else:
        delta_sq = 4.0 * wedge_norm_sq(h, k) / (H + K - 2.0 * D)

    return PairGeometry(
        h=h,
        k=k,
        A=A,
        B=B,
        H=H,
        K=K,
        D=D,
        S0=math.sqrt(max(H - 1.0, 0.0)),
        S1=math.sqrt(max(K - 1.0, 0.0)),
        delta=math.sqrt(delta_sq),
    )


def _uv_closed_form(g: PairGeometry) -> tuple[Vec, Vec]:
    # S0 (k - (D/H) h) / sqrt(HK - D^2) is S0/||h|| times the unit part of k orthogonal to h.
    norm_h = math.sqrt(g.H)
    norm_k = math.sqrt(g.K)
    u = g.h / g.H + (g.S0 / norm_h) * _unit_orthogonal(g.k, g.h / norm_h)
    v = g.k / g.K + (g.S1 / norm_k) * _unit_orthogonal(g.h, g.k / norm_k)
    return u, v


def solve_uv(g: PairGeometry) -> tuple[Vec, Vec]:
    """Unit u, v with h.u = 1 = k.v and minimal ||u - v|| for non-parallel h, k.

    Raises:
        PreconditionError: If delta > 2, where the straight path is already feasible
        ParallelDirectionsError: If k is a scalar multiple of h (use solve_uv_parallel)
    """
    if g.delta > 2.0 + TOL_CLASS:
        raise PreconditionError(f"delta={g.delta:.12g} > 2: the straight path is the geodesic")
    if g.parallel:
        raise ParallelDirectionsError("h and k are parallel; use solve_uv_parallel with a direction w")
    return _uv_closed_form(g)


def solve_uv_parallel(g: PairGeometry, w: Vec) -> tuple[Vec, Vec]:
    """Contact directions of the type (c) geodesic selected by w.

    Args:
        g: Geometry of an antiparallel pair
        w: Unit vector orthogonal to h

    Returns:
        (u, v) with h.u = 1 = k.v, ||u|| = ||v|| = 1

    Raises:
        PreconditionError: If h and k are not antiparallel
        NotUnitVectorError: If w is not a unit vector
        InfeasibleConfigError: If w is not orthogonal to h
    """
    w = as_vec(w, "w")
    if w.shape != g.h.shape:
        raise DimensionMismatchError(f"w has dimension {w.shape[0]}, expected {g.dim}")
    if not g.antiparallel:
        raise PreconditionError("solve_uv_parallel needs h and k antiparallel")
    if abs(float(np.linalg.norm(w)) - 1.0) > TOL_UNIT:
        raise NotUnitVectorError(f"w must be a unit vector, got norm {np.linalg.norm(w)!r}")
    norm_h = math.sqrt(g.H)
    norm_k = math.sqrt(g.K)
    if abs(float(g.h @ w)) / norm_h > TOL_UNIT:
        raise InfeasibleConfigError(f"w must be orthogonal to h, got h.w = {float(g.h @ w)!r}")

    # Remove the residual components along h and k so both constraints hold to rounding.
    h_hat = g.h / norm_h
    k_hat = g.k / norm_k
    w_h = w - float(w @ h_hat) * h_hat
    w_k = w - float(w @ k_hat) * k_hat
    u = g.h / g.H + (g.S0 / norm_h) * (w_h / np.linalg.norm(w_h))
    v = g.k / g.K + (g.S1 / norm_k) * (w_k / np.linalg.norm(w_k))
    return u, v


def beta_of(g: PairGeometry, mode: BetaMode) -> float:
    """Angle between the optimal contact directions u and v, in [0, pi).

    Raises:
        ParallelDirectionsError: If mode is NON_PARALLEL but h and k are parallel
        PreconditionError: If mode is PARALLEL but h and k are not antiparallel
    """
    HK = g.H * g.K
    if mode is BetaMode.NON_PARALLEL:
        if g.parallel:
            raise ParallelDirectionsError("h and k are parallel; use BetaMode.PARALLEL")
        cos_beta = ((g.S0 + g.S1) * math.sqrt(g.gram) + (1.0 - g.S0 * g.S1) * g.D) / HK
    else:
        if not g.antiparallel:
            raise PreconditionError("BetaMode.PARALLEL needs h and k antiparallel")
        cos_beta = g.D / HK + g.S0 * g.S1 / math.sqrt(HK)
    return math.acos(min(1.0, max(-1.0, cos_beta)))


def contact_points(g: PairGeometry, beta: float) -> tuple[Vec, Vec]:
    """Midpoints x, y of the boundary configurations where the geodesic touches the boundary."""
    denom = beta + g.S0 + g.S1
    if denom == 0.0:
        return g.A.copy(), g.A.copy()
    x = (beta * g.A + g.S0 * g.B + g.S1 * g.A) / denom
    y = (beta * g.B + g.S0 * g.B + g.S1 * g.A) / denom
    return x, y


def boundary_geodesic(arc: BoundaryArc) -> PiecewisePath:
    """The boundary geodesic of `arc` as a path with evaluator and length."""
    return PiecewisePath(start=arc.start, goal=arc.end, segments=(arc,))


def classify(P: OrderedConfig, Q: OrderedConfig, w: Vec | None = None) -> GeodesicClass:
    """Classify (P, Q) as type (a), (b) or (c) and compute the contact data.

    Args:
        P: Start configuration in F0(R^n, 2)
        Q: Goal configuration in F0(R^n, 2)
        w: Optional direction selecting one type (c) geodesic

    Returns:
        GeodesicClass with u, v, beta, x, y filled for type (b), and beta, x, y plus
        the complement basis (and u, v when w is given) for type (c)
    """
    g = pair_geometry(P, Q)
    if g.delta >= 2.0 - TOL_CLASS:
        return GeodesicClass(tag=GeodesicType.TYPE_A, geometry=g)

    if g.antiparallel:
        beta = beta_of(g, BetaMode.PARALLEL)
        x, y = contact_points(g, beta)
        basis = null_space(g.h[None, :])
        u = v = None
        if w is not None:
            w = as_vec(w, "w")
            u, v = solve_uv_parallel(g, w)
        return GeodesicClass(
            tag=GeodesicType.TYPE_C, geometry=g, u=u, v=v, beta=beta, x=x, y=y, complement_basis=basis, w=w
        )

    u, v = solve_uv(g)
    beta = beta_of(g, BetaMode.NON_PARALLEL)
    x, y = contact_points(g, beta)
    return GeodesicClass(tag=GeodesicType.TYPE_B, geometry=g, u=u, v=v, beta=beta, x=x, y=y)


def geodesic(P: OrderedConfig, Q: OrderedConfig, w: Vec | None = None) -> GeodesicPath:
    """Construct the minimal geodesic from P to Q.

    Args:
        P: Start configuration in F0(R^n, 2)
        Q: Goal configuration in F0(R^n, 2)
        w: Unit vector orthogonal to h; required when the pair is of type (c)

    Returns:
        GeodesicPath parametrized at constant speed

    Raises:
        MissingDirectionError: If the pair is of type (c) and w is None
    """
    cls = classify(P, Q, w)
    if cls.tag is GeodesicType.TYPE_A:
        return GeodesicPath(start=P, goal=Q, segments=(LinearSegment(P, Q),), geodesic_class=cls)

    if cls.u is None or cls.v is None:
        raise MissingDirectionError(
            f"type (c) pair has one geodesic per unit w orthogonal to h; "
            f"pass w from the {P.dim - 1}-dimensional orthogonal complement of h"
        )
    assert cls.x is not None and cls.y is not None and cls.beta is not None
    arc = BoundaryArc(x=cls.x, y=cls.y, u=cls.u, v=cls.v, alpha=cls.beta, tangent=cls.w)
    segments = (LinearSegment(P, arc.start), arc, LinearSegment(arc.end, Q))
    return GeodesicPath(start=P, goal=Q, segments=segments, geodesic_class=cls)


def geodesic_length(P: OrderedConfig, Q: OrderedConfig) -> float:
    """Length of the minimal geodesic from P to Q, without building the path."""
    cls = classify(P, Q)
    if cls.tag is GeodesicType.TYPE_A:
        return config_distance(P, Q)
    g = cls.geometry
    assert cls.beta is not None
    spread = cls.beta + g.S0 + g.S1
    return math.sqrt(2.0) * math.sqrt(float(np.sum((g.A - g.B) ** 2)) + spread * spread)


def convex_u_identity_check(g: PairGeometry) -> bool:
    """Self-test of the seam between types (a) and (b).

    At delta = 2 the closed-form u and v coincide with (S1 h + S0 k)/(S0 + S1),
    and the boundary configuration they touch lies on the straight path at
    (S1 P + S0 Q)/(S0 + S1).

    Raises:
        PreconditionError: If delta is not 2 within 1e-6 or S0 + S1 = 0
    """
    if abs(g.delta - 2.0) > 1e-6:
        raise PreconditionError(f"convex identity holds on the delta = 2 seam, got delta={g.delta:.12g}")
    weight = g.S0 + g.S1
    if weight <= 0.0:
        raise PreconditionError("convex identity needs S0 + S1 > 0")
    if g.parallel:
        raise ParallelDirectionsError("convex identity needs non-parallel h and k")

    u, v = _uv_closed_form(g)
    target = (g.S1 * g.h + g.S0 * g.k) / weight
    x, _ = contact_points(g, 0.0)
    meeting = (g.S1 * g.start().as_array() + g.S0 * g.goal().as_array()) / weight
    touch = np.stack([x - u, x + u])
    return bool(
        np.allclose(u, target, rtol=0.0, atol=1e-8)
        and np.allclose(v, target, rtol=0.0, atol=1e-8)
        and np.allclose(touch, meeting, rtol=0.0, atol=1e-8)
    )


def composite_path(P: OrderedConfig, Q: OrderedConfig, C0: BoundaryPoint, C1: BoundaryPoint) -> PiecewisePath:
    """Straight to C0, boundary geodesic to C1, straight to Q.

    Any such path is feasible when both straight pieces are; the geodesic is the
    shortest of them.

    Raises:
        InfeasibleConfigError: If a straight piece leaves F0(R^n, 2)
        PreconditionError: If the directions of C0 and C1 are antipodal
    """
    check_dims(P, Q)
    if not segment_feasible(P, C0):
        raise InfeasibleConfigError("segment from the start to C0 leaves F0(R^n, 2)")
    if not segment_feasible(Q, C1):
        raise InfeasibleConfigError("segment from C1 to the goal leaves F0(R^n, 2)")
    arc = BoundaryArc(x=C0.center, y=C1.center, u=C0.unit, v=C1.unit, alpha=angle_between(C0.unit, C1.unit))
    segments = (LinearSegment(P, C0.to_config()), arc, LinearSegment(C1.to_config(), Q))
    return PiecewisePath(start=P, goal=Q, segments=segments)


def intersection_min_norm(g: PairGeometry) -> Vec:
    """Minimum-norm solution of h.u = 1 = k.u.

    Its squared norm is (H + K - 2D)/(HK - D^2) = 4/delta^2 whenever min(H, K) >= D,
    so it lies inside, on or outside the unit sphere exactly when delta is
    above, at or below 2.

    Raises:
        ParallelDirectionsError: If h and k are parallel
    """
    if g.parallel:
        raise ParallelDirectionsError("h.u = 1 = k.u has no unique minimum-norm solution for parallel h, k")
    gram = g.gram
    return ((g.K - g.D) / gram) * g.h + ((g.H - g.D) / gram) * g.k


def scale_separation(Q: OrderedConfig, scale: float) -> OrderedConfig:
    """Q with its half-difference multiplied by `scale` and its midpoint kept."""
    k, B = halving_data(Q)
    return OrderedConfig(B - scale * k, B + scale * k)


def seam_scale(P: OrderedConfig, Q: OrderedConfig, upper: float = 1e4) -> float:
    """Scale s for which (P, scale_separation(Q, s)) has delta exactly 2.

    Searches s >= 1/||k|| (so the goal stays in F0) for a sign change of
    delta - 2 and refines it with Brent's method.

    Raises:
        PreconditionError: If delta - 2 does not change sign on [1/||k||, upper]
    """
    k, _ = halving_data(Q)
    lower = 1.0 / float(np.linalg.norm(k))

    def excess(s: float) -> float:
        return pair_geometry(P, scale_separation(Q, s)).delta - 2.0

    if excess(lower) >= 0.0:
        raise PreconditionError("delta >= 2 already at the smallest feasible goal separation")
    hi = max(2.0 * lower, 1.0)
    while excess(hi) <= 0.0:
        hi *= 2.0
        if hi > upper:
            raise PreconditionError(f"delta stays below 2 for separation scales up to {upper:g}")
    return float(brentq(excess, lower, hi, xtol=1e-15, rtol=4.0 * np.finfo(float).eps))
