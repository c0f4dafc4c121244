"""F(R^n, 2) with the product metric of R^n x S^{n-1} x R+.

A configuration (a, a') is identified with its midpoint A, unit direction
h/||h|| and half-separation r = ||h||. Distances add in quadrature across the
three factors, with arclength on the sphere. Every pair is joined by a
geodesic (midpoint and radius move linearly, the direction along a great
circle), unique unless the two directions are antipodal.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateConfigError, NonUniqueGeodesicError, NotUnitVectorError
from .planner import TOL_ANTIPODAL, unit_field
from .vecgeo import OrderedConfig, Vec, angle_between, as_vec, check_dims, halving_data, normalize

TOL_UNIT = 1e-12


@dataclass(frozen=True, eq=False)
class AltCoords:
    A: Vec
    hhat: Vec
    r: float

    def __post_init__(self) -> None:
        A = as_vec(self.A, "midpoint")
        hhat = as_vec(self.hhat, "direction")
        if abs(float(np.linalg.norm(hhat)) - 1.0) > TOL_UNIT:
            raise NotUnitVectorError(f"direction must be a unit vector, got norm {np.linalg.norm(hhat)!r}")
        if not self.r > 0.0:
            raise DegenerateConfigError(f"half-separation must be positive, got {self.r!r}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "hhat", hhat)

    def to_config(self) -> OrderedConfig:
        return OrderedConfig(self.A - self.r * self.hhat, self.A + self.r * self.hhat)


def to_alt(P: OrderedConfig) -> AltCoords:
    """Midpoint, unit direction and half-separation of P.

    Raises:
        DegenerateConfigError: If the two points of P coincide
    """
    h, A = halving_data(P)
    r = float(np.linalg.norm(h))
    if r == 0.0:
        raise DegenerateConfigError(f"points coincide at {P.first.tolist()}; not a point of F(R^n, 2)")
    return AltCoords(A=A, hhat=h / r, r=r)


def from_alt(coords: AltCoords) -> OrderedConfig:
    return coords.to_config()


def d_prime(P: OrderedConfig, Q: OrderedConfig) -> float:
    """Product-metric distance between two configurations."""
    check_dims(P, Q)
    p, q = to_alt(P), to_alt(Q)
    d_s = angle_between(p.hhat, q.hhat)
    return math.sqrt(float(np.sum((q.A - p.A) ** 2)) + d_s * d_s + (q.r - p.r) ** 2)


@dataclass(frozen=True, eq=False)
class AltPath:
    """Product-metric geodesic: u(t) = cos(t alpha) hhat + sin(t alpha) e."""

    start: OrderedConfig
    goal: OrderedConfig
    source: AltCoords
    target: AltCoords
    tangent: Vec
    alpha: float

    @property
    def total_length(self) -> float:
        return math.sqrt(
            float(np.sum((self.target.A - self.source.A) ** 2)) + self.alpha**2 + (self.target.r - self.source.r) ** 2
        )

    def coords(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Midpoints (m, n), directions (m, n) and radii (m,) at times ts."""
        s = np.clip(np.asarray(ts, dtype=np.float64), 0.0, 1.0)
        col = s[:, None]
        mids = (1.0 - col) * self.source.A + col * self.target.A
        dirs = np.cos(col * self.alpha) * self.source.hhat + np.sin(col * self.alpha) * self.tangent
        radii = (1.0 - s) * self.source.r + s * self.target.r
        return mids, dirs, radii

    def sample(self, ts: np.ndarray) -> np.ndarray:
        mids, dirs, radii = self.coords(ts)
        offset = radii[:, None] * dirs
        return np.stack([mids - offset, mids + offset], axis=1)

    def eval(self, t: float) -> OrderedConfig:
        return OrderedConfig.from_array(self.sample(np.array([t]))[0])

    def alt_at(self, t: float) -> AltCoords:
        mids, dirs, radii = self.coords(np.array([t]))
        return AltCoords(A=mids[0], hhat=normalize(dirs[0]), r=float(radii[0]))

    def product_length(self, samples: int) -> float:
        """Chord sum in the product metric over `samples` equally spaced times."""
        return product_length(self.sample(np.linspace(0.0, 1.0, samples)))


def product_length(points: np.ndarray) -> float:
    """Product-metric chord sum of sampled configurations of shape (m, 2, n)."""
    h = (points[:, 1] - points[:, 0]) / 2.0
    mids = (points[:, 1] + points[:, 0]) / 2.0
    radii = np.linalg.norm(h, axis=1)
    dirs = h / radii[:, None]
    d_mid = np.sum(np.diff(mids, axis=0) ** 2, axis=1)
    d_dir = 2.0 * np.arctan2(
        np.linalg.norm(dirs[1:] - dirs[:-1], axis=1),
        np.linalg.norm(dirs[1:] + dirs[:-1], axis=1),
    )
    d_rad = np.diff(radii)
    return float(np.sum(np.sqrt(d_mid + d_dir**2 + d_rad**2)))


def _path(P: OrderedConfig, Q: OrderedConfig, source: AltCoords, target: AltCoords, tangent: Vec, alpha: float) -> AltPath:
    return AltPath(start=P, goal=Q, source=source, target=target, tangent=tangent, alpha=alpha)


def geodesic_alt(P: OrderedConfig, Q: OrderedConfig) -> AltPath:
    """The unique product-metric geodesic from P to Q.

    Raises:
        NonUniqueGeodesicError: If the two directions are antipodal
    """
    check_dims(P, Q)
    source, target = to_alt(P), to_alt(Q)
    alpha = angle_between(source.hhat, target.hhat)
    if math.pi - alpha <= TOL_ANTIPODAL:
        raise NonUniqueGeodesicError("antipodal directions: the geodesic is non-unique; use plan_alt")
    normal = target.hhat - math.cos(alpha) * source.hhat
    norm = float(np.linalg.norm(normal))
    if alpha == 0.0 or norm == 0.0:
        return _path(P, Q, source, target, np.zeros_like(source.hhat), 0.0)
    return _path(P, Q, source, target, normal / norm, alpha)


def plan_alt(P: OrderedConfig, Q: OrderedConfig) -> AltPath:
    """Product-metric geodesic chosen continuously on each planner region.

    Antipodal pairs rotate through the half great circle leaving hhat along
    unit_field(hhat); the end direction matches k/||k|| within TOL_ANTIPODAL.
    """
    check_dims(P, Q)
    source, target = to_alt(P), to_alt(Q)
    if math.pi - angle_between(source.hhat, target.hhat) > TOL_ANTIPODAL:
        return geodesic_alt(P, Q)
    return _path(P, Q, source, target, unit_field(source.hhat), math.pi)
