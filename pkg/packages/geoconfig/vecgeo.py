"""Vector arithmetic, configuration types and path containers shared by every space.

A ``Vec_n`` is a read-only float64 ``numpy`` array of length n >= 2. An ordered
configuration ``(a, a')`` lives in R^{2n}; paths are sampled as arrays of shape
``(m, 2, n)`` so that a whole trajectory can be checked in one vectorized call.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .errors import DimensionMismatchError, InfeasibleConfigError, InvalidVectorError, NotUnitVectorError

# Closed-form quantities only need to absorb rounding error.
TOL_FEAS = 1e-12
CLEARANCE = 2.0

Vec = np.ndarray


def as_vec(coords: Sequence[float] | np.ndarray, name: str = "vector") -> Vec:
    """Convert coordinates to a read-only float64 vector.

    Args:
        coords: Coordinate sequence
        name: Name used in error messages

    Returns:
        1-D float64 array with at least two finite entries

    Raises:
        InvalidVectorError: If the input is not 1-D, has fewer than two entries or a non-finite entry
    """
    vec = np.array(coords, dtype=np.float64)
    if vec.ndim != 1 or vec.shape[0] < 2:
        raise InvalidVectorError(f"{name} must be a flat list of at least 2 coordinates, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise InvalidVectorError(f"{name} has non-finite coordinates: {vec.tolist()}")
    vec.setflags(write=False)
    return vec


def normalize(vec: Vec) -> Vec:
    """Return vec / ||vec||. The caller guarantees vec != 0."""
    return vec / np.linalg.norm(vec)


def angle_between(u: Vec, v: Vec) -> float:
    """Angle in [0, pi] between two unit vectors.

    Uses 2*atan2(||u - v||, ||u + v||), which stays accurate near 0 and pi where
    arccos of the dot product loses half the digits.
    """
    return float(2.0 * np.arctan2(np.linalg.norm(u - v), np.linalg.norm(u + v)))


@dataclass(frozen=True, eq=False)
class OrderedConfig:
    """An ordered pair (a, a') of points in R^n."""

    first: Vec
    second: Vec

    def __post_init__(self) -> None:
        first = as_vec(self.first, "first point")
        second = as_vec(self.second, "second point")
        if first.shape != second.shape:
            raise DimensionMismatchError(f"points have different dimensions: {first.shape[0]} != {second.shape[0]}")
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)

    @property
    def dim(self) -> int:
        return int(self.first.shape[0])

    @property
    def gap(self) -> float:
        """Distance between the two points."""
        return float(np.linalg.norm(self.second - self.first))

    def as_array(self) -> np.ndarray:
        """The configuration as a (2, n) array."""
        return np.stack([self.first, self.second])

    def swapped(self) -> "OrderedConfig":
        return OrderedConfig(self.second, self.first)

    def scaled(self, factor: float) -> "OrderedConfig":
        return OrderedConfig(self.first * factor, self.second * factor)

    def allclose(self, other: "OrderedConfig", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.as_array(), other.as_array(), rtol=0.0, atol=atol))

    def to_list(self) -> list[list[float]]:
        return [self.first.tolist(), self.second.tolist()]

    @staticmethod
    def from_array(arr: np.ndarray) -> "OrderedConfig":
        """Build a configuration from a (2, n) array or a flat array of length 2n."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim == 1:
            if arr.shape[0] % 2:
                raise InvalidVectorError(f"flat configuration needs an even number of coordinates, got {arr.shape[0]}")
            arr = arr.reshape(2, -1)
        return OrderedConfig(arr[0], arr[1])


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """The boundary configuration (x - u, x + u) with ||u|| = 1."""

    center: Vec
    unit: Vec

    def __post_init__(self) -> None:
        center = as_vec(self.center, "center")
        unit = as_vec(self.unit, "unit")
        if center.shape != unit.shape:
            raise DimensionMismatchError(f"center and unit have different dimensions: {center.shape[0]} != {unit.shape[0]}")
        if abs(float(np.linalg.norm(unit)) - 1.0) > TOL_FEAS:
            raise NotUnitVectorError(f"boundary direction must be a unit vector, got norm {np.linalg.norm(unit)!r}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "unit", unit)

    def to_config(self) -> OrderedConfig:
        return OrderedConfig(self.center - self.unit, self.center + self.unit)


def check_dims(P: OrderedConfig, Q: OrderedConfig) -> None:
    if P.dim != Q.dim:
        raise DimensionMismatchError(f"configurations live in different dimensions: {P.dim} != {Q.dim}")


def require_f0(P: OrderedConfig, name: str = "configuration") -> None:
    """Raise unless P satisfies the clearance constraint of F0(R^n, 2)."""
    if P.gap < CLEARANCE - TOL_FEAS:
        raise InfeasibleConfigError(f"{name} has point separation {P.gap:.12g} < {CLEARANCE:g}")


def config_distance(P: OrderedConfig, Q: OrderedConfig) -> float:
    """Euclidean distance between P and Q as points of R^{2n}."""
    check_dims(P, Q)
    return float(np.sqrt(np.sum((P.first - Q.first) ** 2) + np.sum((P.second - Q.second) ** 2)))


def halving_data(P: OrderedConfig) -> tuple[Vec, Vec]:
    """Half-difference h = (a' - a)/2 and midpoint A = (a' + a)/2 of P."""
    h = (P.second - P.first) / 2.0
    A = (P.second + P.first) / 2.0
    return h, A


def segment_feasible(P: OrderedConfig, C: BoundaryPoint) -> bool:
    """Whether the segment from P to the boundary point C stays in F0(R^n, 2).

    The segment is feasible iff h . u >= 1, where h is the half-difference of P
    and u the direction of C.
    """
    require_f0(P)
    if P.dim != C.unit.shape[0]:
        raise DimensionMismatchError(f"configuration and boundary point dimensions differ: {P.dim} != {C.unit.shape[0]}")
    h, _ = halving_data(P)
    return bool(float(h @ C.unit) >= 1.0 - TOL_FEAS)


class SampledPath(Protocol):
    """Anything that can be evaluated at an array of times in [0, 1]."""

    def sample(self, ts: np.ndarray) -> np.ndarray: ...


class Segment(Protocol):
    @property
    def length(self) -> float: ...

    def sample(self, ts: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True, eq=False)
class LinearSegment:
    """Straight segment between two configurations in R^{2n}."""

    start: OrderedConfig
    end: OrderedConfig

    @property
    def length(self) -> float:
        return config_distance(self.start, self.end)

    def sample(self, ts: np.ndarray) -> np.ndarray:
        s = np.asarray(ts, dtype=np.float64)[:, None, None]
        # (1 - s) * start + s * end hits both endpoints exactly.
        return (1.0 - s) * self.start.as_array() + s * self.end.as_array()


@dataclass(frozen=True, eq=False)
class PiecewisePath:
    """Concatenation of segments, parametrized proportionally to arclength."""

    start: OrderedConfig
    goal: OrderedConfig
    segments: tuple[Segment, ...] = field(default_factory=tuple)
    _lengths: np.ndarray = field(init=False, repr=False)
    _cumulative: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        # Zero-length pieces carry no time share.
        kept = tuple(seg for seg in self.segments if seg.length > 0.0)
        object.__setattr__(self, "segments", kept)
        lengths = np.array([seg.length for seg in kept], dtype=np.float64)
        object.__setattr__(self, "_lengths", lengths)
        object.__setattr__(self, "_cumulative", np.concatenate([[0.0], np.cumsum(lengths)]))

    @property
    def total_length(self) -> float:
        return float(self._cumulative[-1])

    def sample(self, ts: np.ndarray) -> np.ndarray:
        """Evaluate the path at times ts, returning an array of shape (m, 2, n)."""
        ts = np.clip(np.asarray(ts, dtype=np.float64), 0.0, 1.0)
        out = np.empty((ts.shape[0], 2, self.start.dim), dtype=np.float64)
        if not self.segments:
            out[:] = self.start.as_array()
            return out

        lengths = self._lengths
        cumulative = self._cumulative
        last = len(self.segments) - 1
        pos = ts * cumulative[-1]
        idx = np.clip(np.searchsorted(cumulative, pos, side="right") - 1, 0, last)
        local = np.clip((pos - cumulative[idx]) / lengths[idx], 0.0, 1.0)
        at_end = ts >= 1.0
        idx[at_end] = last
        local[at_end] = 1.0

        for j, seg in enumerate(self.segments):
            mask = idx == j
            if np.any(mask):
                out[mask] = seg.sample(local[mask])
        return out

    def eval(self, t: float) -> OrderedConfig:
        return OrderedConfig.from_array(self.sample(np.array([t]))[0])

    def polyline_length(self, samples: int) -> float:
        """Length of the inscribed polyline through `samples` equally spaced times."""
        return polyline_length(self.sample(np.linspace(0.0, 1.0, samples)))


def polyline_length(points: np.ndarray) -> float:
    """Chord-sum length of sampled configurations of shape (m, 2, n) or (m, 2n)."""
    flat = points.reshape(points.shape[0], -1)
    return float(np.sum(np.linalg.norm(np.diff(flat, axis=0), axis=1)))


def min_gap_along(path: SampledPath, samples: int) -> float:
    """Smallest point separation over `samples` equally spaced times of the path."""
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    points = path.sample(np.linspace(0.0, 1.0, samples))
    return float(np.min(np.linalg.norm(points[:, 1] - points[:, 0], axis=-1)))
