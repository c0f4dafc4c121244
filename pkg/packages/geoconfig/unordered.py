"""The unordered configuration space C(R^n, 2) under the min-pairing metric.

A point of C(R^n, 2) is a set {a, a'} of two distinct points. Its distance to
{b, b'} is the smaller of the two pairing distances, and straight paths between
suitably paired representatives are geodesics. No clearance is required here.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import CoincidenceError, DegenerateConfigError, DimensionMismatchError
from .vecgeo import LinearSegment, OrderedConfig, PiecewisePath, Vec, config_distance

TOL_TIE = 1e-12
TOL_PAR = 1e-10


class Pairing(Enum):
    IDENTITY = "identity"
    SWAPPED = "swapped"
    TIE = "tie"


@dataclass(frozen=True, eq=False)
class UnorderedConfig:
    """A set {a, a'} stored through its lexicographically smaller ordering."""

    rep: OrderedConfig

    def __post_init__(self) -> None:
        rep = self.rep
        if not np.any(rep.first != rep.second):
            raise DegenerateConfigError(f"points coincide at {rep.first.tolist()}; not a point of C(R^n, 2)")
        if tuple(rep.second.tolist()) < tuple(rep.first.tolist()):
            object.__setattr__(self, "rep", rep.swapped())

    @classmethod
    def from_points(cls, a: Sequence[float] | Vec, a2: Sequence[float] | Vec) -> "UnorderedConfig":
        return cls(OrderedConfig(a, a2))

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def separation(self) -> Vec:
        """a' - a for the canonical representative."""
        return self.rep.second - self.rep.first

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnorderedConfig):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.rep.as_array(), other.rep.as_array()))

    def __hash__(self) -> int:
        return hash(tuple(self.rep.as_array().ravel().tolist()))

    def oriented(self, direction: Vec) -> OrderedConfig:
        """The ordering (a, a') of this set with (a' - a) . direction >= 0."""
        if float(self.separation @ direction) < 0.0:
            return self.rep.swapped()
        return self.rep


@dataclass(frozen=True, eq=False)
class UnorderedPath(PiecewisePath):
    """Linear path between two ordered representatives, read as a path of sets."""

    pairing: Pairing | None = None

    def min_separation(self, samples: int = 1000) -> float:
        points = self.sample(np.linspace(0.0, 1.0, samples))
        return float(np.min(np.linalg.norm(points[:, 1] - points[:, 0], axis=-1)))


def _check_dims(UP: UnorderedConfig, UQ: UnorderedConfig) -> None:
    if UP.dim != UQ.dim:
        raise DimensionMismatchError(f"configurations live in different dimensions: {UP.dim} != {UQ.dim}")


def pairing_distances(UP: UnorderedConfig, UQ: UnorderedConfig) -> tuple[float, float]:
    """Distances d((a, a'), (b, b')) and d((a, a'), (b', b)) for the canonical representatives."""
    _check_dims(UP, UQ)
    return config_distance(UP.rep, UQ.rep), config_distance(UP.rep, UQ.rep.swapped())


def d_U(UP: UnorderedConfig, UQ: UnorderedConfig) -> float:
    """Min-pairing distance between two sets."""
    return min(pairing_distances(UP, UQ))


def best_pairing(UP: UnorderedConfig, UQ: UnorderedConfig) -> Pairing:
    """Which pairing of the canonical representatives realizes d_U.

    d_identity^2 - d_swapped^2 = -2 (a' - a).(b' - b), so a positive dot
    product favours the identity pairing and a negative one the swap.
    """
    _check_dims(UP, UQ)
    d0 = UP.separation
    d1 = UQ.separation
    dot = float(d0 @ d1)
    if abs(dot) <= TOL_TIE * float(np.linalg.norm(d0)) * float(np.linalg.norm(d1)):
        return Pairing.TIE
    return Pairing.IDENTITY if dot > 0.0 else Pairing.SWAPPED


def linear_path(start: OrderedConfig, goal: OrderedConfig, pairing: Pairing | None = None) -> UnorderedPath:
    """Straight path of representatives from `start` to `goal`.

    Raises:
        CoincidenceError: If the two points collide somewhere along the path
    """
    d0 = start.second - start.first
    d1 = goal.second - goal.first
    dot = float(d0 @ d1)
    gram = float(d0 @ d0) * float(d1 @ d1)
    if dot < 0.0 and gram - dot * dot <= TOL_PAR * gram:
        raise CoincidenceError("representative leaves F(R^n, 2): the separations are antiparallel")
    return UnorderedPath(start=start, goal=goal, segments=(LinearSegment(start, goal),), pairing=pairing)


def geodesic_unordered(UP: UnorderedConfig, UQ: UnorderedConfig, pairing: Pairing | None = None) -> UnorderedPath:
    """Linear geodesic from UP to UQ.

    Args:
        UP: Start set
        UQ: Goal set
        pairing: Pairing of the canonical representatives; defaults to the best one.
            A tie resolves to the identity pairing.

    Returns:
        UnorderedPath whose length equals d_U for the best pairing

    Raises:
        CoincidenceError: If a forced pairing makes the representative path hit a = a'
    """
    _check_dims(UP, UQ)
    if pairing is None:
        pairing = best_pairing(UP, UQ)
    goal = UQ.rep.swapped() if pairing is Pairing.SWAPPED else UQ.rep
    return linear_path(UP.rep, goal, pairing)
