"""Geodesic motion-planning rules.

Each space's queries are split into a few regions, and on every region a rule
picks a geodesic that varies continuously with the query.

Ordered space F0(R^n, 2): region 1 holds the pairs of type (a) or (b), where
the geodesic is unique. Region 0 holds the type (c) pairs, where the free
direction w is read off a unit tangent field on the sphere at h/||h||. For
odd n no such field exists on the whole sphere, so the pairs with h along the
first axis form a third region Z with the fixed choice w = e2.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateConfigError, DimensionMismatchError
from .ordered import GeodesicPath, GeodesicType, classify, geodesic
from .unordered import Pairing, UnorderedConfig, UnorderedPath, best_pairing, geodesic_unordered, linear_path
from .vecgeo import OrderedConfig, Vec, angle_between, check_dims, halving_data, normalize

TOL_Z = 1e-9
TOL_ANTIPODAL = 1e-9
TOL_ZERO = 1e-12


class Space(Enum):
    ORDERED_F0 = "ordered"
    UNORDERED_C = "unordered"
    ALT = "alt"


@dataclass(frozen=True)
class PlannerRegion:
    space: Space
    region_id: int
    descriptor: str


def even_field(x: Vec) -> Vec:
    """(x1, ..., x2m) -> (-x2, x1, -x4, x3, ...), unit and tangent on the sphere."""
    if x.shape[0] % 2:
        raise DimensionMismatchError(f"the coordinate-pair rotation field needs an even dimension, got {x.shape[0]}")
    pairs = x.reshape(-1, 2)
    return np.stack([-pairs[:, 1], pairs[:, 0]], axis=1).ravel()


def in_z(x: Vec) -> bool:
    """Whether the unit vector x is +-e1 within TOL_Z."""
    return float(np.linalg.norm(x[1:])) <= TOL_Z


def punctured_field(x: Vec) -> Vec:
    """normalize(e1 - (e1.x) x): unit and tangent everywhere except at +-e1."""
    if in_z(x):
        raise DegenerateConfigError("the punctured-sphere field is undefined at +-e1")
    e1 = np.zeros_like(x)
    e1[0] = 1.0
    return normalize(e1 - float(x[0]) * x)


def unit_field(x: Vec) -> Vec:
    """The tangent direction the planners use at the unit vector x.

    Even n uses the rotation field everywhere. Odd n uses the punctured field
    off +-e1 and the constant e2 on Z.
    """
    if x.shape[0] % 2 == 0:
        return even_field(x)
    if in_z(x):
        e2 = np.zeros_like(x)
        e2[1] = 1.0
        return e2
    return punctured_field(x)


def region_ordered(P: OrderedConfig, Q: OrderedConfig) -> PlannerRegion:
    """Region of a query in F0(R^n, 2).

    Raises:
        InfeasibleConfigError: If P or Q violates the clearance constraint
    """
    cls = classify(P, Q)
    if cls.tag is not GeodesicType.TYPE_C:
        return PlannerRegion(Space.ORDERED_F0, 1, "E1: unique geodesic (types a/b)")
    if P.dim % 2 == 0:
        return PlannerRegion(Space.ORDERED_F0, 0, "E0: type c, w from the rotation field")
    h_hat = normalize(cls.geometry.h)
    if in_z(h_hat):
        return PlannerRegion(Space.ORDERED_F0, 2, "Z: type c with h along e1, w = e2")
    return PlannerRegion(Space.ORDERED_F0, 0, "E0 minus Z: type c, w from the punctured-sphere field")


def plan_ordered(P: OrderedConfig, Q: OrderedConfig) -> GeodesicPath:
    """Minimal geodesic chosen by the ordered planning rule."""
    cls = classify(P, Q)
    if cls.tag is not GeodesicType.TYPE_C:
        return geodesic(P, Q)
    return geodesic(P, Q, unit_field(normalize(cls.geometry.h)))


def canonical_orientation(direction: Vec) -> tuple[Vec, int]:
    """Unit vector spanning the same line with its first nonzero coordinate positive.

    Returns:
        The oriented unit vector and the index of that coordinate
    """
    unit = normalize(direction)
    idx = int(np.flatnonzero(np.abs(unit) > TOL_ZERO)[0])
    if unit[idx] < 0.0:
        unit = -unit
    return unit, idx


def _orthogonal_transport(ell0: Vec, ell1: Vec) -> tuple[Vec, Vec, int]:
    """Orientations of two orthogonal lines and the region that fixes them."""
    n = ell0.shape[0]
    d0, i = canonical_orientation(ell0)
    if n == 2:
        return d0, np.array([-d0[1], d0[0]]), 1
    if n == 3:
        # Rotate l0 into l1 about their common normal, oriented canonically.
        normal, j = canonical_orientation(np.cross(ell0, ell1))
        return d0, np.cross(normal, d0), 1 + j
    d1, j = canonical_orientation(ell1)
    return d0, d1, 1 + i + j


def region_unordered(UP: UnorderedConfig, UQ: UnorderedConfig) -> PlannerRegion:
    """Region of a query in C(R^n, 2).

    Region 0 holds the pairs with non-orthogonal separation lines, where the
    better pairing is strict. Orthogonal pairs are split by the coordinate
    that orients their lines: one region for n = 2, three for n = 3 (by the
    normal of the plane the lines span) and 2n - 1 for larger n.
    """
    if UP.dim != UQ.dim:
        raise DimensionMismatchError(f"configurations live in different dimensions: {UP.dim} != {UQ.dim}")
    if best_pairing(UP, UQ) is not Pairing.TIE:
        return PlannerRegion(Space.UNORDERED_C, 0, "E0: strict best pairing")
    _, _, region_id = _orthogonal_transport(UP.separation, UQ.separation)
    return PlannerRegion(Space.UNORDERED_C, region_id, f"E1: orientation transport rule {region_id}")


def plan_unordered(UP: UnorderedConfig, UQ: UnorderedConfig) -> UnorderedPath:
    """Linear geodesic chosen by the unordered planning rule.

    On region 0 the best pairing is used. On orthogonal pairs both pairings have
    the same length, and the start and goal are ordered along the orientations
    transported from the start line, so the choice varies continuously inside
    each region.
    """
    region = region_unordered(UP, UQ)
    if region.region_id == 0:
        return geodesic_unordered(UP, UQ)
    d0, d1, _ = _orthogonal_transport(UP.separation, UQ.separation)
    return linear_path(UP.oriented(d0), UQ.oriented(d1))


def region_alt(P: OrderedConfig, Q: OrderedConfig) -> PlannerRegion:
    """Region of a query in F(R^n, 2) under the product metric.

    Geodesics are unique unless the two directions are antipodal; antipodal
    pairs take their semicircle from unit_field, with Z split off for odd n.

    Raises:
        DegenerateConfigError: If either configuration has coincident points
    """
    check_dims(P, Q)
    h, _ = halving_data(P)
    k, _ = halving_data(Q)
    if not np.any(h) or not np.any(k):
        raise DegenerateConfigError("configuration with coincident points is not in F(R^n, 2)")
    h_hat = normalize(h)
    if np.pi - angle_between(h_hat, normalize(k)) > TOL_ANTIPODAL:
        return PlannerRegion(Space.ALT, 1, "E1: unique product-metric geodesic")
    if P.dim % 2 == 1 and in_z(h_hat):
        return PlannerRegion(Space.ALT, 2, "Z: antipodal along e1, semicircle through e2")
    return PlannerRegion(Space.ALT, 0, "E0: antipodal, semicircle through the field direction")
