"""Exact minimal geodesics in configuration spaces of two balls in R^n."""

from .altmetric import AltCoords, AltPath, d_prime, from_alt, geodesic_alt, plan_alt, to_alt
from .errors import GeometryError
from .ordered import (
    BoundaryArc,
    GeodesicClass,
    GeodesicPath,
    GeodesicType,
    PairGeometry,
    classify,
    geodesic,
    geodesic_length,
    pair_geometry,
)
from .planner import PlannerRegion, Space, plan_ordered, plan_unordered, region_alt, region_ordered, region_unordered
from .unordered import Pairing, UnorderedConfig, best_pairing, d_U, geodesic_unordered
from .vecgeo import BoundaryPoint, OrderedConfig, config_distance

__all__ = [
    "AltCoords",
    "AltPath",
    "BoundaryArc",
    "BoundaryPoint",
    "GeodesicClass",
    "GeodesicPath",
    "GeodesicType",
    "GeometryError",
    "OrderedConfig",
    "PairGeometry",
    "Pairing",
    "PlannerRegion",
    "Space",
    "UnorderedConfig",
    "best_pairing",
    "classify",
    "config_distance",
    "d_U",
    "d_prime",
    "from_alt",
    "geodesic",
    "geodesic_alt",
    "geodesic_length",
    "geodesic_unordered",
    "pair_geometry",
    "plan_alt",
    "plan_ordered",
    "plan_unordered",
    "region_alt",
    "region_ordered",
    "region_unordered",
    "to_alt",
]
