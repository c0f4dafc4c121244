"""Exceptions raised by the geoconfig library."""


class GeometryError(ValueError):
    """Base class for invalid geometric input.

    Every subclass carries a stable ``code`` that the CLI reports in its JSON
    error object.
    """

    code = "geometry_error"


class DimensionMismatchError(GeometryError):
    code = "dimension_mismatch"


class InvalidVectorError(GeometryError):
    """Vector with fewer than two coordinates or a non-finite coordinate."""

    code = "invalid_vector"


class InfeasibleConfigError(GeometryError):
    """Configuration violates the clearance constraint ||a' - a|| >= 2."""

    code = "infeasible_config"


class DegenerateConfigError(GeometryError):
    """Configuration with coincident points, outside F(R^n, 2)."""

    code = "degenerate_config"


class NotUnitVectorError(GeometryError):
    code = "not_unit"


class ParallelDirectionsError(GeometryError):
    """h and k are parallel; the non-parallel closed form does not apply."""

    code = "parallel_directions"


class PreconditionError(GeometryError):
    code = "precondition"


class MissingDirectionError(GeometryError):
    """A type (c) geodesic was requested without choosing w."""

    code = "missing_direction"


class NonUniqueGeodesicError(GeometryError):
    code = "non_unique"


class CoincidenceError(GeometryError):
    """A representative path passes through a configuration with a = a'."""

    code = "coincidence"


class FigureDimensionError(GeometryError):
    code = "figure_dimension"
