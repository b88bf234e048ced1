"""Curves over F_p(t) whose genus drops under inseparable base change.

The curves C_n : x - A_n(t) x^p = y^p have absolute genus 0, genus
(p-1)(p-2)/2 relative to F_p(t), and at least p^(2^n / 2n) rational points.
This package builds them, constructs their points from the orbits of a digit
map, and checks every claim by exact computation and independent brute force.
"""

from .curves import (
    AffinePoint,
    CoeffAssignment,
    Curve,
    assignment_to_point,
    enumerate_assignments,
    enumerate_points,
    family_coefficient,
    make_curve,
    verify_bounds,
    verify_point,
)
from .errors import CheckpointError, ConstructionError, ResourceError
from .field import FieldCtx, FieldElement, get_field
from .genus import (
    absolute_parametrization_check,
    point_parameter_roundtrip,
    relative_genus,
    rr_dimension_fast,
    rr_dimension_oracle,
)
from .orbits import IndexParams, Orbit, orbit_decomposition, phi
from .poly import RatFn, SparsePoly, parse_poly, parse_ratfn

__version__ = "0.1.0"
