"""Computational verification toolkit for rank-2 instanton bundles on P^3
built from configurations of skew lines.

Exact arithmetic over GF(p) or QQ, Gröbner bases for homogeneous modules,
saturation, Hilbert data, minimal free resolutions, sheaf cohomology by
local duality, line geometry in P^3 and the verifiers built on top.
"""

from .constructions import (
    PreconditionError,
    SigmaMorphism,
    ThetaMorphism,
    VerificationReport,
    build_G,
    check_cohomology_IY3,
    check_degeneracy,
    check_l1l4x_resolution,
    double_line_test,
    sigma,
    sigma_is_epi,
    theta,
    thooft_instanton,
    triple_quadric,
    verify_claims,
    verify_global_generation,
    verify_instanton,
)
from .field import Field, FieldError
from .geometry import (
    GeometryError,
    LineConfiguration,
    LineP3,
    QuadricSurface,
    five_secant,
    five_secant_config,
    meets,
    quadric_through,
    random_skew_config,
    tangent_config,
)
from .groebner import FreeModule, groebner_basis
from .modules import GradedModule, Ideal, Map
from .poly import Polynomial, parse_polynomial, variables
from .resolution import betti_table, free_resolution

__version__ = "0.1.0"
