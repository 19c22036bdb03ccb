"""Numerical laboratory for rearrangement inequalities on submanifolds.

Modules
-------
special_fn      gamma, unit-ball volumes, first Bessel zeros (self-contained)
constants       the named sharp constants, with literal and corrected readings
measure_space   Schwartz rearrangement over weighted samples, radial profiles
mesh            triangle meshes in R^d: areas, P1 gradients, mean curvature
analytic        parametric surfaces, blowup family, extremal radial functions
verify          inequality verdict engine producing VerificationReports
counterexample  the sphere blowup sweep and its threshold search
cli             command-line entry point (``psilab`` console script)
"""

from .errors import (
    DIVERGENT,
    ConvergenceFailure,
    CurvatureBoundViolated,
    DegenerateTriangle,
    GammaPole,
    InterpolationMismatch,
    MeshParseError,
    NonManifoldMesh,
    NotMinimal,
    SpecInvalid,
    ZeroField,
    is_divergent,
)

__version__ = "0.1.0"

__all__ = [
    "DIVERGENT",
    "is_divergent",
    "ConvergenceFailure",
    "CurvatureBoundViolated",
    "DegenerateTriangle",
    "GammaPole",
    "InterpolationMismatch",
    "MeshParseError",
    "NonManifoldMesh",
    "NotMinimal",
    "SpecInvalid",
    "ZeroField",
    "__version__",
]
