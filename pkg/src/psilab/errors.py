"""Exception types and the Divergent sentinel shared across the library."""


class CurvatureBoundViolated(ValueError):
    """Total mean curvature exceeds the admissible bound, or K >= 1/C."""


class GammaPole(ValueError):
    """A gamma-function evaluation hit a pole (non-positive integer argument)."""


class InterpolationMismatch(ValueError):
    """Operation requires a different profile interpolation mode."""


class MeshParseError(ValueError):
    """Malformed OFF/nOFF input; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonManifoldMesh(ValueError):
    """Edge shared by more than two triangles, or inconsistent orientation."""


class DegenerateTriangle(ValueError):
    """Triangle with repeated vertices or (near-)zero area."""


class SpecInvalid(ValueError):
    """Monotonicity-principle specification violates a sign or exponent condition."""


class ZeroField(ValueError):
    """Field is identically zero where a nonzero one is required."""


class NotMinimal(ValueError):
    """Surface exceeds the flatness threshold required for a minimal-submanifold check."""


class ConvergenceFailure(RuntimeError):
    """Root bracketing or a bounded search exhausted its budget."""


class _Divergent:
    """Singleton marker for integrals classified as divergent (not an error)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Divergent"

    def __bool__(self):
        return False


DIVERGENT = _Divergent()


def is_divergent(x) -> bool:
    return x is DIVERGENT
