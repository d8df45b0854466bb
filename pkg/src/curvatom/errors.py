"""Exception types shared across the package.

Everything derives from CurvatomError so callers can catch the library as a
whole; the CLI maps these onto exit code 3 (domain errors) and 1
(verification failures).
"""


class CurvatomError(Exception):
    """Base class for all curvatom errors."""


class DomainError(CurvatomError, ValueError):
    """Argument outside the physical/radial domain."""


class PoleError(DomainError):
    """Generalized tangent evaluated at a zero of the generalized cosine."""


class FlatCurvatureError(DomainError):
    """Operation needs kappa != 0 (the flat case has a dedicated path)."""


class BranchPointError(DomainError):
    """Evaluation at z = +-i, the branch points of arctan/log."""


class NoBoundState(DomainError):
    """Requested level does not exist (hyperbolic bound n^2 < 1/sqrt(-kappa))."""


class QuantumNumberError(DomainError):
    """Quantum numbers out of range (e.g. l >= n or n_r < 0)."""


class NoBranchError(CurvatomError):
    """No admissible k makes sigma_3 a perfect square over Q(i)."""


class SelectionError(CurvatomError):
    """Physical-branch predicate selected zero or several branches."""


class UnsupportedSigma(CurvatomError):
    """Pearson weight requested for a sigma outside the supported family."""


class LadderGuardError(CurvatomError):
    """Lowering-operator denominator 4n^2(n-n_r)^2 + beta_R^2 vanished."""


class ImaginaryResidueError(CurvatomError):
    """Complex radial evaluation failed the reality assertion."""


class QuadratureFailure(CurvatomError):
    """Adaptive quadrature could not reach the requested tolerance."""


class ConvergenceError(CurvatomError):
    """Grid refinement left an eigenvalue change above tolerance."""
