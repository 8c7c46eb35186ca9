"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class EvaluationError(ArithmeticError):
    """A sampled integrand or function value was not finite."""


class QuadratureError(RuntimeError):
    """Composite quadrature failed to converge."""


class NUReductionError(ValueError):
    """The hypergeometric-type equation admits no Nikiforov-Uvarov reduction."""


class InconsistentInputError(NUReductionError):
    """Inputs do not satisfy the algebraic relation they are claimed to satisfy."""


class NoPhysicalBranchError(NUReductionError):
    """No (k, pi) branch passes the selection rules."""


class AmbiguousBranchError(NUReductionError):
    """Several branches pass every selection rule."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class UnsupportedFamilyError(NUReductionError):
    """sigma(s) has a double or complex root pair."""


class BracketError(ValueError):
    """The eigenvalue condition does not change sign on the bracket."""


class CollapseError(ValueError):
    """The effective centrifugal barrier is too attractive for a bound state."""


class ConvergenceError(RuntimeError):
    """A grid-based eigenvalue did not converge under refinement."""
