"""Exception hierarchy shared across the package.

Numeric preconditions (window budgets, pole margins, hypothesis support
checks) raise subclasses of PreconditionError; the CLI maps those to exit
code 3.  Configuration problems map to exit 2, ambiguous singular-value
gaps to exit 4.
"""


class DttlabError(Exception):
    """Base class for all package errors."""


class ConfigError(DttlabError):
    """Malformed or schema-violating configuration input (CLI exit 2)."""


class PreconditionError(DttlabError):
    """A numeric precondition failed before any result was produced (CLI exit 3)."""


class WindowOverflowError(PreconditionError):
    """A strict-mode operation would push nonzero coefficients off the window."""


class WindowTooSmallError(PreconditionError):
    """The requested window cannot hold the degrees in play."""


class PoleProximityError(PreconditionError):
    """Evaluation point too close to a pole."""


class NearZeroSampleError(PreconditionError):
    """Winding number requested for a sample sequence passing near zero."""


class BoundaryZeroError(PreconditionError):
    """A zero sits within tolerance of the unit circle where none is allowed."""


class NonInvertibleSymbolError(PreconditionError):
    """Symbol has (numerically) vanishing modulus on the circle."""


class CoprimalityError(PreconditionError):
    """Numerator and denominator share a root within clustering tolerance."""


class CirclePoleError(PreconditionError):
    """Denominator root on the unit circle where the expansion is undefined."""


class AmbiguousClusteringError(PreconditionError):
    """Zero multisets cannot be matched unambiguously at the clustering tolerance."""


class NotInKernelError(PreconditionError):
    """Vector fails the kernel-membership residual required by an isomorphism map."""


class HypothesisViolationError(PreconditionError):
    """Structural hypothesis of a predicate fails its numeric support check."""


class HypothesisResidualError(PreconditionError):
    """Identity-style hypothesis of a predicate fails its residual check."""


class AmbiguousGapError(DttlabError):
    """Singular-value gap too small to certify a kernel dimension (CLI exit 4)."""


class NearCircleWarning(UserWarning):
    """Parameter close to the unit circle; finite sections separate poorly there."""
