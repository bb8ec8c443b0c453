"""
Exception types shared by the growfrag modules.

Library code raises these; only the command-line front end turns them into
exit codes.
"""


class GrowFragError(Exception):
    """Base class for all errors raised by growfrag."""


class PoleError(GrowFragError, ArithmeticError):
    """A Gamma or hypergeometric argument sits on a pole."""


class DegenerateConnectionError(GrowFragError, ArithmeticError):
    """The z -> 1-z connection formula hits an integer exponent c-a-b."""


class NonConvergenceError(GrowFragError, ArithmeticError):
    """A series did not converge within max_terms terms."""


class InvalidParam(GrowFragError, ValueError):
    """Problem parameters violate their preconditions."""


class InvalidDomain(GrowFragError, ValueError):
    """A Mellin variable lies outside the half-plane Re s > 0."""


class TimeOutOfRange(GrowFragError, ValueError):
    """A time lies outside [0, 1/gamma)."""


class QuadratureFailure(GrowFragError):
    """Adaptive quadrature did not reach its tolerance."""


class ContourTooShort(GrowFragError):
    """The truncated inversion contour leaves too large a tail."""


class CFLViolation(GrowFragError, ValueError):
    """Requested Courant number outside (0, 1]."""


class DomainTooSmall(GrowFragError, ValueError):
    """The moving front leaves the computational grid."""


class UsageError(GrowFragError):
    """Unknown subcommand or flag on the command line."""


class ConfigError(GrowFragError, ValueError):
    """Malformed or unknown entry in a run configuration."""
