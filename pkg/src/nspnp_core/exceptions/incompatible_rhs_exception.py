from nspnp_core.exceptions.nspnp_exception import NspnpException


class IncompatibleRhsException(NspnpException):
    """Exception raised when a Neumann or periodic Poisson problem has no solution.

    The right hand side of a pure Neumann (or periodic) problem must integrate
    to zero. This exception carries the measured mean and the tolerance.
    """

    label = 'Incompatible right hand side'
