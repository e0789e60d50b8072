from nspnp_core.exceptions.nspnp_exception import NspnpException


class NoConvergenceException(NspnpException):
    """Exception raised when an iterative solver stalls above its tolerance.

    Attributes
    ----------
    residual : float
        The final relative residual reached by the solver
    """

    label = 'Solver did not converge'

    def __init__(
        self, message: str, component: str, details: dict = None, residual=None
    ):
        super().__init__(message, component, details)
        self.residual = residual
