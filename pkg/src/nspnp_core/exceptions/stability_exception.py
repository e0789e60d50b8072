from nspnp_core.exceptions.nspnp_exception import NspnpException


class StabilityException(NspnpException):
    """Exception raised when a time step blows up.

    Raised by the step functions when the output is not finite or grows by
    more than the guard factor, and by the coupled run when the advective
    CFL number exceeds the configured limit. The coupled run attaches the
    last good state and the snapshots emitted so far so that callers can
    write a checkpoint before giving up.

    Attributes
    ----------
    last_state : State, optional
        The last state that passed the guards
    history : FieldHistory, optional
        Snapshots emitted before the failure
    """

    label = 'Numerical instability'

    def __init__(
        self,
        message: str,
        component: str,
        details: dict = None,
        last_state=None,
        history=None,
    ):
        super().__init__(message, component, details)
        self.last_state = last_state
        self.history = history
