from nspnp_core.exceptions.nspnp_exception import NspnpException


class MaxItersExceededException(NspnpException):
    """Exception raised when the Picard iteration exhausts its iteration budget.

    Attributes
    ----------
    records : list of PicardRecord
        The ratio history collected before giving up
    """

    label = 'Iteration budget exhausted'

    def __init__(
        self, message: str, component: str, details: dict = None, records=None
    ):
        super().__init__(message, component, details)
        self.records = list(records or [])
