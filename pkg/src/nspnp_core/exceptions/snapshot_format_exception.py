from nspnp_core.exceptions.nspnp_exception import NspnpException


class SnapshotFormatException(NspnpException):
    """Exception raised when a snapshot file cannot be decoded.

    Attributes
    ----------
    section : str
        The section of the file being read when decoding failed
    offset : int
        Byte offset at which the section starts
    """

    label = 'Invalid snapshot'

    def __init__(
        self,
        message: str,
        component: str,
        details: dict = None,
        section: str = None,
        offset: int = None,
    ):
        super().__init__(message, component, details)
        self.section = section
        self.offset = offset
