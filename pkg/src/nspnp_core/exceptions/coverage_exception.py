from nspnp_core.exceptions.nspnp_exception import NspnpException


class CoverageException(NspnpException):
    """Exception raised when a field history does not cover a requested time window.

    Raised by space-time integrals, the retarded mollifier and the cylinder
    diagnostics when a required slice is missing or a cylinder leaves the
    computed domain.

    Attributes
    ----------
    message : str
        Explanation of the missing coverage
    component : str
        Name of the component that requested the window
    details : dict, optional
        The requested window and the available time range
    """

    label = 'Insufficient history coverage'
