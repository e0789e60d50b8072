from nspnp_core.exceptions.nspnp_exception import NspnpException


class DegeneratePairException(NspnpException):
    """Exception raised when a contraction ratio is requested for (almost) equal trajectories."""

    label = 'Degenerate trajectory pair'
