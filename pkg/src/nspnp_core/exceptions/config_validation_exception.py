from nspnp_core.exceptions.nspnp_exception import NspnpException


class ConfigValidationException(NspnpException):
    """Exception raised when a run or analysis configuration file is invalid.

    Raised before any computation starts, so no output is produced for an
    invalid configuration.
    """

    label = 'Invalid configuration'
