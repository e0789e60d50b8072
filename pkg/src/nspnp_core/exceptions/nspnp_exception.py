class NspnpException(Exception):
    """Base class for the errors raised by the solver and the analysis tools.

    Attributes
    ----------
    message : str
        Explanation of the error
    component : str
        Name of the component that failed (e.g., 'elliptic', 'mollifier')
    details : dict, optional
        Additional details about the error, such as residuals or offsets

    Example
    ---------
    try:
        raise NspnpException(
            message='Something went wrong',
            component='elliptic',
            details={'residual': 1e-3},
        )
    except NspnpException as e:
        print(e)  # Will print: "Error in elliptic: Something went wrong\\nDetails: {...}"
    """

    label: str = 'Error'

    def __init__(self, message: str, component: str, details: dict = None):
        """Initialize the error.

        Parameters
        ----------
        message : str
            Human-readable error message
        component : str
            Name of the component that failed
        details : dict, optional
            Additional error details, by default None
        """
        self.message = message
        self.component = component
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        """Return a string representation of the error.

        Returns
        -------
        str
            Formatted error message including component name and details
        """
        base_message = f'{self.label} in {self.component}: {self.message}'
        if self.details:
            return f'{base_message}\nDetails: {self.details}'
        return base_message
