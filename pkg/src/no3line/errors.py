"""Exception types shared across the package."""


class No3LineError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(No3LineError, ValueError):
    """Malformed or out-of-range user input."""


class UnsupportedGeometryError(No3LineError, ValueError):
    """Operation is not defined for this board kind."""


class UnknownFormatError(No3LineError, ValueError):
    """Requested output format does not exist."""


class BoardTooLargeError(No3LineError):
    """Board exceeds the size limit of an exhaustive operation."""


class SolveTimeoutError(No3LineError):
    """Search hit its time limit before finishing.

    Carries the best bounds proven so far: every value in
    ``[lower_bound, upper_bound]`` is still possible for the true maximum.
    """

    def __init__(self, message: str, lower_bound: int, upper_bound: int, elapsed: float):
        super().__init__(message)
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.elapsed = elapsed
