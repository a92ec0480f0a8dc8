"""Exception hierarchy shared by the library and the CLI."""


class GridCodeError(Exception):
    """Base class for all errors raised by gridcode."""


class ParameterError(GridCodeError, ValueError):
    """Invalid construction parameters (dimension, shades, scale, ...)."""


class ColourOverflowError(ParameterError):
    """More colours than fit in one byte per cell."""


class InstanceTooLargeError(GridCodeError):
    """The requested instance would exceed the configured cell budget."""


class CapExceededError(InstanceTooLargeError):
    """An exhaustive check was asked to scan more items than its cap allows."""


class NoSuchWindowError(GridCodeError, LookupError):
    """No window of the code produces the given sum vector or multiset."""


class InconsistentTotalError(NoSuchWindowError):
    """The multiset does not contain exactly m**d cells."""


class FileFormatError(GridCodeError, ValueError):
    """A grid or multiset file is malformed."""
