class ToolkitError(Exception):
    """Base class for every error raised by the toolkit."""


class ParameterError(ToolkitError, ValueError):
    """
    Rejected input or violated precondition.

    The command line maps this to exit code 2.
    """


class CheckFailure(ToolkitError, RuntimeError):
    """
    An internal cross-check failed or a step of the periodicity proof could not
    be reproduced at the given parameters.

    The command line maps this to exit code 1.
    """
