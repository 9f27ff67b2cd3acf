class CoremixError(Exception):
    """Base class for errors raised by coremix."""


class DisconnectedGraphError(CoremixError):
    """An operation requiring a connected graph got a disconnected one."""


class RetryLimitError(CoremixError):
    """A rejection sampler exceeded its retry budget."""


class SizeCapError(CoremixError):
    """An exact solver was asked for more states than its cap allows."""


class EmptyCoreError(CoremixError):
    """The (trimmed/reduced) core of the input graph is empty."""


class ConfigError(CoremixError):
    """An experiment configuration is malformed."""
