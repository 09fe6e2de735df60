"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: config errors -> 2, transport
errors -> 3, data errors -> 4.
"""


class XaiBenchError(Exception):
    """Base class for all package errors."""


class ConfigError(XaiBenchError):
    """Invalid run configuration (unknown method, bad target, ...)."""


class InvalidInputError(XaiBenchError):
    """Input text is unusable (e.g. empty after trimming)."""


class TruncationError(XaiBenchError):
    """Input exceeds the model's maximum length and truncation is off."""


class UnsupportedCapabilityError(XaiBenchError):
    """Model does not support the requested operation."""


class TransportError(XaiBenchError):
    """Remote model unreachable after bounded retries."""


class ProtocolError(XaiBenchError):
    """Remote server replied with a malformed or mis-shaped payload."""


class NumericError(XaiBenchError):
    """Non-finite values or a singular system during computation."""


class DataError(XaiBenchError):
    """Corpus file failed to parse or validate."""
