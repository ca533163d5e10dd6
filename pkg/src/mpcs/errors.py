"""Exception types raised by the toolkit."""


class MpcsError(Exception):
    """Base class for all toolkit errors."""


class DivergenceError(MpcsError, ArithmeticError):
    """A chaotic trajectory left the finite range (|component| > 1e10 or NaN)."""


class DimensionError(MpcsError, ValueError):
    """Array shapes or lengths do not agree."""


class ContainerError(MpcsError, ValueError):
    """Malformed, truncated or unsupported ciphertext container."""


class PpmError(MpcsError, ValueError):
    """Unreadable or unsupported PPM data."""


class KeyFileError(MpcsError, ValueError):
    """Unparseable or invalid key file."""


class DegenerateError(MpcsError, ValueError):
    """A statistic is undefined for the input (e.g. zero variance)."""


class SequenceTooShort(MpcsError, ValueError):
    """Bit sequence is shorter than a randomness test requires."""
