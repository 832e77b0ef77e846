"""Exception hierarchy.

Two families matter to callers: ``DataError`` (bad bytes or bad pixels) and
``ConfigurationError`` (a request that cannot be satisfied for this input,
e.g. no pyramid level yields the requested codebook size). The CLI maps them
to exit codes 2 and 3.
"""


class VQError(Exception):
    """Base class for every error raised by this package."""


class DataError(VQError, ValueError):
    pass


class ConfigurationError(VQError, ValueError):
    pass


class FormatError(DataError):
    """Malformed PGM header or magic."""


class TruncationError(FormatError):
    """Fewer bytes than the header promises."""


class UnsupportedDepthError(FormatError):
    """PGM maxval above 255."""


class DimensionError(DataError):
    """Shapes that must agree do not."""


class DegenerateInputError(DataError):
    pass


class ReassemblyError(DataError):
    """Vector count does not fill the target image."""


class CorruptionError(DataError):
    """Compressed stream fails a structural check."""


class BadMagicError(CorruptionError):
    pass


class VersionMismatchError(CorruptionError):
    pass


class LengthError(CorruptionError):
    """Stream length disagrees with its header."""


class StreamTruncatedError(LengthError, TruncationError):
    pass


class IndexRangeError(CorruptionError):
    """An index-table entry names a codeword that does not exist."""


class TilingError(ConfigurationError):
    """Image dimensions are not multiples of the block size."""


class NoExactLevelError(ConfigurationError):
    """No pyramid level tiles into exactly the requested number of blocks."""


class InsufficientDataError(ConfigurationError):
    """Not enough training vectors for the request."""
