"""Exception hierarchy.

``UsageError`` maps to CLI exit code 2, ``DataError`` and its subclasses to
exit code 1. Everything raised on purpose by this package derives from
``SpecAugError``.
"""


class SpecAugError(Exception):
    pass


class UsageError(SpecAugError):
    """Caller asked for something that does not exist (bad name, bad flag)."""


class UnknownPresetError(UsageError):
    pass


class DataError(SpecAugError):
    """Input data is malformed, inconsistent or unreadable."""


class PolicyFormatError(DataError):
    pass


class WavDecodeError(DataError):
    pass


class WavHeaderError(WavDecodeError):
    pass


class WavUnsupportedError(WavDecodeError):
    pass


class WavTruncatedError(WavDecodeError):
    pass


class AudioTooShortError(DataError):
    pass


class SgramFormatError(DataError):
    pass


class DimensionError(DataError):
    pass


class ManifestError(DataError):
    pass


class PairingError(ManifestError):
    pass
