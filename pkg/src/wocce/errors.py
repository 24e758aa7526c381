"""Exception hierarchy used across the package."""


class WOCCEError(Exception):
    """Base class for all errors raised by wocce."""


class ParseError(WOCCEError, ValueError):
    """Malformed input file."""


class SizeError(WOCCEError, ValueError):
    """An argument has the wrong size or is out of its admissible range."""


class ConfigError(WOCCEError, ValueError):
    """Invalid configuration (unknown algorithm family, bad roster, ...)."""


class DomainError(WOCCEError, ValueError):
    """A function was called outside its mathematical domain."""


class DegenerateFitError(WOCCEError, RuntimeError):
    """A base algorithm could not produce a usable fit."""


class InconsistencyError(WOCCEError, RuntimeError):
    """Internal bookkeeping is inconsistent (should never happen)."""


class NoWiseCrowdError(WOCCEError, RuntimeError):
    """Every candidate was rejected; the thresholds are too strict.

    The admission log of the failed build is kept on ``admission_log``.
    """

    def __init__(self, message, admission_log=None):
        super().__init__(message)
        self.admission_log = list(admission_log or [])
