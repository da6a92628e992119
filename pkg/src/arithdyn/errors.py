"""Exception types. Every domain failure derives from :class:`ArithDynError`;
the CLI maps these to exit code 2 and prints ``error_name``."""


class ArithDynError(Exception):
    error_name = "domain-error"


class OutOfRangeError(ArithDynError, ValueError):
    error_name = "out-of-range"


class NotCoprimeError(ArithDynError, ValueError):
    error_name = "non-coprime"


class NotGeneratorError(ArithDynError, ValueError):
    error_name = "not-a-generator"


class ZeroElementError(ArithDynError, ValueError):
    """A multiplicative character was applied to 0."""

    error_name = "zero-element"


class LevelMismatchError(ArithDynError, ValueError):
    error_name = "level-mismatch"


class InsufficientLevelError(ArithDynError, ValueError):
    error_name = "insufficient-level"

    def __init__(self, message, minimal_level):
        super().__init__(message)
        self.minimal_level = minimal_level


class HeadroomError(ArithDynError, ValueError):
    error_name = "no-headroom"


class ReducibleError(ArithDynError, ValueError):
    error_name = "reducible"


class NonMaximalError(ArithDynError, ValueError):
    error_name = "non-maximal"


class IncompatiblePointsError(ArithDynError, ValueError):
    error_name = "incompatible-points"


class CapExceededError(ArithDynError, RuntimeError):
    error_name = "cap-exceeded"


class NoSolutionError(ArithDynError, RuntimeError):
    error_name = "no-solution"


class UnsupportedQueryError(ArithDynError, ValueError):
    error_name = "unsupported-query"


class UnsupportedFieldError(ArithDynError, ValueError):
    error_name = "unsupported-field"


class ReconstructionOverflowError(ArithDynError, OverflowError):
    error_name = "reconstruction-overflow"
