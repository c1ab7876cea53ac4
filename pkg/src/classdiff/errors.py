"""Exception and warning types.

Every error carries a short machine-readable ``code`` which the command
line front-end prints as ``ERROR <CODE>: <detail>``.
"""


class DifficultyError(ValueError):
    code = "DATA_ERROR"


class ShapeMismatchError(DifficultyError):
    code = "SHAPE_MISMATCH"


class ZeroCountError(DifficultyError):
    code = "ZERO_COUNT"


class NoPositivesError(DifficultyError):
    code = "NO_POSITIVES"


class OneClassOnlyError(DifficultyError):
    code = "ONE_CLASS_ONLY"


class ZeroVectorError(DifficultyError):
    code = "ZERO_VECTOR"


class MissingFactorError(DifficultyError):
    code = "MISSING_FACTOR"


class EmptyLexiconError(DifficultyError):
    code = "EMPTY_LEXICON"


class EmptyTermError(DifficultyError):
    code = "EMPTY_TERM"


class EmptyError(DifficultyError):
    code = "EMPTY"


class ZeroVarianceError(DifficultyError):
    code = "ZERO_VARIANCE"


class LengthMismatchError(DifficultyError):
    code = "LENGTH_MISMATCH"


class TooFewClassesError(DifficultyError):
    code = "TOO_FEW_CLASSES"


class InvalidConfigError(DifficultyError):
    code = "INVALID_CONFIG"


class ParseError(DifficultyError):
    code = "PARSE_ERROR"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RangeError(DifficultyError):
    code = "RANGE_ERROR"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownLabelError(DifficultyError):
    code = "UNKNOWN_LABEL"


class DuplicateIdError(DifficultyError):
    code = "DUPLICATE_ID"


class BadMagicError(DifficultyError):
    code = "BAD_MAGIC"


class TruncatedFileError(DifficultyError):
    code = "TRUNCATED_FILE"


class NonFiniteValueError(DifficultyError):
    code = "NON_FINITE_VALUE"


class DifficultyWarning(UserWarning):
    """Structured warning; ``code`` and ``context`` end up in JSON reports."""

    code = "WARNING"

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context

    def as_record(self):
        return {"code": self.code, "detail": str(self.args[0]), **self.context}


class DegenerateMaxWarning(DifficultyWarning):
    code = "DEGENERATE_MAX"


class ExcludedClassWarning(DifficultyWarning):
    code = "EXCLUDED_CLASS"


class RidgeFallbackWarning(DifficultyWarning):
    code = "RIDGE_FALLBACK"
