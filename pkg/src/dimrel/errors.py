"""Exception hierarchy. Every error carries a short machine-greppable code."""


class DimrelError(Exception):
    code = "E_GENERIC"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class CorruptTablesError(DimrelError):
    """Embedded mapping-table data failed its integrity check."""

    code = "E_TABLES_CORRUPT"


class UnknownTokenError(DimrelError):
    """A raw table cell contains a token outside the known lexicon."""

    code = "E_UNKNOWN_TOKEN"

    def __init__(self, dimension: str, raw: str):
        super().__init__(f"unknown token {raw!r} for dimension {dimension!r}")
        self.dimension = dimension
        self.raw = raw


class UnknownLabelError(DimrelError):
    """A relation label has no row in the mapping tables / grouping map."""

    code = "E_UNKNOWN_LABEL"


class AmbiguityError(DimrelError):
    """Row resolution failed to produce a unique value set."""

    code = "E_AMBIGUOUS"


class ParseError(DimrelError):
    code = "E_PARSE"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SpanInconsistencyError(DimrelError):
    code = "E_SPAN"


class FormatError(DimrelError):
    """Malformed record in an on-disk corpus file."""

    code = "E_FORMAT"


class UnknownSenseError(DimrelError):
    code = "E_UNKNOWN_SENSE"


class MissingSectionError(DimrelError):
    """Document id does not encode a WSJ section / split membership."""

    code = "E_MISSING_SECTION"


class UnsupportedClassError(DimrelError):
    code = "E_UNSUPPORTED_CLASS"


class EmptyArgumentError(DimrelError):
    code = "E_EMPTY_ARG"


class BackendUnavailableError(DimrelError):
    code = "E_BACKEND"


class ShapeMismatchError(DimrelError):
    code = "E_SHAPE"


class LabelOutOfRangeError(DimrelError):
    code = "E_LABEL_RANGE"


class CheckpointError(DimrelError):
    code = "E_CHECKPOINT"


class DivergenceError(DimrelError):
    code = "E_DIVERGED"


class EmptySplitError(DimrelError):
    code = "E_EMPTY_SPLIT"


class UnknownDimensionError(DimrelError):
    code = "E_UNKNOWN_DIM"
