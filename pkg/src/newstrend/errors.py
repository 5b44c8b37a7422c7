"""Exception and warning types shared across the package."""


class NewstrendError(Exception):
    """Base class for all errors raised by this package."""


class MalformedRecord(NewstrendError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class EmptyCorpus(NewstrendError):
    pass


class UnknownSlice(NewstrendError):
    pass


class MissingLexicon(NewstrendError):
    pass


class InvalidThreshold(NewstrendError):
    pass


class EmptyVocabulary(NewstrendError):
    pass


class OutOfVocabulary(NewstrendError):
    pass


class InsufficientOverlap(NewstrendError):
    def __init__(self, pair: tuple, shared: int, dim: int):
        super().__init__(
            f"slices {pair[0]} and {pair[1]} share only {shared} words, need at least {dim}"
        )
        self.pair = pair
        self.shared = shared
        self.dim = dim


class UnknownWord(NewstrendError):
    pass


class TooFewSlices(NewstrendError):
    pass


class TooFewPoints(NewstrendError):
    pass


class PerplexityTooHigh(NewstrendError):
    pass


class StoreValidationError(NewstrendError):
    pass


class PipelineError(NewstrendError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage {stage}: {cause}")
        self.stage = stage


class DegenerateInputWarning(UserWarning):
    """Cross-covariance was identically zero; an identity transform was returned."""
