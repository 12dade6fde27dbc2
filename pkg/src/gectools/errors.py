"""Exception and warning types shared across the package."""


class GecToolsError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInput(GecToolsError):
    """Raised when an operation receives empty input it cannot act on."""


class MalformedLine(GecToolsError):
    """A line of an input file does not match the expected format."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class MalformedM2(MalformedLine):
    """An M2 file entry is structurally invalid."""


class MalformedArpa(MalformedLine):
    """An ARPA language-model file is structurally invalid."""


class LengthMismatch(GecToolsError):
    """Paired inputs (files, sentence lists) differ in length."""


class OverlappingEdits(GecToolsError):
    """Edits passed to apply_edits overlap or are out of order."""


class SpanOutOfBounds(GecToolsError):
    """An edit span does not fit the sentence it is applied to."""


class MissingAnnotations(GecToolsError):
    """Classification reached a rule that needs lemma/upos annotations
    which are absent on the decisive tokens."""

    def __init__(self, message, sentence_index=None):
        super().__init__(message)
        self.sentence_index = sentence_index


class EmptySentence(GecToolsError):
    """A sentence with zero tokens was passed where at least one token
    is required."""


class DegenerateCounts(UserWarning):
    """Count-of-count statistics were too sparse to estimate a discount;
    a default was used instead."""
