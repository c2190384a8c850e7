# File: ScotErrors.py
# Path: AIDEV-StrategicCoT/Core/ScotErrors.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:05AM
# Description: Exception hierarchy shared by every Strategic CoT module

"""
Exception hierarchy for the Strategic CoT pipeline.

Every error raised on purpose by this package derives from ScotError. The
ExitCode attribute tells the command line which status to return: 1 for
user and data problems, 2 for backend failures.
"""

from typing import Optional


class ScotError(Exception):
    """Base class for all pipeline errors."""

    ExitCode = 1


class ConfigError(ScotError):
    """Bad or missing configuration value."""


# Prompt engine

class UnsupportedCombination(ScotError):
    """Domain/method pair has no builtin template."""


class MissingSlot(ScotError):
    """Demonstrations were supplied to a template without a demo slot."""


class EmptyQuestion(ScotError):
    """Task question is blank."""


class TemplateFormatError(ScotError):
    """Template text could not be parsed into sections."""


class GenerationUnparseable(ScotError):
    """Generator output lacks the required template sections."""


class ValidationFailed(ScotError):
    """Template parsed but failed validation."""

    def __init__(self, Report):
        self.Report = Report
        super().__init__("template failed validation: " + "; ".join(Report.Violations))


# Dataset hub

class DatasetError(ScotError):
    """Base class for dataset loading errors."""


class ParseError(DatasetError):
    """A source line is not valid JSON or not an object."""

    def __init__(self, LineNo: int, Reason: str):
        self.LineNo = LineNo
        self.Reason = Reason
        super().__init__(f"line {LineNo}: {Reason}")


class SchemaMismatch(DatasetError):
    """A required field is missing or malformed."""

    def __init__(self, LineNo: int, Field: str):
        self.LineNo = LineNo
        self.Field = Field
        super().__init__(f"line {LineNo}: schema mismatch on '{Field}'")


class GoldMissing(DatasetError):
    """The gold answer field is absent or empty."""

    def __init__(self, LineNo: int):
        self.LineNo = LineNo
        super().__init__(f"line {LineNo}: gold answer missing")


class NOutOfRange(DatasetError):
    """Requested sample size is outside 0..len(records)."""


# Answer judge

class NotANumber(ScotError):
    """String holds no parseable number."""


class KindMismatch(ScotError):
    """Extraction mode does not match the task kind."""


# Strategy corpus and retrieval

class CorpusError(ScotError):
    """Base class for corpus errors."""


class CorpusEmpty(CorpusError):
    """No records to build from, or nothing to index."""


class CorpusIoError(CorpusError):
    """Corpus file could not be read or written."""


class CorpusFormatError(CorpusError):
    """A corpus line is malformed."""

    def __init__(self, LineNo: int, Reason: str):
        self.LineNo = LineNo
        super().__init__(f"corpus line {LineNo}: {Reason}")


class FormatVersionMismatch(CorpusError):
    """Corpus header carries an unknown format version."""


class IndexEmpty(ScotError):
    """Retrieval index holds no documents."""


class EmptyStrategy(ScotError):
    """Strategy query produced no text."""


# Evaluator

class EmptyList(ScotError):
    """Aggregation or vote over an empty list."""


class DivisionByZero(ScotError):
    """Token ratio requested with a zero CoT mean."""


class DatasetMismatch(ScotError):
    """Result sets compared across different datasets."""


# Gateway

class InvalidSamplingConfig(ScotError):
    """Sampling parameters are out of range."""


class BackendFailure(ScotError):
    """Base class for backend failures."""

    ExitCode = 2


class BackendUnreachable(BackendFailure):
    """Backend kept failing after all retries."""


class BackendError(BackendFailure):
    """Backend answered with a non-retryable error status."""

    def __init__(self, Status: int, BodyExcerpt: str):
        self.Status = Status
        self.BodyExcerpt = BodyExcerpt
        super().__init__(f"backend returned {Status}: {BodyExcerpt}")


class TransientBackendError(BackendFailure):
    """Retryable failure (connection error, timeout, 429, 5xx)."""

    def __init__(self, Message: str, Status: Optional[int] = None):
        self.Status = Status
        super().__init__(Message)
