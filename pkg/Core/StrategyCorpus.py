# File: StrategyCorpus.py
# Path: AIDEV-StrategicCoT/Core/StrategyCorpus.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Gold-verified demonstration corpus built from zero-shot SCoT answers

"""
Demonstration corpus construction.

The zero-shot SCoT template is run over a train split; answers judged
correct whose output carries a parseable strategy become Demonstrations.
A corpus file is JSONL: a header record followed by one demonstration per
line.
"""

import json
import logging
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from Core.AnswerJudge import AnswerJudge
from Core.PromptEngine import FormatQuestionBody, MethodKind, PromptTemplate, Render
from Core.ScotErrors import CorpusEmpty, CorpusFormatError, CorpusIoError, FormatVersionMismatch, ScotError
from Utils.FileUtils import AtomicWriteText, JsonLines

Logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

# Heading text may continue on the same line
STRATEGY_BLOCK = re.compile(r'^[ \t]*#{1,6}[ \t]*Strategy\b[ \t]*:?[ \t]*', re.IGNORECASE | re.MULTILINE)
ANSWER_BLOCK = re.compile(r'^[ \t]*#{1,6}[ \t]*Answer\b', re.IGNORECASE | re.MULTILINE)

VERDICT_CORRECT = 'correct'
VERDICT_INCORRECT = 'incorrect'
VERDICT_UNPARSEABLE = 'strategy unparseable'

DEMONSTRATION_FIELDS = ('task_id', 'question', 'strategy', 'scot_answer', 'extracted_answer', 'builder_model', 'template_digest')


@dataclass(frozen=True)
class Demonstration:
    """A gold-verified (question, strategy, SCoT answer) exemplar."""

    TaskId: str
    Question: str
    Strategy: str
    ScotAnswer: str
    ExtractedAnswer: str
    BuilderModel: str
    TemplateDigest: str

    def ToDict(self) -> Dict[str, str]:
        return {
            'task_id': self.TaskId,
            'question': self.Question,
            'strategy': self.Strategy,
            'scot_answer': self.ScotAnswer,
            'extracted_answer': self.ExtractedAnswer,
            'builder_model': self.BuilderModel,
            'template_digest': self.TemplateDigest,
        }

    @classmethod
    def FromDict(cls, Row: Dict[str, Any]) -> 'Demonstration':
        return cls(
            TaskId=str(Row['task_id']),
            Question=str(Row['question']),
            Strategy=str(Row['strategy']),
            ScotAnswer=str(Row['scot_answer']),
            ExtractedAnswer=str(Row['extracted_answer']),
            BuilderModel=str(Row['builder_model']),
            TemplateDigest=str(Row['template_digest']),
        )


@dataclass(frozen=True)
class Corpus:
    """Ordered demonstrations for one dataset."""

    Dataset: str
    BuilderModel: str
    TemplateDigest: str
    CreatedAt: str
    Entries: Tuple[Demonstration, ...] = field(default_factory=tuple)

    def Header(self) -> Dict[str, Any]:
        return {
            'format_version': FORMAT_VERSION,
            'dataset': self.Dataset,
            'builder_model': self.BuilderModel,
            'template_digest': self.TemplateDigest,
            'created_at': self.CreatedAt,
        }

    def __len__(self) -> int:
        return len(self.Entries)


@dataclass(frozen=True)
class BuildVerdict:
    TaskId: str
    Verdict: str

    def ToDict(self) -> Dict[str, str]:
        return {'task_id': self.TaskId, 'verdict': self.Verdict}


def ParseStrategy(ModelOutput: str) -> Optional[str]:
    """
    Pull the strategy text out of an SCoT answer.

    Returns the block between a '### Strategy' heading and the next
    '### Answer' heading (or the end of text); text after the heading on
    the same line ('### Strategy: ...') opens the block. Without a
    strategy heading the text before '### Answer' is used. Returns None
    when neither heading is present or the result is blank.
    """
    Text = ModelOutput or ''
    StrategyMatch = STRATEGY_BLOCK.search(Text)

    if StrategyMatch:
        AnswerMatch = ANSWER_BLOCK.search(Text, StrategyMatch.end())
        End = AnswerMatch.start() if AnswerMatch else len(Text)
        Strategy = Text[StrategyMatch.end():End].strip()
    else:
        AnswerMatch = ANSWER_BLOCK.search(Text)
        if not AnswerMatch:
            return None
        Strategy = Text[:AnswerMatch.start()].strip()

    return Strategy or None


def CreatedAtStamp() -> str:
    """UTC timestamp; SOURCE_DATE_EPOCH pins it for reproducible builds."""
    Epoch = os.environ.get('SOURCE_DATE_EPOCH')
    Moment = datetime.fromtimestamp(int(Epoch), timezone.utc) if Epoch else datetime.now(timezone.utc)
    return Moment.strftime('%Y-%m-%dT%H:%M:%SZ')


def BuildCorpus(TrainRecords: Sequence, Gateway, Judge: AnswerJudge, Template: PromptTemplate,
                BuildLog: Optional[List[BuildVerdict]] = None) -> Corpus:
    """
    Build a demonstration corpus from a train split.

    Args:
        TrainRecords: TaskRecords of one dataset
        Gateway: LlmGateway; one deterministic completion per record
        Judge: AnswerJudge used to verify answers against gold
        Template: The scot_zero template
        BuildLog: Optional list that receives one verdict per record

    Returns:
        Corpus: Entries for correct answers with a parseable strategy, input order

    Raises:
        CorpusEmpty: no train records
    """
    if not TrainRecords:
        raise CorpusEmpty('train split is empty')
    if Template.Method != MethodKind.SCOT_ZERO.value:
        raise ScotError(f"corpus construction needs a scot_zero template, got {Template.Method}")

    Config = Gateway.DeterministicConfig()
    Prompts = [Render(Template, Record) for Record in TrainRecords]
    with ThreadPoolExecutor(max_workers=Gateway.MaxInFlight) as Pool:
        Completions = list(Pool.map(lambda Prompt: Gateway.Complete(Prompt, Config), Prompts))

    Entries = []
    Verdicts = []
    for Record, Result in zip(TrainRecords, Completions):
        Extraction = Judge.Extract(Result.Text, Record)
        if not Judge.IsCorrect(Extraction, Record):
            Verdict = VERDICT_INCORRECT
        else:
            Strategy = ParseStrategy(Result.Text)
            if Strategy is None:
                Verdict = VERDICT_UNPARSEABLE
            else:
                Verdict = VERDICT_CORRECT
                Entries.append(Demonstration(
                    TaskId=Record.Id,
                    Question=FormatQuestionBody(Record),
                    Strategy=Strategy,
                    ScotAnswer=Result.Text,
                    ExtractedAnswer=Extraction.Predicted,
                    BuilderModel=Config.Model,
                    TemplateDigest=Template.Digest,
                ))
        Logger.info("Corpus %s: %s", Record.Id, Verdict)
        Verdicts.append(BuildVerdict(Record.Id, Verdict))

    if BuildLog is not None:
        BuildLog.extend(Verdicts)

    if not Entries:
        Logger.warning("No demonstrations survived for %s (%d train records)", TrainRecords[0].Dataset, len(TrainRecords))

    return Corpus(
        Dataset=TrainRecords[0].Dataset,
        BuilderModel=Config.Model,
        TemplateDigest=Template.Digest,
        CreatedAt=CreatedAtStamp(),
        Entries=tuple(Entries),
    )


def PersistCorpus(CorpusValue: Corpus, FilePath: Union[str, Path]) -> Path:
    """Write the corpus file atomically."""
    try:
        return AtomicWriteText(FilePath, JsonLines([CorpusValue.Header()] + [Entry.ToDict() for Entry in CorpusValue.Entries]))
    except OSError as E:
        raise CorpusIoError(f"cannot write corpus {FilePath}: {E}")


def WriteBuildLog(Verdicts: Sequence[BuildVerdict], FilePath: Union[str, Path]) -> Path:
    return AtomicWriteText(FilePath, JsonLines([Verdict.ToDict() for Verdict in Verdicts]))


def BuildLogPath(CorpusPath: Union[str, Path]) -> Path:
    CorpusPath = Path(CorpusPath)
    Stem = CorpusPath.name[:-len('.jsonl')] if CorpusPath.name.endswith('.jsonl') else CorpusPath.name
    return CorpusPath.with_name(f"{Stem}.buildlog.jsonl")


def LoadCorpus(FilePath: Union[str, Path]) -> Corpus:
    """
    Read a corpus file.

    Raises:
        CorpusIoError: the file cannot be read
        FormatVersionMismatch: the header names another format version
        CorpusFormatError: a line is not valid JSON or misses fields
    """
    FilePath = Path(FilePath)
    try:
        Lines = FilePath.read_text(encoding='utf-8').splitlines()
    except OSError as E:
        raise CorpusIoError(f"cannot read corpus {FilePath}: {E}")

    Rows = []
    for LineNo, Line in enumerate(Lines, start=1):
        if not Line.strip():
            continue
        try:
            Row = json.loads(Line)
        except json.JSONDecodeError as E:
            raise CorpusFormatError(LineNo, f"invalid JSON ({E.msg})")
        if not isinstance(Row, dict):
            raise CorpusFormatError(LineNo, 'record is not a JSON object')
        Rows.append((LineNo, Row))

    if not Rows:
        raise CorpusFormatError(1, 'missing header record')

    _, Header = Rows[0]
    if Header.get('format_version') != FORMAT_VERSION:
        raise FormatVersionMismatch(f"corpus {FilePath} has format_version {Header.get('format_version')!r}, expected {FORMAT_VERSION}")
    for Key in ('dataset', 'builder_model', 'template_digest', 'created_at'):
        if Key not in Header:
            raise CorpusFormatError(1, f"header lacks '{Key}'")

    Entries = []
    SeenIds = set()
    for LineNo, Row in Rows[1:]:
        Missing = [Key for Key in DEMONSTRATION_FIELDS if Key not in Row]
        if Missing:
            raise CorpusFormatError(LineNo, f"missing fields {', '.join(Missing)}")
        Entry = Demonstration.FromDict(Row)
        if Entry.TaskId in SeenIds:
            raise CorpusFormatError(LineNo, f"duplicate task_id '{Entry.TaskId}'")
        if not Entry.Strategy.strip():
            raise CorpusFormatError(LineNo, 'empty strategy')
        SeenIds.add(Entry.TaskId)
        Entries.append(Entry)

    return Corpus(
        Dataset=str(Header['dataset']),
        BuilderModel=str(Header['builder_model']),
        TemplateDigest=str(Header['template_digest']),
        CreatedAt=str(Header['created_at']),
        Entries=tuple(Entries),
    )
