# File: DatasetHub.py
# Path: AIDEV-StrategicCoT/Core/DatasetHub.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Benchmark loading, normalization and deterministic sampling

"""
Benchmark loading and normalization.

This module reads the eight reasoning benchmarks from local JSONL files and
maps each source schema onto a single TaskRecord shape. The per-dataset
source schemas are listed under "Dataset Adapters" in
Docs/AIDEV-StrategicCoT Project Structure.md. Lines already in the normalized
format (they carry a 'kind' field) are accepted for every
dataset, which is also the fixture format.
"""

import json
import logging
import random
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from Core.AnswerJudge import NormalizeNumeric
from Core.ScotErrors import DatasetError, GoldMissing, NOutOfRange, NotANumber, ParseError, SchemaMismatch
from Utils.FileUtils import AtomicWriteText, JsonLines

Logger = logging.getLogger(__name__)

LETTERS = 'ABCDEFGHIJKLMNOPQRSTUVWXYZ'


class DatasetName(str, Enum):
    """The eight supported benchmarks, in report order."""

    MATHQA = 'mathqa'
    AQUA = 'aqua'
    GSM8K = 'gsm8k'
    MMLU = 'mmlu'
    ARC = 'arc'
    STRATEGYQA = 'strategyqa'
    CSQA = 'csqa'
    TRACKING_OBJECTS = 'tracking_objects'


class Split(str, Enum):
    TRAIN = 'train'
    EVAL = 'eval'


DATASET_DOMAINS = {
    DatasetName.MATHQA: 'math',
    DatasetName.AQUA: 'math',
    DatasetName.GSM8K: 'math',
    DatasetName.MMLU: 'math',
    DatasetName.ARC: 'physics',
    DatasetName.STRATEGYQA: 'multihop',
    DatasetName.CSQA: 'commonsense',
    DatasetName.TRACKING_OBJECTS: 'spatial',
}

# Datasets with a gold-labelled train split large enough for a corpus
FEWSHOT_DATASETS = (DatasetName.MATHQA, DatasetName.AQUA, DatasetName.GSM8K, DatasetName.ARC)


@dataclass(frozen=True)
class TaskRecord:
    """One normalized benchmark item."""

    Id: str
    Dataset: str
    Domain: str
    Question: str
    Choices: Optional[Tuple[Tuple[str, str], ...]]
    Gold: str
    Kind: str

    @property
    def Letters(self) -> List[str]:
        return [Letter for Letter, _ in (self.Choices or ())]

    def ToDict(self) -> Dict[str, Any]:
        return {
            'id': self.Id,
            'dataset': self.Dataset,
            'domain': self.Domain,
            'question': self.Question,
            'choices': [list(Pair) for Pair in self.Choices] if self.Choices is not None else None,
            'gold': self.Gold,
            'kind': self.Kind,
        }


@dataclass(frozen=True)
class SplitHandle:
    """A dataset split on disk and how many records it yielded."""

    Dataset: str
    Split: str
    Path: Path
    RecordCount: int


def ParseDatasetName(Name: str) -> DatasetName:
    try:
        return DatasetName(str(Name).strip().lower())
    except ValueError:
        Known = ', '.join(Item.value for Item in DatasetName)
        raise DatasetError(f"unknown dataset '{Name}' (known: {Known})")


def CheckRecord(Record: TaskRecord, LineNo: int) -> TaskRecord:
    """
    Enforce the TaskRecord invariants.

    Raises:
        SchemaMismatch: choices, gold or kind violate the invariants
        GoldMissing: gold is empty
    """
    if not Record.Question or not Record.Question.strip():
        raise SchemaMismatch(LineNo, 'question')
    if not Record.Gold:
        raise GoldMissing(LineNo)

    if Record.Kind == 'mcq':
        if not Record.Choices:
            raise SchemaMismatch(LineNo, 'choices')
        if Record.Letters != list(LETTERS[:len(Record.Choices)]):
            raise SchemaMismatch(LineNo, 'choices')
        if Record.Gold not in Record.Letters:
            raise SchemaMismatch(LineNo, 'gold')
    elif Record.Kind == 'numeric':
        if Record.Choices is not None:
            raise SchemaMismatch(LineNo, 'choices')
        try:
            NormalizeNumeric(Record.Gold)
        except NotANumber:
            raise SchemaMismatch(LineNo, 'gold')
    else:
        raise SchemaMismatch(LineNo, 'kind')

    return Record


def _Require(Row: Dict[str, Any], Field: str, LineNo: int) -> Any:
    Value = Row.get(Field)
    if Value is None or (isinstance(Value, str) and not Value.strip()):
        raise SchemaMismatch(LineNo, Field)
    return Value


def _Gold(Row: Dict[str, Any], Field: str, LineNo: int) -> Any:
    Value = Row.get(Field)
    if Value is None or (isinstance(Value, str) and not Value.strip()):
        raise GoldMissing(LineNo)
    return Value


def _Lettered(Texts: Sequence[str]) -> Tuple[Tuple[str, str], ...]:
    return tuple((LETTERS[Index], str(Text).strip()) for Index, Text in enumerate(Texts))


def _McqRecord(Dataset: DatasetName, RecordId: str, Question: str, Texts: Sequence[str], GoldIndex: int) -> TaskRecord:
    return TaskRecord(
        Id=RecordId,
        Dataset=Dataset.value,
        Domain=DATASET_DOMAINS[Dataset],
        Question=Question.strip(),
        Choices=_Lettered(Texts),
        Gold=LETTERS[GoldIndex],
        Kind='mcq',
    )


def _GoldIndexFromLabel(Label: Any, Labels: Sequence[str], LineNo: int, Field: str) -> int:
    Normalized = [str(Item).strip().upper() for Item in Labels]
    Key = str(Label).strip().upper()
    if Key not in Normalized:
        raise SchemaMismatch(LineNo, Field)
    return Normalized.index(Key)


# Adapters: (row, line number, record id) -> TaskRecord

AQUA_OPTION = re.compile(r'^\s*\(?([A-Za-z])\s*\)\s*(.*)$', re.DOTALL)
MATHQA_OPTIONS = re.compile(r'([a-e])\s*\)\s*(.*?)\s*(?=,\s*[a-e]\s*\)|$)', re.DOTALL)


def AdaptAqua(Row, LineNo, RecordId):
    Question = _Require(Row, 'question', LineNo)
    Options = _Require(Row, 'options', LineNo)
    Gold = _Gold(Row, 'correct', LineNo)

    Labels, Texts = [], []
    for Option in Options:
        Match = AQUA_OPTION.match(str(Option))
        if not Match:
            raise SchemaMismatch(LineNo, 'options')
        Labels.append(Match.group(1).upper())
        Texts.append(Match.group(2))

    if Labels != list(LETTERS[:len(Labels)]):
        raise SchemaMismatch(LineNo, 'options')

    GoldIndex = _GoldIndexFromLabel(Gold, Labels, LineNo, 'correct')
    return _McqRecord(DatasetName.AQUA, RecordId, Question, Texts, GoldIndex)


def AdaptMathQa(Row, LineNo, RecordId):
    Question = Row.get('Problem') or Row.get('problem') or _Require(Row, 'question', LineNo)
    Options = _Require(Row, 'options', LineNo)
    Gold = _Gold(Row, 'correct', LineNo)

    if isinstance(Options, list):
        Pairs = [AQUA_OPTION.match(str(Option)) for Option in Options]
        if not all(Pairs):
            raise SchemaMismatch(LineNo, 'options')
        Labels = [Pair.group(1).upper() for Pair in Pairs]
        Texts = [Pair.group(2) for Pair in Pairs]
    else:
        Found = MATHQA_OPTIONS.findall(str(Options))
        if not Found:
            raise SchemaMismatch(LineNo, 'options')
        Labels = [Label.upper() for Label, _ in Found]
        Texts = [Text for _, Text in Found]

    if Labels != list(LETTERS[:len(Labels)]):
        raise SchemaMismatch(LineNo, 'options')

    GoldIndex = _GoldIndexFromLabel(Gold, Labels, LineNo, 'correct')
    return _McqRecord(DatasetName.MATHQA, RecordId, Question, Texts, GoldIndex)


GSM8K_FINAL = re.compile(r'####\s*(.+?)\s*$', re.DOTALL)
GSM8K_NUMBER = re.compile(r'[-+]?[$€£]?\s?(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?')


def GsmGold(AnswerText: str, LineNo: int) -> str:
    """Canonical gold number: the final numeric span of the reference answer."""
    Final = GSM8K_FINAL.search(AnswerText)
    Scope = Final.group(1) if Final else AnswerText
    Numbers = GSM8K_NUMBER.findall(Scope)
    if not Numbers:
        raise GoldMissing(LineNo)
    try:
        return NormalizeNumeric(Numbers[-1])
    except NotANumber:
        raise SchemaMismatch(LineNo, 'answer')


def AdaptGsm8k(Row, LineNo, RecordId):
    Question = _Require(Row, 'question', LineNo)
    Answer = _Gold(Row, 'answer', LineNo)
    return TaskRecord(
        Id=RecordId,
        Dataset=DatasetName.GSM8K.value,
        Domain=DATASET_DOMAINS[DatasetName.GSM8K],
        Question=str(Question).strip(),
        Choices=None,
        Gold=GsmGold(str(Answer), LineNo),
        Kind='numeric',
    )


def AdaptMmlu(Row, LineNo, RecordId):
    Question = _Require(Row, 'question', LineNo)
    if 'choices' in Row:
        Texts = _Require(Row, 'choices', LineNo)
    elif all(Key in Row for Key in 'ABCD'):
        Texts = [Row[Key] for Key in 'ABCD']
    else:
        raise SchemaMismatch(LineNo, 'choices')
    if not isinstance(Texts, list) or not Texts:
        raise SchemaMismatch(LineNo, 'choices')

    Gold = _Gold(Row, 'answer', LineNo)
    if isinstance(Gold, int) and not isinstance(Gold, bool):
        if not 0 <= Gold < len(Texts):
            raise SchemaMismatch(LineNo, 'answer')
        GoldIndex = Gold
    else:
        GoldIndex = _GoldIndexFromLabel(Gold, LETTERS[:len(Texts)], LineNo, 'answer')

    return _McqRecord(DatasetName.MMLU, RecordId, Question, Texts, GoldIndex)


def _AdaptStemChoices(Dataset: DatasetName):
    """ARC and CommonsenseQA share the stem/choices/answerKey layout."""

    def Adapt(Row, LineNo, RecordId):
        QuestionField = _Require(Row, 'question', LineNo)
        if isinstance(QuestionField, dict):
            Question = _Require(QuestionField, 'stem', LineNo)
            Choices = _Require(QuestionField, 'choices', LineNo)
            if not isinstance(Choices, list):
                raise SchemaMismatch(LineNo, 'choices')
            Labels = [Choice.get('label') for Choice in Choices]
            Texts = [Choice.get('text') for Choice in Choices]
        else:
            Question = QuestionField
            Choices = _Require(Row, 'choices', LineNo)
            if not isinstance(Choices, dict):
                raise SchemaMismatch(LineNo, 'choices')
            Labels = list(Choices.get('label') or [])
            Texts = list(Choices.get('text') or [])

        if not Texts or len(Labels) != len(Texts) or any(Item is None for Item in Labels + Texts):
            raise SchemaMismatch(LineNo, 'choices')

        Gold = _Gold(Row, 'answerKey', LineNo)
        GoldIndex = _GoldIndexFromLabel(Gold, Labels, LineNo, 'answerKey')
        return _McqRecord(Dataset, RecordId, Question, Texts, GoldIndex)

    return Adapt


def AdaptStrategyQa(Row, LineNo, RecordId):
    Question = _Require(Row, 'question', LineNo)
    Answer = _Gold(Row, 'answer', LineNo)
    if isinstance(Answer, str):
        Lowered = Answer.strip().lower()
        if Lowered not in ('yes', 'no', 'true', 'false'):
            raise SchemaMismatch(LineNo, 'answer')
        Answer = Lowered in ('yes', 'true')
    elif not isinstance(Answer, bool):
        raise SchemaMismatch(LineNo, 'answer')

    return _McqRecord(DatasetName.STRATEGYQA, RecordId, Question, ['Yes', 'No'], 0 if Answer else 1)


def AdaptTrackingObjects(Row, LineNo, RecordId):
    Question = Row.get('input') or _Require(Row, 'question', LineNo)

    if isinstance(Row.get('target_scores'), dict):
        Scores = Row['target_scores']
        Texts = list(Scores.keys())
        Winners = [Index for Index, Text in enumerate(Texts) if Scores[Text] in (1, 1.0, True)]
        if len(Winners) != 1:
            raise GoldMissing(LineNo)
        GoldIndex = Winners[0]
    else:
        Texts = _Require(Row, 'choices', LineNo)
        Target = Row.get('target')
        if isinstance(Target, list):
            Target = Target[0] if Target else None
        if Target is None or not str(Target).strip():
            raise GoldMissing(LineNo)
        Stripped = [str(Text).strip() for Text in Texts]
        if str(Target).strip() not in Stripped:
            raise SchemaMismatch(LineNo, 'target')
        GoldIndex = Stripped.index(str(Target).strip())

    return _McqRecord(DatasetName.TRACKING_OBJECTS, RecordId, Question, Texts, GoldIndex)


ADAPTERS: Dict[DatasetName, Callable[[Dict[str, Any], int, str], TaskRecord]] = {
    DatasetName.MATHQA: AdaptMathQa,
    DatasetName.AQUA: AdaptAqua,
    DatasetName.GSM8K: AdaptGsm8k,
    DatasetName.MMLU: AdaptMmlu,
    DatasetName.ARC: _AdaptStemChoices(DatasetName.ARC),
    DatasetName.STRATEGYQA: AdaptStrategyQa,
    DatasetName.CSQA: _AdaptStemChoices(DatasetName.CSQA),
    DatasetName.TRACKING_OBJECTS: AdaptTrackingObjects,
}

ID_FIELDS = ('id', 'qid', 'idx')


def RecordFromDict(Row: Dict[str, Any], LineNo: int = 0) -> TaskRecord:
    """Build a TaskRecord from the normalized JSON layout."""
    for Field in ('id', 'dataset', 'domain', 'question', 'kind'):
        _Require(Row, Field, LineNo)
    _Gold(Row, 'gold', LineNo)

    Choices = Row.get('choices')
    if Choices is not None:
        try:
            Choices = tuple((str(Letter), str(Text)) for Letter, Text in Choices)
        except (TypeError, ValueError):
            raise SchemaMismatch(LineNo, 'choices')

    Record = TaskRecord(
        Id=str(Row['id']),
        Dataset=str(Row['dataset']),
        Domain=str(Row['domain']),
        Question=str(Row['question']),
        Choices=Choices,
        Gold=str(Row['gold']),
        Kind=str(Row['kind']),
    )
    return CheckRecord(Record, LineNo)


def _AdaptLine(Dataset: DatasetName, Row: Dict[str, Any], LineNo: int, Split: str, Index: int) -> TaskRecord:
    if 'kind' in Row and 'gold' in Row:
        Record = RecordFromDict(Row, LineNo)
        if Record.Dataset != Dataset.value:
            raise SchemaMismatch(LineNo, 'dataset')
        return Record

    RecordId = None
    for Field in ID_FIELDS:
        if Row.get(Field) not in (None, ''):
            RecordId = f"{Dataset.value}-{Row[Field]}"
            break
    if RecordId is None:
        RecordId = f"{Dataset.value}-{Split}-{Index:05d}"

    return CheckRecord(ADAPTERS[Dataset](Row, LineNo, RecordId), LineNo)


def LoadSplit(Dataset: Union[str, DatasetName], SplitName: str, FilePath: Union[str, Path]) -> List[TaskRecord]:
    """
    Load one split of a benchmark.

    Args:
        Dataset: Dataset name
        SplitName: 'train' or 'eval'
        FilePath: JSONL file, one record per line

    Returns:
        list: TaskRecords in input order

    Raises:
        ParseError: a line is not a JSON object
        SchemaMismatch: a required field is missing, malformed or duplicated
        GoldMissing: a line carries no gold answer
    """
    Dataset = ParseDatasetName(Dataset) if not isinstance(Dataset, DatasetName) else Dataset
    FilePath = Path(FilePath)
    if not FilePath.exists():
        raise DatasetError(f"dataset file not found: {FilePath}")

    Records: List[TaskRecord] = []
    SeenIds = set()

    with open(FilePath, 'r', encoding='utf-8') as File:
        for LineNo, Line in enumerate(File, start=1):
            if not Line.strip():
                continue
            try:
                Row = json.loads(Line)
            except json.JSONDecodeError as E:
                raise ParseError(LineNo, f"invalid JSON ({E.msg})")
            if not isinstance(Row, dict):
                raise ParseError(LineNo, 'record is not a JSON object')

            Record = _AdaptLine(Dataset, Row, LineNo, SplitName, len(Records))
            if Record.Id in SeenIds:
                raise SchemaMismatch(LineNo, 'id')
            SeenIds.add(Record.Id)
            Records.append(Record)

    Logger.info("Loaded %d %s/%s records from %s", len(Records), Dataset.value, SplitName, FilePath)
    return Records


def DescribeSplit(Dataset: Union[str, DatasetName], SplitName: str, FilePath: Union[str, Path]) -> SplitHandle:
    """Load a split and report how many records parsed."""
    Records = LoadSplit(Dataset, SplitName, FilePath)
    Name = Dataset.value if isinstance(Dataset, DatasetName) else ParseDatasetName(Dataset).value
    return SplitHandle(Name, SplitName, Path(FilePath), len(Records))


def Sample(Records: Sequence[TaskRecord], N: int, Seed: int) -> List[TaskRecord]:
    """
    Deterministic sample without replacement, keeping input order.

    Raises:
        NOutOfRange: N is negative or larger than the record count
    """
    if N < 0 or N > len(Records):
        raise NOutOfRange(f"sample size {N} outside 0..{len(Records)}")

    Chosen = sorted(random.Random(Seed).sample(range(len(Records)), N))
    return [Records[Index] for Index in Chosen]


def SerializeRecords(Records: Sequence[TaskRecord]) -> str:
    """Normalized JSONL text for a list of records."""
    return JsonLines([Record.ToDict() for Record in Records])


def WriteNormalized(Records: Sequence[TaskRecord], FilePath: Union[str, Path]) -> Path:
    return AtomicWriteText(FilePath, SerializeRecords(Records))


def SplitPath(DataDir: Union[str, Path], Dataset: str, SplitName: str) -> Path:
    """Conventional location of a split under the data directory."""
    return Path(DataDir) / Dataset / f"{SplitName}.jsonl"
