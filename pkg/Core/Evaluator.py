# File: Evaluator.py
# Path: AIDEV-StrategicCoT/Core/Evaluator.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Method pipelines, self-consistency voting and multi-run aggregation

"""
Evaluation orchestration.

Evaluator runs one prompting method over a list of tasks and returns a
RunResult with one outcome per task. Zero-shot methods make one gateway
call per task, few-shot SCoT makes two (strategy query, then answer) and
self-consistency makes N. Failed tasks count as incorrect and carry an
error marker.
"""

import json
import logging
import statistics
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from Core.AnswerJudge import AnswerJudge
from Core.DatasetHub import LoadSplit, ParseDatasetName, Sample
from Core.PromptEngine import (
    AblationTemplate,
    BuiltinTemplate,
    DEMO_SLOT,
    FEWSHOT_METHODS,
    GenerateAutoTemplate,
    LoadConceptText,
    LoadTemplate,
    MethodKind,
    ParseMethod,
    PromptTemplate,
    Render,
    SaveTemplate,
)
from Core.ScotErrors import (
    BackendFailure,
    CorpusEmpty,
    DatasetMismatch,
    DivisionByZero,
    EmptyList,
    EmptyStrategy,
    UnsupportedCombination,
)
from Core.StrategyCorpus import LoadCorpus
from Core.StrategyRetrieval import EmbeddingIndex, QueryStrategyCompletion, RankDemonstrations, StrategyIndex
from Utils.FileUtils import AtomicWriteText, JsonLines, NaturalSortKey, Sha256Hex

Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TaskOutcome:
    """Result of one task within a run."""

    TaskId: str
    PromptDigest: Optional[str]
    CompletionDigest: Optional[str]
    Predicted: Optional[str]
    RuleFired: str
    Correct: bool
    PromptTokens: int = 0
    CompletionTokens: int = 0
    FinishReason: str = 'other'
    StrategyCompletionTokens: Optional[int] = None
    Votes: Optional[Tuple[Optional[str], ...]] = None
    Error: Optional[str] = None

    def ToDict(self) -> Dict[str, Any]:
        Row = {
            'task_id': self.TaskId,
            'prompt_digest': self.PromptDigest,
            'completion_digest': self.CompletionDigest,
            'extraction': {'predicted': self.Predicted, 'rule_fired': self.RuleFired},
            'correct': self.Correct,
            'prompt_tokens': self.PromptTokens,
            'completion_tokens': self.CompletionTokens,
            'finish_reason': self.FinishReason,
        }
        if self.StrategyCompletionTokens is not None:
            Row['strategy_completion_tokens'] = self.StrategyCompletionTokens
        if self.Votes is not None:
            Row['votes'] = list(self.Votes)
        if self.Error is not None:
            Row['error'] = self.Error
        return Row

    @classmethod
    def FromDict(cls, Row: Dict[str, Any]) -> 'TaskOutcome':
        Extraction = Row.get('extraction') or {}
        return cls(
            TaskId=Row['task_id'],
            PromptDigest=Row.get('prompt_digest'),
            CompletionDigest=Row.get('completion_digest'),
            Predicted=Extraction.get('predicted'),
            RuleFired=Extraction.get('rule_fired', 'none'),
            Correct=bool(Row['correct']),
            PromptTokens=int(Row.get('prompt_tokens', 0)),
            CompletionTokens=int(Row.get('completion_tokens', 0)),
            FinishReason=Row.get('finish_reason', 'other'),
            StrategyCompletionTokens=Row.get('strategy_completion_tokens'),
            Votes=tuple(Row['votes']) if 'votes' in Row else None,
            Error=Row.get('error'),
        )


def VariantName(Method: str, Settings: Dict[str, Any]) -> str:
    """
    Method id qualified by the template toggles a run used.

    Ablation level, shot count and disabled markdown headers are appended
    with '+': 'cot_zero+role', 'scot_fewshot+3shot', 'scot_zero+plain'.
    A run with default toggles keeps the bare method id.
    """
    Parts = [Method]
    if Settings.get('ablation', 'none') != 'none':
        Parts.append(Settings['ablation'])
    if Settings.get('shots') is not None:
        Parts.append(f"{Settings['shots']}shot")
    if not Settings.get('markdown', True):
        Parts.append('plain')
    return '+'.join(Parts)


@dataclass(frozen=True)
class RunResult:
    """One method over one task list, one run."""

    Method: str
    Dataset: str
    Model: str
    PerTask: Tuple[TaskOutcome, ...]
    Accuracy: float
    RunSeed: int
    Settings: Dict[str, Any] = field(default_factory=dict, hash=False)

    @property
    def Variant(self) -> str:
        return VariantName(self.Method, self.Settings)

    @property
    def Errors(self) -> int:
        return sum(1 for Outcome in self.PerTask if Outcome.Error)

    def Header(self) -> Dict[str, Any]:
        return {
            'record': 'header',
            'method': self.Method,
            'dataset': self.Dataset,
            'model': self.Model,
            'run_seed': self.RunSeed,
            'accuracy': self.Accuracy,
            'n_tasks': len(self.PerTask),
            'n_correct': sum(1 for Outcome in self.PerTask if Outcome.Correct),
            'settings': self.Settings,
        }


@dataclass(frozen=True)
class AccuracyStats:
    """Mean and population standard deviation of run accuracies, in percent."""

    Mean: float
    Std: float
    NRuns: int

    def Format(self) -> str:
        return f"{self.Mean:.2f}±{self.Std:.3f}"


@dataclass(frozen=True)
class TokenStats:
    ScotMean: float
    CotMean: float
    Ratio: float


def MajorityVote(Answers: Sequence[Optional[str]]) -> Optional[str]:
    """
    Most frequent non-None answer; ties go to the smallest string.

    Raises:
        EmptyList: no answers at all
    """
    if not Answers:
        raise EmptyList('majority vote over an empty list')

    Counts = Counter(Answer for Answer in Answers if Answer is not None)
    if not Counts:
        return None
    Top = max(Counts.values())
    return min(Answer for Answer, Count in Counts.items() if Count == Top)


def AggregateRuns(RunAccuracies: Sequence[float]) -> AccuracyStats:
    """
    Mean and population std (divisor N) of per-run accuracies.

    Raises:
        EmptyList: no runs
    """
    if not RunAccuracies:
        raise EmptyList('no run accuracies to aggregate')

    Values = [float(Value) for Value in RunAccuracies]
    if all(Value == Values[0] for Value in Values):
        return AccuracyStats(Values[0], 0.0, len(Values))
    return AccuracyStats(statistics.fmean(Values), statistics.pstdev(Values), len(Values))


def MeanCompletionTokens(Results: Sequence[RunResult]) -> float:
    Tokens = [Outcome.CompletionTokens for Result in Results for Outcome in Result.PerTask]
    return statistics.fmean(Tokens) if Tokens else 0.0


def TokenRatio(ScotMean: float, CotMean: float) -> float:
    if CotMean == 0:
        raise DivisionByZero('CoT mean completion tokens is zero')
    return ScotMean / CotMean


def ComputeTokenStats(ScotResults: Sequence[RunResult], CotResults: Sequence[RunResult]) -> TokenStats:
    """
    Mean completion tokens of SCoT and CoT runs and their ratio.

    Raises:
        EmptyList: either side has no results
        DatasetMismatch: results span different datasets
        DivisionByZero: the CoT mean is zero
    """
    if not ScotResults or not CotResults:
        raise EmptyList('token statistics need SCoT and CoT results')

    Datasets = {Result.Dataset for Result in list(ScotResults) + list(CotResults)}
    if len(Datasets) != 1:
        raise DatasetMismatch(f"token statistics across datasets: {', '.join(sorted(Datasets))}")

    ScotMean = MeanCompletionTokens(ScotResults)
    CotMean = MeanCompletionTokens(CotResults)
    return TokenStats(ScotMean, CotMean, TokenRatio(ScotMean, CotMean))


def CompletionDigest(Texts: Sequence[str]) -> str:
    if len(Texts) == 1:
        return Sha256Hex(Texts[0])
    return Sha256Hex(json.dumps(list(Texts), ensure_ascii=False))


class Evaluator:
    """Runs prompting methods over tasks."""

    def __init__(self, ConfigManager, Gateway, Judge: Optional[AnswerJudge] = None):
        """
        Initialize Evaluator.

        Args:
            ConfigManager: Configuration manager instance
            Gateway: LlmGateway used for every model call
            Judge: AnswerJudge (a new one by default)
        """
        self.Config = ConfigManager
        self.Gateway = Gateway
        self.Judge = Judge or AnswerJudge()
        self.AutoTemplates: Dict[str, PromptTemplate] = {}
        self.Indexes: Dict[str, Any] = {}

    # Templates

    def AutoTemplatePath(self, Domain: str) -> Path:
        Configured = self.Config.Get('run.auto_template')
        if Configured:
            return Path(Configured.replace('{domain}', Domain))
        return Path(self.Config.Get('paths.out_dir')) / f"auto_scot_{Domain}.txt"

    def AutoTemplate(self, Domain: str) -> PromptTemplate:
        """Load the Auto-SCoT template for a domain, generating and saving it if absent."""
        if Domain in self.AutoTemplates:
            return self.AutoTemplates[Domain]

        Markdown = self.Config.GetBool('run.markdown')
        TemplatePath = self.AutoTemplatePath(Domain)
        if TemplatePath.exists():
            Template = LoadTemplate(TemplatePath, Domain, MethodKind.AUTO_SCOT.value, Markdown)
        else:
            Template = GenerateAutoTemplate(LoadConceptText(), self.Gateway, Domain, Markdown)
            SaveTemplate(Template, TemplatePath)
            Logger.info("Saved generated auto_scot template to %s", TemplatePath)

        self.AutoTemplates[Domain] = Template
        return Template

    def TemplateFor(self, Method: Union[str, MethodKind], Domain: str) -> PromptTemplate:
        """Template used by a method for a domain, honoring overrides and ablation."""
        Method = ParseMethod(Method)
        Markdown = self.Config.GetBool('run.markdown')

        if Method == MethodKind.AUTO_SCOT:
            return self.AutoTemplate(Domain)
        if Method == MethodKind.COT_ZERO and self.Config.Get('run.ablation', 'none') != 'none':
            return AblationTemplate(Domain, self.Config.Get('run.ablation'), Markdown)

        Override = self.Config.TemplateOverride(Domain)
        if Override and Method in (MethodKind.SCOT_ZERO, MethodKind.SCOT_FEWSHOT):
            Template = LoadTemplate(Override, Domain, Method.value, Markdown)
            if Method == MethodKind.SCOT_FEWSHOT and Template.DemoSlot is None:
                Template = replace(Template, DemoSlot=DEMO_SLOT)
            return Template

        return BuiltinTemplate(Domain, Method, Markdown)

    def IndexFor(self, Dataset: str):
        """Retrieval index over the dataset's corpus, built once per evaluator."""
        if Dataset in self.Indexes:
            return self.Indexes[Dataset]

        CorpusPath = self.Config.CorpusPath(Dataset)
        CorpusValue = LoadCorpus(CorpusPath)
        if not CorpusValue.Entries:
            raise CorpusEmpty(f"corpus {CorpusPath} has no demonstrations")

        MatchField = self.Config.Get('run.match_field', 'strategy')
        if self.Config.Get('run.index', 'tfidf') == 'embedding':
            Index = EmbeddingIndex(CorpusValue.Entries, self.Gateway, MatchField)
        else:
            Index = StrategyIndex(CorpusValue.Entries, MatchField)

        self.Indexes[Dataset] = Index
        return Index

    # Pipelines

    def _Failed(self, Task, PromptDigest: Optional[str], Error: Exception) -> TaskOutcome:
        Logger.warning("Task %s recorded as incorrect: %s", Task.Id, Error)
        return TaskOutcome(
            TaskId=Task.Id,
            PromptDigest=PromptDigest,
            CompletionDigest=None,
            Predicted=None,
            RuleFired='none',
            Correct=False,
            Error=f"{type(Error).__name__}: {Error}",
        )

    def _ZeroShot(self, Task, Gateway, Template: PromptTemplate) -> TaskOutcome:
        Prompt = Render(Template, Task)
        try:
            Result = Gateway.Complete(Prompt, Gateway.DeterministicConfig())
        except BackendFailure as E:
            return self._Failed(Task, Prompt.Digest, E)

        Extraction = self.Judge.Extract(Result.Text, Task)
        return TaskOutcome(
            TaskId=Task.Id,
            PromptDigest=Prompt.Digest,
            CompletionDigest=CompletionDigest([Result.Text]),
            Predicted=Extraction.Predicted,
            RuleFired=Extraction.RuleFired.value,
            Correct=self.Judge.IsCorrect(Extraction, Task),
            PromptTokens=Result.PromptTokens,
            CompletionTokens=Result.CompletionTokens,
            FinishReason=Result.FinishReason,
        )

    def _FewShot(self, Task, Gateway, Template: PromptTemplate, Shots: int) -> TaskOutcome:
        Demos = []
        StrategyTokens = 0
        try:
            if Shots > 0:
                StrategyTemplate = BuiltinTemplate(Task.Domain, MethodKind.STRATEGY_ONLY, Template.Markdown)
                Query = QueryStrategyCompletion(Task, Gateway, StrategyTemplate)
                StrategyTokens = Query.CompletionTokens
                Demos = [Entry for Entry, _ in RankDemonstrations(self.IndexFor(Task.Dataset), Query.Text, Shots)]
            Prompt = Render(Template, Task, Demos)
        except (BackendFailure, EmptyStrategy) as E:
            return self._Failed(Task, None, E)

        try:
            Result = Gateway.Complete(Prompt, Gateway.DeterministicConfig())
        except BackendFailure as E:
            return self._Failed(Task, Prompt.Digest, E)

        Extraction = self.Judge.Extract(Result.Text, Task)
        return TaskOutcome(
            TaskId=Task.Id,
            PromptDigest=Prompt.Digest,
            CompletionDigest=CompletionDigest([Result.Text]),
            Predicted=Extraction.Predicted,
            RuleFired=Extraction.RuleFired.value,
            Correct=self.Judge.IsCorrect(Extraction, Task),
            PromptTokens=Result.PromptTokens,
            CompletionTokens=Result.CompletionTokens,
            FinishReason=Result.FinishReason,
            StrategyCompletionTokens=StrategyTokens,
        )

    def _SelfConsistency(self, Task, Gateway, Template: PromptTemplate, Samples: int) -> TaskOutcome:
        Prompt = Render(Template, Task)
        try:
            Results = Gateway.CompleteN(Prompt, Gateway.SelfConsistencyConfig(Samples))
        except BackendFailure as E:
            return self._Failed(Task, Prompt.Digest, E)

        Votes = tuple(self.Judge.Extract(Result.Text, Task).Predicted for Result in Results)
        Winner = MajorityVote(Votes)
        Reasons = {Result.FinishReason for Result in Results}
        return TaskOutcome(
            TaskId=Task.Id,
            PromptDigest=Prompt.Digest,
            CompletionDigest=CompletionDigest([Result.Text for Result in Results]),
            Predicted=Winner,
            RuleFired='none' if Winner is None else 'majority_vote',
            Correct=self.Judge.IsPredictionCorrect(Winner, Task),
            PromptTokens=sum(Result.PromptTokens for Result in Results),
            CompletionTokens=sum(Result.CompletionTokens for Result in Results),
            FinishReason='length' if 'length' in Reasons else Results[0].FinishReason,
            Votes=Votes,
        )

    def RunMethod(self, Method: Union[str, MethodKind], Tasks: Sequence, RunSeed: int = 0) -> RunResult:
        """
        Run one method over a list of tasks.

        Args:
            Method: MethodKind to run
            Tasks: TaskRecords, all from one dataset
            RunSeed: Separates repeated runs in the completion cache

        Returns:
            RunResult: One outcome per task, ordered by task id

        Raises:
            EmptyList: no tasks
            DatasetMismatch: tasks from more than one dataset
            UnsupportedCombination: strategy_only is not an answering method
        """
        Method = ParseMethod(Method)
        if not Tasks:
            raise EmptyList('no tasks to evaluate')
        Datasets = {Task.Dataset for Task in Tasks}
        if len(Datasets) != 1:
            raise DatasetMismatch(f"one run covers one dataset, got {', '.join(sorted(Datasets))}")
        if Method == MethodKind.STRATEGY_ONLY:
            raise UnsupportedCombination('strategy_only is a retrieval query, not an answering method')

        Dataset = Tasks[0].Dataset
        Domain = Tasks[0].Domain
        Gateway = self.Gateway.ForRun(RunSeed)
        Template = self.TemplateFor(Method, Domain)
        Settings: Dict[str, Any] = {'template_digest': Template.Digest, 'markdown': Template.Markdown}

        if Method in FEWSHOT_METHODS:
            Shots = self.Config.GetInt('run.shots')
            Settings.update(shots=Shots, match_field=self.Config.Get('run.match_field', 'strategy'))
            if Shots > 0:
                self.IndexFor(Dataset)
            Worker = partial(self._FewShot, Gateway=Gateway, Template=Template, Shots=Shots)
        elif Method == MethodKind.SELF_CONSISTENCY:
            Samples = self.Config.GetInt('run.sc_samples')
            Settings.update(sc_samples=Samples)
            Worker = partial(self._SelfConsistency, Gateway=Gateway, Template=Template, Samples=Samples)
        else:
            if Method == MethodKind.COT_ZERO:
                Settings.update(ablation=self.Config.Get('run.ablation', 'none'))
            Worker = partial(self._ZeroShot, Gateway=Gateway, Template=Template)

        with ThreadPoolExecutor(max_workers=Gateway.MaxInFlight) as Pool:
            Outcomes = list(Pool.map(Worker, Tasks))

        Outcomes.sort(key=lambda Outcome: NaturalSortKey(Outcome.TaskId))
        Correct = sum(1 for Outcome in Outcomes if Outcome.Correct)
        Result = RunResult(
            Method=Method.value,
            Dataset=Dataset,
            Model=Gateway.Model,
            PerTask=tuple(Outcomes),
            Accuracy=Correct / len(Outcomes),
            RunSeed=RunSeed,
            Settings=Settings,
        )
        Logger.info("%s on %s (run seed %d): %d/%d correct", Method.value, Dataset, RunSeed, Correct, len(Outcomes))
        return Result

    # Grid

    def LoadTasks(self, Dataset: str) -> List:
        """Eval split of a dataset, sub-sampled when run.sample_n > 0."""
        Name = ParseDatasetName(Dataset).value
        Records = LoadSplit(Name, 'eval', self.Config.DataPath(Name, 'eval'))
        SampleN = self.Config.GetInt('run.sample_n')
        if SampleN > 0:
            Records = Sample(Records, SampleN, self.Config.GetInt('run.seed'))
        return Records

    def RunCount(self, Method: Union[str, MethodKind]) -> int:
        if ParseMethod(Method) == MethodKind.SELF_CONSISTENCY:
            return self.Config.GetInt('run.sc_runs')
        return self.Config.GetInt('run.n_runs')

    def ArtifactPath(self, Result: RunResult, RunIndex: int) -> Path:
        Model = Result.Model.replace('/', '_')
        RunDir = Path(self.Config.Get('paths.out_dir')) / 'runs' / Result.Dataset
        return RunDir / f"{Result.Variant}.{Model}.run{RunIndex}.jsonl"

    def RunGrid(self, Datasets: Sequence[str], Methods: Sequence[str]) -> List[RunResult]:
        """Every (dataset, method) pair over its configured number of runs; artifacts are written."""
        Results = []
        BaseSeed = self.Config.GetInt('run.seed')
        for Dataset in Datasets:
            Tasks = self.LoadTasks(Dataset)
            for Method in Methods:
                for RunIndex in range(self.RunCount(Method)):
                    Result = self.RunMethod(Method, Tasks, BaseSeed + RunIndex)
                    WriteRunArtifact(Result, self.ArtifactPath(Result, RunIndex), self.Config.Config)
                    Results.append(Result)
        return Results


def WriteRunArtifact(Result: RunResult, FilePath: Union[str, Path], ConfigEcho: Optional[Dict[str, str]] = None) -> Path:
    """Header record with the config echo, then one line per task."""
    Header = dict(Result.Header())
    Header['config'] = dict(sorted((ConfigEcho or {}).items()))
    return AtomicWriteText(FilePath, JsonLines([Header] + [Outcome.ToDict() for Outcome in Result.PerTask]))


def LoadRunArtifact(FilePath: Union[str, Path]) -> RunResult:
    Lines = [Line for Line in Path(FilePath).read_text(encoding='utf-8').splitlines() if Line.strip()]
    if not Lines:
        raise EmptyList(f"run artifact {FilePath} is empty")
    Header = json.loads(Lines[0])
    return RunResult(
        Method=Header['method'],
        Dataset=Header['dataset'],
        Model=Header['model'],
        PerTask=tuple(TaskOutcome.FromDict(json.loads(Line)) for Line in Lines[1:]),
        Accuracy=float(Header['accuracy']),
        RunSeed=int(Header['run_seed']),
        Settings=Header.get('settings', {}),
    )
