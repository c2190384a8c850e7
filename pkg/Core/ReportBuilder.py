# File: ReportBuilder.py
# Path: AIDEV-StrategicCoT/Core/ReportBuilder.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Markdown and CSV accuracy reports from run results

"""
Report emission.

Run results are grouped by (dataset, method variant, model) into report
rows, so ablation levels, shot counts and the markdown toggle each get
their own row. Rows are ordered by the canonical dataset order, then
method order, then variant, then model name, so the same bundle always
renders to the same bytes.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from Core.DatasetHub import DatasetName
from Core.Evaluator import AccuracyStats, AggregateRuns, LoadRunArtifact, MeanCompletionTokens, RunResult
from Core.PromptEngine import AblationLevel, MethodKind
from Core.ScotErrors import ConfigError

Logger = logging.getLogger(__name__)

DATASET_ORDER = [Item.value for Item in DatasetName]
METHOD_ORDER = [
    MethodKind.COT_ZERO.value,
    MethodKind.SELF_CONSISTENCY.value,
    MethodKind.SCOT_ZERO.value,
    MethodKind.AUTO_SCOT.value,
    MethodKind.SCOT_FEWSHOT_MINUS.value,
    MethodKind.SCOT_FEWSHOT.value,
    MethodKind.STRATEGY_ONLY.value,
]
ABLATION_ORDER = [Item.value for Item in AblationLevel]

DATASET_LABELS = {
    'mathqa': 'MathQA',
    'aqua': 'AQuA',
    'gsm8k': 'GSM8K',
    'mmlu': 'MMLU',
    'arc': 'ARC',
    'strategyqa': 'StrategyQA',
    'csqa': 'CSQA',
    'tracking_objects': 'Tracking_Objects',
}
METHOD_LABELS = {
    'cot_zero': 'CoT 0-shot',
    'self_consistency': 'Self-Consistency',
    'scot_zero': 'SCoT 0-shot',
    'auto_scot': 'Auto-SCoT',
    'scot_fewshot_minus': 'SCoT k-shot⁻',
    'scot_fewshot': 'SCoT k-shot',
    'strategy_only': 'Strategy only',
}
ABLATION_LABELS = {
    'role': ' + Role',
    'workflow': ' + Role + Workflow',
}
PLAIN_NOTE = '`*` prompts rendered without markdown section headers'

CSV_COLUMNS = 'dataset,method,model,mean,std,n_runs,n_tasks,mean_completion_tokens'


@dataclass(frozen=True)
class ReportRow:
    """One (dataset, method variant, model) cell of the report."""

    Dataset: str
    Method: str
    Model: str
    Stats: AccuracyStats
    NTasks: int
    MeanCompletionTokens: float
    Shots: Optional[int] = None
    Ablation: str = 'none'
    Markdown: bool = True
    Variant: str = ''


def _Position(Order: List[str], Value: str) -> Tuple[int, str]:
    return (Order.index(Value) if Value in Order else len(Order), Value)


def SortKey(Row: ReportRow):
    return (
        _Position(DATASET_ORDER, Row.Dataset),
        _Position(METHOD_ORDER, Row.Method),
        _Position(ABLATION_ORDER, Row.Ablation),
        Row.Shots or 0,
        not Row.Markdown,
        Row.Model,
    )


def BuildRows(Results: Sequence[RunResult]) -> List[ReportRow]:
    """Aggregate run results into report rows."""
    Groups: Dict[Tuple[str, str, str], List[RunResult]] = {}
    for Result in Results:
        Groups.setdefault((Result.Dataset, Result.Variant, Result.Model), []).append(Result)

    Rows = []
    for (Dataset, Variant, Model), Group in Groups.items():
        Group.sort(key=lambda Result: Result.RunSeed)
        Settings = Group[0].Settings
        Rows.append(ReportRow(
            Dataset=Dataset,
            Method=Group[0].Method,
            Model=Model,
            Stats=AggregateRuns([Result.Accuracy * 100 for Result in Group]),
            NTasks=len(Group[0].PerTask),
            MeanCompletionTokens=MeanCompletionTokens(Group),
            Shots=Settings.get('shots'),
            Ablation=Settings.get('ablation', 'none'),
            Markdown=bool(Settings.get('markdown', True)),
            Variant=Variant,
        ))
    return sorted(Rows, key=SortKey)


def LoadRunDirectory(RunDir: Union[str, Path]) -> List[RunResult]:
    """Every run artifact below a directory, in path order."""
    RunDir = Path(RunDir)
    if not RunDir.exists():
        raise ConfigError(f"run directory not found: {RunDir}")
    Files = sorted(RunDir.rglob('*.run*.jsonl'))
    Logger.info("Loaded %d run artifacts from %s", len(Files), RunDir)
    return [LoadRunArtifact(File) for File in Files]


def _CotBaseline(Rows: Sequence[ReportRow]) -> Dict[Tuple[str, str, bool], ReportRow]:
    """Plain CoT row per (dataset, model, header style)."""
    return {
        (Row.Dataset, Row.Model, Row.Markdown): Row
        for Row in Rows
        if Row.Method == MethodKind.COT_ZERO.value and Row.Ablation == AblationLevel.NONE.value
    }


def MethodLabel(Row: ReportRow) -> str:
    Label = METHOD_LABELS.get(Row.Method, Row.Method)
    if Row.Shots is not None:
        Label = Label.replace('k-shot', f"{Row.Shots}-shot")
    Label += ABLATION_LABELS.get(Row.Ablation, '')
    if not Row.Markdown:
        Label += '*'
    return Label


def EmitMarkdown(Rows: Sequence[ReportRow]) -> str:
    Rows = sorted(Rows, key=SortKey)
    Baselines = _CotBaseline(Rows)

    Lines = [
        '| Dataset | Method | Model | Accuracy | Δ vs CoT | Runs | Tasks | Mean completion tokens |',
        '|---|---|---|---|---|---|---|---|',
    ]
    for Row in Rows:
        Baseline = Baselines.get((Row.Dataset, Row.Model, Row.Markdown))
        Delta = ''
        if Baseline is not None and Baseline is not Row:
            Delta = f"{Row.Stats.Mean - Baseline.Stats.Mean:+.2f}"
        Lines.append(
            f"| {DATASET_LABELS.get(Row.Dataset, Row.Dataset)} | {MethodLabel(Row)} | {Row.Model} "
            f"| {Row.Stats.Format()} | {Delta} | {Row.Stats.NRuns} | {Row.NTasks} | {Row.MeanCompletionTokens:.1f} |"
        )

    if not all(Row.Markdown for Row in Rows):
        Lines += ['', PLAIN_NOTE]

    Ratios = []
    for Row in Rows:
        Baseline = Baselines.get((Row.Dataset, Row.Model, Row.Markdown))
        if Row.Method == MethodKind.SCOT_ZERO.value and Baseline is not None and Baseline.MeanCompletionTokens > 0:
            Ratios.append((Row, Baseline, Row.MeanCompletionTokens / Baseline.MeanCompletionTokens))

    if Ratios:
        Lines += [
            '',
            '## Token efficiency',
            '',
            '| Dataset | Model | CoT tokens | SCoT tokens | Ratio |',
            '|---|---|---|---|---|',
        ]
        for Row, Baseline, Ratio in Ratios:
            Lines.append(
                f"| {DATASET_LABELS.get(Row.Dataset, Row.Dataset)}{'' if Row.Markdown else '*'} | {Row.Model} "
                f"| {Baseline.MeanCompletionTokens:.3f} | {Row.MeanCompletionTokens:.3f} | {Ratio:.4f} |"
            )
        Mean = sum(Ratio for _, _, Ratio in Ratios) / len(Ratios)
        Lines += ['', f"Mean SCoT/CoT token ratio: {Mean:.4f}"]

    return '\n'.join(Lines) + '\n'


def EmitCsv(Rows: Sequence[ReportRow]) -> str:
    Lines = [CSV_COLUMNS]
    for Row in sorted(Rows, key=SortKey):
        Lines.append(','.join([
            Row.Dataset,
            Row.Variant or Row.Method,
            Row.Model,
            f"{Row.Stats.Mean:.2f}",
            f"{Row.Stats.Std:.3f}",
            str(Row.Stats.NRuns),
            str(Row.NTasks),
            f"{Row.MeanCompletionTokens:.3f}",
        ]))
    return '\n'.join(Lines) + '\n'


def EmitReport(Rows: Sequence[ReportRow], Format: str = 'md') -> str:
    """
    Render report rows.

    Args:
        Rows: Report rows (any order)
        Format: 'md' for a markdown table, 'csv' for CSV

    Returns:
        str: Report text; identical rows give identical bytes
    """
    if Format == 'csv':
        return EmitCsv(Rows)
    if Format == 'md':
        return EmitMarkdown(Rows)
    raise ConfigError(f"unknown report format '{Format}' (use md or csv)")
