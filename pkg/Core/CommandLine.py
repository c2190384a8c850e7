# File: CommandLine.py
# Path: AIDEV-StrategicCoT/Core/CommandLine.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Command-line entry point wiring datasets, corpus, runs, reports and cache

"""
Command-line interface.

Subcommands: 'datasets normalize', 'corpus build', 'run', 'report',
'cache stats|clear' and 'template validate|autogen'. Every run setting has
a config-file key; flags override the file, which overrides defaults.
Exit status is 0 on success, 1 on user or data errors and 2 on backend
failures.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from Core.AnswerJudge import AnswerJudge
from Core.DatasetHub import (
    DATASET_DOMAINS,
    FEWSHOT_DATASETS,
    DatasetName,
    DescribeSplit,
    LoadSplit,
    ParseDatasetName,
    Sample,
    WriteNormalized,
)
from Core.Evaluator import Evaluator
from Core.LlmGateway import LlmGateway
from Core.PromptEngine import (
    BuiltinTemplate,
    Domain,
    GenerateAutoTemplate,
    LoadConceptText,
    LoadTemplate,
    MethodKind,
    SaveTemplate,
    ValidateTemplate,
)
from Core.ReportBuilder import BuildRows, EmitReport, LoadRunDirectory
from Core.ScotErrors import ScotError
from Core.StrategyCorpus import BuildCorpus, BuildLogPath, PersistCorpus, WriteBuildLog
from Utils.ConfigManager import ConfigManager
from Utils.FileUtils import AtomicWriteText
from Utils.ResponseCache import ResponseCache

Logger = logging.getLogger(__name__)

METHOD_HELP = {
    MethodKind.COT_ZERO: 'zero-shot chain of thought',
    MethodKind.SCOT_ZERO: 'zero-shot strategic chain of thought',
    MethodKind.SCOT_FEWSHOT: 'SCoT prompt with strategy-matched demonstrations',
    MethodKind.SCOT_FEWSHOT_MINUS: 'plain CoT prompt with strategy-matched demonstrations',
    MethodKind.STRATEGY_ONLY: 'strategy elicitation only (retrieval query)',
    MethodKind.SELF_CONSISTENCY: 'sampled CoT paths with majority vote',
    MethodKind.AUTO_SCOT: 'SCoT template written by the model from the concept text',
}


def BuildEpilog() -> str:
    Lines = ['methods:']
    Lines += [f"  {Method.value:<20}{Text}" for Method, Text in METHOD_HELP.items()]
    Lines += ['', 'datasets:']
    Lines += [f"  {Name.value:<20}{DATASET_DOMAINS[Name]}" for Name in DatasetName]
    Lines += [
        '',
        'backends:',
        '  mock:<transcript.jsonl> replays a scripted transcript; any other value',
        '  is the base URL of a chat-completions endpoint.',
        '',
        'exit status: 0 success, 1 user or data error, 2 backend failure',
    ]
    return '\n'.join(Lines)


class UsageError(ScotError):
    """Bad command-line usage."""


class ScotArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to status 1."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _CommonOptions() -> argparse.ArgumentParser:
    Common = argparse.ArgumentParser(add_help=False)
    Common.add_argument('--config', help='key = value config file')
    Common.add_argument('--backend', help="'mock:<transcript.jsonl>' or an endpoint base URL")
    Common.add_argument('--model', help='model name sent to the backend')
    Common.add_argument('--seed', type=int, help='sampling and run seed')
    Common.add_argument('--out', help='output directory')
    Common.add_argument('--verbose', action='store_true', help='log progress')
    Common.add_argument('--debug', action='store_true', help='log everything')
    return Common


def BuildParser() -> ScotArgumentParser:
    """Argument parser for every subcommand."""
    Common = _CommonOptions()
    Methods = [Item.value for Item in MethodKind]
    Datasets = [Item.value for Item in DatasetName]

    Parser = ScotArgumentParser(
        prog='scot',
        description='Strategic Chain-of-Thought prompting and evaluation.',
        epilog=BuildEpilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    Commands = Parser.add_subparsers(dest='Command', metavar='command')
    Commands.required = True

    DatasetGroup = Commands.add_parser('datasets', help='dataset preparation')
    DatasetCommands = DatasetGroup.add_subparsers(dest='Action', metavar='action')
    DatasetCommands.required = True
    Normalize = DatasetCommands.add_parser('normalize', parents=[Common], help='write normalized JSONL')
    Normalize.add_argument('--dataset', required=True, choices=Datasets)
    Normalize.add_argument('--split', default='eval', choices=['train', 'eval'])
    Normalize.add_argument('--input', required=True, help='source JSONL in the dataset\'s own schema')

    Corpus = Commands.add_parser('corpus', help='demonstration corpus')
    CorpusCommands = Corpus.add_subparsers(dest='Action', metavar='action')
    CorpusCommands.required = True
    Build = CorpusCommands.add_parser('build', parents=[Common], help='build a corpus from a train split')
    Build.add_argument('--dataset', required=True, choices=Datasets)
    Build.add_argument('--split', default='train', choices=['train', 'eval'])
    Build.add_argument('--n', type=int, help='sample this many records')
    Build.add_argument('--output', help='corpus file (default: paths.corpus_dir/<dataset>.corpus.jsonl)')

    Run = Commands.add_parser('run', parents=[Common], help='evaluate methods on datasets')
    Run.add_argument('--method', action='append', choices=Methods, help='repeatable')
    Run.add_argument('--dataset', action='append', choices=Datasets, help='repeatable')
    Run.add_argument('--n', type=int, help='evaluate a sample of this many tasks (0 = all)')
    Run.add_argument('--shots', type=int, help='demonstrations per few-shot prompt')
    Run.add_argument('--sc-samples', type=int, help='self-consistency samples per task')
    Run.add_argument('--runs', type=int, help='independent runs per method')
    Run.add_argument('--match-field', choices=['strategy', 'question', 'scot_answer'])
    Run.add_argument('--index', choices=['tfidf', 'embedding'], help='demonstration retrieval index')
    Run.add_argument('--ablation', choices=['none', 'role', 'workflow'])
    Run.add_argument('--no-markdown', action='store_const', const=False, dest='Markdown')
    Run.add_argument('--format', choices=['md', 'csv'], help='report format (run.format)')

    Report = Commands.add_parser('report', parents=[Common], help='report on existing run artifacts')
    Report.add_argument('--format', choices=['md', 'csv'], help='report format (run.format)')

    Cache = Commands.add_parser('cache', help='completion cache')
    CacheCommands = Cache.add_subparsers(dest='Action', metavar='action')
    CacheCommands.required = True
    CacheCommands.add_parser('stats', parents=[Common], help='entry count and size')
    CacheCommands.add_parser('clear', parents=[Common], help='delete all entries')

    Template = Commands.add_parser('template', help='prompt templates')
    TemplateCommands = Template.add_subparsers(dest='Action', metavar='action')
    TemplateCommands.required = True
    Validate = TemplateCommands.add_parser('validate', parents=[Common], help='validate a template')
    Validate.add_argument('source', help="'builtin:<domain>/<method>' or a template file")
    Validate.add_argument('--domain', default='math', choices=[Item.value for Item in Domain])
    Validate.add_argument('--kind', default='scot_zero', choices=Methods, help='method of a template file')
    Autogen = TemplateCommands.add_parser('autogen', parents=[Common], help='generate an Auto-SCoT template')
    Autogen.add_argument('--domain', required=True, choices=[Item.value for Item in Domain])
    Autogen.add_argument('--concept', help='concept text file (default: the shipped description)')
    Autogen.add_argument('--output', help='template file to write')

    return Parser


def ConfigureLogging(Args) -> None:
    Level = logging.DEBUG if Args.debug else logging.INFO if Args.verbose else logging.WARNING
    logging.basicConfig(level=Level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr, force=True)


def LoadConfig(Args) -> ConfigManager:
    """Defaults, then --config, then environment, then flags."""
    Config = ConfigManager(Args.config)
    Config.ApplyOverrides({
        'backend.base_url': Args.backend,
        'backend.model': Args.model,
        'run.seed': Args.seed,
        'paths.out_dir': Args.out,
        'run.methods': getattr(Args, 'method', None) if Args.Command == 'run' else None,
        'run.datasets': getattr(Args, 'dataset', None) if Args.Command == 'run' else None,
        'run.sample_n': getattr(Args, 'n', None) if Args.Command == 'run' else None,
        'run.shots': getattr(Args, 'shots', None),
        'run.sc_samples': getattr(Args, 'sc_samples', None),
        'run.n_runs': getattr(Args, 'runs', None),
        'run.match_field': getattr(Args, 'match_field', None),
        'run.ablation': getattr(Args, 'ablation', None),
        'run.index': getattr(Args, 'index', None),
        'run.markdown': getattr(Args, 'Markdown', None),
        'run.format': getattr(Args, 'format', None),
    })
    return Config.Validate()


def CommandNormalize(Args, Config) -> int:
    Dataset = ParseDatasetName(Args.dataset).value
    Records = LoadSplit(Dataset, Args.split, Args.input)
    Target = Config.DataPath(Dataset, Args.split)
    WriteNormalized(Records, Target)
    Handle = DescribeSplit(Dataset, Args.split, Target)
    print(f"wrote {Handle.RecordCount} {Dataset}/{Args.split} records to {Handle.Path}")
    return 0


def CommandCorpusBuild(Args, Config) -> int:
    Dataset = ParseDatasetName(Args.dataset).value
    if DatasetName(Dataset) not in FEWSHOT_DATASETS:
        Logger.warning("%s has no official train split; building from %s", Dataset, Config.DataPath(Dataset, Args.split))
    Records = LoadSplit(Dataset, Args.split, Config.DataPath(Dataset, Args.split))
    if Args.n:
        Records = Sample(Records, Args.n, Config.GetInt('run.seed'))

    Gateway = LlmGateway.FromConfig(Config)
    Template = Evaluator(Config, Gateway).TemplateFor(MethodKind.SCOT_ZERO, DATASET_DOMAINS[DatasetName(Dataset)])

    Verdicts = []
    Built = BuildCorpus(Records, Gateway, AnswerJudge(), Template, Verdicts)
    Target = Path(Args.output) if Args.output else Config.CorpusPath(Dataset)
    PersistCorpus(Built, Target)
    WriteBuildLog(Verdicts, BuildLogPath(Target))

    print(f"kept {len(Built)} of {len(Records)} {Dataset} records; corpus written to {Target}")
    return 0


def CommandRun(Args, Config) -> int:
    Gateway = LlmGateway.FromConfig(Config)
    Runner = Evaluator(Config, Gateway)
    Results = Runner.RunGrid(Config.GetList('run.datasets'), Config.GetList('run.methods'))
    Logger.info("Gateway usage: %s", Gateway.StatsDict())

    Format = Config.Get('run.format')
    Text = EmitReport(BuildRows(Results), Format)
    AtomicWriteText(Path(Config.Get('paths.out_dir')) / f"report.{Format}", Text)
    sys.stdout.write(Text)

    Failed = sum(Result.Errors for Result in Results)
    if Failed:
        print(f"error: {Failed} task(s) failed with backend errors and were scored incorrect", file=sys.stderr)
        return 2
    return 0


def CommandReport(Args, Config) -> int:
    Results = LoadRunDirectory(Path(Config.Get('paths.out_dir')) / 'runs')
    if not Results:
        raise ScotError(f"no run artifacts under {Config.Get('paths.out_dir')}/runs")
    sys.stdout.write(EmitReport(BuildRows(Results), Config.Get('run.format')))
    return 0


def CommandCache(Args, Config) -> int:
    Cache = ResponseCache(Config.Get('paths.cache_dir'))
    if Args.Action == 'stats':
        Stats = Cache.Stats()
        print(f"entries: {Stats.Entries}")
        print(f"bytes: {Stats.Bytes}")
    else:
        print(f"removed {Cache.Clear()} entries")
    return 0


def CommandTemplateValidate(Args, Config) -> int:
    Markdown = Config.GetBool('run.markdown')
    if Args.source.startswith('builtin:'):
        DomainName, _, Method = Args.source[len('builtin:'):].partition('/')
        Template = BuiltinTemplate(DomainName, Method, Markdown)
    else:
        Template = LoadTemplate(Args.source, Args.domain, Args.kind, Markdown)

    Report = ValidateTemplate(Template)
    print(Report.Summary())
    for Violation in Report.Violations:
        print(f"  - {Violation}")
    return 0 if Report.IsValid else 1


def CommandTemplateAutogen(Args, Config) -> int:
    Gateway = LlmGateway.FromConfig(Config)
    Concept = LoadConceptText(Args.concept)
    Template = GenerateAutoTemplate(Concept, Gateway, Args.domain, Config.GetBool('run.markdown'))
    Target = Path(Args.output) if Args.output else Evaluator(Config, Gateway).AutoTemplatePath(Args.domain)
    SaveTemplate(Template, Target)
    print(f"{ValidateTemplate(Template).Summary()}; template written to {Target}")
    return 0


HANDLERS = {
    ('datasets', 'normalize'): CommandNormalize,
    ('corpus', 'build'): CommandCorpusBuild,
    ('run', None): CommandRun,
    ('report', None): CommandReport,
    ('cache', 'stats'): CommandCache,
    ('cache', 'clear'): CommandCache,
    ('template', 'validate'): CommandTemplateValidate,
    ('template', 'autogen'): CommandTemplateAutogen,
}


def Execute(Argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Args:
        Argv: Arguments without the program name (sys.argv[1:] by default)

    Returns:
        int: Exit status
    """
    Parser = BuildParser()
    try:
        Args = Parser.parse_args(list(sys.argv[1:] if Argv is None else Argv))
        ConfigureLogging(Args)
        Config = LoadConfig(Args)
        Handler = HANDLERS[(Args.Command, getattr(Args, 'Action', None))]
        return Handler(Args, Config)
    except ScotError as E:
        print(f"error: {E}", file=sys.stderr)
        return E.ExitCode
    except OSError as E:
        print(f"error: {E}", file=sys.stderr)
        return 1
    except SystemExit as E:
        return E.code if isinstance(E.code, int) else 0
