# File: PromptEngine.py
# Path: AIDEV-StrategicCoT/Core/PromptEngine.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17 12:30PM
# Description: Structured prompt templates, validation, rendering and auto-generation

"""
Prompt engine for the Strategic CoT methods.

A PromptTemplate holds the five prompt components (Role, Workflow, Rules,
Initialization, Task Input) plus an optional demonstration slot. Builtin
templates are read from Resources/Templates; rendering is a pure function
of (template, task, demonstrations).
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Union

from Core.ScotErrors import (
    ConfigError,
    EmptyQuestion,
    GenerationUnparseable,
    MissingSlot,
    TemplateFormatError,
    UnsupportedCombination,
    ValidationFailed,
)
from Utils.FileUtils import AtomicWriteText, CanonicalJson, Sha256Hex
from Utils.TemplateParser import SplitSections, TemplateParser, TemplateSections

Logger = logging.getLogger(__name__)

TEMPLATES_PATH = Path(__file__).parent.parent / 'Resources' / 'Templates'
CONCEPT_PATH = Path(__file__).parent.parent / 'Resources' / 'Concepts' / 'scot_concept.txt'

TASK_SLOT = '{{question}}'
DEMO_SLOT = '{{demonstrations}}'
DEMO_DELIMITER = '-----'

STRATEGY_ONLY_INITIALIZATION = (
    'Follow the workflow for the question below. Write only the chosen strategy under a '
    '"### Strategy" heading. Do not solve the problem and do not state an answer.'
)


class Domain(str, Enum):
    MATH = 'math'
    PHYSICS = 'physics'
    COMMONSENSE = 'commonsense'
    MULTIHOP = 'multihop'
    SPATIAL = 'spatial'


class MethodKind(str, Enum):
    COT_ZERO = 'cot_zero'
    SCOT_ZERO = 'scot_zero'
    SCOT_FEWSHOT = 'scot_fewshot'
    SCOT_FEWSHOT_MINUS = 'scot_fewshot_minus'
    STRATEGY_ONLY = 'strategy_only'
    SELF_CONSISTENCY = 'self_consistency'
    AUTO_SCOT = 'auto_scot'


class AblationLevel(str, Enum):
    """Progressive CoT variants: no role, SCoT role, SCoT role + workflow."""

    NONE = 'none'
    ROLE = 'role'
    WORKFLOW = 'workflow'


# Methods whose workflow must carry elicitation steps before the application step
STRATEGY_METHODS = (MethodKind.SCOT_ZERO, MethodKind.SCOT_FEWSHOT, MethodKind.AUTO_SCOT)
FEWSHOT_METHODS = (MethodKind.SCOT_FEWSHOT, MethodKind.SCOT_FEWSHOT_MINUS)

SECTION_TITLES = (
    ('role', 'Role'),
    ('workflow', 'Workflow'),
    ('rules', 'Rules'),
    ('initialization', 'Initialization'),
    ('demonstrations', 'Demonstrations'),
    ('task_input', 'Task Input'),
)


@dataclass(frozen=True)
class PromptTemplate:
    """The five-component prompt structure plus rendering toggles."""

    Domain: str
    Method: str
    RoleText: str
    WorkflowSteps: Tuple[str, ...]
    Rules: Tuple[str, ...]
    InitializationText: str
    TaskSlot: str = TASK_SLOT
    DemoSlot: Optional[str] = None
    Markdown: bool = True

    def ToDict(self) -> Dict[str, object]:
        return {
            'domain': self.Domain,
            'method': self.Method,
            'role_text': self.RoleText,
            'workflow_steps': list(self.WorkflowSteps),
            'rules': list(self.Rules),
            'initialization_text': self.InitializationText,
            'task_slot': self.TaskSlot,
            'demo_slot': self.DemoSlot,
            'markdown': self.Markdown,
        }

    @property
    def Digest(self) -> str:
        return Sha256Hex(CanonicalJson(self.ToDict()))

    @property
    def ElicitationSteps(self) -> Tuple[str, ...]:
        return self.WorkflowSteps[:-1]

    @property
    def ApplicationStep(self) -> Optional[str]:
        return self.WorkflowSteps[-1] if self.WorkflowSteps else None


@dataclass(frozen=True)
class RenderedPrompt:
    """Rendered prompt text with the byte range of every component."""

    Text: str
    ComponentSpans: Dict[str, Tuple[int, int]] = field(hash=False)
    TemplateDigest: str

    @property
    def Digest(self) -> str:
        return Sha256Hex(self.Text)


@dataclass(frozen=True)
class ValidationReport:
    Violations: Tuple[str, ...]

    @property
    def IsValid(self) -> bool:
        return not self.Violations

    def Summary(self) -> str:
        Count = len(self.Violations)
        return f"{Count} violation{'' if Count == 1 else 's'}"


def ParseDomain(Value: Union[str, Domain]) -> Domain:
    try:
        return Domain(Value)
    except ValueError:
        raise UnsupportedCombination(f"unknown domain '{Value}'")


def ParseMethod(Value: Union[str, MethodKind]) -> MethodKind:
    try:
        return MethodKind(Value)
    except ValueError:
        raise UnsupportedCombination(f"unknown method '{Value}'")


@lru_cache(maxsize=None)
def _LoadSections(FileName: str) -> Tuple[str, Tuple[str, ...], Tuple[str, ...], str]:
    return SplitSections(TemplateParser().ParseFile(TEMPLATES_PATH / FileName))


def TemplateFromSections(Sections: TemplateSections, DomainName: str, Method: str, Markdown: bool = True) -> PromptTemplate:
    """Build a PromptTemplate from parsed file sections."""
    RoleText, Workflow, Rules, Initialization = SplitSections(Sections)
    return PromptTemplate(
        Domain=DomainName,
        Method=Method,
        RoleText=RoleText,
        WorkflowSteps=Workflow,
        Rules=Rules,
        InitializationText=Initialization,
        TaskSlot=Sections.TaskSlot if Sections.TaskSlot is not None else TASK_SLOT,
        DemoSlot=Sections.DemoSlot,
        Markdown=Markdown,
    )


def LoadTemplate(FilePath: Union[str, Path], DomainName: str, Method: str, Markdown: bool = True) -> PromptTemplate:
    """Load a template file (used for per-domain overrides and Auto-SCoT templates)."""
    return TemplateFromSections(TemplateParser().ParseFile(FilePath), DomainName, Method, Markdown)


def SaveTemplate(Template: PromptTemplate, FilePath: Union[str, Path]) -> Path:
    Sections = TemplateSections(
        Role=Template.RoleText,
        Workflow=list(Template.WorkflowSteps),
        Rules=list(Template.Rules),
        Initialization=Template.InitializationText,
        TaskSlot=Template.TaskSlot,
        DemoSlot=Template.DemoSlot,
    )
    return AtomicWriteText(FilePath, TemplateParser().FormatText(Sections))


def BuiltinTemplate(DomainName: Union[str, Domain], Method: Union[str, MethodKind], Markdown: bool = True) -> PromptTemplate:
    """
    Return the authored template for a (domain, method) pair.

    Args:
        DomainName: One of the five domains
        Method: Any MethodKind except auto_scot
        Markdown: Render section headers as markdown headings

    Returns:
        PromptTemplate: The builtin template

    Raises:
        UnsupportedCombination: unknown domain or method, or auto_scot
    """
    DomainValue = ParseDomain(DomainName).value
    MethodValue = ParseMethod(Method)

    if MethodValue == MethodKind.AUTO_SCOT:
        raise UnsupportedCombination('auto_scot templates are generated, not builtin')

    if MethodValue in (MethodKind.COT_ZERO, MethodKind.SELF_CONSISTENCY, MethodKind.SCOT_FEWSHOT_MINUS):
        RoleText, Workflow, Rules, Initialization = _LoadSections('cot.txt')
    else:
        RoleText, Workflow, Rules, Initialization = _LoadSections(f"scot_{DomainValue}.txt")

    if MethodValue == MethodKind.STRATEGY_ONLY:
        Workflow = Workflow[:-1]
        Initialization = STRATEGY_ONLY_INITIALIZATION

    return PromptTemplate(
        Domain=DomainValue,
        Method=MethodValue.value,
        RoleText=RoleText,
        WorkflowSteps=Workflow,
        Rules=Rules,
        InitializationText=Initialization,
        DemoSlot=DEMO_SLOT if MethodValue in FEWSHOT_METHODS else None,
        Markdown=Markdown,
    )


def AblationTemplate(DomainName: Union[str, Domain], Level: Union[str, AblationLevel], Markdown: bool = True) -> PromptTemplate:
    """
    CoT template with SCoT components added one at a time.

    'none' drops the role, 'role' uses the domain's SCoT role, and
    'workflow' adds the SCoT workflow on top of that role. Rules and
    initialization stay those of plain CoT.
    """
    try:
        Level = AblationLevel(Level)
    except ValueError:
        raise UnsupportedCombination(f"unknown ablation level '{Level}'")

    Base = BuiltinTemplate(DomainName, MethodKind.COT_ZERO, Markdown)
    ScotRole, ScotWorkflow, _, _ = _LoadSections(f"scot_{Base.Domain}.txt")

    if Level == AblationLevel.NONE:
        return replace(Base, RoleText='')
    if Level == AblationLevel.ROLE:
        return replace(Base, RoleText=ScotRole)
    return replace(Base, RoleText=ScotRole, WorkflowSteps=ScotWorkflow)


def FormatQuestionBody(Task) -> str:
    """Question text followed by lettered options for multiple-choice tasks."""
    Lines = [Task.Question.strip()]
    if Task.Choices:
        Lines.append('Options:')
        Lines.extend(f"({Letter}) {Text}" for Letter, Text in Task.Choices)
    return '\n'.join(Lines)


def FormatDemonstrations(Demos: Sequence) -> str:
    Blocks = []
    for Index, Demo in enumerate(Demos, start=1):
        Blocks.append(f"Example {Index}\nQuestion: {Demo.Question.strip()}\n{Demo.ScotAnswer.strip()}")
    return f"\n{DEMO_DELIMITER}\n".join(Blocks)


def Render(Template: PromptTemplate, Task, Demos: Sequence = ()) -> RenderedPrompt:
    """
    Render a template for one task.

    Args:
        Template: Prompt template
        Task: TaskRecord to fill the task slot
        Demos: Demonstrations, inserted in the given order before the task

    Returns:
        RenderedPrompt: Text, component byte spans and template digest

    Raises:
        EmptyQuestion: the task question is blank
        MissingSlot: demonstrations given to a template without a demo slot
    """
    if not Task.Question or not Task.Question.strip():
        raise EmptyQuestion(f"task {Task.Id} has an empty question")
    if Demos and Template.DemoSlot is None:
        raise MissingSlot(f"{Template.Method} template has no demonstration slot")

    Bodies = {
        'role': Template.RoleText.strip(),
        'workflow': '\n'.join(f"{Index}. {Step}" for Index, Step in enumerate(Template.WorkflowSteps, start=1)),
        'rules': '\n'.join(f"- {Rule}" for Rule in Template.Rules),
        'initialization': Template.InitializationText.strip(),
        'demonstrations': FormatDemonstrations(Demos) if Demos else '',
        'task_input': f"Question: {FormatQuestionBody(Task)}",
    }

    Pieces = []
    for Name, Title in SECTION_TITLES:
        if not Bodies[Name]:
            continue
        Header = f"## {Title}" if Template.Markdown else f"{Title}:"
        Pieces.append((Name, f"{Header}\n{Bodies[Name]}\n"))

    Text = ''
    Spans: Dict[str, Tuple[int, int]] = {}
    Offset = 0
    for Index, (Name, Piece) in enumerate(Pieces):
        if Index < len(Pieces) - 1:
            Piece += '\n'
        Size = len(Piece.encode('utf-8'))
        Spans[Name] = (Offset, Offset + Size)
        Offset += Size
        Text += Piece

    return RenderedPrompt(Text=Text, ComponentSpans=Spans, TemplateDigest=Template.Digest)


def ValidateTemplate(Template: PromptTemplate) -> ValidationReport:
    """
    Check a template against the structural rules. Never raises.

    Returns:
        ValidationReport: One message per violation, empty when valid
    """
    Violations = []

    if Template.Domain not in {Item.value for Item in Domain}:
        Violations.append(f"unknown domain '{Template.Domain}'")
    if Template.Method not in {Item.value for Item in MethodKind}:
        Violations.append(f"unknown method '{Template.Method}'")

    if not (Template.RoleText or '').strip():
        Violations.append('missing component: role')
    if not (Template.InitializationText or '').strip():
        Violations.append('missing component: initialization')
    if not (Template.TaskSlot or '').strip():
        Violations.append('missing component: task input')
    if not Template.Rules:
        Violations.append('empty rule list')
    elif any(not Rule.strip() for Rule in Template.Rules):
        Violations.append('empty rule')

    Steps = [Step for Step in Template.WorkflowSteps if Step.strip()]
    if len(Steps) != len(Template.WorkflowSteps):
        Violations.append('empty workflow step')
    if Template.Method in {Item.value for Item in STRATEGY_METHODS} and len(Steps) < 3:
        Violations.append('missing strategy-elicitation steps')
    if Template.Method == MethodKind.STRATEGY_ONLY.value and not Steps:
        Violations.append('missing strategy-elicitation steps')

    if (Template.TaskSlot or '').strip():
        Skeleton = [Template.RoleText, Template.InitializationText, *Template.WorkflowSteps, *Template.Rules]
        if Template.DemoSlot:
            Skeleton.append(Template.DemoSlot)
        Occurrences = 1 + sum(Part.count(Template.TaskSlot) for Part in Skeleton if Part)
        if Occurrences > 1:
            Violations.append('duplicate task slot')

    if Template.Method in {Item.value for Item in FEWSHOT_METHODS} and not Template.DemoSlot:
        Violations.append('missing demonstration slot')

    return ValidationReport(tuple(Violations))


GENERATOR_INSTRUCTIONS = """You write prompt templates. Read the description of the prompting method below and write one prompt template that applies it to {domain} questions.

Write the template in exactly this plain-text layout and nothing else:

role: <one paragraph describing the expert persona>
workflow:
  1. <step>
  2. <step>
  3. <step>
rules:
  - <rule>
  - <rule>
initialization: <how to start and how to format the output>
task_slot: {{{{question}}}}

The workflow needs at least three numbered steps: the earlier steps find a strategy and the last step applies it. The initialization must ask for a "### Strategy" block followed by a "### Answer" block that ends with "The answer is X".

Method description:
{concept}
"""


def LoadConceptText(FilePath: Union[str, Path, None] = None) -> str:
    return Path(FilePath or CONCEPT_PATH).read_text(encoding='utf-8')


def GenerateAutoTemplate(ConceptText: str, Gateway, DomainName: Union[str, Domain], Markdown: bool = True) -> PromptTemplate:
    """
    Ask a model to write an SCoT template from the concept description.

    Args:
        ConceptText: Description of the SCoT method
        Gateway: LlmGateway used for the single generation call
        DomainName: Domain the template is written for
        Markdown: Header style of the returned template

    Returns:
        PromptTemplate: Parsed template with method auto_scot

    Raises:
        GenerationUnparseable: the output lacks the required sections
        ValidationFailed: the output parsed but failed validation
    """
    DomainValue = ParseDomain(DomainName).value
    if not ConceptText or not ConceptText.strip():
        raise ConfigError('concept text is empty')

    Request = GENERATOR_INSTRUCTIONS.format(domain=DomainValue, concept=ConceptText.strip())
    Result = Gateway.Complete(Request)

    Parser = TemplateParser()
    try:
        Sections = Parser.ParseText(Parser.StripFences(Result.Text))
    except TemplateFormatError as E:
        raise GenerationUnparseable(f"generator output is not a template: {E}")

    Missing = [Name for Name in ('role', 'workflow', 'rules', 'initialization') if Name not in Sections.Present]
    if Missing:
        raise GenerationUnparseable(f"generator output lacks sections: {', '.join(Missing)}")

    Template = TemplateFromSections(Sections, DomainValue, MethodKind.AUTO_SCOT.value, Markdown)
    Report = ValidateTemplate(Template)
    if not Report.IsValid:
        raise ValidationFailed(Report)

    Logger.info("Generated auto_scot template for %s (%d workflow steps)", DomainValue, len(Template.WorkflowSteps))
    return Template
