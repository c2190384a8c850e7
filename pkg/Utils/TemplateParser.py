# File: TemplateParser.py
# Path: AIDEV-StrategicCoT/Utils/TemplateParser.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17 11:40AM
# Description: Parser and formatter for sectioned prompt template files

"""
Prompt template file parser.

Template files are UTF-8 text made of named sections:

    role: You are ...
    workflow:
      1. first step
      2. second step
    rules:
      - a rule
    initialization: Begin by ...
    task_slot: {{question}}
    demo_slot: {{demonstrations}}

Section names are exact and lowercase. Leading whitespace, blank lines and
wrapped lines are tolerated; a wrapped line is joined to the item above it
with a single space.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Set, Tuple, Union

from Core.ScotErrors import TemplateFormatError

SECTION_NAMES = ('role', 'workflow', 'rules', 'initialization', 'task_slot', 'demo_slot')
LIST_SECTIONS = ('workflow', 'rules')


@dataclass
class TemplateSections:
    """Raw section contents of one template file."""

    Role: str = ''
    Workflow: List[str] = field(default_factory=list)
    Rules: List[str] = field(default_factory=list)
    Initialization: str = ''
    TaskSlot: Optional[str] = None
    DemoSlot: Optional[str] = None
    Present: Set[str] = field(default_factory=set)


class TemplateParser:
    """Parser for sectioned template text."""

    def __init__(self):
        """Initialize TemplateParser."""
        self.SectionPattern = re.compile(r'^\s*(' + '|'.join(SECTION_NAMES) + r')\s*:\s*(.*?)\s*$')
        self.StepPattern = re.compile(r'^\s*\d+[.)]\s+(.*?)\s*$')
        self.RulePattern = re.compile(r'^\s*[-*]\s+(.*?)\s*$')
        self.FencePattern = re.compile(r'^\s*```')

    def ParseText(self, Content: str) -> TemplateSections:
        """
        Parse template text into its sections.

        Args:
            Content: Template file contents

        Returns:
            TemplateSections: Parsed sections; absent sections stay empty

        Raises:
            TemplateFormatError: text outside a section, a repeated section,
                or a list section whose first line is not a list item
        """
        if not isinstance(Content, str):
            raise TemplateFormatError('template content must be text')

        Sections = TemplateSections()
        Scalars = {'role': [], 'initialization': [], 'task_slot': [], 'demo_slot': []}
        Lists = {'workflow': Sections.Workflow, 'rules': Sections.Rules}
        Current = None

        for LineNo, Line in enumerate(Content.splitlines(), start=1):
            if not Line.strip():
                continue

            Match = self.SectionPattern.match(Line)
            if Match:
                Current = Match.group(1)
                if Current in Sections.Present:
                    raise TemplateFormatError(f"line {LineNo}: duplicate section '{Current}'")
                Sections.Present.add(Current)
                Inline = Match.group(2)
                if Inline:
                    self._AddLine(Current, Inline, Scalars, Lists, LineNo)
                continue

            if Current is None:
                raise TemplateFormatError(f"line {LineNo}: text outside any section")

            self._AddLine(Current, Line.strip(), Scalars, Lists, LineNo)

        Sections.Role = ' '.join(Scalars['role'])
        Sections.Initialization = ' '.join(Scalars['initialization'])
        if 'task_slot' in Sections.Present:
            Sections.TaskSlot = ' '.join(Scalars['task_slot'])
        if 'demo_slot' in Sections.Present:
            Sections.DemoSlot = ' '.join(Scalars['demo_slot'])

        return Sections

    def _AddLine(self, Section, Text, Scalars, Lists, LineNo):
        if Section not in LIST_SECTIONS:
            Scalars[Section].append(Text)
            return

        Items = Lists[Section]
        Pattern = self.StepPattern if Section == 'workflow' else self.RulePattern
        Match = Pattern.match(Text)
        if Match:
            Items.append(Match.group(1))
        elif Items:
            Items[-1] = f"{Items[-1]} {Text}"
        else:
            Kind = 'numbered step' if Section == 'workflow' else "'-' rule"
            raise TemplateFormatError(f"line {LineNo}: expected a {Kind} under '{Section}'")

    def ParseFile(self, FilePath: Union[str, Path]) -> TemplateSections:
        """Read and parse a template file."""
        try:
            Content = Path(FilePath).read_text(encoding='utf-8')
        except OSError as E:
            raise TemplateFormatError(f"cannot read template {FilePath}: {E}")
        return self.ParseText(Content)

    def StripFences(self, Content: str) -> str:
        """Drop markdown code-fence lines, keeping what they enclose."""
        return '\n'.join(Line for Line in Content.splitlines() if not self.FencePattern.match(Line))

    def FormatText(self, Sections: TemplateSections) -> str:
        """
        Format sections back into template file text.

        Args:
            Sections: Sections to write

        Returns:
            str: Template text that ParseText reads back to the same sections
        """
        Lines: List[str] = [f"role: {Sections.Role}"]

        if Sections.Workflow:
            Lines.append('workflow:')
            Lines.extend(f"  {Index}. {Step}" for Index, Step in enumerate(Sections.Workflow, start=1))

        Lines.append('rules:')
        Lines.extend(f"  - {Rule}" for Rule in Sections.Rules)
        Lines.append(f"initialization: {Sections.Initialization}")

        if Sections.TaskSlot is not None:
            Lines.append(f"task_slot: {Sections.TaskSlot}")
        if Sections.DemoSlot is not None:
            Lines.append(f"demo_slot: {Sections.DemoSlot}")

        return '\n'.join(Lines) + '\n'


def SplitSections(Sections: TemplateSections) -> Tuple[str, Tuple[str, ...], Tuple[str, ...], str]:
    """Role, workflow, rules and initialization as immutable values."""
    return Sections.Role, tuple(Sections.Workflow), tuple(Sections.Rules), Sections.Initialization
