# File: test_template_parser.py
# Path: AIDEV-StrategicCoT/Tests/Unit/test_template_parser.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  6:50PM
# Description: Tests for the sectioned template file parser

"""
Tests for Utils.TemplateParser.
"""

import os
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from Core.ScotErrors import TemplateFormatError
from Utils.TemplateParser import TemplateParser, TemplateSections


class TestTemplateParser(unittest.TestCase):
    """Test cases for TemplateParser utility."""

    def setUp(self):
        """Set up test environment."""
        self.Parser = TemplateParser()

        self.SampleTemplate = """
        role: You are an expert
          in mathematics.
        workflow:
          1. List candidate methods.
          2) Select one
             as the strategy.
          3. Apply it.
        rules:
          - Be correct.
          * Be brief.
        initialization: Begin.
        task_slot: {{question}}
        """

    def test_parse_sections(self):
        Sections = self.Parser.ParseText(self.SampleTemplate)

        self.assertEqual(Sections.Role, 'You are an expert in mathematics.')
        self.assertEqual(Sections.Workflow, ['List candidate methods.', 'Select one as the strategy.', 'Apply it.'])
        self.assertEqual(Sections.Rules, ['Be correct.', 'Be brief.'])
        self.assertEqual(Sections.Initialization, 'Begin.')
        self.assertEqual(Sections.TaskSlot, '{{question}}')
        self.assertIsNone(Sections.DemoSlot)
        self.assertEqual(Sections.Present, {'role', 'workflow', 'rules', 'initialization', 'task_slot'})

    def test_format_reads_back(self):
        Sections = self.Parser.ParseText(self.SampleTemplate)
        Text = self.Parser.FormatText(Sections)

        self.assertTrue(Text.startswith('role: You are an expert in mathematics.\nworkflow:\n  1. List candidate methods.\n'))
        self.assertTrue(Text.endswith('task_slot: {{question}}\n'))
        Again = self.Parser.ParseText(Text)
        self.assertEqual((Again.Role, Again.Workflow, Again.Rules), (Sections.Role, Sections.Workflow, Sections.Rules))

    def test_format_omits_empty_workflow(self):
        Text = self.Parser.FormatText(TemplateSections(Role='r', Rules=['x'], Initialization='i'))
        self.assertNotIn('workflow:', Text)
        self.assertNotIn('task_slot:', Text)

    def test_text_outside_section(self):
        with self.assertRaises(TemplateFormatError) as Context:
            self.Parser.ParseText('Here is your template:\nrole: x')
        self.assertIn('line 1', str(Context.exception))

    def test_duplicate_section(self):
        with self.assertRaises(TemplateFormatError):
            self.Parser.ParseText('role: a\nrole: b')

    def test_list_section_needs_item(self):
        with self.assertRaises(TemplateFormatError):
            self.Parser.ParseText('workflow:\n  first do this')

    def test_strip_fences(self):
        Text = self.Parser.StripFences('```text\nrole: a\n```')
        self.assertEqual(Text, 'role: a')

    def test_parse_missing_file(self):
        with self.assertRaises(TemplateFormatError):
            self.Parser.ParseFile('/nonexistent/template.txt')


if __name__ == '__main__':
    unittest.main()
