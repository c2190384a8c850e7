# File: test_answer_judge.py
# Path: AIDEV-StrategicCoT/Tests/Unit/test_answer_judge.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  10:40PM
# Description: Tests for answer extraction and exact-match scoring

"""
Tests for Core.AnswerJudge.

Tests/Fixtures/judge_cases.jsonl holds hand-labeled model outputs for all
eight datasets; the judge must agree with every label.
"""

import json
import os
import sys
import unittest
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from Core.AnswerJudge import AnswerJudge, Extraction, NormalizeNumeric, RuleFired
from Core.DatasetHub import DatasetName, LoadSplit, RecordFromDict, TaskRecord
from Core.ScotErrors import KindMismatch, NotANumber

FIXTURE_DIR = Path(__file__).parent.parent / 'Fixtures'


def LoadCases():
    with open(FIXTURE_DIR / 'judge_cases.jsonl', 'r', encoding='utf-8') as File:
        return [json.loads(Line) for Line in File if Line.strip()]


def CaseTask(Case, Index):
    Letters = Case['letters']
    if Letters:
        Choices = tuple((Letter, f"option {Letter}") for Letter in Letters)
        return TaskRecord(f"{Case['dataset']}-{Index}", Case['dataset'], 'math', 'q', Choices, Letters[0], 'mcq')
    return TaskRecord(f"{Case['dataset']}-{Index}", Case['dataset'], 'math', 'q', None, '0', 'numeric')


class TestLabeledOutputs(unittest.TestCase):
    """Regression suite over hand-labeled outputs."""

    def setUp(self):
        self.Judge = AnswerJudge()
        self.Cases = LoadCases()

    def test_fixture_covers_every_dataset(self):
        self.assertGreaterEqual(len(self.Cases), 30)
        self.assertEqual({Case['dataset'] for Case in self.Cases}, {Item.value for Item in DatasetName})

    def test_judge_agrees_with_labels(self):
        for Index, Case in enumerate(self.Cases):
            with self.subTest(index=Index, text=Case['text']):
                Result = self.Judge.Extract(Case['text'], CaseTask(Case, Index))
                self.assertEqual(Result.Predicted, Case['predicted'])
                self.assertEqual(Result.RuleFired.value, Case['rule'])


class TestGoldDeclaration(unittest.TestCase):
    """'The answer is <gold>' must score correct on every fixture task."""

    def setUp(self):
        self.Judge = AnswerJudge()
        self.Tasks = LoadSplit('gsm8k', 'eval', FIXTURE_DIR / 'Datasets' / 'gsm8k_eval.jsonl')
        with open(FIXTURE_DIR / 'render_tasks.jsonl', 'r', encoding='utf-8') as File:
            self.Tasks += [RecordFromDict(json.loads(Line)) for Line in File if Line.strip()]

    def test_self_declaration(self):
        for Task in self.Tasks:
            with self.subTest(task=Task.Id):
                Result = self.Judge.Extract(f"The answer is {Task.Gold}", Task)
                self.assertEqual(Result.RuleFired, RuleFired.FINAL_ANSWER_PATTERN)
                self.assertTrue(self.Judge.IsCorrect(Result, Task))


class TestExtraction(unittest.TestCase):

    def setUp(self):
        self.Judge = AnswerJudge()
        self.Choices = tuple((Letter, Letter.lower()) for Letter in 'ABCDE')

    def test_last_declaration_wins(self):
        Result = self.Judge.ExtractChoice('The answer is A. Wait, recheck: the answer is (C).', self.Choices)
        self.assertEqual(Result.Predicted, 'C')

    def test_boxed_after_declaration(self):
        Result = self.Judge.ExtractChoice('The answer is A.\nOn reflection \\boxed{E}', self.Choices)
        self.assertEqual(Result.Predicted, 'E')

    def test_choice_needs_choices(self):
        with self.assertRaises(KindMismatch):
            self.Judge.ExtractChoice('The answer is A', ())

    def test_numeric_declaration_beats_earlier_numbers(self):
        Result = self.Judge.ExtractNumeric('3 apples, then 5, so 8 apples total. Answer: 8')
        self.assertEqual((Result.Predicted, Result.Kind), ('8', 'numeric'))

    def test_to_dict(self):
        Result = self.Judge.ExtractNumeric('#### 12')
        self.assertEqual(Result.ToDict(), {'predicted': '12', 'rule_fired': 'final_answer_pattern'})


class TestNormalizeNumeric(unittest.TestCase):

    def test_canonical_forms(self):
        Cases = {
            '72.0': '72',
            '-26': '-26',
            '1,234': '1234',
            '+5': '5',
            '$1,234.50': '1234.5',
            ' 0.250 ': '0.25',
            '-0': '0',
            '18.': '18',
        }
        for Text, Expected in Cases.items():
            with self.subTest(text=Text):
                self.assertEqual(NormalizeNumeric(Text), Expected)

    def test_not_a_number(self):
        for Text in ('abc', '', '1.2.3', None):
            with self.subTest(text=Text):
                with self.assertRaises(NotANumber):
                    NormalizeNumeric(Text)


class TestIsCorrect(unittest.TestCase):

    def setUp(self):
        self.Judge = AnswerJudge()
        self.Mcq = TaskRecord('aqua-1', 'aqua', 'math', 'q', (('A', '1'), ('B', '2')), 'B', 'mcq')
        self.Numeric = TaskRecord('gsm8k-1', 'gsm8k', 'math', 'q', None, '72.0', 'numeric')

    def test_letter_match(self):
        Result = Extraction('', 'B', RuleFired.FINAL_ANSWER_PATTERN, 'mcq')
        self.assertTrue(self.Judge.IsCorrect(Result, self.Mcq))

    def test_none_is_incorrect(self):
        Result = Extraction('', None, RuleFired.NONE, 'mcq')
        self.assertFalse(self.Judge.IsCorrect(Result, self.Mcq))
        self.assertFalse(self.Judge.IsPredictionCorrect(None, self.Numeric))

    def test_numeric_after_normalization(self):
        Result = Extraction('', '72', RuleFired.LAST_NUMBER, 'numeric')
        self.assertTrue(self.Judge.IsCorrect(Result, self.Numeric))
        self.assertFalse(self.Judge.IsPredictionCorrect('72.5', self.Numeric))

    def test_kind_mismatch(self):
        Result = Extraction('', '72', RuleFired.LAST_NUMBER, 'numeric')
        with self.assertRaises(KindMismatch):
            self.Judge.IsCorrect(Result, self.Mcq)


@given(st.integers(min_value=-10**12, max_value=10**12), st.sampled_from(['', '.0', '.00', '.']))
def test_grouped_integers_normalize_to_plain(Value, Suffix):
    assert NormalizeNumeric(f"{Value:,}{Suffix}") == str(Value)
    assert NormalizeNumeric(NormalizeNumeric(f"${Value:,}")) == str(Value)


@given(st.text(alphabet='abcxyz!? ', min_size=1))
def test_text_without_digits_is_not_a_number(Text):
    with pytest.raises(NotANumber):
        NormalizeNumeric(Text)


if __name__ == '__main__':
    unittest.main()
