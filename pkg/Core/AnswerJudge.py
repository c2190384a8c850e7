# File: AnswerJudge.py
# Path: AIDEV-StrategicCoT/Core/AnswerJudge.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17 10:10AM
# Description: Answer extraction and exact-match scoring

"""
Answer extraction and scoring.

This module pulls the predicted answer out of raw model text and scores it
against a task's gold answer. Multiple-choice tasks compare letters;
numeric tasks compare canonical number strings. There is no partial credit
and no numeric tolerance.
"""

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Optional, Sequence, Tuple

from Core.ScotErrors import KindMismatch, NotANumber

CURRENCY_SYMBOLS = '$€£¥₹'

# Letter declarations: "answer is (B)", "Answer: d", "final answer: option C"
CHOICE_DECLARATION = re.compile(
    r'answer(?:\s+is)?\s*[:：]?\s*(?:option\s+|choice\s+)?'
    r'(?P<Open>\()?\s*(?P<Letter>[A-Za-z])\s*(?P<Close>\))?(?![A-Za-z0-9])',
    re.IGNORECASE,
)
CHOICE_BOXED = re.compile(r'\\boxed\{\s*\(?\s*(?P<Letter>[A-Za-z])\s*\)?\s*\}')
CHOICE_TOKEN = re.compile(r'(?<![A-Za-z0-9])(?:\((?P<Paren>[A-Za-z])\)|(?P<Bare>[A-Z]))(?![A-Za-z0-9])')

NUMBER_PATTERN = r'-?(?:[' + CURRENCY_SYMBOLS + r']\s?)?(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?'
NUMBER_TOKEN = re.compile(r'(?<![\w.])' + NUMBER_PATTERN)
NUMERIC_DECLARATION = re.compile(
    r'(?:answer(?:\s+is)?\s*[:：]?|####)\s*[' + CURRENCY_SYMBOLS + r']?\s*(?P<Number>' + NUMBER_PATTERN + r')',
    re.IGNORECASE,
)
NUMERIC_BOXED = re.compile(r'\\boxed\{\s*(?P<Number>' + NUMBER_PATTERN + r')\s*\}')


class RuleFired(str, Enum):
    """Which extraction rule produced the prediction."""

    FINAL_ANSWER_PATTERN = 'final_answer_pattern'
    LAST_CHOICE_MENTION = 'last_choice_mention'
    LAST_NUMBER = 'last_number'
    NONE = 'none'


@dataclass(frozen=True)
class Extraction:
    """Predicted answer pulled from one model output."""

    RawText: str
    Predicted: Optional[str]
    RuleFired: RuleFired
    Kind: str

    def ToDict(self) -> dict:
        return {'predicted': self.Predicted, 'rule_fired': self.RuleFired.value}


def NormalizeNumeric(Text: str) -> str:
    """
    Canonicalize a numeric string for exact matching.

    Strips commas, currency symbols and surrounding whitespace, drops a
    leading '+', keeps '-', and removes trailing fractional zeros.

    Args:
        Text: String containing a number

    Returns:
        str: Canonical form ("72.0" -> "72", "1,234" -> "1234")

    Raises:
        NotANumber: when no number can be parsed
    """
    if Text is None:
        raise NotANumber('None is not a number')

    Cleaned = Text.strip()
    for Symbol in CURRENCY_SYMBOLS:
        Cleaned = Cleaned.replace(Symbol, '')
    Cleaned = Cleaned.replace(',', '').replace(' ', '')
    if Cleaned.startswith('+'):
        Cleaned = Cleaned[1:]
    Cleaned = Cleaned.rstrip('.')

    if not re.fullmatch(r'-?(?:\d+(?:\.\d*)?|\.\d+)', Cleaned):
        raise NotANumber(f"not a number: {Text!r}")

    try:
        Value = Decimal(Cleaned)
    except InvalidOperation:
        raise NotANumber(f"not a number: {Text!r}")

    if Value == Value.to_integral_value():
        Canonical = str(int(Value))
    else:
        Canonical = format(Value.normalize(), 'f')

    return '0' if Canonical == '-0' else Canonical


class AnswerJudge:
    """Extracts predictions from model text and scores them."""

    def ExtractChoice(self, Text: str, Choices: Sequence[Tuple[str, str]]) -> Extraction:
        """
        Extract a choice letter.

        Rules in priority order: the last answer declaration naming a valid
        letter, then the last standalone valid letter, else none. A
        lowercase letter counts only when parenthesized or followed by
        punctuation, so "the answer is a bit" does not read as "A".

        Args:
            Text: Raw model output
            Choices: Ordered (letter, text) pairs of the task

        Returns:
            Extraction: predicted letter or None
        """
        if not Choices:
            raise KindMismatch('ExtractChoice requires a non-empty choice list')

        Text = Text or ''
        Letters = {Letter.upper() for Letter, _ in Choices}

        Declared = None
        for Match in CHOICE_DECLARATION.finditer(Text):
            Letter = Match.group('Letter')
            if Letter.upper() not in Letters:
                continue
            if Letter.islower() and not Match.group('Open'):
                Tail = Text[Match.end():Match.end() + 1]
                if Tail and Tail not in '.,;:!?)\n':
                    continue
            Declared = (Match.start(), Letter.upper())
        for Match in CHOICE_BOXED.finditer(Text):
            Letter = Match.group('Letter').upper()
            if Letter in Letters and (Declared is None or Match.start() > Declared[0]):
                Declared = (Match.start(), Letter)

        if Declared is not None:
            return Extraction(Text, Declared[1], RuleFired.FINAL_ANSWER_PATTERN, 'mcq')

        LastMention = None
        for Match in CHOICE_TOKEN.finditer(Text):
            Letter = (Match.group('Paren') or Match.group('Bare')).upper()
            if Letter in Letters:
                LastMention = Letter

        if LastMention is not None:
            return Extraction(Text, LastMention, RuleFired.LAST_CHOICE_MENTION, 'mcq')

        return Extraction(Text, None, RuleFired.NONE, 'mcq')

    def ExtractNumeric(self, Text: str) -> Extraction:
        """
        Extract a numeric answer.

        Prefers the number in the last answer declaration ("The answer is
        72", "Answer: 8", "#### 8", boxed); otherwise the last number in
        the text. The result is canonicalized.
        """
        Text = Text or ''

        Declared = None
        for Pattern in (NUMERIC_DECLARATION, NUMERIC_BOXED):
            for Match in Pattern.finditer(Text):
                if Declared is None or Match.start() > Declared[0]:
                    Declared = (Match.start(), Match.group('Number'))

        if Declared is not None:
            return Extraction(Text, NormalizeNumeric(Declared[1]), RuleFired.FINAL_ANSWER_PATTERN, 'numeric')

        Numbers = NUMBER_TOKEN.findall(Text)
        if Numbers:
            return Extraction(Text, NormalizeNumeric(Numbers[-1]), RuleFired.LAST_NUMBER, 'numeric')

        return Extraction(Text, None, RuleFired.NONE, 'numeric')

    def Extract(self, Text: str, Task) -> Extraction:
        """Dispatch on the task kind."""
        if Task.Kind == 'mcq':
            return self.ExtractChoice(Text, Task.Choices)
        return self.ExtractNumeric(Text)

    def NormalizeNumeric(self, Text: str) -> str:
        return NormalizeNumeric(Text)

    def IsCorrect(self, Result: Extraction, Task) -> bool:
        """
        Score an extraction against the task gold.

        Raises:
            KindMismatch: extraction mode differs from the task kind
        """
        if Result.Kind != Task.Kind:
            raise KindMismatch(f"{Result.Kind} extraction scored against {Task.Kind} task {Task.Id}")

        if Result.Predicted is None:
            return False

        if Task.Kind == 'mcq':
            return Result.Predicted.upper() == Task.Gold.upper()

        try:
            return NormalizeNumeric(Result.Predicted) == NormalizeNumeric(Task.Gold)
        except NotANumber:
            return False

    def IsPredictionCorrect(self, Predicted: Optional[str], Task) -> bool:
        """Score a bare predicted string (used for voted answers)."""
        Rule = RuleFired.NONE if Predicted is None else RuleFired.FINAL_ANSWER_PATTERN
        return self.IsCorrect(Extraction('', Predicted, Rule, Task.Kind), Task)
