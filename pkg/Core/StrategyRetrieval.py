# File: StrategyRetrieval.py
# Path: AIDEV-StrategicCoT/Core/StrategyRetrieval.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Query-strategy generation and tf-idf demonstration matching

"""
Demonstration retrieval.

A strategy-only completion describes how the query task should be solved;
that text is compared against the corpus by tf-idf cosine similarity and
the top-k demonstrations are returned. Scores are summed with math.fsum,
so they do not depend on term iteration order.
"""

import logging
import math
import re
from collections import Counter
from typing import Dict, List, Sequence, Tuple

from Core.PromptEngine import MethodKind, PromptTemplate, Render
from Core.ScotErrors import ConfigError, CorpusEmpty, EmptyStrategy, IndexEmpty, UnsupportedCombination

Logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(r'[^\W_]+')
MATCH_FIELDS = ('strategy', 'question', 'scot_answer')
# Scores equal after rounding to this many decimals are ties; corpus order decides
TIE_DIGITS = 12


def Tokenize(Text: str) -> List[str]:
    """Lowercase alphanumeric runs; digits are kept."""
    return TOKEN_PATTERN.findall((Text or '').lower())


def FieldText(Entry, MatchField: str) -> str:
    if MatchField == 'strategy':
        return Entry.Strategy
    if MatchField == 'question':
        return Entry.Question
    if MatchField == 'scot_answer':
        return Entry.ScotAnswer
    raise ConfigError(f"unknown match field '{MatchField}' (use one of {', '.join(MATCH_FIELDS)})")


def Normalize(Weights: Dict[str, float]) -> Dict[str, float]:
    Norm = math.sqrt(math.fsum(Weight * Weight for Weight in Weights.values()))
    if Norm == 0:
        return {}
    return {Token: Weight / Norm for Token, Weight in Weights.items()}


def Cosine(Left: Dict[str, float], Right: Dict[str, float]) -> float:
    """Dot product of two unit vectors, clamped to [0, 1]."""
    if len(Left) > len(Right):
        Left, Right = Right, Left
    Score = math.fsum(Weight * Right[Token] for Token, Weight in Left.items() if Token in Right)
    return min(1.0, max(0.0, Score))


class StrategyIndex:
    """tf-idf vectors over one text field of the corpus entries."""

    def __init__(self, Entries: Sequence, MatchField: str = 'strategy'):
        """
        Build the index.

        Args:
            Entries: Demonstrations in corpus order
            MatchField: Which demonstration field to index

        Raises:
            CorpusEmpty: no entries
        """
        if not Entries:
            raise CorpusEmpty('cannot index an empty corpus')

        self.Entries = tuple(Entries)
        self.MatchField = MatchField
        Documents = [Tokenize(FieldText(Entry, MatchField)) for Entry in self.Entries]

        Frequencies = Counter()
        for Tokens in Documents:
            Frequencies.update(set(Tokens))

        Count = len(Documents)
        self.Vocabulary: Dict[str, int] = {Token: Index for Index, Token in enumerate(sorted(Frequencies))}
        self.Idf: Dict[str, float] = {
            Token: math.log((1 + Count) / (1 + Frequency)) + 1 for Token, Frequency in Frequencies.items()
        }
        self.DocVectors: List[Dict[str, float]] = [self.Vectorize(Tokens) for Tokens in Documents]
        self.DocOrder: List[int] = list(range(Count))

    def __len__(self) -> int:
        return len(self.Entries)

    def Vectorize(self, Tokens: Sequence[str]) -> Dict[str, float]:
        """Unit tf-idf vector; tokens outside the vocabulary are dropped."""
        Counts = Counter(Token for Token in Tokens if Token in self.Idf)
        return Normalize({Token: Frequency * self.Idf[Token] for Token, Frequency in Counts.items()})

    def Scores(self, QueryText: str) -> List[float]:
        Query = self.Vectorize(Tokenize(QueryText))
        return [Cosine(Query, Vector) for Vector in self.DocVectors]

    def Rank(self, QueryText: str, K: int) -> List[Tuple[int, float]]:
        """Top-k (position, score) pairs, best first, earlier entries winning ties."""
        Scores = self.Scores(QueryText)
        Ranked = sorted(self.DocOrder, key=lambda Position: (-round(Scores[Position], TIE_DIGITS), Position))
        return [(Position, Scores[Position]) for Position in Ranked[:K]]


class EmbeddingIndex:
    """Cosine ranking over vectors from the embeddings endpoint."""

    def __init__(self, Entries: Sequence, Gateway, MatchField: str = 'strategy'):
        if not Entries:
            raise CorpusEmpty('cannot index an empty corpus')

        self.Entries = tuple(Entries)
        self.MatchField = MatchField
        self.Gateway = Gateway
        Vectors = Gateway.Embed([FieldText(Entry, MatchField) for Entry in self.Entries])
        self.DocVectors = [self._Unit(Vector) for Vector in Vectors]

    def __len__(self) -> int:
        return len(self.Entries)

    @staticmethod
    def _Unit(Vector: Sequence[float]) -> List[float]:
        Norm = math.sqrt(math.fsum(Value * Value for Value in Vector))
        return [Value / Norm for Value in Vector] if Norm else [0.0 for _ in Vector]

    def Rank(self, QueryText: str, K: int) -> List[Tuple[int, float]]:
        Query = self._Unit(self.Gateway.Embed([QueryText])[0])
        Scores = [math.fsum(A * B for A, B in zip(Query, Vector)) for Vector in self.DocVectors]
        Ranked = sorted(range(len(Scores)), key=lambda Position: (-round(Scores[Position], TIE_DIGITS), Position))
        return [(Position, Scores[Position]) for Position in Ranked[:K]]


def BuildIndex(CorpusValue, MatchField: str = 'strategy') -> StrategyIndex:
    Entries = CorpusValue.Entries if hasattr(CorpusValue, 'Entries') else CorpusValue
    return StrategyIndex(Entries, MatchField)


def QueryStrategyCompletion(Task, Gateway, Template: PromptTemplate):
    """The strategy-only completion for a task, with its token usage."""
    if Template.Method != MethodKind.STRATEGY_ONLY.value:
        raise UnsupportedCombination(f"query strategies need a strategy_only template, got {Template.Method}")

    Result = Gateway.Complete(Render(Template, Task), Gateway.DeterministicConfig())
    if not Result.Text.strip():
        raise EmptyStrategy(f"empty strategy for task {Task.Id}")
    return Result


def GenerateQueryStrategy(Task, Gateway, Template: PromptTemplate) -> str:
    """
    Ask the model for a strategy (no answer) for one task.

    Raises:
        EmptyStrategy: the model returned blank text
    """
    return QueryStrategyCompletion(Task, Gateway, Template).Text


def RankDemonstrations(Index, QueryStrategy: str, K: int) -> List[Tuple[object, float]]:
    """
    Top-k demonstrations with their similarity scores.

    Raises:
        IndexEmpty: the index holds no documents
    """
    if K < 1:
        raise ConfigError(f"k must be >= 1, got {K}")
    if len(Index) == 0:
        raise IndexEmpty('demonstration index is empty')
    if len(Index) < K:
        Logger.warning("Corpus has %d demonstrations, fewer than k=%d; returning all", len(Index), K)

    return [(Index.Entries[Position], Score) for Position, Score in Index.Rank(QueryStrategy, K)]


def MatchDemonstrations(Index, QueryStrategy: str, K: int) -> List:
    """Top-k demonstrations, most similar first."""
    return [Entry for Entry, _ in RankDemonstrations(Index, QueryStrategy, K)]
