# File: test_strategy_retrieval.py
# Path: AIDEV-StrategicCoT/Tests/Unit/test_strategy_retrieval.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Tests for query strategies and tf-idf demonstration matching

"""
Tests for Core.StrategyRetrieval.

Index scores are checked against a direct tf-idf computation over random
corpora.
"""

import math
import os
import random
import sys
import unittest
from collections import Counter
from unittest.mock import MagicMock

from hypothesis import given, strategies as st

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from Core.DatasetHub import TaskRecord
from Core.LlmGateway import LlmGateway
from Core.PromptEngine import BuiltinTemplate
from Core.ScotErrors import ConfigError, CorpusEmpty, EmptyStrategy, IndexEmpty, UnsupportedCombination
from Core.StrategyCorpus import Demonstration
from Core.StrategyRetrieval import (
    TIE_DIGITS,
    BuildIndex,
    EmbeddingIndex,
    GenerateQueryStrategy,
    MatchDemonstrations,
    RankDemonstrations,
    StrategyIndex,
    Tokenize,
)
from Core.TranscriptBackend import TranscriptBackend

WORDS = ['add', 'sum', 'series', 'formula', 'swap', 'track', 'ball', 'force', 'mass', 'gravity', 'count', 'prime', 'x2']


def Demo(Index, Strategy, Question='q'):
    return Demonstration(f"t{Index}", Question, Strategy, f"### Strategy\n{Strategy}\n### Answer\nThe answer is 1", '1', 'm', 'd')


def ReferenceScores(Documents, Query):
    """Plain tf-idf cosine, written out term by term."""
    Count = len(Documents)
    Tokenized = [Tokenize(Text) for Text in Documents]
    DocumentFrequency = Counter()
    for Tokens in Tokenized:
        DocumentFrequency.update(set(Tokens))
    Idf = {Token: math.log((1 + Count) / (1 + Frequency)) + 1 for Token, Frequency in DocumentFrequency.items()}

    def Vector(Tokens):
        Weights = {Token: Frequency * Idf[Token] for Token, Frequency in Counter(Tokens).items() if Token in Idf}
        Norm = math.sqrt(math.fsum(Weight ** 2 for Weight in Weights.values()))
        return {Token: Weight / Norm for Token, Weight in Weights.items()} if Norm else {}

    QueryVector = Vector(Tokenize(Query))
    Scores = []
    for Tokens in Tokenized:
        DocVector = Vector(Tokens)
        Scores.append(min(1.0, math.fsum(Weight * DocVector.get(Token, 0.0) for Token, Weight in QueryVector.items())))
    return Scores


def ReferenceRanking(Scores, K):
    """Positions by descending score, earlier position first on ties."""
    return sorted(range(len(Scores)), key=lambda Position: (-round(Scores[Position], TIE_DIGITS), Position))[:K]


class TestTokenize(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(Tokenize('Arithmetic Series Formula'), ['arithmetic', 'series', 'formula'])
        self.assertEqual(Tokenize('F=ma'), ['f', 'ma'])
        self.assertEqual(Tokenize('x_2 + 10'), ['x', '2', '10'])
        self.assertEqual(Tokenize(''), [])

    @given(st.text(alphabet=st.characters(max_codepoint=0x24F)))
    def test_tokens_are_stable(self, Text):
        Tokens = Tokenize(Text)
        self.assertEqual(Tokenize(' '.join(Tokens)), Tokens)
        self.assertTrue(all(Token and '_' not in Token and ' ' not in Token for Token in Tokens))


class TestStrategyIndex(unittest.TestCase):

    def test_scores_match_reference(self):
        Generator = random.Random(20261017)
        for Round in range(25):
            Size = Generator.randint(1, 50)
            Documents = [' '.join(Generator.choices(WORDS, k=Generator.randint(1, 8))) for _ in range(Size)]
            Query = ' '.join(Generator.choices(WORDS + ['unseen'], k=Generator.randint(1, 6)))
            Index = StrategyIndex([Demo(Position, Text) for Position, Text in enumerate(Documents)])
            Expected = ReferenceScores(Documents, Query)

            with self.subTest(round=Round):
                for Actual, Wanted in zip(Index.Scores(Query), Expected):
                    self.assertAlmostEqual(Actual, Wanted, delta=1e-9)

                for K in (1, 3, 5):
                    Ranked = Index.Rank(Query, K)
                    self.assertEqual([Position for Position, _ in Ranked], ReferenceRanking(Expected, K))
                    for Position, Score in Ranked:
                        self.assertAlmostEqual(Score, Expected[Position], delta=1e-9)

    def test_disjoint_vocabulary_scores_zero(self):
        Index = StrategyIndex([Demo(0, 'apply the arithmetic series formula'), Demo(1, 'track each swap')])
        self.assertEqual(Index.Scores('newton second law'), [0.0, 0.0])

    def test_self_similarity(self):
        Texts = ['use the arithmetic series formula', 'track each swap in order', 'balance the forces on the block']
        Index = StrategyIndex([Demo(Position, Text) for Position, Text in enumerate(Texts)])
        for Position, Text in enumerate(Texts):
            self.assertAlmostEqual(Index.Scores(Text)[Position], 1.0, places=12)

    def test_ties_keep_corpus_order(self):
        Index = StrategyIndex([Demo(0, 'count the swaps'), Demo(1, 'unrelated words'), Demo(2, 'count the swaps')])
        self.assertEqual([Position for Position, _ in Index.Rank('count the swaps', 3)], [0, 2, 1])
        self.assertEqual([Position for Position, _ in Index.Rank('nothing shared', 3)], [0, 1, 2])

    def test_scaled_term_counts_tie(self):
        Index = StrategyIndex([Demo(0, 'swap swap swap count count count'), Demo(1, 'swap count'), Demo(2, 'ball')])
        self.assertEqual([Position for Position, _ in Index.Rank('swap', 3)], [0, 1, 2])

    def test_match_field(self):
        Entries = [Demo(0, 'add numbers', Question='ball swap puzzle'), Demo(1, 'swap balls', Question='arithmetic sum')]
        Index = BuildIndex(Entries, 'question')
        self.assertEqual(MatchDemonstrations(Index, 'arithmetic sum question', 1), [Entries[1]])

        with self.assertRaises(ConfigError):
            StrategyIndex(Entries, 'rationale')

    def test_empty_corpus(self):
        with self.assertRaises(CorpusEmpty):
            StrategyIndex([])


class TestRankDemonstrations(unittest.TestCase):

    def setUp(self):
        self.Entries = [Demo(0, 'apply the arithmetic series formula'), Demo(1, 'track each swap'), Demo(2, 'sum the series')]
        self.Index = StrategyIndex(self.Entries)

    def test_most_similar_first(self):
        Ranked = RankDemonstrations(self.Index, 'arithmetic series formula', 2)
        self.assertEqual([Entry.TaskId for Entry, _ in Ranked], ['t0', 't2'])
        self.assertGreater(Ranked[0][1], Ranked[1][1])

    def test_k_beyond_corpus_returns_all(self):
        with self.assertLogs('Core.StrategyRetrieval', level='WARNING'):
            Matched = MatchDemonstrations(self.Index, 'swap', 5)
        self.assertEqual(len(Matched), 3)
        self.assertEqual(Matched[0].TaskId, 't1')

    def test_invalid_k(self):
        with self.assertRaises(ConfigError):
            MatchDemonstrations(self.Index, 'swap', 0)

    def test_empty_index(self):
        Index = MagicMock()
        Index.__len__.return_value = 0
        with self.assertRaises(IndexEmpty):
            MatchDemonstrations(Index, 'swap', 1)


class TestEmbeddingIndex(unittest.TestCase):

    def test_cosine_ranking(self):
        Vectors = {
            'apply the arithmetic series formula': [1.0, 0.0],
            'track each swap': [0.0, 2.0],
            'sum the series': [0.6, 0.8],
            'query': [3.0, 0.1],
        }
        Gateway = MagicMock()
        Gateway.Embed.side_effect = lambda Inputs: [Vectors[Text] for Text in Inputs]
        Entries = [Demo(0, 'apply the arithmetic series formula'), Demo(1, 'track each swap'), Demo(2, 'sum the series')]

        Index = EmbeddingIndex(Entries, Gateway)
        self.assertEqual([Entry.TaskId for Entry in MatchDemonstrations(Index, 'query', 3)], ['t0', 't2', 't1'])
        self.assertEqual(Gateway.Embed.call_count, 2)


class TestQueryStrategy(unittest.TestCase):

    def setUp(self):
        self.Task = TaskRecord('gsm8k-eval-00000', 'gsm8k', 'math', 'What is 1 + 2 + ... + 100?', None, '5050', 'numeric')
        self.Template = BuiltinTemplate('math', 'strategy_only')

    def Gateway(self, Text):
        return LlmGateway(TranscriptBackend.FromRows([{'match': '*', 'response': Text}]), BackoffSeconds=0)

    def test_returned_verbatim(self):
        Text = '  Use the arithmetic series formula n(n+1)/2.\n'
        self.assertEqual(GenerateQueryStrategy(self.Task, self.Gateway(Text), self.Template), Text)

    def test_blank_strategy(self):
        with self.assertRaises(EmptyStrategy):
            GenerateQueryStrategy(self.Task, self.Gateway('  \n'), self.Template)

    def test_needs_strategy_only_template(self):
        with self.assertRaises(UnsupportedCombination):
            GenerateQueryStrategy(self.Task, self.Gateway('x'), BuiltinTemplate('math', 'scot_zero'))


if __name__ == '__main__':
    unittest.main()
