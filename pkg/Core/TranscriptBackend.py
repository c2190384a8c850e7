# File: TranscriptBackend.py
# Path: AIDEV-StrategicCoT/Core/TranscriptBackend.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Scripted chat-completions backend replaying a JSONL transcript

"""
Deterministic mock backend.

A transcript is a JSONL file; each line scripts one response:

    {"match": "contains:Natalia", "response": "...", "usage": {...}}

'match' selects the requests an entry answers: an integer ordinal, a
64-character SHA-256 hex digest of the prompt text, 'contains:<text>' or
'*'. The ordinal of a request counts the earlier requests for the same
prompt text. LlmGateway reserves ordinals when it submits requests, so
concurrent samples still see them in submission order; direct Send calls
without an ordinal are numbered on arrival. Entries are
tried in file order. Entries that share the winning match value form a
group; sample i of a request gets entry i mod len(group), unless entries
carry an explicit 'sample' index. 'fail_times' makes an entry raise a
transient error that many times before answering.
"""

import json
import logging
import re
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from Core.ScotErrors import BackendError, ConfigError, TransientBackendError
from Utils.FileUtils import Sha256Hex

Logger = logging.getLogger(__name__)

DIGEST_PATTERN = re.compile(r'^[0-9a-f]{64}$')


@dataclass
class TranscriptEntry:
    Match: Union[int, str]
    Response: str
    PromptTokens: int = 0
    CompletionTokens: int = 0
    FinishReason: str = 'stop'
    FailTimes: int = 0
    FailStatus: int = 503
    Sample: Optional[int] = None

    def Matches(self, PromptText: str, Digest: str, Ordinal: int) -> bool:
        if isinstance(self.Match, int):
            return self.Match == Ordinal
        if self.Match == '*':
            return True
        if self.Match.startswith('contains:'):
            return self.Match[len('contains:'):] in PromptText
        return self.Match == Digest


def ParseEntry(Row: Dict[str, Any], LineNo: int) -> TranscriptEntry:
    if not isinstance(Row, dict) or 'match' not in Row or 'response' not in Row:
        raise ConfigError(f"transcript line {LineNo}: needs 'match' and 'response'")

    Match = Row['match']
    if isinstance(Match, bool) or not isinstance(Match, (int, str)):
        raise ConfigError(f"transcript line {LineNo}: bad match value {Match!r}")
    if isinstance(Match, str):
        if Match.isdigit():
            Match = int(Match)
        elif DIGEST_PATTERN.match(Match.lower()):
            Match = Match.lower()
        elif Match != '*' and not Match.startswith('contains:'):
            raise ConfigError(f"transcript line {LineNo}: bad match value {Match!r}")

    Usage = Row.get('usage') or {}
    return TranscriptEntry(
        Match=Match,
        Response=str(Row['response']),
        PromptTokens=int(Usage.get('prompt_tokens', 0)),
        CompletionTokens=int(Usage.get('completion_tokens', 0)),
        FinishReason=str(Row.get('finish_reason', 'stop')),
        FailTimes=int(Row.get('fail_times', 0)),
        FailStatus=int(Row.get('fail_status', 503)),
        Sample=Row.get('sample'),
    )


class TranscriptBackend:
    """Replays scripted responses and records every request it sees."""

    def __init__(self, Entries: Sequence[TranscriptEntry], Delay: float = 0.0):
        self.Entries: List[TranscriptEntry] = list(Entries)
        self.Remaining = [Entry.FailTimes for Entry in self.Entries]
        self.Delay = Delay
        self.Lock = threading.Lock()

        self.CallCount = 0
        self.Served: Dict[str, int] = {}
        self.Requests: List[Dict[str, Any]] = []
        self.InFlight = 0
        self.PeakInFlight = 0

    @classmethod
    def FromFile(cls, FilePath: Union[str, Path], Delay: float = 0.0) -> 'TranscriptBackend':
        FilePath = Path(FilePath)
        if not FilePath.exists():
            raise ConfigError(f"transcript not found: {FilePath}")

        Entries = []
        with open(FilePath, 'r', encoding='utf-8') as File:
            for LineNo, Line in enumerate(File, start=1):
                if not Line.strip():
                    continue
                try:
                    Row = json.loads(Line)
                except json.JSONDecodeError as E:
                    raise ConfigError(f"transcript line {LineNo}: invalid JSON ({E.msg})")
                Entries.append(ParseEntry(Row, LineNo))

        Logger.info("Loaded %d transcript entries from %s", len(Entries), FilePath)
        return cls(Entries, Delay)

    @classmethod
    def FromRows(cls, Rows: Sequence[Dict[str, Any]], Delay: float = 0.0) -> 'TranscriptBackend':
        return cls([ParseEntry(Row, Index) for Index, Row in enumerate(Rows, start=1)], Delay)

    def _Select(self, PromptText: str, Digest: str, SampleIndex: int, Ordinal: int) -> int:
        Winner = next(
            (Entry.Match for Entry in self.Entries if Entry.Matches(PromptText, Digest, Ordinal)),
            None,
        )
        if Winner is None:
            raise BackendError(404, f"no transcript entry matches prompt {Digest[:12]}")

        Group = [Index for Index, Entry in enumerate(self.Entries) if Entry.Match == Winner]
        Explicit = [Index for Index in Group if self.Entries[Index].Sample == SampleIndex]
        if Explicit:
            return Explicit[0]
        return Group[SampleIndex % len(Group)]

    def Send(self, Body: Dict[str, Any], SampleIndex: int = 0, Ordinal: Optional[int] = None) -> Dict[str, Any]:
        """Answer one chat-completions request body."""
        PromptText = '\n'.join(Message.get('content', '') for Message in Body.get('messages', []))
        Digest = Sha256Hex(PromptText)

        with self.Lock:
            self.CallCount += 1
            self.Requests.append(Body)
            self.InFlight += 1
            self.PeakInFlight = max(self.PeakInFlight, self.InFlight)

        try:
            if self.Delay:
                time.sleep(self.Delay)

            with self.Lock:
                Position = self.Served.get(Digest, 0) if Ordinal is None else Ordinal
                Index = self._Select(PromptText, Digest, SampleIndex, Position)
                if self.Remaining[Index] > 0:
                    self.Remaining[Index] -= 1
                    Status = self.Entries[Index].FailStatus
                    raise TransientBackendError(f"scripted failure ({Status})", Status)
                if Ordinal is None:
                    self.Served[Digest] = Position + 1

            Entry = self.Entries[Index]
            return {
                'model': Body.get('model'),
                'choices': [{
                    'index': 0,
                    'message': {'role': 'assistant', 'content': Entry.Response},
                    'finish_reason': Entry.FinishReason,
                }],
                'usage': {
                    'prompt_tokens': Entry.PromptTokens,
                    'completion_tokens': Entry.CompletionTokens,
                    'total_tokens': Entry.PromptTokens + Entry.CompletionTokens,
                },
            }
        finally:
            with self.Lock:
                self.InFlight -= 1
