# File: LlmGateway.py
# Path: AIDEV-StrategicCoT/Core/LlmGateway.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Chat-completions client with retries, bounded concurrency and caching

"""
Chat-completions gateway.

LlmGateway sends rendered prompts to a backend (an HTTP endpoint or a
scripted transcript), retries transient failures with exponential backoff,
bounds the number of requests in flight and caches every completion under
a digest of its request envelope.
"""

import copy
import json
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence, Union

import requests
from tenacity import RetryCallState, Retrying, retry_if_exception_type, stop_after_attempt, wait_exponential

from Core.ScotErrors import BackendError, BackendUnreachable, ConfigError, InvalidSamplingConfig, TransientBackendError
from Core.TranscriptBackend import TranscriptBackend
from Utils.FileUtils import CanonicalJson, Sha256Hex
from Utils.ResponseCache import ResponseCache

Logger = logging.getLogger(__name__)

DEFAULT_MAX_TOKENS = 1024
DEFAULT_SC_SAMPLES = 20
MAX_SC_SAMPLES = 40
FINISH_REASONS = ('stop', 'length')


@dataclass(frozen=True)
class SamplingConfig:
    """Sampling parameters of one request."""

    Model: str
    Temperature: float = 0.0
    TopP: float = 1.0
    N: int = 1
    MaxTokens: int = DEFAULT_MAX_TOKENS

    def Validate(self) -> 'SamplingConfig':
        if self.Temperature < 0:
            raise InvalidSamplingConfig(f"temperature must be >= 0, got {self.Temperature}")
        if not 0 < self.TopP <= 1:
            raise InvalidSamplingConfig(f"top_p must be in (0, 1], got {self.TopP}")
        if self.N < 1:
            raise InvalidSamplingConfig(f"n must be >= 1, got {self.N}")
        if self.MaxTokens < 1:
            raise InvalidSamplingConfig(f"max_tokens must be >= 1, got {self.MaxTokens}")
        return self

    @classmethod
    def Deterministic(cls, Model: str, MaxTokens: int = DEFAULT_MAX_TOKENS) -> 'SamplingConfig':
        return cls(Model, 0.0, 1.0, 1, MaxTokens)

    @classmethod
    def SelfConsistency(cls, Model: str, N: int = DEFAULT_SC_SAMPLES, MaxTokens: int = DEFAULT_MAX_TOKENS) -> 'SamplingConfig':
        if not 1 <= N <= MAX_SC_SAMPLES:
            raise InvalidSamplingConfig(f"self-consistency samples must be in 1..{MAX_SC_SAMPLES}, got {N}")
        return cls(Model, 0.5, 0.5, N, MaxTokens)


@dataclass(frozen=True)
class Completion:
    """One model response with its token usage."""

    Text: str
    PromptTokens: int
    CompletionTokens: int
    FinishReason: str
    FromCache: bool = False

    def ToPayload(self) -> Dict[str, Any]:
        return {
            'text': self.Text,
            'prompt_tokens': self.PromptTokens,
            'completion_tokens': self.CompletionTokens,
            'finish_reason': self.FinishReason,
        }

    @classmethod
    def FromPayload(cls, Payload: Dict[str, Any], FromCache: bool = False) -> 'Completion':
        return cls(
            Text=Payload['text'],
            PromptTokens=int(Payload['prompt_tokens']),
            CompletionTokens=int(Payload['completion_tokens']),
            FinishReason=Payload['finish_reason'],
            FromCache=FromCache,
        )


@dataclass
class GatewayStats:
    Calls: int = 0
    Retries: int = 0
    CacheHits: int = 0


def PromptText(Prompt) -> str:
    return getattr(Prompt, 'Text', Prompt)


def BuildRequest(Text: str, Config: SamplingConfig, SampleIndex: int = 0, RunSeed: int = 0) -> Dict[str, Any]:
    """Request envelope: the wire body plus the cache-only fields."""
    return {
        'model': Config.Model,
        'messages': [{'role': 'user', 'content': Text}],
        'temperature': Config.Temperature,
        'top_p': Config.TopP,
        'n': 1,
        'max_tokens': Config.MaxTokens,
        'samples': Config.N,
        'sample_index': SampleIndex,
        'run_seed': RunSeed,
    }


def WireBody(Request: Dict[str, Any]) -> Dict[str, Any]:
    return {Key: Request[Key] for Key in ('model', 'messages', 'temperature', 'top_p', 'n', 'max_tokens')}


def CacheKey(Request: Union[str, Dict[str, Any]]) -> str:
    """
    Digest of a request envelope.

    The envelope is reduced to model, messages, temperature, top_p, n,
    max_tokens, samples, sample_index and run_seed, numbers are coerced to one
    type, and the result is hashed as sorted-key compact JSON. Field order
    and whitespace in the envelope do not affect the key.

    Args:
        Request: Envelope as a dict or as JSON text

    Returns:
        str: SHA-256 hex digest
    """
    if isinstance(Request, str):
        Request = json.loads(Request)

    Canonical = {
        'model': str(Request['model']),
        'messages': [{'role': str(Message['role']), 'content': str(Message['content'])} for Message in Request['messages']],
        'temperature': float(Request.get('temperature', 0.0)),
        'top_p': float(Request.get('top_p', 1.0)),
        'n': int(Request.get('n', 1)),
        'max_tokens': int(Request.get('max_tokens', DEFAULT_MAX_TOKENS)),
        'samples': int(Request.get('samples', 1)),
        'sample_index': int(Request.get('sample_index', 0)),
        'run_seed': int(Request.get('run_seed', 0)),
    }
    return Sha256Hex(CanonicalJson(Canonical))


def ParseResponse(Response: Dict[str, Any]) -> Completion:
    """Read text, finish reason and usage from a chat-completions response."""
    try:
        Choice = Response['choices'][0]
        Text = Choice['message']['content'] or ''
    except (KeyError, IndexError, TypeError):
        raise BackendError(200, 'response has no choices[0].message.content')

    Usage = Response.get('usage') or {}
    Reason = Choice.get('finish_reason')
    return Completion(
        Text=Text,
        PromptTokens=int(Usage.get('prompt_tokens') or 0),
        CompletionTokens=int(Usage.get('completion_tokens') or 0),
        FinishReason=Reason if Reason in FINISH_REASONS else 'other',
    )


class HttpBackend:
    """OpenAI-compatible HTTP endpoint."""

    def __init__(self, BaseUrl: str, ApiKey: Optional[str] = None, TimeoutSeconds: float = 120):
        """
        Initialize HttpBackend.

        Args:
            BaseUrl: Server root, with or without a trailing /v1
            ApiKey: Bearer token (optional)
            TimeoutSeconds: Per-request timeout
        """
        Root = BaseUrl.rstrip('/')
        self.BaseUrl = Root[:-3] if Root.endswith('/v1') else Root
        self.ApiKey = ApiKey
        self.TimeoutSeconds = TimeoutSeconds

    def Headers(self) -> Dict[str, str]:
        Headers = {'Content-Type': 'application/json'}
        if self.ApiKey:
            Headers['Authorization'] = f"Bearer {self.ApiKey}"
        return Headers

    def _Post(self, Path: str, Body: Dict[str, Any]) -> Dict[str, Any]:
        Url = f"{self.BaseUrl}/v1/{Path}"
        try:
            Response = requests.post(Url, json=Body, headers=self.Headers(), timeout=self.TimeoutSeconds)
        except (requests.ConnectionError, requests.Timeout) as E:
            raise TransientBackendError(f"{Url}: {E}")

        if Response.status_code == 429 or Response.status_code >= 500:
            raise TransientBackendError(f"{Url} returned {Response.status_code}", Response.status_code)
        if Response.status_code != 200:
            raise BackendError(Response.status_code, Response.text[:200])

        try:
            return Response.json()
        except ValueError:
            raise BackendError(Response.status_code, 'response body is not JSON')

    def Send(self, Body: Dict[str, Any], SampleIndex: int = 0, Ordinal: Optional[int] = None) -> Dict[str, Any]:
        return self._Post('chat/completions', Body)

    def Embed(self, Model: str, Inputs: Sequence[str]) -> List[List[float]]:
        """Embedding vectors for the inputs, in input order."""
        Response = self._Post('embeddings', {'model': Model, 'input': list(Inputs)})
        try:
            Data = sorted(Response['data'], key=lambda Item: Item['index'])
            return [list(Item['embedding']) for Item in Data]
        except (KeyError, TypeError):
            raise BackendError(200, 'response has no data[].embedding')


def CreateBackend(Spec: str, ApiKey: Optional[str] = None, TimeoutSeconds: float = 120):
    """'mock:<transcript.jsonl>' selects the transcript backend, anything else is a URL."""
    if not Spec:
        raise ConfigError('no backend configured (set backend.base_url, SCOT_BASE_URL or --backend)')
    if Spec.startswith('mock:'):
        return TranscriptBackend.FromFile(Spec[len('mock:'):])
    return HttpBackend(Spec, ApiKey, TimeoutSeconds)


class LlmGateway:
    """Cached, retrying, concurrency-bounded access to one backend."""

    def __init__(self, Backend, Cache: Optional[ResponseCache] = None, Model: str = 'mock-model',
                 MaxInFlight: int = 4, MaxRetries: int = 3, BackoffSeconds: float = 1.0,
                 MaxTokens: int = DEFAULT_MAX_TOKENS, RunSeed: int = 0, EmbeddingModel: Optional[str] = None):
        """
        Initialize LlmGateway.

        Args:
            Backend: Object with Send(Body, SampleIndex, Ordinal) returning a response dict
            Cache: Completion cache; an in-memory cache when omitted
            Model: Model name sent with every request
            MaxInFlight: Upper bound on concurrent backend requests
            MaxRetries: Retries after the first attempt for transient failures
            BackoffSeconds: Exponential backoff multiplier
            MaxTokens: Default completion limit
            RunSeed: Mixed into cache keys to separate repeated runs
            EmbeddingModel: Model for Embed()
        """
        if MaxInFlight < 1:
            raise ConfigError('backend.max_in_flight must be >= 1')

        self.Backend = Backend
        self.Cache = Cache if Cache is not None else ResponseCache()
        self.Model = Model
        self.MaxInFlight = MaxInFlight
        self.MaxRetries = MaxRetries
        self.BackoffSeconds = BackoffSeconds
        self.MaxTokens = MaxTokens
        self.RunSeed = RunSeed
        self.EmbeddingModel = EmbeddingModel
        self.Stats = GatewayStats()
        self.Slots = threading.BoundedSemaphore(MaxInFlight)
        self.StatsLock = threading.Lock()
        self.Ordinals: Dict[str, int] = {}

    @classmethod
    def FromConfig(cls, ConfigManager, BackendSpec: Optional[str] = None) -> 'LlmGateway':
        """Build a gateway from configuration; BackendSpec overrides backend.base_url."""
        Spec = BackendSpec or ConfigManager.Get('backend.base_url')
        Backend = CreateBackend(Spec, ConfigManager.GetApiKey(), ConfigManager.GetFloat('backend.timeout_seconds'))
        return cls(
            Backend,
            Cache=ResponseCache(ConfigManager.Get('paths.cache_dir')),
            Model=ConfigManager.Get('backend.model'),
            MaxInFlight=ConfigManager.GetInt('backend.max_in_flight'),
            MaxRetries=ConfigManager.GetInt('backend.max_retries'),
            BackoffSeconds=ConfigManager.GetFloat('backend.backoff_seconds'),
            MaxTokens=ConfigManager.GetInt('backend.max_tokens'),
            EmbeddingModel=ConfigManager.Get('backend.embedding_model'),
        )

    def ForRun(self, RunSeed: int) -> 'LlmGateway':
        """Same backend, cache, bound and counters; different run seed."""
        Clone = copy.copy(self)
        Clone.RunSeed = RunSeed
        return Clone

    def DeterministicConfig(self) -> SamplingConfig:
        return SamplingConfig.Deterministic(self.Model, self.MaxTokens)

    def SelfConsistencyConfig(self, N: int = DEFAULT_SC_SAMPLES) -> SamplingConfig:
        return SamplingConfig.SelfConsistency(self.Model, N, self.MaxTokens)

    def _Count(self, Field: str) -> None:
        with self.StatsLock:
            setattr(self.Stats, Field, getattr(self.Stats, Field) + 1)

    def _OnRetry(self, State: RetryCallState) -> None:
        self._Count('Retries')
        Logger.warning(
            "Transient backend failure on attempt %d: %s",
            State.attempt_number, State.outcome.exception() if State.outcome else 'unknown',
        )

    def _Reserve(self, Text: str, Count: int) -> int:
        """First of Count consecutive ordinals for a prompt text."""
        Digest = Sha256Hex(Text)
        with self.StatsLock:
            First = self.Ordinals.get(Digest, 0)
            self.Ordinals[Digest] = First + Count
        return First

    def _Attempt(self, Body: Dict[str, Any], SampleIndex: int, Ordinal: int) -> Dict[str, Any]:
        with self.Slots:
            self._Count('Calls')
            return self.Backend.Send(Body, SampleIndex, Ordinal)

    def _Retryer(self) -> Retrying:
        return Retrying(
            stop=stop_after_attempt(self.MaxRetries + 1),
            wait=wait_exponential(multiplier=self.BackoffSeconds),
            retry=retry_if_exception_type(TransientBackendError),
            before_sleep=self._OnRetry,
            reraise=True,
        )

    def _SendWithRetries(self, Body: Dict[str, Any], SampleIndex: int, Ordinal: int) -> Dict[str, Any]:
        try:
            return self._Retryer()(self._Attempt, Body, SampleIndex, Ordinal)
        except TransientBackendError as E:
            raise BackendUnreachable(f"backend unreachable after {self.MaxRetries + 1} attempts: {E}")

    def Complete(self, Prompt, Config: Optional[SamplingConfig] = None, SampleIndex: int = 0,
                 Ordinal: Optional[int] = None) -> Completion:
        """
        One completion for a prompt.

        Args:
            Prompt: RenderedPrompt or plain text
            Config: Sampling parameters; the deterministic preset by default
            SampleIndex: Sample number, part of the cache key
            Ordinal: Position among the requests for this prompt text; reserved on
                the calling thread when omitted

        Returns:
            Completion: From the cache when the same request was made before

        Raises:
            BackendUnreachable: transient failures outlasted the retries
            BackendError: non-retryable error status
        """
        Config = (Config or self.DeterministicConfig()).Validate()
        Text = PromptText(Prompt)
        if Ordinal is None:
            Ordinal = self._Reserve(Text, 1)
        Request = BuildRequest(Text, Config, SampleIndex, self.RunSeed)
        Key = CacheKey(Request)

        Cached = self.Cache.Load(Key)
        if Cached is not None:
            self._Count('CacheHits')
            Logger.debug("Cache hit %s", Key[:12])
            return Completion.FromPayload(Cached, FromCache=True)

        Result = ParseResponse(self._SendWithRetries(WireBody(Request), SampleIndex, Ordinal))
        if Result.FinishReason == 'length':
            Logger.info("Completion %s truncated at max_tokens=%d", Key[:12], Config.MaxTokens)

        self.Cache.Store(Key, Result.ToPayload())
        return Result

    def CompleteN(self, Prompt, Config: SamplingConfig) -> List[Completion]:
        """
        N independent samples for one prompt, ordered by sample index.

        Each sample is its own request and cache entry. Ordinals are reserved
        before the samples fan out, so sample i always carries the i-th one.
        If any sample fails after retries the whole call fails.
        """
        Config = Config.Validate()
        if Config.N == 1:
            return [self.Complete(Prompt, Config, 0)]

        First = self._Reserve(PromptText(Prompt), Config.N)
        with ThreadPoolExecutor(max_workers=min(Config.N, self.MaxInFlight)) as Pool:
            Futures = [Pool.submit(self.Complete, Prompt, Config, Index, First + Index) for Index in range(Config.N)]
        return [Future.result() for Future in Futures]

    def Embed(self, Inputs: Sequence[str]) -> List[List[float]]:
        """Embeddings through the backend's embeddings endpoint."""
        if not hasattr(self.Backend, 'Embed'):
            raise ConfigError('backend has no embeddings endpoint')
        if not self.EmbeddingModel:
            raise ConfigError('backend.embedding_model is not set')

        try:
            with self.Slots:
                return self._Retryer()(self.Backend.Embed, self.EmbeddingModel, list(Inputs))
        except TransientBackendError as E:
            raise BackendUnreachable(f"embeddings unreachable after {self.MaxRetries + 1} attempts: {E}")

    def StatsDict(self) -> Dict[str, int]:
        return asdict(self.Stats)
