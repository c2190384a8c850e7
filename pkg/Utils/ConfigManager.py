# File: ConfigManager.py
# Path: AIDEV-StrategicCoT/Utils/ConfigManager.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Configuration management utility

"""
Configuration management utility.

Settings are flat dotted keys ('backend.model', 'run.n_runs'). They are
layered as built-in defaults, then an optional config file, then
environment variables; command-line flags are applied last by the CLI
through ApplyOverrides. Config files use the python-dotenv line grammar
with dots allowed in keys:

    # comment
    backend.model = llama3-8b
    run.methods = cot_zero, scot_zero
"""

import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from dotenv import dotenv_values, load_dotenv

from Core.DatasetHub import SplitPath
from Core.ScotErrors import ConfigError

Logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, str] = {
    'backend.base_url': '',
    'backend.model': 'mock-model',
    'backend.api_key_env': 'SCOT_API_KEY',
    'backend.max_in_flight': '4',
    'backend.max_retries': '3',
    'backend.backoff_seconds': '1.0',
    'backend.timeout_seconds': '120',
    'backend.max_tokens': '1024',
    'backend.embedding_model': '',
    'run.methods': 'cot_zero,scot_zero',
    'run.datasets': 'gsm8k',
    'run.n_runs': '3',
    'run.sc_runs': '1',
    'run.sample_n': '0',
    'run.seed': '0',
    'run.shots': '1',
    'run.sc_samples': '20',
    'run.match_field': 'strategy',
    'run.index': 'tfidf',
    'run.markdown': 'true',
    'run.ablation': 'none',
    'run.format': 'md',
    'run.auto_template': '',
    'paths.cache_dir': '.scot_cache',
    'paths.corpus_dir': 'corpora',
    'paths.out_dir': 'out',
    'paths.data_dir': 'data',
}

ENV_ALIASES = {
    'SCOT_BASE_URL': 'backend.base_url',
    'SCOT_CACHE_DIR': 'paths.cache_dir',
}
ENV_PATTERN = re.compile(r'^SCOT__([A-Za-z0-9]+)__([A-Za-z0-9_]+)$')

TRUE_VALUES = ('1', 'true', 'yes', 'on')
FALSE_VALUES = ('0', 'false', 'no', 'off')


class ConfigManager:
    """Configuration management utility."""

    def __init__(self, ConfigFile=None, Environ: Optional[Mapping[str, str]] = None):
        """
        Initialize configuration manager.

        Args:
            ConfigFile: Optional path to a key = value config file
            Environ: Environment mapping; os.environ after loading .env by default
        """
        self.BasePath = Path(__file__).parent.parent
        self.Config: Dict[str, str] = dict(DEFAULTS)

        if Environ is None:
            EnvPath = self.BasePath / '.env'
            if EnvPath.exists():
                load_dotenv(dotenv_path=EnvPath)
                Logger.debug("Loaded .env from %s", EnvPath)
            else:
                load_dotenv()
            Environ = os.environ
        self.Environ = Environ

        if ConfigFile:
            self.LoadFromFile(ConfigFile)

        self.LoadFromEnvironment(Environ)

    def LoadFromFile(self, FilePath):
        """
        Load settings from a config file.

        Args:
            FilePath: Path to the config file

        Raises:
            ConfigError: the file does not exist or a line has no value
        """
        FilePath = Path(FilePath)
        if not FilePath.exists():
            raise ConfigError(f"config file not found: {FilePath}")

        for Key, Value in dotenv_values(FilePath, interpolate=False).items():
            if Value is None:
                raise ConfigError(f"config key '{Key}' in {FilePath} has no value")
            self.Config[Key.strip().lower()] = Value.strip()

        Logger.info("Loaded configuration from %s", FilePath)

    def LoadFromEnvironment(self, Environ: Mapping[str, str]):
        """Apply SCOT_BASE_URL, SCOT_CACHE_DIR and SCOT__SECTION__KEY variables."""
        for Name, Key in ENV_ALIASES.items():
            if Environ.get(Name):
                self.Config[Key] = Environ[Name]

        for Name, Value in Environ.items():
            Match = ENV_PATTERN.match(Name)
            if Match:
                self.Config[f"{Match.group(1).lower()}.{Match.group(2).lower()}"] = Value

    def ApplyOverrides(self, Overrides: Mapping[str, Any]):
        """Apply command-line values; None means the flag was not given."""
        for Key, Value in Overrides.items():
            if Value is None:
                continue
            if isinstance(Value, (list, tuple)):
                Value = ','.join(str(Item) for Item in Value)
            elif isinstance(Value, bool):
                Value = 'true' if Value else 'false'
            self.Config[Key] = str(Value)

    def Get(self, Key, Default=None):
        """
        Get configuration value.

        Args:
            Key: Dotted configuration key
            Default: Returned when the key is absent or empty

        Returns:
            str: Configuration value or default
        """
        Value = self.Config.get(Key)
        return Default if Value in (None, '') else Value

    def Set(self, Key, Value):
        self.Config[Key] = str(Value)

    def GetInt(self, Key, Default=None) -> int:
        Value = self.Get(Key, Default)
        try:
            return int(Value)
        except (TypeError, ValueError):
            raise ConfigError(f"'{Key}' must be an integer, got {Value!r}")

    def GetFloat(self, Key, Default=None) -> float:
        Value = self.Get(Key, Default)
        try:
            return float(Value)
        except (TypeError, ValueError):
            raise ConfigError(f"'{Key}' must be a number, got {Value!r}")

    def GetBool(self, Key, Default=None) -> bool:
        Value = str(self.Get(Key, Default)).strip().lower()
        if Value in TRUE_VALUES:
            return True
        if Value in FALSE_VALUES:
            return False
        raise ConfigError(f"'{Key}' must be true or false, got {Value!r}")

    def GetList(self, Key, Default=None) -> List[str]:
        Value = self.Get(Key, Default) or ''
        return [Item.strip() for Item in str(Value).split(',') if Item.strip()]

    def GetApiKey(self) -> Optional[str]:
        """API key from the environment variable named by backend.api_key_env."""
        return self.Environ.get(self.Get('backend.api_key_env', 'SCOT_API_KEY')) or None

    def DataPath(self, Dataset: str, Split: str) -> Path:
        return SplitPath(self.Get('paths.data_dir'), Dataset, Split)

    def CorpusPath(self, Dataset: str) -> Path:
        return Path(self.Get('paths.corpus_dir')) / f"{Dataset}.corpus.jsonl"

    def TemplateOverride(self, Domain: str) -> Optional[Path]:
        Value = self.Get(f"templates.{Domain}")
        return Path(Value) if Value else None

    def Validate(self):
        """
        Check the run settings.

        Raises:
            ConfigError: naming the first offending key
        """
        from Core.DatasetHub import DatasetName
        from Core.PromptEngine import AblationLevel, MethodKind
        from Core.StrategyRetrieval import MATCH_FIELDS

        if self.GetInt('run.n_runs') < 1:
            raise ConfigError("'run.n_runs' must be >= 1")
        if self.GetInt('run.sc_runs') < 1:
            raise ConfigError("'run.sc_runs' must be >= 1")
        if not 1 <= self.GetInt('run.sc_samples') <= 40:
            raise ConfigError("'run.sc_samples' must be in 1..40")
        if self.GetInt('run.shots') < 0:
            raise ConfigError("'run.shots' must be >= 0")
        if self.GetInt('run.sample_n') < 0:
            raise ConfigError("'run.sample_n' must be >= 0")
        if self.GetInt('backend.max_in_flight') < 1:
            raise ConfigError("'backend.max_in_flight' must be >= 1")
        self.GetBool('run.markdown')

        Methods = {Item.value for Item in MethodKind}
        for Method in self.GetList('run.methods'):
            if Method not in Methods:
                raise ConfigError(f"'run.methods' has unknown method '{Method}'")

        Datasets = {Item.value for Item in DatasetName}
        for Dataset in self.GetList('run.datasets'):
            if Dataset not in Datasets:
                raise ConfigError(f"'run.datasets' has unknown dataset '{Dataset}'")

        if self.Get('run.match_field') not in MATCH_FIELDS:
            raise ConfigError(f"'run.match_field' must be one of {', '.join(MATCH_FIELDS)}")
        if self.Get('run.index') not in ('tfidf', 'embedding'):
            raise ConfigError("'run.index' must be tfidf or embedding")
        if self.Get('run.ablation') not in {Item.value for Item in AblationLevel}:
            raise ConfigError("'run.ablation' must be none, role or workflow")
        if self.Get('run.format') not in ('md', 'csv'):
            raise ConfigError("'run.format' must be md or csv")

        return self

    def SaveToFile(self, FilePath):
        """
        Save configuration in the config file grammar.

        Args:
            FilePath: Path to configuration file
        """
        Lines = [f"{Key} = {Value}" for Key, Value in sorted(self.Config.items())]
        Path(FilePath).write_text('\n'.join(Lines) + '\n', encoding='utf-8')
