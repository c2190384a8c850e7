# File: ResponseCache.py
# Path: AIDEV-StrategicCoT/Utils/ResponseCache.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  1:05PM
# Description: Content-addressed completion cache, one file per key

"""
Completion cache.

Entries are JSON files named by their cache key and fanned out into
two-character subdirectories. With no directory the cache lives in memory,
which is what the unit tests use.
"""

import json
import logging
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union

from Utils.FileUtils import AtomicWriteText, CanonicalJson

Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CacheStats:
    Entries: int
    Bytes: int


class ResponseCache:
    """Content-addressed store for completion payloads."""

    def __init__(self, CacheDir: Optional[Union[str, Path]] = None):
        """
        Initialize ResponseCache.

        Args:
            CacheDir: Directory for entries, or None for an in-memory cache
        """
        self.CacheDir = Path(CacheDir) if CacheDir else None
        self.Memory: Dict[str, str] = {}
        self.Lock = threading.Lock()

    def EntryPath(self, Key: str) -> Path:
        return self.CacheDir / Key[:2] / f"{Key}.json"

    def Load(self, Key: str) -> Optional[Dict[str, Any]]:
        """Return the stored payload for a key, or None on a miss."""
        if self.CacheDir is None:
            with self.Lock:
                Raw = self.Memory.get(Key)
            return json.loads(Raw) if Raw is not None else None

        EntryFile = self.EntryPath(Key)
        if not EntryFile.exists():
            return None
        try:
            return json.loads(EntryFile.read_text(encoding='utf-8'))
        except (OSError, json.JSONDecodeError) as E:
            Logger.warning("Ignoring unreadable cache entry %s: %s", EntryFile, E)
            return None

    def Store(self, Key: str, Payload: Dict[str, Any]) -> None:
        Raw = CanonicalJson(Payload)
        if self.CacheDir is None:
            with self.Lock:
                self.Memory[Key] = Raw
            return
        AtomicWriteText(self.EntryPath(Key), Raw)

    def Stats(self) -> CacheStats:
        if self.CacheDir is None:
            with self.Lock:
                return CacheStats(len(self.Memory), sum(len(Raw.encode('utf-8')) for Raw in self.Memory.values()))

        if not self.CacheDir.exists():
            return CacheStats(0, 0)
        Files = list(self.CacheDir.glob('*/*.json'))
        return CacheStats(len(Files), sum(File.stat().st_size for File in Files))

    def Clear(self) -> int:
        """Delete every entry and return how many were removed."""
        if self.CacheDir is None:
            with self.Lock:
                Count = len(self.Memory)
                self.Memory.clear()
            return Count

        if not self.CacheDir.exists():
            return 0
        Count = 0
        for File in self.CacheDir.glob('*/*.json'):
            File.unlink()
            Count += 1
        for SubDir in self.CacheDir.iterdir():
            if SubDir.is_dir() and not any(SubDir.iterdir()):
                SubDir.rmdir()
        Logger.info("Removed %d cache entries from %s", Count, self.CacheDir)
        return Count
