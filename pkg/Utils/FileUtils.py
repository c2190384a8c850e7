# File: FileUtils.py
# Path: AIDEV-StrategicCoT/Utils/FileUtils.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:20AM
# Description: Atomic file writes, content digests and ordering helpers

"""
Small file and digest helpers.

Run artifacts, corpora and cache entries are all written through
AtomicWriteText so readers never observe a partially written file.
"""

import hashlib
import json
import os
import re
import tempfile
from pathlib import Path
from typing import Any, List, Union

DIGIT_RUN = re.compile(r'(\d+)')


def Sha256Hex(Text: str) -> str:
    """Return the SHA-256 hex digest of a UTF-8 string."""
    return hashlib.sha256(Text.encode('utf-8')).hexdigest()


def CanonicalJson(Value: Any) -> str:
    """Serialize with sorted keys and no insignificant whitespace."""
    return json.dumps(Value, sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def AtomicWriteText(FilePath: Union[str, Path], Content: str) -> Path:
    """
    Write text to a file via a temporary sibling and rename.

    Args:
        FilePath: Destination path
        Content: Text to write (UTF-8)

    Returns:
        Path: The destination path
    """
    FilePath = Path(FilePath)
    FilePath.parent.mkdir(parents=True, exist_ok=True)

    Handle, TempName = tempfile.mkstemp(dir=FilePath.parent, prefix=f".{FilePath.name}.", suffix='.tmp')
    try:
        with os.fdopen(Handle, 'w', encoding='utf-8', newline='\n') as File:
            File.write(Content)
        os.replace(TempName, FilePath)
    except BaseException:
        if os.path.exists(TempName):
            os.unlink(TempName)
        raise

    return FilePath


def JsonLines(Records: List[Any]) -> str:
    """Render records as JSONL text with a trailing newline."""
    return ''.join(json.dumps(Record, ensure_ascii=False) + '\n' for Record in Records)


def NaturalSortKey(Text: str):
    """Sort key that orders 'task-2' before 'task-10'."""
    return [int(Part) if Part.isdigit() else Part for Part in DIGIT_RUN.split(Text)]
