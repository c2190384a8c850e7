# File: conftest.py
# Path: AIDEV-StrategicCoT/Tests/conftest.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  6:15PM
# Description: pytest configuration for StrategicCoT tests

"""
pytest configuration for StrategicCoT tests.

Puts the project root on sys.path, registers markers, writes a dated text
report to TestReports/ and provides the shared fixtures (fixture paths,
a clean config with no environment, a transcript-backed gateway factory).
"""

import json
import os
import sys
import time
from datetime import datetime
from pathlib import Path

import pytest

ProjectRoot = Path(__file__).parent.parent
sys.path.insert(0, str(ProjectRoot))

from Core.LlmGateway import LlmGateway
from Core.TranscriptBackend import TranscriptBackend
from Utils.ConfigManager import ConfigManager
from Utils.ResponseCache import ResponseCache


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line(
        "markers",
        "integration: marks tests that drive several components end to end"
    )
    config.addinivalue_line(
        "markers",
        "live: marks tests that need a real chat-completions endpoint (SCOT_LIVE_URL)"
    )


def pytest_collection_modifyitems(config, items):
    if os.environ.get("SCOT_LIVE_URL"):
        return
    SkipLive = pytest.mark.skip(reason="SCOT_LIVE_URL not set")
    for Item in items:
        if "live" in Item.keywords:
            Item.add_marker(SkipLive)


def _FirstErrorLine(Report) -> str:
    Text = str(Report.longrepr)
    for Line in Text.splitlines():
        if Line.startswith('E '):
            return Line[1:].strip()
    return Text.splitlines()[-1] if Text else ''


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Generate custom text report after tests complete."""
    CurrentDate = datetime.now().strftime("%Y-%m-%d")
    ReportDir = ProjectRoot / "TestReports"
    ReportDir.mkdir(exist_ok=True)
    TextReportPath = ReportDir / f"test_report_{CurrentDate}.txt"

    Stats = terminalreporter.stats
    with open(TextReportPath, "w", encoding="utf-8") as File:
        File.write("=" * 80 + "\n")
        File.write("STRATEGIC COT TEST REPORT\n")
        File.write("=" * 80 + "\n")
        File.write(f"Generated: {datetime.now().isoformat()}\n")
        File.write(f"Test Status: {'PASSED' if exitstatus == 0 else 'FAILED'}\n\n")

        File.write("Test Summary:\n")
        File.write("-" * 40 + "\n")
        File.write(f"Passed tests: {len(Stats.get('passed', []))}\n")
        File.write(f"Failed tests: {len(Stats.get('failed', []))}\n")
        File.write(f"Skipped tests: {len(Stats.get('skipped', []))}\n")
        Started = getattr(terminalreporter, '_sessionstarttime', None)
        if Started is not None:
            File.write(f"Execution time: {time.time() - Started:.2f} seconds\n")

        if Stats.get('failed'):
            File.write("\nFAILED TESTS:\n")
            for Report in Stats['failed']:
                if hasattr(Report, 'nodeid'):
                    File.write(f"✗ {Report.nodeid}\n")
                    File.write(f"  Error: {_FirstErrorLine(Report)}\n")

        if Stats.get('skipped'):
            File.write("\nSKIPPED TESTS:\n")
            for Report in Stats['skipped']:
                if hasattr(Report, 'nodeid'):
                    File.write(f"- {Report.nodeid}\n")

    terminalreporter.write_line(f"Test report saved to: {TextReportPath}")


@pytest.fixture(scope="session")
def project_root():
    """Project root directory for consistent path resolution."""
    return ProjectRoot


@pytest.fixture(scope="session")
def fixture_dir(project_root):
    return project_root / "Tests" / "Fixtures"


@pytest.fixture
def clean_config(tmp_path):
    """ConfigManager with defaults only, paths redirected into tmp_path."""
    Config = ConfigManager(Environ={})
    Config.ApplyOverrides({
        'paths.cache_dir': tmp_path / 'cache',
        'paths.corpus_dir': tmp_path / 'corpora',
        'paths.out_dir': tmp_path / 'out',
        'paths.data_dir': tmp_path / 'data',
    })
    return Config


@pytest.fixture
def write_jsonl(tmp_path):
    """Write a list of dicts as JSONL under tmp_path and return the path."""
    def Write(Name, Rows):
        FilePath = tmp_path / Name
        FilePath.parent.mkdir(parents=True, exist_ok=True)
        FilePath.write_text(''.join(json.dumps(Row) + '\n' for Row in Rows), encoding='utf-8')
        return FilePath
    return Write


@pytest.fixture
def make_gateway():
    """Gateway over an in-memory transcript with no backoff and no disk cache."""
    def Make(Rows, Cache=None, **Options):
        Options.setdefault('BackoffSeconds', 0)
        Backend = TranscriptBackend.FromRows(Rows)
        return LlmGateway(Backend, Cache=Cache if Cache is not None else ResponseCache(), **Options)
    return Make
