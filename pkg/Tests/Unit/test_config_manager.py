# File: test_config_manager.py
# Path: AIDEV-StrategicCoT/Tests/Unit/test_config_manager.py
# Standard: AIDEV-PascalCase-1.6
# Created: 2026-10-17
# Last Modified: 2026-10-17  9:40PM
# Description: Tests for layered configuration

"""
Tests for Utils.ConfigManager.
"""

import os
import shutil
import sys
import tempfile
import unittest
from pathlib import Path

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from Core.ScotErrors import ConfigError
from Utils.ConfigManager import DEFAULTS, ConfigManager


class TestConfigManager(unittest.TestCase):
    """Defaults, config file, environment and overrides, in that order."""

    def setUp(self):
        self.TempDir = Path(tempfile.mkdtemp())
        self.ConfigPath = self.TempDir / 'scot.conf'
        self.ConfigPath.write_text(
            '# evaluation settings\n'
            'backend.model = llama3-8b\n'
            'run.methods = cot_zero, scot_zero ,scot_fewshot\n'
            'run.n_runs=5\n'
            'templates.math = "/tmp/math template.txt"\n',
            encoding='utf-8',
        )

    def tearDown(self):
        shutil.rmtree(self.TempDir)

    def test_defaults(self):
        Config = ConfigManager(Environ={})
        self.assertEqual(Config.Config, DEFAULTS)
        self.assertEqual(Config.GetInt('run.sc_samples'), 20)
        self.assertTrue(Config.GetBool('run.markdown'))
        self.assertEqual(Config.Get('run.format'), 'md')
        self.assertIsNone(Config.Get('backend.embedding_model'))
        self.assertEqual(Config.Get('backend.embedding_model', 'fallback'), 'fallback')

    def test_file_values(self):
        Config = ConfigManager(self.ConfigPath, Environ={})
        self.assertEqual(Config.Get('backend.model'), 'llama3-8b')
        self.assertEqual(Config.GetList('run.methods'), ['cot_zero', 'scot_zero', 'scot_fewshot'])
        self.assertEqual(Config.GetInt('run.n_runs'), 5)
        self.assertEqual(Config.TemplateOverride('math'), Path('/tmp/math template.txt'))
        self.assertIsNone(Config.TemplateOverride('physics'))

    def test_environment_beats_file(self):
        Environ = {'SCOT__RUN__N_RUNS': '7', 'SCOT_BASE_URL': 'http://localhost:8000', 'SCOT_API_KEY': 'secret'}
        Config = ConfigManager(self.ConfigPath, Environ=Environ)
        self.assertEqual(Config.GetInt('run.n_runs'), 7)
        self.assertEqual(Config.Get('backend.base_url'), 'http://localhost:8000')
        self.assertEqual(Config.GetApiKey(), 'secret')

    def test_overrides_beat_environment(self):
        Config = ConfigManager(self.ConfigPath, Environ={'SCOT__RUN__N_RUNS': '7'})
        Config.ApplyOverrides({'run.n_runs': 2, 'run.datasets': ['aqua', 'gsm8k'], 'run.markdown': False, 'backend.model': None})
        self.assertEqual(Config.GetInt('run.n_runs'), 2)
        self.assertEqual(Config.Get('run.datasets'), 'aqua,gsm8k')
        self.assertFalse(Config.GetBool('run.markdown'))
        self.assertEqual(Config.Get('backend.model'), 'llama3-8b')

    def test_paths(self):
        Config = ConfigManager(Environ={})
        Config.Set('paths.data_dir', '/data')
        self.assertEqual(Config.DataPath('aqua', 'train'), Path('/data/aqua/train.jsonl'))
        self.assertEqual(Config.CorpusPath('aqua'), Path('corpora/aqua.corpus.jsonl'))

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            ConfigManager(self.TempDir / 'absent.conf', Environ={})

    def test_save_and_reload(self):
        Config = ConfigManager(self.ConfigPath, Environ={})
        Saved = self.TempDir / 'saved.conf'
        Config.SaveToFile(Saved)
        self.assertEqual(ConfigManager(Saved, Environ={}).Config, Config.Config)

    def test_validate(self):
        self.assertIsNotNone(ConfigManager(Environ={}).Validate())

        Cases = {
            'run.n_runs': ('0', "'run.n_runs'"),
            'run.sc_samples': ('41', "'run.sc_samples'"),
            'run.shots': ('-1', "'run.shots'"),
            'run.methods': ('cot_zero,tree_of_thought', 'tree_of_thought'),
            'run.datasets': ('svamp', 'svamp'),
            'run.match_field': ('rationale', "'run.match_field'"),
            'run.index': ('bm25', "'run.index'"),
            'run.ablation': ('rules', "'run.ablation'"),
            'run.markdown': ('maybe', "'run.markdown'"),
            'run.format': ('html', "'run.format'"),
            'backend.max_in_flight': ('0', "'backend.max_in_flight'"),
        }
        for Key, (Value, Message) in Cases.items():
            with self.subTest(key=Key):
                Config = ConfigManager(Environ={})
                Config.Set(Key, Value)
                with self.assertRaises(ConfigError) as Context:
                    Config.Validate()
                self.assertIn(Message, str(Context.exception))


if __name__ == '__main__':
    unittest.main()
