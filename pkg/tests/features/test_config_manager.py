#!/usr/bin/env python3
"""
Test the JSON configuration manager: settings, fixture registries,
field normalization, caching and the output directory override.
"""

import json
import logging
import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

import pytest

from shioda_toolkit.algebra.errors import FixtureNotFoundError
from shioda_toolkit.data.fixture_manager import FixtureManager
from shioda_toolkit.utils.config import OUTPUT_DIR_ENV, REPORT_SCHEMA, get_output_dir
from shioda_toolkit.utils.json_config_manager import JSONConfigManager, setup_logging


def _write_config(root: Path) -> JSONConfigManager:
    config_dir = root / 'config'
    (config_dir / 'fixtures').mkdir(parents=True)
    (config_dir / 'system_settings.json').write_text(json.dumps({
        'oracle': {'enumeration_bound': 500},
        'fixtures': {'registries': {'tiny': 'config/fixtures/tiny.json'}},
    }))
    (config_dir / 'fixtures' / 'tiny.json').write_text(json.dumps({
        'registry': 'tiny',
        'fixtures': [
            {'name': 'quintic', 'matrix': [[5 if i == j else 0 for j in range(5)] for i in range(5)],
             'expected': {'d': {'value': 5, 'provenance': 'derived'}}},
            {'name': 'conic', 'matrix': [[2, 0], [0, 2]]},
        ],
    }))
    return JSONConfigManager(config_dir=config_dir)


def test_project_settings():
    manager = JSONConfigManager()
    settings = manager.get_settings()
    assert settings['report']['schema'] == REPORT_SCHEMA
    assert manager.get_setting('oracle', 'enumeration_bound') == 1000000
    assert manager.get_setting('inverse_search', 'slack_bound_factor') == 2
    assert manager.get_setting('oracle', 'missing', 'fallback') == 'fallback'
    print("✅ Project settings")


def test_project_registries():
    manager = JSONConfigManager()
    paths = manager.get_registry_paths()
    assert set(paths) == {'paper_examples', 'birational_families'}
    assert all(path.exists() for path in paths.values())

    fixtures = manager.get_fixtures('paper_examples')
    assert all(f['registry'] == 'paper_examples' for f in fixtures)
    assert all(f['fixture_name'] == f['name'] for f in fixtures)
    assert 'classes' in manager.get_registry_metadata('birational_families')
    assert manager.get_fixtures('nonexistent') == []


def test_cache_and_clear(tmp_path):
    manager = _write_config(tmp_path)
    first = manager.get_fixtures('tiny')
    assert manager.get_fixtures('tiny') is first

    manager.clear_cache()
    reloaded = manager.get_fixtures('tiny')
    assert reloaded is not first
    assert [f['name'] for f in reloaded] == ['quintic', 'conic']

    settings = manager.get_settings()
    assert manager.get_settings() is settings
    assert manager.get_settings(force_reload=True) is not settings
    assert manager.get_fixtures('tiny', force_reload=True) is not reloaded


def test_custom_registry_through_fixture_manager(tmp_path):
    fixtures = FixtureManager(_write_config(tmp_path))
    assert fixtures.registries() == ['tiny']
    assert [f['name'] for f in fixtures.fixtures()] == ['conic', 'quintic']
    table = fixtures.verify_all()
    assert table['passed'].all()
    assert fixtures.fixture_document('conic').matrix.n == 2
    listing = fixtures.list_fixtures()
    assert list(listing['fixture']) == ['conic', 'quintic']
    assert list(listing['n']) == [2, 5]
    with pytest.raises(FixtureNotFoundError):
        fixtures.fixtures('paper_examples')
    with pytest.raises(FixtureNotFoundError):
        fixtures.get_fixture('exampleA')
    print("✅ Custom registry")


def test_missing_settings_file(tmp_path):
    manager = JSONConfigManager(config_dir=tmp_path)
    assert manager.get_settings() == {}
    assert manager.get_setting('oracle', 'enumeration_bound', 7) == 7


def test_output_dir_precedence(tmp_path, monkeypatch):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
    assert get_output_dir(None) is None
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / 'env'))
    assert get_output_dir(None) == tmp_path / 'env'
    assert get_output_dir(str(tmp_path / 'cli')) == tmp_path / 'cli'


def test_setup_logging_levels():
    setup_logging({'logging': {'level': 'INFO', 'levels': {'shioda_toolkit.algebra': 'ERROR'}}})
    assert logging.getLogger().level == logging.INFO
    assert logging.getLogger('shioda_toolkit.algebra').level == logging.ERROR
    setup_logging({}, verbose=True)
    assert logging.getLogger().level == logging.DEBUG
    logging.getLogger('shioda_toolkit.algebra').setLevel(logging.NOTSET)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
