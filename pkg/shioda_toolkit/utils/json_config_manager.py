"""
JSON-Based Configuration Manager with In-Memory Caching

Reads system settings and fixture registries directly from the JSON files
under config/. Each file is read once and kept in memory until
clear_cache() or a force_reload.

Features:
- Loads settings from config/system_settings.json
- Loads fixture registries listed in the settings' "fixtures" section
- Files loaded once per manager; clear_cache() forces a re-read
- Normalized fixture field names ('name' / 'fixture_name')
- Logging setup driven by the "logging" section

Usage:
    from shioda_toolkit.utils.json_config_manager import JSONConfigManager, setup_logging

    manager = JSONConfigManager()
    settings = manager.get_settings()
    setup_logging(settings)
    fixtures = manager.get_fixtures('paper_examples')
"""

import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from .config import CONFIG_DIR, FIXTURE_DIR, SETTINGS_FILE

logger = logging.getLogger(__name__)

DEFAULT_LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class JSONConfigManager:
    """Manages settings and fixture registries from JSON files with caching."""

    def __init__(self, config_dir: Optional[Path] = None):
        """
        Initialize the JSON config manager.

        Args:
            config_dir: Directory holding system_settings.json (default: project config/)
        """
        self.config_dir = Path(config_dir) if config_dir else CONFIG_DIR
        self.settings_file = self.config_dir / SETTINGS_FILE.name if config_dir else SETTINGS_FILE

        # In-memory caches
        self._settings_cache: Optional[Dict] = None
        self._fixture_cache: Dict[str, List[Dict]] = {}

        self.logger = logging.getLogger(__name__)

    def _load_json_file(self, filepath: Path) -> Dict:
        """Load and parse a JSON file."""
        if not filepath.exists():
            self.logger.warning(f"Config file not found: {filepath}")
            return {}

        with open(filepath, 'r', encoding='utf-8') as f:
            return json.load(f)

    def get_settings(self, force_reload: bool = False) -> Dict:
        """
        Get system settings from JSON.

        Args:
            force_reload: Force cache refresh

        Returns:
            Settings dictionary
        """
        if not force_reload and self._settings_cache is not None:
            return self._settings_cache

        settings = self._load_json_file(self.settings_file)

        self._settings_cache = settings

        self.logger.debug("Loaded system settings from JSON")
        return settings

    def get_setting(self, section: str, key: str, default=None):
        """Single value from a settings section."""
        return self.get_settings().get(section, {}).get(key, default)

    def get_registry_paths(self) -> Dict[str, Path]:
        """Fixture registry files keyed by registry name."""
        entries = self.get_settings().get('fixtures', {}).get('registries', {})
        if not entries:
            return {path.stem: path for path in sorted(FIXTURE_DIR.glob('*.json'))}
        base = self.config_dir.parent
        return {name: base / relative for name, relative in entries.items()}

    def get_fixtures(self, registry: str, force_reload: bool = False) -> List[Dict]:
        """
        Get all fixtures of a registry.

        Args:
            registry: Registry name, e.g. 'paper_examples' or 'birational_families'
            force_reload: Force cache refresh

        Returns:
            List of fixture dictionaries
        """
        if not force_reload and registry in self._fixture_cache:
            return self._fixture_cache[registry]

        path = self.get_registry_paths().get(registry)
        if path is None:
            self.logger.warning(f"Unknown fixture registry '{registry}'")
            return []
        data = self._load_json_file(path)
        fixtures = data.get('fixtures', [])

        # Normalize field names (handle both 'name' and 'fixture_name')
        for fixture in fixtures:
            if 'name' in fixture and 'fixture_name' not in fixture:
                fixture['fixture_name'] = fixture['name']
            fixture.setdefault('registry', registry)

        self._fixture_cache[registry] = fixtures

        self.logger.debug(f"Loaded {len(fixtures)} fixtures from {path.name}")
        return fixtures

    def get_registry_metadata(self, registry: str) -> Dict:
        """Top-level fields of a registry file other than the fixture list."""
        path = self.get_registry_paths().get(registry)
        if path is None:
            return {}
        data = self._load_json_file(path)
        return {key: value for key, value in data.items() if key != 'fixtures'}

    def clear_cache(self):
        """Clear all caches to force reload from JSON files."""
        self._settings_cache = None
        self._fixture_cache = {}
        self.logger.info("All caches cleared")


def setup_logging(settings: Optional[Dict] = None, verbose: bool = False):
    """
    Configure the root logger from the settings' "logging" section.

    Console output goes to stderr so stdout carries only reports.
    """
    log_settings = (settings or {}).get('logging', {})
    level_name = 'DEBUG' if verbose else log_settings.get('level', 'WARNING')

    handlers: List[logging.Handler] = []
    if log_settings.get('console_output', True):
        handlers.append(logging.StreamHandler(sys.stderr))
    log_file = log_settings.get('file')
    if log_settings.get('file_output', False) and log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, level_name.upper(), logging.WARNING),
        format=log_settings.get('format', DEFAULT_LOG_FORMAT),
        datefmt=log_settings.get('date_format'),
        handlers=handlers or None,
        force=True,
    )
    for name, level in log_settings.get('levels', {}).items():
        logging.getLogger(name).setLevel(getattr(logging, level.upper(), logging.WARNING))


def get_config_manager() -> JSONConfigManager:
    """Get initialized config manager instance."""
    return JSONConfigManager()
