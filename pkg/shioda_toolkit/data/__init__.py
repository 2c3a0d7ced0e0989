"""
Shioda Toolkit Data Package
"""

from .fixture_manager import (
    FixtureManager,
    classify_families,
    get_fixture_manager,
    load_input_file,
    parse_input_document,
)
from .random_suite import random_suite

__all__ = [
    'FixtureManager', 'get_fixture_manager', 'classify_families',
    'load_input_file', 'parse_input_document', 'random_suite',
]
