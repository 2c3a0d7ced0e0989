"""
Configuration constants for the Shioda Toolkit
"""
import os
from pathlib import Path

# Project layout
PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
CONFIG_DIR = PROJECT_ROOT / 'config'
SETTINGS_FILE = CONFIG_DIR / 'system_settings.json'
FIXTURE_DIR = CONFIG_DIR / 'fixtures'

# Report Settings
REPORT_SCHEMA = "shioda-report/1"
REPORT_FORMATS = ['json', 'text', 'latex']
DEFAULT_FORMAT = 'json'
JSON_INDENT = 2

# Field order of the serialized report
REPORT_FIELDS = [
    'schema', 'name', 'input', 'd', 'B', 'q', 'm', 'q_reduced', 'q_prime', 'm_prime',
    'a_prime', 'a_prime_vec', 'is_cy', 'fano', 'well_formed_weights', 'singular_strata',
    'groups', 'quotient_degree', 'invariant_form', 'equations', 'fingerprint', 'inverse',
    'oracle',
]

# Variable names used in text and LaTeX output (1-based)
SOURCE_VARIABLE = 'y'
WEIGHTED_VARIABLE = 'x'
QUOTIENT_VARIABLE = 'u'

# Group oracle
ORACLE_ENUMERATION_BOUND = 10 ** 6

# Inverse search
SLACK_BOUND_FACTOR = 2

# Numerical round-trip oracle (tests only)
ROUND_TRIP_SAMPLES = 20
ROUND_TRIP_TOLERANCE = 1e-9

# Output directory override
OUTPUT_DIR_ENV = 'SHIODA_OUTPUT_DIR'


def get_output_dir(cli_value: str = None):
    """--output-dir wins over SHIODA_OUTPUT_DIR; None means stdout."""
    value = cli_value or os.environ.get(OUTPUT_DIR_ENV)
    return Path(value) if value else None
