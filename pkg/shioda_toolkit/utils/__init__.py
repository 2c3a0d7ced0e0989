"""
Shioda Toolkit Utilities Package
"""

from .config import *
from .json_config_manager import JSONConfigManager, get_config_manager, setup_logging

__all__ = [
    'REPORT_SCHEMA', 'REPORT_FORMATS', 'DEFAULT_FORMAT', 'JSON_INDENT', 'REPORT_FIELDS',
    'ORACLE_ENUMERATION_BOUND', 'SLACK_BOUND_FACTOR', 'ROUND_TRIP_SAMPLES',
    'ROUND_TRIP_TOLERANCE', 'CONFIG_DIR', 'FIXTURE_DIR', 'get_output_dir',
    'JSONConfigManager', 'get_config_manager', 'setup_logging',
]
