"""
Shioda Toolkit Components Package
"""

from .report_builder import AnalysisReport, build_report, report_to_latex, report_to_text
from .equation_formatter import format_equations, format_polynomial

__all__ = [
    'AnalysisReport', 'build_report', 'report_to_text', 'report_to_latex',
    'format_equations', 'format_polynomial',
]
