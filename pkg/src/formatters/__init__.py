"""Formatters for solver reports"""

from .report_formatter import (
    format_bench_table,
    format_ced_xml,
    format_error_xml,
    format_instance_xml,
    format_solution_xml,
    format_verification_xml,
)

__all__ = [
    'format_bench_table',
    'format_ced_xml',
    'format_error_xml',
    'format_instance_xml',
    'format_solution_xml',
    'format_verification_xml',
]
