"""Report generation - deterministic CSV/JSON export and console summaries"""

from .report_generator import FORMATS, ReportGenerator, ReportMetadata

__all__ = ['FORMATS', 'ReportGenerator', 'ReportMetadata']
