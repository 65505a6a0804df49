"""report 包"""
from .writer import ReportWriter, config_digest, normalize

__all__ = ["ReportWriter", "config_digest", "normalize"]
