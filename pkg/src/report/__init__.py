"""报告模块"""
from .message_builder import ReportBuilder

__all__ = ['ReportBuilder']
