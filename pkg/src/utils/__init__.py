"""Utility modules: output rendering and graph searches"""

from .output_writer import OutputWriter

__all__ = ['OutputWriter']
