"""Renders figures from the CSV tables emitted by the ``lzsm`` CLI.

This package never imports the numerics toolkit; its only input contract is
the documented CSV column layout.
"""

from .reader import CsvFormatError, NoDataError, read_table
from .render import KINDS, render

__all__ = ["CsvFormatError", "NoDataError", "read_table", "render", "KINDS"]

__version__ = "0.1.0"
