"""stripes CLI command handlers.

Each submodule exposes plain functions that take parsed arguments, do the
work through the library and return what the entry point should report.
Output formatting stays in :mod:`src.cli.output`.
"""

from __future__ import annotations
