"""Command-line interface for stripes."""

from __future__ import annotations
