"""Persistent history of CLI runs."""

from __future__ import annotations

from .store import RunStore, RunSummary

__all__ = ["RunStore", "RunSummary"]
