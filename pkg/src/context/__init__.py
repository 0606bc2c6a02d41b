"""Context labelling of pianoroll events and content-context mutual information."""

from __future__ import annotations

from .labels import (
    ChordAnnotation,
    ChordSpan,
    ContextType,
    Key,
    LabeledEvents,
    RepOrder,
    annotation_from_dict,
    assign_context,
)
from .mi import MIReport, entropy, mi_report, mutual_information

__all__ = [
    "ChordAnnotation",
    "ChordSpan",
    "ContextType",
    "Key",
    "LabeledEvents",
    "MIReport",
    "RepOrder",
    "annotation_from_dict",
    "assign_context",
    "entropy",
    "mi_report",
    "mutual_information",
]
