"""``stripes metrics`` and ``stripes mi`` over pianoroll files."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Sequence

from ...context.labels import (
    ContextType,
    LabeledEvents,
    RepOrder,
    annotation_from_dict,
    assign_context,
)
from ...context.mi import MIReport, mi_report
from ...core.errors import FormatError
from ...music.metrics import grooving_xor, metric_bundle
from ...music.pianoroll import load_pianoroll, pianoroll_from_dict


def run_metrics(target: Path, pred: Path) -> dict[str, Optional[float]]:
    t = load_pianoroll(target)
    p = load_pianoroll(pred)
    bundle = metric_bundle(t, p)
    bundle["gs_xor"] = grooving_xor(t, p)
    return bundle


def run_mi(
    inputs: Sequence[Path],
    context: ContextType,
    rep_order: RepOrder = RepOrder.ID,
    onset_only: bool = False,
) -> MIReport:
    """Pool the labelled events of every input file, then estimate MI."""
    parts: list[LabeledEvents] = []
    for path in inputs:
        try:
            data = json.loads(path.read_bytes())
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
        pr = pianoroll_from_dict(data, path.stem)
        ann = annotation_from_dict(data)
        parts.append(assign_context(pr, ann, context, rep_order, onset_only))
    return mi_report(LabeledEvents.concat(parts))
