"""Plug-in mutual information between event pitches and context tokens."""

from __future__ import annotations

import logging
from typing import TypedDict

import numpy as np

from ..core.errors import EmptyInput
from .labels import LabeledEvents

logger = logging.getLogger(__name__)

ESTIMATOR = "plug-in"


class MIReport(TypedDict):
    context: str
    events: int
    mi_nats: float
    estimator: str


def _codes(values: np.ndarray) -> tuple[np.ndarray, int]:
    uniq, inverse = np.unique(values, return_inverse=True)
    return inverse.reshape(-1), int(uniq.shape[0])


def entropy(values: np.ndarray) -> float:
    """Plug-in Shannon entropy in nats."""
    if values.size == 0:
        raise EmptyInput("entropy of an empty sample")
    _, counts = np.unique(values, return_counts=True)
    p = counts / counts.sum()
    return float(-np.sum(p * np.log(p)))


def mutual_information(events: LabeledEvents) -> float:
    """``Σ p(x, y) ln(p(x, y) / (p(x) p(y)))`` over the joint histogram."""
    if len(events) == 0:
        raise EmptyInput("mutual information needs at least one event")
    x, nx = _codes(events.pitches)
    y, ny = _codes(events.labels)
    joint = np.bincount(x * ny + y, minlength=nx * ny).reshape(nx, ny).astype(
        np.float64
    )
    joint /= joint.sum()
    px = joint.sum(axis=1, keepdims=True)
    py = joint.sum(axis=0, keepdims=True)
    nz = joint > 0
    mi = float(np.sum(joint[nz] * np.log(joint[nz] / (px @ py)[nz])))
    # rounding can leave a tiny negative for independent samples
    return max(mi, 0.0)


def mi_report(events: LabeledEvents) -> MIReport:
    return MIReport(
        context=events.context.value,
        events=len(events),
        mi_nats=mutual_information(events),
        estimator=ESTIMATOR,
    )
