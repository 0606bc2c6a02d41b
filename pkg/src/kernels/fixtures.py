"""JSON (de)serialization of PD witnesses for the regression corpus.

A pinned witness records the search that produced it (``seed``, ``budget``,
sample count, ``dim`` and ``L``), so :func:`pd_witness_search` can be re-run
to confirm the file still matches.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Optional

import numpy as np

from ..core.errors import FormatError, WitnessNotFound
from ..core.params import make_params
from ..core.types import InitScheme, Method
from .analysis import KernelSample, Witness, gram_matrix, pd_check, pd_witness_search

logger = logging.getLogger(__name__)

PIN_POINTS = 3
PIN_BUDGET = 10_000


def witness_to_dict(witness: Witness, budget: Optional[int] = None) -> dict[str, Any]:
    params = witness.params
    gram = gram_matrix(witness.method, witness.samples, params, witness.term)
    return {
        "method": witness.method.value,
        "term": witness.term,
        "seed": witness.seed,
        "trial": witness.trial,
        "budget": budget,
        "dim": params.dim,
        "label_dim": params.label_dim,
        "frequencies": params.unit_frequencies.tolist(),
        "gains": params.unit_gains.tolist(),
        "phases": params.unit_phases.tolist(),
        "samples": [
            {"content": s.content.tolist(), "position": s.position.tolist()}
            for s in witness.samples
        ],
        "gram": gram.tolist(),
        "min_eigenvalue": pd_check(gram).min_eigenvalue,
    }


def witness_from_dict(data: dict[str, Any]) -> Witness:
    try:
        method = Method(data["method"])
        freqs = np.asarray(data["frequencies"], dtype=np.float64)
        params = make_params(
            method,
            int(data["dim"]),
            label_dim=freqs.shape[1],
            scheme=InitScheme.EXPLICIT,
            frequencies=freqs,
            gains=data.get("gains"),
            phases=data.get("phases"),
        )
        samples = tuple(
            KernelSample(s["content"], s["position"]) for s in data["samples"]
        )
        trial = int(data.get("trial", 0))
        seed = int(data.get("seed", 0))
        return Witness(method, str(data["term"]), samples, params, trial, seed)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed witness fixture: {exc}") from exc


def save_witness(path: Path, witness: Witness, budget: Optional[int] = None) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(witness_to_dict(witness, budget), indent=2) + "\n"
    path.write_text(text, encoding="utf-8")


def read_fixture(path: Path) -> dict[str, Any]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return data


def load_witness(path: Path) -> Witness:
    return witness_from_dict(read_fixture(path))


def pin_witness(
    method: Method,
    path: Path,
    seed: int = 0,
    n_points: int = PIN_POINTS,
    budget: int = PIN_BUDGET,
    dim: int = 2,
    label_dim: int = 1,
    workers: int = 1,
) -> Witness:
    """Search for a witness and write it, with its provenance, to *path*."""
    report = pd_witness_search(
        method, n_points, budget, seed, dim=dim, label_dim=label_dim, workers=workers
    )
    if report.witness is None:
        raise WitnessNotFound(
            f"no {method.value} witness in {budget} trials at seed {seed} "
            f"(lowest eigenvalue {report.min_eigenvalue:.3e})"
        )
    save_witness(path, report.witness, budget)
    logger.debug(
        "pinned %s witness: trial %d term %s -> %s",
        method.value,
        report.witness.trial,
        report.witness.term,
        path,
    )
    return report.witness
