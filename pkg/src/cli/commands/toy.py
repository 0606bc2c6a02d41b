"""``stripes toy``: heatmaps and narrative checks on the angular dataset."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np

from ...core.types import Method
from ...oracle.properties import ROPEPOOL_MIRROR_WITNESS
from ...toy.dataset import generate_toy
from ...toy.scores import Heatmap, discriminability, heatmap, mirror_asymmetry
from ..manifest import csv_text, fmt_float, json_text, write_text


def parse_fgrid(text: str) -> np.ndarray:
    """``start:stop:count`` → ``count`` evenly spaced values, ends included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"f-grid must look like start:stop:count, got {text!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError(f"f-grid needs at least one point, got {count}")
    grid = np.linspace(start, stop, count)
    if np.any(grid < 0) or np.any(grid > 1):
        raise ValueError(f"f values must lie in [0, 1], got {text!r}")
    return grid


def heatmap_csv(hm: Heatmap) -> str:
    """Header row ``f`` then sorted ψ values; one row per f."""
    header = ["f", *(fmt_float(p) for p in hm.psi_sorted)]
    rows = ([float(f), *map(float, row)] for f, row in zip(hm.f_grid, hm.values))
    return csv_text(header, rows)


def run_toy(
    method: Method,
    n_contexts: int,
    points: int,
    sigma: float,
    seed: int,
    f_grid: np.ndarray,
    query: int,
    out_dir: Path,
) -> tuple[list[Path], dict[str, Any]]:
    ds = generate_toy(n_contexts, points, sigma, seed)
    hm = heatmap(method, ds, query, f_grid)
    stem = f"toy_{method.value}"
    summary: dict[str, Any] = {
        "method": method.value,
        "query_index": query,
        "query_context": int(ds.context[query]),
        "discriminability": (
            [
                {"f": float(f), "value": discriminability(method, ds, query, float(f))}
                for f in f_grid
            ]
            if n_contexts >= 2
            else []
        ),
    }
    w = ROPEPOOL_MIRROR_WITNESS
    plus, minus = mirror_asymmetry(
        method, w["psi"], w["xi"], w["dpsi"], w["dxi"], w["frequency"]
    )
    summary["mirror"] = {
        "inputs": dict(w),
        "score_plus": plus,
        "score_minus": minus,
        "gap": abs(plus - minus),
    }
    csv_path = write_text(out_dir / f"{stem}.csv", heatmap_csv(hm))
    json_path = write_text(out_dir / f"{stem}.json", json_text(summary))
    return [csv_path, json_path], summary
