"""``stripes bench``: linear vs quadratic runtime scaling."""

from __future__ import annotations

from pathlib import Path

from ...attention.bench import CSV_COLUMNS, BenchRow, benchmark_scaling
from ...core.types import Method
from ..manifest import csv_text, write_text


def parse_lengths(text: str) -> list[int]:
    try:
        lengths = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(
            f"lengths must be comma-separated integers, got {text!r}"
        ) from exc
    if not lengths or any(n < 1 for n in lengths):
        raise ValueError(f"lengths must be positive, got {text!r}")
    return lengths


def run_bench(
    method: Method, lengths: list[int], dim: int, repeats: int, seed: int, out_dir: Path
) -> tuple[Path, list[BenchRow], str]:
    rows = benchmark_scaling(method, lengths, dim, repeats, seed)
    text = csv_text(CSV_COLUMNS, (row.as_csv() for row in rows))
    path = write_text(out_dir / f"bench_{method.value}.csv", text)
    return path, rows, text
