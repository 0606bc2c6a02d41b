"""Run manifests and deterministic artifact writers.

Primary outputs (CSV/JSON) depend only on the command's arguments; the
manifest, which carries the timestamp, is written next to them as
``<stem>.manifest.json`` and recorded in the run history database.
"""

from __future__ import annotations

import asyncio
import csv
import io
import json
import logging
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Sequence

from .. import __version__
from ..config import Config
from ..runs.store import RunStore

logger = logging.getLogger(__name__)


def fmt_float(value: float) -> str:
    """17 significant digits, locale independent."""
    return format(float(value), ".17g")


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_float(c) if isinstance(c, float) else c for c in row])
    return buffer.getvalue()


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="")
    return path


def _json_default(value: Any) -> Any:
    # numpy scalars (e.g. np.bool_, np.float64) expose .item() for the Python value
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_json_default) + "\n"


@dataclass
class RunManifest:
    command: str
    parameters: dict[str, Any]
    seed: int
    version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )
    run_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    outputs: list[str] = field(default_factory=list)

    def write(self, directory: Path, stem: str) -> Path:
        return write_text(directory / f"{stem}.manifest.json", json_text(asdict(self)))


async def _record(manifest: RunManifest, exit_code: int) -> None:
    async with RunStore(Config.DB_PATH) as store:
        await store.record_run(
            manifest.run_id,
            manifest.command,
            manifest.parameters,
            manifest.seed,
            manifest.version,
            manifest.timestamp,
            exit_code,
            manifest.outputs,
        )


def record_run(manifest: RunManifest, exit_code: int = 0) -> None:
    """Store *manifest* in the history database; failures only log."""
    try:
        asyncio.run(_record(manifest, exit_code))
    except Exception as exc:
        logger.warning("could not record run %s: %s", manifest.run_id, exc)
