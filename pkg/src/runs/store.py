"""Async SQLite run history using aiosqlite."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import aiosqlite

SCHEMA = """
CREATE TABLE IF NOT EXISTS runs (
    id TEXT PRIMARY KEY,
    command TEXT NOT NULL,
    parameters TEXT NOT NULL DEFAULT '{}',
    seed INTEGER NOT NULL DEFAULT 0,
    version TEXT NOT NULL DEFAULT '',
    timestamp TEXT NOT NULL,
    exit_code INTEGER NOT NULL DEFAULT 0,
    created_at TEXT NOT NULL DEFAULT (datetime('now'))
);

CREATE TABLE IF NOT EXISTS outputs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    run_id TEXT NOT NULL REFERENCES runs(id) ON DELETE CASCADE,
    path TEXT NOT NULL
);
"""


@dataclass
class RunSummary:
    id: str
    command: str
    seed: int
    timestamp: str
    exit_code: int
    output_count: int


class RunStore:
    """Async SQLite store for CLI run manifests and their output files."""

    def __init__(self, db_path: str) -> None:
        self._db_path = db_path
        self._db: Optional[aiosqlite.Connection] = None
        self._connected: bool = False

    async def connect(self) -> None:
        """Open the database connection and ensure tables exist."""
        Path(self._db_path).parent.mkdir(parents=True, exist_ok=True)
        self._db = await aiosqlite.connect(self._db_path)
        self._db.row_factory = aiosqlite.Row
        await self._db.execute("PRAGMA journal_mode=WAL")
        await self._db.execute("PRAGMA foreign_keys=ON")
        await self._db.executescript(SCHEMA)
        self._connected = True

    async def close(self) -> None:
        if self._connected and self._db:
            await self._db.close()
            self._connected = False

    async def __aenter__(self) -> RunStore:
        await self.connect()
        return self

    async def __aexit__(self, *exc: object) -> None:
        await self.close()

    async def record_run(
        self,
        run_id: str,
        command: str,
        parameters: dict[str, Any],
        seed: int,
        version: str,
        timestamp: str,
        exit_code: int,
        outputs: list[str],
    ) -> None:
        """Insert one run and the files it wrote."""
        assert self._db is not None
        await self._db.execute(
            "INSERT INTO runs (id, command, parameters, "
            "seed, version, timestamp, exit_code)"
            " VALUES (?, ?, ?, ?, ?, ?, ?)",
            (
                run_id,
                command,
                json.dumps(parameters, sort_keys=True),
                seed,
                version,
                timestamp,
                exit_code,
            ),
        )
        await self._db.executemany(
            "INSERT INTO outputs (run_id, path) VALUES (?, ?)",
            [(run_id, path) for path in outputs],
        )
        await self._db.commit()

    async def list_runs(
        self, limit: int = 20, command: Optional[str] = None
    ) -> list[RunSummary]:
        """Most recent runs first, optionally filtered by command."""
        assert self._db is not None
        query = (
            "SELECT r.id, r.command, r.seed, r.timestamp, r.exit_code, "
            "COUNT(o.id) AS output_count FROM runs r "
            "LEFT JOIN outputs o ON o.run_id = r.id "
        )
        args: tuple[Any, ...] = ()
        if command:
            query += "WHERE r.command = ? "
            args = (command,)
        query += "GROUP BY r.id ORDER BY r.timestamp DESC, r.rowid DESC LIMIT ?"
        cursor = await self._db.execute(query, (*args, limit))
        rows = await cursor.fetchall()
        return [
            RunSummary(
                id=r["id"],
                command=r["command"],
                seed=r["seed"],
                timestamp=r["timestamp"],
                exit_code=r["exit_code"],
                output_count=r["output_count"],
            )
            for r in rows
        ]

    async def get_parameters(self, run_id: str) -> Optional[dict[str, Any]]:
        assert self._db is not None
        cursor = await self._db.execute(
            "SELECT parameters FROM runs WHERE id = ?", (run_id,)
        )
        row = await cursor.fetchone()
        return json.loads(row["parameters"]) if row else None

    async def get_outputs(self, run_id: str) -> list[str]:
        assert self._db is not None
        cursor = await self._db.execute(
            "SELECT path FROM outputs WHERE run_id = ? ORDER BY id ASC", (run_id,)
        )
        rows = await cursor.fetchall()
        return [r["path"] for r in rows]

    async def delete_run(self, run_id: str) -> bool:
        """Delete a run and its output records. Returns True if deleted."""
        assert self._db is not None
        cursor = await self._db.execute("DELETE FROM runs WHERE id = ?", (run_id,))
        await self._db.commit()
        return cursor.rowcount > 0
