"""``stripes history``: list, inspect and delete recorded runs."""

from __future__ import annotations

from typing import Any, Optional

from ...config import Config
from ...runs.store import RunStore, RunSummary


async def load_history(limit: int, command: Optional[str] = None) -> list[RunSummary]:
    async with RunStore(Config.DB_PATH) as store:
        return await store.list_runs(limit=limit, command=command)


async def load_run(run_id: str) -> Optional[dict[str, Any]]:
    """Parameters and output paths of one run, or ``None`` if unknown."""
    async with RunStore(Config.DB_PATH) as store:
        parameters = await store.get_parameters(run_id)
        if parameters is None:
            return None
        outputs = await store.get_outputs(run_id)
    return {"id": run_id, "parameters": parameters, "outputs": outputs}


async def forget_run(run_id: str) -> bool:
    async with RunStore(Config.DB_PATH) as store:
        return await store.delete_run(run_id)
