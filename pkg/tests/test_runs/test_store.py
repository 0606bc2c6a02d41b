import asyncio

from src.runs.store import RunStore


def run(coro):
    return asyncio.run(coro)


async def _seed(store: RunStore) -> None:
    await store.record_run(
        "a1",
        "toy",
        {"n": 5},
        3,
        "0.1.0",
        "2024-01-01T00:00:00+00:00",
        0,
        ["out/toy.csv", "out/toy.json"],
    )
    await store.record_run(
        "b2",
        "verify",
        {"trials": 8},
        0,
        "0.1.0",
        "2024-01-02T00:00:00+00:00",
        1,
        ["out/verify.json"],
    )


def test_record_and_list(tmp_path):
    async def scenario():
        async with RunStore(str(tmp_path / "db" / "runs.db")) as store:
            await _seed(store)
            return await store.list_runs()

    runs = run(scenario())
    assert [r.id for r in runs] == ["b2", "a1"]
    assert runs[0].exit_code == 1
    assert runs[1].output_count == 2


def test_filter_and_limit(tmp_path):
    async def scenario():
        async with RunStore(str(tmp_path / "runs.db")) as store:
            await _seed(store)
            return await store.list_runs(command="toy"), await store.list_runs(limit=1)

    toy_only, latest = run(scenario())
    assert [r.command for r in toy_only] == ["toy"]
    assert [r.id for r in latest] == ["b2"]


def test_parameters_and_outputs(tmp_path):
    async def scenario():
        async with RunStore(str(tmp_path / "runs.db")) as store:
            await _seed(store)
            return (
                await store.get_parameters("a1"),
                await store.get_outputs("a1"),
                await store.get_parameters("missing"),
            )

    params, outputs, missing = run(scenario())
    assert params == {"n": 5}
    assert outputs == ["out/toy.csv", "out/toy.json"]
    assert missing is None


def test_delete_cascades(tmp_path):
    async def scenario():
        async with RunStore(str(tmp_path / "runs.db")) as store:
            await _seed(store)
            deleted = await store.delete_run("a1")
            again = await store.delete_run("a1")
            return deleted, again, await store.get_outputs("a1")

    deleted, again, outputs = run(scenario())
    assert deleted and not again
    assert outputs == []


def test_history_survives_reconnect(tmp_path):
    path = str(tmp_path / "runs.db")

    async def write():
        async with RunStore(path) as store:
            await _seed(store)

    async def read():
        async with RunStore(path) as store:
            return await store.list_runs()

    run(write())
    assert len(run(read())) == 2
