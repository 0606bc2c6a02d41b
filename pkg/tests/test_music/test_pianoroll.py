import json

import numpy as np
import pytest

from src.core.errors import FormatError, NonBinary
from src.music.pianoroll import (
    N_PITCHES,
    Pianoroll,
    dump_pianoroll,
    load_pianoroll,
    pianoroll_from_dict,
)


def _doc(**overrides):
    doc = {
        "version": 1,
        "tracks": 2,
        "steps_per_quarter": 4,
        "length": 8,
        "notes": [[0, 60, 0, 4], [1, 64, 2, 8]],
    }
    doc.update(overrides)
    return doc


def test_parse_grid():
    pr = pianoroll_from_dict(_doc(), "demo")
    assert pr.grid.shape == (2, N_PITCHES, 8)
    assert pr.grid[0, 60].tolist() == [1, 1, 1, 1, 0, 0, 0, 0]
    assert pr.grid[1, 64, 2:].all()
    assert pr.name == "demo"


def test_length_is_padded_to_whole_quarters():
    pr = pianoroll_from_dict(_doc(length=6, notes=[[0, 60, 0, 6]]))
    assert pr.length == 8
    assert pr.grid[0, 60, 6:].sum() == 0


@pytest.mark.parametrize(
    "overrides",
    [
        {"version": 2},
        {"tracks": "2"},
        {"steps_per_quarter": 0},
        {"notes": "none"},
        {"notes": [[0, 60, 4]]},
        {"notes": [[2, 60, 0, 4]]},
        {"notes": [[0, 128, 0, 4]]},
        {"notes": [[0, 60, 4, 4]]},
        {"notes": [[0, 60, 0, 9]]},
        {"notes": [[0, 60, 0, True]]},
    ],
)
def test_invalid_documents(overrides):
    with pytest.raises(FormatError):
        pianoroll_from_dict(_doc(**overrides))


def test_non_binary_grid():
    grid = np.zeros((1, N_PITCHES, 4), dtype=np.uint8)
    grid[0, 60, 0] = 2
    with pytest.raises(NonBinary):
        Pianoroll(grid, 4)


def test_load_from_bytes_and_path(tmp_path):
    raw = json.dumps(_doc()).encode()
    path = tmp_path / "song.json"
    path.write_bytes(raw)
    from_path = load_pianoroll(path)
    assert from_path.name == "song"
    assert np.array_equal(from_path.grid, load_pianoroll(raw).grid)


def test_invalid_json():
    with pytest.raises(FormatError):
        load_pianoroll(b"\xff\xfe")


def test_dump_merges_contiguous_runs():
    pr = pianoroll_from_dict(_doc(notes=[[0, 60, 0, 2], [0, 60, 2, 4], [1, 62, 5, 6]]))
    data = json.loads(dump_pianoroll(pr))
    assert data["notes"] == [[0, 60, 0, 4], [1, 62, 5, 6]]
    assert np.array_equal(pianoroll_from_dict(data).grid, pr.grid)


def test_onsets_and_tiling(make_roll):
    pr = make_roll([(60, 0, 2), (60, 2, 3), (62, 1, 4)], length=4)
    onsets = pr.onsets()[0]
    assert np.flatnonzero(onsets[60]).tolist() == [0]
    assert np.flatnonzero(onsets[62]).tolist() == [1]
    assert pr.tiled(3).length == 12
