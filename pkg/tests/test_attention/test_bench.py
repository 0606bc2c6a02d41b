import pytest

from src.attention.bench import CSV_COLUMNS, benchmark_scaling
from src.core.types import Method


def test_rows_per_length_and_path():
    rows = benchmark_scaling(Method.ROPEPOOL, [8, 16], dim=4, repeats=2)
    assert [(r.length, r.path) for r in rows] == [
        (8, "linear"), (8, "quadratic"), (16, "linear"), (16, "quadratic"),
    ]
    assert all(r.median_ns > 0 and r.repeats == 2 and r.dim == 4 for r in rows)
    assert len(rows[0].as_csv()) == len(CSV_COLUMNS)
    assert rows[0].as_csv()[0] == "ropepool"


def test_lengths_must_ascend():
    with pytest.raises(ValueError):
        benchmark_scaling(Method.ROPE, [16, 8], dim=4, repeats=1)


def test_repeats_must_be_positive():
    with pytest.raises(ValueError):
        benchmark_scaling(Method.ROPE, [8], dim=4, repeats=0)


@pytest.mark.benchmark
def test_linear_path_scales_better_than_quadratic():
    rows = benchmark_scaling(Method.FSTRIPE1, [1024, 4096], dim=16, repeats=5)
    times = {(r.length, r.path): r.median_ns for r in rows}
    linear_ratio = times[(4096, "linear")] / times[(1024, "linear")]
    quadratic_ratio = times[(4096, "quadratic")] / times[(1024, "quadratic")]
    assert linear_ratio < quadratic_ratio
    assert times[(4096, "linear")] < times[(4096, "quadratic")]


@pytest.mark.benchmark
@pytest.mark.parametrize("method", [Method.FSTRIPE1, Method.ROPE, Method.ROPEPOOL])
def test_doubling_ratios(method):
    lengths = [256, 512, 1024, 2048]
    rows = benchmark_scaling(method, lengths, dim=64, repeats=9)
    times = {(r.length, r.path): r.median_ns for r in rows}
    for short, long in zip(lengths, lengths[1:]):
        quadratic = times[(long, "quadratic")] / times[(short, "quadratic")]
        linear = times[(long, "linear")] / times[(short, "linear")]
        assert 3.0 <= quadratic <= 5.5, (short, quadratic)
        assert 1.6 <= linear <= 2.6, (short, linear)
