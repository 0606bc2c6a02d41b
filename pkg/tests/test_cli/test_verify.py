import pytest

import src.cli.commands.verify as verify
from src.core.types import Method


@pytest.mark.parametrize("method", list(Method))
def test_gradient_suite_passes_absolute_bound(method):
    result = verify.suite_gradient(seed=0, trials=3, only=method)
    assert result["passed"], result
    assert result["max_error"] <= 1e-6


def test_gradient_suite_error_is_not_rescaled(monkeypatch):
    exact = verify.frequency_gradient

    def shifted(*args, **kwargs):
        return exact(*args, **kwargs) + 2e-6

    monkeypatch.setattr(verify, "frequency_gradient", shifted)
    result = verify.suite_gradient(seed=0, trials=1, only=Method.ROPE)
    assert not result["passed"]
    assert result["max_error"] > 1e-6
