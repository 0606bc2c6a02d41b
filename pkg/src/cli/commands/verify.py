"""Verification suites behind ``stripes verify``.

Every suite compares two independent code paths (or checks an invariant) on
seeded random instances and reports its worst error. Suites never raise on a
failed comparison; they return ``passed=False``.
"""

from __future__ import annotations

import logging
import time
from typing import Callable, Optional, TypedDict

import numpy as np

from ...attention.feature_maps import ExpRandomFeatures, PositiveShift
from ...attention.paths import linear_path, quadratic_path
from ...config import Config
from ...core.params import make_params
from ...core.rng import gaussian, stream, uniform_open_closed
from ...core.types import (
    InitScheme,
    Method,
    PEParams,
    Pooling,
    PositionalIndexSequence,
    QKMatrices,
)
from ...features.transforms import SUPPORTED, transform_attention
from ...kernels.analysis import KernelSample, gram_matrix, pd_check, pd_witness_search
from ...oracle.exact import (
    canonical_attention,
    exact_attention,
    frequency_gradient,
    positional_matrix_rff,
)
from ...oracle.properties import (
    ROPEPOOL_MIRROR_WITNESS,
    ROPEPOOL_SHIFT_WITNESS,
    mirror_scores,
    shift_gap,
    tie_pair_frequencies,
)
from ...toy.scores import mirror_asymmetry, toy_score, toy_score_consistency

logger = logging.getLogger(__name__)

MIRROR_GAP = 0.1


class SuiteResult(TypedDict):
    suite: str
    passed: bool
    max_error: float
    detail: str


def _instance(
    method: Method,
    seed: int,
    trial: int,
    length: int = 16,
    dim: int = 8,
    label_dim: int = 1,
    span: float = 8.0,
) -> tuple[QKMatrices, PositionalIndexSequence, PositionalIndexSequence, PEParams]:
    """Random Gaussian queries/keys/values at positions drawn from ``(0, span]``."""
    gen = stream(seed, trial, length, dim)
    qk = QKMatrices(
        gaussian(seed, (length, dim), trial, 0),
        gaussian(seed, (length, dim), trial, 1),
        gaussian(seed, (length, 3), trial, 2),
    )
    p_q = PositionalIndexSequence.vectors(
        span * uniform_open_closed(gen, (length, label_dim))
    )
    p_k = PositionalIndexSequence.vectors(
        span * uniform_open_closed(gen, (length, label_dim))
    )
    params = make_params(
        method, dim, label_dim, scheme=InitScheme.RANDOM_UNIFORM, seed=seed + trial
    )
    return qk, p_q, p_k, params


def _methods(only: Optional[Method]) -> list[Method]:
    return [only] if only is not None else list(Method)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_equivalence(seed: int, trials: int, only: Optional[Method]) -> SuiteResult:
    worst = 0.0
    for method in _methods(only):
        for t in range(trials):
            qk, p_q, p_k, params = _instance(method, seed, t)
            exact = exact_attention(method, qk, p_q, p_k, params)
            for pooling in SUPPORTED[method]:
                if method is Method.FSTRIPE1 and pooling is Pooling.POOLED:
                    continue
                fast = transform_attention(qk, p_q, p_k, method, params, pooling)
                worst = max(worst, exact.max_abs_diff(fast))
    return SuiteResult(
        suite="equivalence",
        passed=worst <= Config.EXACT_TOL,
        max_error=worst,
        detail="transform vs oracle",
    )


def suite_canonical(seed: int, trials: int, only: Optional[Method]) -> SuiteResult:
    worst = 0.0
    for t in range(trials):
        qk, p_q, p_k, params = _instance(Method.FSTRIPE1, seed, t)
        pmats = [
            positional_matrix_rff(params, d, p_q, p_k) for d in range(params.units)
        ]
        canon = canonical_attention(qk, pmats)
        worst = max(
            worst,
            canon.max_abs_diff(exact_attention(Method.FSTRIPE1, qk, p_q, p_k, params)),
        )
    return SuiteResult(
        suite="canonical",
        passed=worst <= Config.EXACT_TOL,
        max_error=worst,
        detail="fstripe1 positional matrices",
    )


def suite_mirror(seed: int, trials: int, only: Optional[Method]) -> SuiteResult:
    worst = 0.0
    for t in range(trials):
        gen = stream(seed, t, 7)
        content = gaussian(seed, 8, t, 7)
        position = 8.0 * uniform_open_closed(gen, 1)
        rotation = 2.0 * np.pi * uniform_open_closed(gen, 4)
        lag = 4.0 * uniform_open_closed(gen, 1)
        for method in (Method.ROPE, Method.FSTRIPE1):
            params = make_params(
                method, 8, scheme=InitScheme.RANDOM_UNIFORM, seed=seed + t
            )
            if method is Method.FSTRIPE1:
                params = tie_pair_frequencies(params)
            plus, minus = mirror_scores(
                method, content, position, rotation, lag, params
            )
            worst = max(worst, abs(plus - minus))
    w = ROPEPOOL_MIRROR_WITNESS
    plus, minus = mirror_asymmetry(
        Method.ROPEPOOL, w["psi"], w["xi"], w["dpsi"], w["dxi"], w["frequency"]
    )
    gap = abs(plus - minus)
    return SuiteResult(
        suite="mirror",
        passed=worst <= Config.EXACT_TOL and gap > MIRROR_GAP,
        max_error=worst,
        detail=f"ropepool witness gap {gap:.4f}",
    )


def suite_shift(seed: int, trials: int, only: Optional[Method]) -> SuiteResult:
    worst = 0.0
    for method in (Method.FSTRIPE1, Method.ROPE):
        for t in range(trials):
            qk, p_q, p_k, params = _instance(method, seed, t)
            offset = 10.0 * uniform_open_closed(stream(seed, t, 9), 1)
            worst = max(worst, shift_gap(method, qk, p_q, p_k, params, offset))
    w = ROPEPOOL_SHIFT_WITNESS
    params = make_params(
        Method.ROPEPOOL, 2, scheme=InitScheme.EXPLICIT, frequencies=[w["frequency"]]
    )
    qk = QKMatrices([[w["q0"], w["q1"]]], [[w["k0"], w["k1"]]])
    gap = shift_gap(
        Method.ROPEPOOL,
        qk,
        PositionalIndexSequence.vectors([[w["p_q"]]]),
        PositionalIndexSequence.vectors([[w["p_k"]]]),
        params,
        [w["offset"]],
    )
    return SuiteResult(
        suite="shift",
        passed=worst <= Config.LINEAR_TOL and gap > MIRROR_GAP,
        max_error=worst,
        detail=f"ropepool witness gap {gap:.4f}",
    )


def suite_toy(seed: int, trials: int, only: Optional[Method]) -> SuiteResult:
    gen = stream(seed, 11)
    cases = 1000
    psi_q, psi_k = (np.pi * uniform_open_closed(gen, cases) for _ in range(2))
    xi_q, xi_k = (np.pi * uniform_open_closed(gen, cases) for _ in range(2))
    f = uniform_open_closed(gen, cases)
    worst = max(
        toy_score_consistency(m, psi_q, xi_q, psi_k, xi_k, f) for m in _methods(only)
    )
    return SuiteResult(
        suite="toy",
        passed=worst <= Config.EXACT_TOL,
        max_error=worst,
        detail=f"{cases} angular cases",
    )


def suite_and_gate(seed: int, trials: int, only: Optional[Method]) -> SuiteResult:
    gen = stream(seed, 13)
    cases = 1000
    psi_q, psi_k, xi_q, xi_k = (
        np.pi * uniform_open_closed(gen, cases) for _ in range(4)
    )
    f = uniform_open_closed(gen, cases)
    score = np.abs(toy_score(Method.FSTRIPE1, psi_q, xi_q, psi_k, xi_k, f))
    bound = np.minimum(
        np.abs(np.cos(psi_q - psi_k)), np.abs(np.cos(f * (xi_q - xi_k)))
    )
    excess = float(np.max(score - bound))
    return SuiteResult(
        suite="and-gate",
        passed=excess <= Config.EXACT_TOL,
        max_error=max(excess, 0.0),
        detail="fstripe1 product bound",
    )


def suite_linear(seed: int, trials: int, only: Optional[Method]) -> SuiteResult:
    worst = 0.0
    variants = (PositiveShift(), ExpRandomFeatures(r=16, seed=seed))
    for method in _methods(only):
        for t in range(trials):
            qk, p_q, p_k, params = _instance(method, seed, t, length=32)
            for pooling in SUPPORTED[method]:
                for variant in variants:
                    lin = linear_path(qk, p_q, p_k, method, params, pooling, variant)
                    quad = quadratic_path(
                        qk, p_q, p_k, method, params, pooling, variant
                    )
                    worst = max(worst, float(np.max(np.abs(lin.Y - quad.Y))))
    return SuiteResult(
        suite="linear",
        passed=worst <= Config.LINEAR_TOL,
        max_error=worst,
        detail="linear vs quadratic path",
    )


def suite_gradient(seed: int, trials: int, only: Optional[Method]) -> SuiteResult:
    step = 1e-5
    worst = 0.0
    for method in _methods(only):
        for t in range(trials):
            qk, p_q, p_k, params = _instance(
                method, seed, t, length=8, dim=4, label_dim=2, span=1.0
            )
            for unit in range(params.units):
                analytic = frequency_gradient(method, qk, p_q, p_k, params, unit)
                for comp in range(params.label_dim):
                    hi, lo = params.frequencies.copy(), params.frequencies.copy()
                    hi[0, unit, comp] += step
                    lo[0, unit, comp] -= step
                    up = params.with_values(frequencies=hi)
                    down = params.with_values(frequencies=lo)
                    diff = (
                        exact_attention(method, qk, p_q, p_k, up).values
                        - exact_attention(method, qk, p_q, p_k, down).values
                    ) / (2 * step)
                    error = float(np.max(np.abs(diff - analytic[:, :, comp])))
                    worst = max(worst, error)
    return SuiteResult(
        suite="gradient",
        passed=worst <= 1e-6,
        max_error=worst,
        detail="central differences, absolute",
    )


def suite_pd(seed: int, trials: int, only: Optional[Method]) -> SuiteResult:
    budget = max(100, trials)
    notes = []
    passed = True
    worst = 0.0
    methods = _methods(only)
    if Method.FSTRIPE1 in methods:
        gen = stream(seed, 17)
        params = make_params(
            Method.FSTRIPE1, 6, scheme=InitScheme.RANDOM_UNIFORM, seed=seed
        )
        contents = gaussian(seed, (50, 6), 17)
        positions = 8.0 * uniform_open_closed(gen, (50, 1))
        samples = [KernelSample(c, p) for c, p in zip(contents, positions)]
        report = pd_check(gram_matrix(Method.FSTRIPE1, samples, params), tol=1e-8)
        passed &= report.is_pd
        worst = max(worst, -report.min_eigenvalue / max(1.0, report.max_eigenvalue))
        notes.append(f"fstripe1 min eig {report.min_eigenvalue:.3e}")
        search = pd_witness_search(
            Method.FSTRIPE1, 3, budget, seed, workers=Config.workers()
        )
        passed &= search.witness is None
    for method in (m for m in methods if m.pair_based):
        search = pd_witness_search(method, 3, budget, seed, workers=Config.workers())
        if search.witness is None:
            passed = False
            notes.append(f"{method.value}: no witness in {budget} trials")
        else:
            w = search.witness
            notes.append(
                f"{method.value}: witness trial {w.trial} term {w.term} "
                f"eig {search.min_eigenvalue:.4f}"
            )
    return SuiteResult(
        suite="pd",
        passed=passed,
        max_error=max(worst, 0.0),
        detail="; ".join(notes),
    )


SUITES: dict[str, Callable[[int, int, Optional[Method]], SuiteResult]] = {
    "equivalence": suite_equivalence,
    "canonical": suite_canonical,
    "mirror": suite_mirror,
    "shift": suite_shift,
    "toy": suite_toy,
    "and-gate": suite_and_gate,
    "linear": suite_linear,
    "gradient": suite_gradient,
    "pd": suite_pd,
}


def run_suites(
    names: list[str], seed: int, trials: int, only: Optional[Method] = None
) -> list[SuiteResult]:
    results = []
    for name in names:
        start = time.perf_counter()
        results.append(SUITES[name](seed, trials, only))
        logger.debug("suite %s took %.3fs", name, time.perf_counter() - start)
    return results
