"""Gram matrices, positive-definiteness checks and witness search.

Samples act as both query and key, so a Gram matrix holds the score of every
ordered pair of samples. Besides the full score, each method decomposes into
content-times-context terms (one for F-StrIPE₁, two for RoPE, four for
RoPEPool); the witness search scans all of them.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import DimensionMismatch, NonSquare
from ..core.params import make_params
from ..core.rng import box_muller, stream, uniform_open_closed
from ..core.types import (
    FloatArray,
    InitScheme,
    Method,
    PEParams,
    PositionalIndexSequence,
    QKMatrices,
)
from ..oracle.exact import (
    check_compatible,
    exact_attention,
    lags,
    pair_products,
    positional_matrix_rff,
    sums,
)

logger = logging.getLogger(__name__)

FULL_SCORE = "score"
WITNESS_RATIO = 1e-6

TERMS: dict[Method, tuple[str, ...]] = {
    Method.FSTRIPE1: ("linear_cos",),
    Method.ROPE: ("f1_cos_minus", "f2_sin_minus"),
    Method.ROPEPOOL: ("f1_cos_minus", "f2_sin_minus", "f3_sin_plus", "f4_cos_plus"),
}


@dataclass(frozen=True, eq=False)
class KernelSample:
    """One (content, position) point of a kernel."""

    content: FloatArray
    position: FloatArray

    def __post_init__(self) -> None:
        for name in ("content", "position"):
            value = np.asarray(getattr(self, name), dtype=np.float64)
            object.__setattr__(self, name, np.atleast_1d(value))


@dataclass(frozen=True, eq=False)
class Witness:
    """A sample set whose Gram for *term* has a negative eigenvalue."""

    method: Method
    term: str
    samples: tuple[KernelSample, ...]
    params: PEParams
    trial: int
    seed: int = 0


@dataclass(frozen=True, eq=False)
class PDReport:
    min_eigenvalue: float
    max_eigenvalue: float
    matrix_size: int
    is_pd: bool
    asymmetry: float = 0.0
    witness: Optional[Witness] = None


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------


def stack_samples(
    samples: Sequence[KernelSample],
) -> tuple[QKMatrices, PositionalIndexSequence]:
    """Queries, keys and positions from a sample list (queries == keys)."""
    if not samples:
        raise DimensionMismatch("a Gram matrix needs at least one sample")
    dims = {s.content.shape[0] for s in samples}
    label_dims = {s.position.shape[0] for s in samples}
    if len(dims) != 1 or len(label_dims) != 1:
        raise DimensionMismatch(
            f"samples disagree on D or L: "
            f"D in {sorted(dims)}, L in {sorted(label_dims)}"
        )
    contents = np.vstack([s.content for s in samples])
    stacked = np.vstack([s.position for s in samples])
    positions = PositionalIndexSequence.vectors(stacked)
    return QKMatrices(contents, contents), positions


def kernel_terms(
    method: Method,
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    params: PEParams,
) -> dict[str, FloatArray]:
    """Each content-times-context term of the score, summed over units."""
    check_compatible(method, qk, p_q, p_k, params)
    freqs = params.unit_frequencies
    gains = params.unit_gains
    minus = lags(p_q, p_k) @ freqs.T + params.unit_phases
    if method is Method.FSTRIPE1:
        content = qk.Q[:, None, :] * qk.K[None, :, :]
        return {"linear_cos": np.sum(gains * content * np.cos(minus), axis=2)}

    f1, f2, f3, f4 = pair_products(qk)
    terms = {
        "f1_cos_minus": np.sum(gains * f1 * np.cos(minus), axis=2),
        "f2_sin_minus": np.sum(gains * f2 * np.sin(minus), axis=2),
    }
    if method is Method.ROPEPOOL:
        plus = sums(p_q, p_k) @ freqs.T + params.unit_phases
        terms["f3_sin_plus"] = np.sum(gains * f3 * np.sin(plus), axis=2)
        terms["f4_cos_plus"] = np.sum(gains * f4 * np.cos(plus), axis=2)
    return terms


def gram_matrix(
    method: Method,
    samples: Sequence[KernelSample],
    params: PEParams,
    term: Optional[str] = None,
) -> FloatArray:
    """``G[i, j]`` = score of sample *i* as query against sample *j* as key.

    With *term* set, only that content-times-context term is used.
    """
    qk, positions = stack_samples(samples)
    if term is None or term == FULL_SCORE:
        scores = exact_attention(method, qk, positions, positions, params)
        return np.array(scores.values)
    terms = kernel_terms(method, qk, positions, positions, params)
    if term not in terms:
        raise KeyError(
            f"{method.value} has no term {term!r}; choose from {sorted(terms)}"
        )
    return terms[term]


def pd_check(gram: ArrayLike, tol: float = 1e-8) -> PDReport:
    """Eigenvalue test on the symmetrized matrix ``(G + Gᵀ) / 2``."""
    g = np.asarray(gram, dtype=np.float64)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {g.shape}")
    if g.shape[0] == 0:
        return PDReport(0.0, 0.0, 0, True)
    sym = (g + g.T) / 2.0
    eigs = np.linalg.eigvalsh(sym)
    lo, hi = float(eigs[0]), float(eigs[-1])
    scale = max(1.0, abs(hi))
    asym = float(np.max(np.abs(g - g.T))) / 2.0
    return PDReport(lo, hi, int(g.shape[0]), lo >= -tol * scale, asym)


def factorization_check(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    params: PEParams,
) -> float:
    """Max error of F-StrIPE₁ scores against ``Σ_d (q_md k_nd) · G_d(p_m, p_n)``."""
    reference = exact_attention(Method.FSTRIPE1, qk, p_q, p_k, params).values
    product = np.zeros_like(reference)
    for d in range(params.units):
        context = positional_matrix_rff(params, d, p_q, p_k).values
        product += np.outer(qk.Q[:, d], qk.K[:, d]) * context
    if reference.size == 0:
        return 0.0
    return float(np.max(np.abs(reference - product)))


# ---------------------------------------------------------------------------
# Witness search
# ---------------------------------------------------------------------------


def _violates(report: PDReport) -> bool:
    scale = max(abs(report.max_eigenvalue), abs(report.min_eigenvalue))
    return scale > 0 and report.min_eigenvalue < -WITNESS_RATIO * scale


def _trial(
    method: Method, n_points: int, dim: int, label_dim: int, seed: int, trial: int
) -> tuple[Optional[PDReport], float]:
    gen = stream(seed, trial)
    contents = box_muller(gen, (n_points, dim))
    positions = 2.0 * np.pi * uniform_open_closed(gen, (n_points, label_dim))
    params = make_params(
        method, dim, label_dim, scheme=InitScheme.RANDOM_UNIFORM, seed=seed + trial
    )
    samples = tuple(KernelSample(c, p) for c, p in zip(contents, positions))
    worst = np.inf
    for term in (FULL_SCORE, *TERMS[method]):
        report = pd_check(gram_matrix(method, samples, params, term))
        if _violates(report):
            witness = Witness(method, term, samples, params, trial, seed)
            return replace(report, is_pd=False, witness=witness), report.min_eigenvalue
        worst = min(worst, report.min_eigenvalue)
    return None, worst


def pd_witness_search(
    method: Method,
    n_points: int,
    budget: int,
    seed: int = 0,
    dim: int = 2,
    label_dim: int = 1,
    workers: int = 1,
) -> PDReport:
    """Random search for a sample set violating positive semidefiniteness.

    Trials are independent; the witness returned is the one with the lowest
    trial index regardless of *workers*. Without a hit, the report carries
    the lowest eigenvalue seen and ``witness`` is ``None``.
    """
    if n_points < 2:
        raise ValueError(f"witness search needs n_points >= 2, got {n_points}")
    lowest = 0.0
    chunk = max(1, workers) * 16
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        for start in range(0, budget, chunk):
            trials = range(start, min(budget, start + chunk))
            results = pool.map(
                lambda t: _trial(method, n_points, dim, label_dim, seed, t), trials
            )
            for report, worst in results:
                if report is not None and report.witness is not None:
                    logger.debug(
                        "witness for %s found at trial %d (term %s)",
                        method.value,
                        report.witness.trial,
                        report.witness.term,
                    )
                    return report
                lowest = min(lowest, worst)
    logger.debug("no witness for %s within %d trials", method.value, budget)
    return PDReport(lowest, 0.0, n_points, True)
