"""Brute-force reference computation of PE-enriched attention.

Every score here is evaluated term by term from the closed forms, starting
from the explicit lag ``p_m - p_n`` (and sum ``p_m + p_n`` for RoPEPool)
of every query/key pair. The fast paths in :mod:`src.features` and
:mod:`src.attention` are tested against these functions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..core.errors import DimensionMismatch, UnitCountMismatch
from ..core.types import (
    FloatArray,
    Method,
    MethodTag,
    PEParams,
    PositionalIndexSequence,
    QKMatrices,
    ScoreMatrix,
    frozen,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PositionalMatrix:
    """``T_Q x T_K`` positional factor ``P_d`` of one unit."""

    values: FloatArray
    unit: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", frozen(self.values, ndim=2))


# ---------------------------------------------------------------------------
# Shared pieces
# ---------------------------------------------------------------------------


def check_compatible(
    method: Method,
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    params: PEParams,
) -> None:
    """Raise :class:`DimensionMismatch` unless all inputs line up."""
    if params.method is not method:
        raise DimensionMismatch(
            f"params were built for {params.method.value}, not {method.value}"
        )
    if params.dim != qk.dim:
        raise DimensionMismatch(f"params expect D={params.dim}, inputs have D={qk.dim}")
    if p_q.length != qk.Q.shape[0] or p_k.length != qk.K.shape[0]:
        raise DimensionMismatch(
            f"position lengths ({p_q.length}, {p_k.length}) do not match "
            f"T_Q={qk.Q.shape[0]}, T_K={qk.K.shape[0]}"
        )
    for seq in (p_q, p_k):
        if seq.label_dim != params.label_dim:
            raise DimensionMismatch(
                f"positions have L={seq.label_dim}, "
                f"frequencies have L={params.label_dim}"
            )


def lags(p_q: PositionalIndexSequence, p_k: PositionalIndexSequence) -> FloatArray:
    """``(T_Q, T_K, L)`` array of ``p_m - p_n``."""
    return p_q.entries[:, None, :] - p_k.entries[None, :, :]


def sums(p_q: PositionalIndexSequence, p_k: PositionalIndexSequence) -> FloatArray:
    """``(T_Q, T_K, L)`` array of ``p_m + p_n``."""
    return p_q.entries[:, None, :] + p_k.entries[None, :, :]


def pair_products(
    qk: QKMatrices
) -> tuple[FloatArray, FloatArray, FloatArray, FloatArray]:
    """Content factors per pair, each ``(T_Q, T_K, D/2)``.

    Returns ``F1 = q1 k1 + q2 k2``, ``F2 = q1 k2 - q2 k1``,
    ``F3 = q1 k1 - q2 k2`` and ``F4 = q1 k2 + q2 k1``.
    """
    q1, q2 = qk.Q[:, 0::2][:, None, :], qk.Q[:, 1::2][:, None, :]
    k1, k2 = qk.K[:, 0::2][None, :, :], qk.K[:, 1::2][None, :, :]
    return (q1 * k1 + q2 * k2, q1 * k2 - q2 * k1, q1 * k1 - q2 * k2, q1 * k2 + q2 * k1)


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def positional_matrix_rff(
    params: PEParams,
    unit: int,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
) -> PositionalMatrix:
    """``P_d[m, n] = Λ_d cos(<f_d, p_m - p_n> + Θ_d)`` for a single unit."""
    for seq in (p_q, p_k):
        if seq.label_dim != params.label_dim:
            raise DimensionMismatch(
                f"positions have L={seq.label_dim}, "
                f"frequencies have L={params.label_dim}"
            )
    freq = params.unit_frequencies[unit]
    phase = lags(p_q, p_k) @ freq + params.unit_phases[unit]
    return PositionalMatrix(params.unit_gains[unit] * np.cos(phase), unit)


def unit_scores(
    method: Method,
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    params: PEParams,
) -> FloatArray:
    """Per-unit score contributions ``a^d_mn``, shape ``(T_Q, T_K, units)``."""
    check_compatible(method, qk, p_q, p_k, params)
    freqs = params.unit_frequencies
    gains = params.unit_gains
    phases = params.unit_phases
    minus = lags(p_q, p_k) @ freqs.T + phases

    if method is Method.FSTRIPE1:
        content = qk.Q[:, None, :] * qk.K[None, :, :]
        return gains * content * np.cos(minus)

    f1, f2, f3, f4 = pair_products(qk)
    terms = f1 * np.cos(minus) + f2 * np.sin(minus)
    if method is Method.ROPEPOOL:
        plus = sums(p_q, p_k) @ freqs.T + phases
        terms = terms + f3 * np.sin(plus) + f4 * np.cos(plus)
    return gains * terms


def exact_attention(
    method: Method,
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    params: PEParams,
) -> ScoreMatrix:
    """Reference scores for F-StrIPE₁, RoPE or RoPEPool."""
    per_unit = unit_scores(method, qk, p_q, p_k, params)
    logger.debug(
        "exact_attention %s T_Q=%d T_K=%d D=%d",
        method.value,
        *per_unit.shape[:2],
        qk.dim,
    )
    return ScoreMatrix(per_unit.sum(axis=2), MethodTag.EXACT)


def canonical_attention(
    qk: QKMatrices, pmats: Sequence[PositionalMatrix]
) -> ScoreMatrix:
    """``a_mn = Σ_d q_md P_d[m, n] k_nd`` with one positional matrix per dimension."""
    if len(pmats) != qk.dim:
        raise UnitCountMismatch(
            f"canonical form needs {qk.dim} positional matrices, got {len(pmats)}"
        )
    t_q, t_k = qk.Q.shape[0], qk.K.shape[0]
    stacked = np.zeros((qk.dim, t_q, t_k))
    for d, pm in enumerate(pmats):
        if pm.values.shape != (t_q, t_k):
            raise DimensionMismatch(
                f"positional matrix {d} has shape "
                f"{pm.values.shape}, expected {(t_q, t_k)}"
            )
        stacked[d] = pm.values
    values = np.einsum("md,dmn,nd->mn", qk.Q, stacked, qk.K)
    return ScoreMatrix(values, MethodTag.EXACT)


def frequency_gradient(
    method: Method,
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    params: PEParams,
    unit: int,
) -> FloatArray:
    """Analytic ``∂a_mn / ∂f_d`` for unit *unit*, shape ``(T_Q, T_K, L)``.

    Only unit *unit* depends on ``f_d``, so the derivative of the full score
    equals that of the unit's own contribution.
    """
    check_compatible(method, qk, p_q, p_k, params)
    if not 0 <= unit < params.units:
        raise DimensionMismatch(f"unit {unit} out of range for {params.units} units")
    freq = params.unit_frequencies[unit]
    gain = params.unit_gains[unit]
    phase = params.unit_phases[unit]
    lag = lags(p_q, p_k)
    minus = lag @ freq + phase

    if method is Method.FSTRIPE1:
        content = qk.Q[:, unit][:, None] * qk.K[:, unit][None, :]
        return (-gain * content * np.sin(minus))[:, :, None] * lag

    f1, f2, f3, f4 = (f[:, :, unit] for f in pair_products(qk))
    grad = (-f1 * np.sin(minus) + f2 * np.cos(minus))[:, :, None] * lag
    if method is Method.ROPEPOOL:
        total = sums(p_q, p_k)
        plus = total @ freq + phase
        grad = grad + (f3 * np.cos(plus) - f4 * np.sin(plus))[:, :, None] * total
    return gain * grad
