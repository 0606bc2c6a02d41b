"""Stochastic positional encoding with sinusoidal frequency features.

For unit ``d`` the noisy positional features are

    P̃_d = Ω(P, f_d, θ_d) · diag(λ̈_d) · Z_d / sqrt(2 N_f)

where ``Ω`` stacks ``cos`` and ``sin`` columns of ``<f_ω, p> + θ_ω`` for each
of the ``N_f`` frequencies and ``Z_d`` is a ``2 N_f x R`` standard Gaussian
matrix shared by the query and key sides. ``P̃^Q_d P̃^K_dᵀ / R`` approximates
the positional matrix

    (1 / N_f) Σ_ω Λ_ω cos(<f_ω, p_m - p_n> + Θ_ω),  Λ = λ̈² / 2, Θ = θ^Q - θ^K

which :func:`ideal_positional_matrix` evaluates directly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import DimensionMismatch
from ..core.rng import box_muller, stream
from ..core.types import (
    FloatArray,
    Method,
    MethodTag,
    PEParams,
    Pooling,
    PositionalIndexSequence,
    QKMatrices,
    ScoreMatrix,
    Side,
    frozen,
)
from ..oracle.exact import PositionalMatrix, lags

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SFFConfig:
    """Realization count, frequencies, gains and phases for every unit.

    ``frequencies`` has shape ``(D, N_f, L)``; ``gains``, ``phases_q`` and
    ``phases_k`` have shape ``(D, N_f)``.
    """

    realizations: int
    frequencies: FloatArray
    gains: FloatArray
    phases_q: FloatArray
    phases_k: FloatArray
    seed: int = 0

    def __post_init__(self) -> None:
        if self.realizations < 1:
            raise ValueError(
                f"need at least one realization, got R={self.realizations}"
            )
        freqs = frozen(self.frequencies, ndim=3)
        dim, n_freq = freqs.shape[:2]
        if n_freq < 1:
            raise ValueError("need at least one frequency per unit")
        for name in ("gains", "phases_q", "phases_k"):
            arr = frozen(getattr(self, name), ndim=2)
            if arr.shape != (dim, n_freq):
                raise DimensionMismatch(
                    f"{name} must have shape {(dim, n_freq)}, got {arr.shape}"
                )
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "frequencies", freqs)

    @property
    def dim(self) -> int:
        return int(self.frequencies.shape[0])

    @property
    def n_freq(self) -> int:
        return int(self.frequencies.shape[1])

    @property
    def label_dim(self) -> int:
        return int(self.frequencies.shape[2])

    @classmethod
    def from_params(
        cls, params: PEParams, realizations: int, seed: int = 0
    ) -> SFFConfig:
        """Single-frequency configuration whose limit is the F-StrIPE₁ oracle.

        Uses ``λ̈ = sqrt(2 Λ)`` and puts the whole phase on the query side.
        """
        if params.method is not Method.FSTRIPE1:
            raise DimensionMismatch(
                f"SFF limits only exist for fstripe1 params, got {params.method.value}"
            )
        return cls(
            realizations=realizations,
            frequencies=params.unit_frequencies[:, None, :],
            gains=np.sqrt(2.0 * params.unit_gains)[:, None],
            phases_q=params.unit_phases[:, None],
            phases_k=np.zeros((params.units, 1)),
            seed=seed,
        )


# ---------------------------------------------------------------------------
# Features
# ---------------------------------------------------------------------------


def _omega(positions: FloatArray, cfg: SFFConfig, side: Side, unit: int) -> FloatArray:
    """``T x 2N_f`` matrix: cos block then sin block, each gain-scaled."""
    if positions.shape[1] != cfg.label_dim:
        raise DimensionMismatch(
            f"positions have L={positions.shape[1]}, frequencies have L={cfg.label_dim}"
        )
    if not 0 <= unit < cfg.dim:
        raise DimensionMismatch(f"unit {unit} out of range for D={cfg.dim}")
    phases = cfg.phases_q if side is Side.QUERY else cfg.phases_k
    angles = positions @ cfg.frequencies[unit].T + phases[unit]
    gains = cfg.gains[unit]
    return np.hstack([np.cos(angles) * gains, np.sin(angles) * gains])


def noise_matrix(cfg: SFFConfig, unit: int, seed: Optional[int] = None) -> FloatArray:
    """``Z_d``: ``2N_f x R`` Box-Muller normals from stream ``(seed, unit)``."""
    key_seed = cfg.seed if seed is None else seed
    return box_muller(stream(key_seed, unit), (2 * cfg.n_freq, cfg.realizations))


def sff_features(
    positions: PositionalIndexSequence,
    cfg: SFFConfig,
    side: Side,
    unit: int,
    _noise: Optional[ArrayLike] = None,
    seed: Optional[int] = None,
) -> FloatArray:
    """Noisy positional features ``P̃_d`` of shape ``(T, R)``.

    ``_noise`` replaces ``Z_d`` (internal test hook); *seed* overrides the
    configuration seed for this side only.
    """
    omega = _omega(positions.entries, cfg, side, unit)
    z = noise_matrix(cfg, unit, seed) if _noise is None else np.asarray(
        _noise, dtype=np.float64
    )
    return omega @ z / np.sqrt(2.0 * cfg.n_freq)


def rff_features(
    positions: PositionalIndexSequence, cfg: SFFConfig, side: Side, unit: int
) -> FloatArray:
    """Deterministic ``Ω · diag(λ̈) / sqrt(2N_f)`` features, shape ``(T, 2N_f)``."""
    return _omega(positions.entries, cfg, side, unit) / np.sqrt(2.0 * cfg.n_freq)


def ideal_positional_matrix(
    cfg: SFFConfig,
    unit: int,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
) -> PositionalMatrix:
    """Limit of ``P̃^Q_d P̃^K_dᵀ / R`` as ``R`` grows."""
    lag = lags(p_q, p_k)
    if lag.shape[2] != cfg.label_dim:
        raise DimensionMismatch(
            f"positions have L={lag.shape[2]}, frequencies have L={cfg.label_dim}"
        )
    theta = cfg.phases_q[unit] - cfg.phases_k[unit]
    strength = cfg.gains[unit] ** 2 / 2.0
    values = np.cos(lag @ cfg.frequencies[unit].T + theta) @ strength / cfg.n_freq
    return PositionalMatrix(values, unit)


# ---------------------------------------------------------------------------
# Scores
# ---------------------------------------------------------------------------


def _check(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    cfg: SFFConfig,
) -> None:
    if qk.dim != cfg.dim:
        raise DimensionMismatch(f"config has D={cfg.dim}, inputs have D={qk.dim}")
    if p_q.length != qk.Q.shape[0] or p_k.length != qk.K.shape[0]:
        raise DimensionMismatch(
            f"position lengths ({p_q.length}, {p_k.length}) do not match "
            f"T_Q={qk.Q.shape[0]}, T_K={qk.K.shape[0]}"
        )


def _combine(
    qk: QKMatrices,
    q_feats: list[FloatArray],
    k_feats: list[FloatArray],
    pooling: Pooling,
    scale: float,
) -> FloatArray:
    t_q, t_k = qk.Q.shape[0], qk.K.shape[0]
    if pooling is Pooling.UNPOOLED:
        out = np.zeros((t_q, t_k))
        for d, (fq, fk) in enumerate(zip(q_feats, k_feats)):
            out += np.outer(qk.Q[:, d], qk.K[:, d]) * (fq @ fk.T)
        return out / scale
    width = q_feats[0].shape[1] if q_feats else 0
    pooled_q = np.zeros((t_q, width))
    pooled_k = np.zeros((t_k, width))
    for d, (fq, fk) in enumerate(zip(q_feats, k_feats)):
        pooled_q += qk.Q[:, d][:, None] * fq
        pooled_k += qk.K[:, d][:, None] * fk
    return pooled_q @ pooled_k.T / scale


def spe_attention(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    cfg: SFFConfig,
    pooling: Pooling = Pooling.UNPOOLED,
    key_seed: Optional[int] = None,
) -> ScoreMatrix:
    """Stochastic scores from ``R`` feature realizations per unit.

    Unpooled scores sum ``q_md k_nd (P̃^Q_d P̃^K_dᵀ)[m, n] / R`` over units;
    pooled scores first sum ``diag(Q_:,d) P̃^Q_d`` over units. Passing a
    *key_seed* different from ``cfg.seed`` draws independent key-side noise.
    """
    _check(qk, p_q, p_k, cfg)
    q_feats = [sff_features(p_q, cfg, Side.QUERY, d) for d in range(cfg.dim)]
    k_feats = [
        sff_features(p_k, cfg, Side.KEY, d, seed=key_seed) for d in range(cfg.dim)
    ]
    values = _combine(qk, q_feats, k_feats, pooling, float(cfg.realizations))
    logger.debug(
        "spe_attention R=%d N_f=%d D=%d pooling=%s", cfg.realizations, cfg.n_freq,
        cfg.dim, pooling.value,
    )
    return ScoreMatrix(values, MethodTag.SPE)


def rff_attention(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    cfg: SFFConfig,
    pooling: Pooling = Pooling.UNPOOLED,
) -> ScoreMatrix:
    """Noise-free counterpart of :func:`spe_attention`."""
    _check(qk, p_q, p_k, cfg)
    q_feats = [rff_features(p_q, cfg, Side.QUERY, d) for d in range(cfg.dim)]
    k_feats = [rff_features(p_k, cfg, Side.KEY, d) for d in range(cfg.dim)]
    tag = (
        MethodTag.TRANSFORM_POOLED
        if pooling is Pooling.POOLED
        else MethodTag.TRANSFORM_UNPOOLED
    )
    return ScoreMatrix(_combine(qk, q_feats, k_feats, pooling, 1.0), tag)


# ---------------------------------------------------------------------------
# Empirical covariance
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CovarianceStats:
    """Per-trial ``α = mean(υ²)`` and ``β = mean(υ ν)`` samples."""

    alpha: FloatArray
    beta: FloatArray


def covariance_stats(realizations: int, trials: int, seed: int = 0) -> CovarianceStats:
    if realizations < 1 or trials < 1:
        raise ValueError(
            f"need R >= 1 and trials >= 1, got R={realizations}, trials={trials}"
        )
    alpha = np.empty(trials)
    beta = np.empty(trials)
    for t in range(trials):
        draws = box_muller(stream(seed, realizations, t), (2, realizations))
        upsilon, nu = draws[0], draws[1]
        alpha[t] = np.mean(upsilon * upsilon)
        beta[t] = np.mean(upsilon * nu)
    return CovarianceStats(frozen(alpha), frozen(beta))
