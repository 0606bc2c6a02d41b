"""Closed-form D = 2 scores on unit vectors, heatmaps and narrative checks.

With contents ``(cos ψ, sin ψ)`` and scalar positions ``ξ``:

* RoPE: ``cos((ψ_q - ψ_k) + f (ξ_q - ξ_k))``
* F-StrIPE₁: ``cos(ψ_q - ψ_k) cos(f (ξ_q - ξ_k))``
* RoPEPool: ``2 cos(ψ_q + f ξ_q - π/4) cos(ψ_k + f ξ_k - π/4)``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import IndexOutOfRange, SingleContext
from ..core.params import make_params
from ..core.types import (
    FloatArray,
    InitScheme,
    Method,
    PositionalIndexSequence,
    QKMatrices,
    frozen,
)
from ..oracle.exact import exact_attention
from .dataset import ToyDataset


def toy_score(
    method: Method,
    psi_q: ArrayLike,
    xi_q: ArrayLike,
    psi_k: ArrayLike,
    xi_k: ArrayLike,
    f: float,
) -> FloatArray:
    """Score of query ``(ψ_q, ξ_q)`` against key ``(ψ_k, ξ_k)``; broadcasts."""
    pq, xq = np.asarray(psi_q, dtype=np.float64), np.asarray(xi_q, dtype=np.float64)
    pk, xk = np.asarray(psi_k, dtype=np.float64), np.asarray(xi_k, dtype=np.float64)
    if method is Method.ROPE:
        return np.cos((pq - pk) + f * (xq - xk))
    if method is Method.FSTRIPE1:
        return np.cos(pq - pk) * np.cos(f * (xq - xk))
    quarter = np.pi / 4
    return 2.0 * np.cos(pq + f * xq - quarter) * np.cos(pk + f * xk - quarter)


def toy_score_consistency(
    method: Method,
    psi_q: ArrayLike,
    xi_q: ArrayLike,
    psi_k: ArrayLike,
    xi_k: ArrayLike,
    f: ArrayLike,
) -> float:
    """Max error of :func:`toy_score` against the oracle on embedded unit vectors.

    Arguments are equal-length arrays of independent ``(query, key, f)`` cases.
    """
    cases = np.broadcast_arrays(
        *(
            np.atleast_1d(np.asarray(a, dtype=np.float64))
            for a in (psi_q, xi_q, psi_k, xi_k, f)
        )
    )
    worst = 0.0
    for pq, xq, pk, xk, freq in zip(*cases):
        units = method.unit_count(2)
        params = make_params(
            method, 2, scheme=InitScheme.EXPLICIT, frequencies=np.full(units, freq)
        )
        qk = QKMatrices([[np.cos(pq), np.sin(pq)]], [[np.cos(pk), np.sin(pk)]])
        exact = exact_attention(
            method, qk, PositionalIndexSequence.vectors([[xq]]),
            PositionalIndexSequence.vectors([[xk]]), params,
        ).values[0, 0]
        worst = max(worst, abs(float(toy_score(method, pq, xq, pk, xk, freq)) - exact))
    return worst


@dataclass(frozen=True, eq=False)
class Heatmap:
    """Scores ``values[i, j]`` at ``f_grid[i]`` for keys sorted by ascending ψ."""

    values: FloatArray
    f_grid: FloatArray
    query_index: int
    order: np.ndarray
    psi_sorted: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", frozen(self.values, ndim=2))
        object.__setattr__(self, "f_grid", frozen(self.f_grid, ndim=1))
        object.__setattr__(self, "psi_sorted", frozen(self.psi_sorted, ndim=1))

    @property
    def query_column(self) -> int:
        """Column holding the query itself."""
        return int(np.flatnonzero(self.order == self.query_index)[0])


def _query(ds: ToyDataset, query_index: int) -> tuple[float, float, int]:
    if not 0 <= query_index < len(ds):
        raise IndexOutOfRange(f"query {query_index} out of range for {len(ds)} points")
    return ds.point(query_index)


def heatmap(
    method: Method, ds: ToyDataset, query_index: int, f_grid: Sequence[float]
) -> Heatmap:
    psi_q, xi_q, _ = _query(ds, query_index)
    grid = np.asarray(f_grid, dtype=np.float64)
    order = np.argsort(ds.psi, kind="stable")
    psi_k, xi_k = ds.psi[order], ds.xi[order]
    values = np.vstack([toy_score(method, psi_q, xi_q, psi_k, xi_k, f) for f in grid]) \
        if grid.size else np.zeros((0, len(ds)))
    return Heatmap(values, grid, query_index, order, psi_k)


def mirror_asymmetry(
    method: Method, psi: float, xi: float, dpsi: float, dxi: float, f: float
) -> tuple[float, float]:
    """Scores against keys at ``(ψ + dψ, ξ + dξ)`` and ``(ψ - dψ, ξ - dξ)``."""
    plus = toy_score(method, psi, xi, psi + dpsi, xi + dxi, f)
    minus = toy_score(method, psi, xi, psi - dpsi, xi - dxi, f)
    return float(plus), float(minus)


def discriminability(
    method: Method, ds: ToyDataset, query_index: int, f: float
) -> float:
    """Mean same-context score minus mean different-context score.

    The query itself is left out of the same-context mean.
    """
    if ds.n_contexts < 2:
        raise SingleContext(
            f"discriminability needs >= 2 contexts, got {ds.n_contexts}"
        )
    psi_q, xi_q, ctx = _query(ds, query_index)
    scores = toy_score(method, psi_q, xi_q, ds.psi, ds.xi, f)
    others = np.arange(len(ds)) != query_index
    same = (ds.context == ctx) & others
    different = ds.context != ctx
    if not same.any() or not different.any():
        raise SingleContext("the query's context has no other members")
    return float(scores[same].mean() - scores[different].mean())
