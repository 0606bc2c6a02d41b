"""Parameter constructors, including the frequency-initialization variants.

Exponential schemes are deterministic and ignore the seed. Random schemes
draw from the ``(seed, heads, units)`` stream so that identical calls yield
bit-identical parameters.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from ..config import Config
from .errors import BadBase, DimensionMismatch
from .rng import stream, uniform_open_closed
from .types import FloatArray, InitScheme, Method, PEParams

logger = logging.getLogger(__name__)


def exponential_frequencies(
    method: Method,
    dim: int,
    base: Optional[float] = None,
    heads: int = 1,
    per_head: bool = False,
) -> FloatArray:
    """Exponentially spaced scalar frequencies, shape ``(heads, units)``.

    Pair-based units use ``base^(-2u/D)``; single-dimension units use
    ``base^(-u/D)`` so both cover the same range. With *per_head* the grid
    is interleaved: head ``h`` shifts the exponent by ``h/heads`` of a step.
    *base* defaults to ``Config.ROPE_BASE`` (``STRIPES_ROPE_BASE``).
    """
    base = Config.ROPE_BASE if base is None else base
    if base <= 1.0:
        raise BadBase(f"exponential base must be > 1, got {base}")
    units = method.unit_count(dim)
    step = 2.0 / dim if method.pair_based else 1.0 / dim
    grid = np.arange(units, dtype=np.float64)
    rows = []
    for h in range(heads):
        offset = h / heads if per_head else 0.0
        rows.append(base ** (-(grid + offset) * step))
    return np.stack(rows)


def make_params(
    method: Method,
    dim: int,
    label_dim: int = 1,
    scheme: InitScheme = InitScheme.EXPONENTIAL_SHARED,
    base: Optional[float] = None,
    seed: int = 0,
    heads: int = 1,
    frequencies: Optional[ArrayLike] = None,
    gains: Optional[ArrayLike] = None,
    phases: Optional[ArrayLike] = None,
) -> PEParams:
    """Build :class:`PEParams` for *method* at model dimension *dim*.

    Parameters
    ----------
    method:
        F-StrIPE₁ uses one unit per dimension, RoPE/RoPEPool one per pair.
    dim:
        Model dimension ``D``; must be even for pair-based methods.
    label_dim:
        Dimension ``L`` of the positional labels.
    scheme:
        Frequency initialization. ``EXPLICIT`` requires *frequencies*, given
        as ``(units,)``, ``(units, L)`` or ``(heads, units, L)``.
    base:
        Exponential base for the exponential schemes; ``None`` reads
        ``Config.ROPE_BASE``.
    seed:
        Seed for ``RANDOM_UNIFORM``; ignored otherwise.
    heads:
        Number of heads.
    gains, phases:
        Optional per-unit overrides, broadcast to ``(heads, units)``.
        Defaults are unit gains and zero phases.
    """
    if dim < 1:
        raise DimensionMismatch(f"model dimension must be >= 1, got {dim}")
    if label_dim < 1:
        raise DimensionMismatch(f"label dimension must be >= 1, got {label_dim}")
    units = method.unit_count(dim)
    base = Config.ROPE_BASE if base is None else base

    if scheme in (InitScheme.EXPONENTIAL_SHARED, InitScheme.EXPONENTIAL_PER_HEAD):
        scalar = exponential_frequencies(
            method,
            dim,
            base,
            heads,
            per_head=scheme is InitScheme.EXPONENTIAL_PER_HEAD,
        )
        freqs = np.repeat(scalar[:, :, None], label_dim, axis=2)
    elif scheme is InitScheme.RANDOM_UNIFORM:
        gen = stream(seed, heads, units, label_dim)
        freqs = uniform_open_closed(gen, (heads, units, label_dim))
    else:
        if frequencies is None:
            raise ValueError("EXPLICIT initialization requires frequencies")
        freqs = _broadcast_frequencies(frequencies, heads, units, label_dim)

    gain_arr = np.broadcast_to(
        np.ones(units) if gains is None else np.asarray(gains, dtype=np.float64),
        (heads, units),
    )
    phase_arr = np.broadcast_to(
        np.zeros(units) if phases is None else np.asarray(phases, dtype=np.float64),
        (heads, units),
    )
    logger.debug(
        "make_params method=%s D=%d L=%d scheme=%s heads=%d",
        method.value,
        dim,
        label_dim,
        scheme.value,
        heads,
    )
    return PEParams(
        method=method,
        dim=dim,
        frequencies=freqs,
        gains=gain_arr,
        phases=phase_arr,
        init_scheme=scheme,
        base=base,
    )


def _broadcast_frequencies(
    frequencies: ArrayLike, heads: int, units: int, label_dim: int
) -> FloatArray:
    arr = np.asarray(frequencies, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim == 2:
        arr = arr[None, :, :]
    if arr.shape[1] != units or arr.shape[2] not in (1, label_dim):
        raise DimensionMismatch(
            f"explicit frequencies of shape {arr.shape} do not fit "
            f"{units} units with L={label_dim}"
        )
    return np.broadcast_to(arr, (heads, units, label_dim)).copy()
