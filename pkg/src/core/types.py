"""Domain types shared across the library.

All containers are frozen dataclasses whose numpy payloads are copied and
marked read-only on construction, so instances can be shared freely between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import BadGain, DimensionMismatch, OddDimension

FloatArray = NDArray[np.float64]


def frozen(values: ArrayLike, ndim: Optional[int] = None) -> FloatArray:
    """Copy *values* into a read-only float64 array."""
    arr = np.array(values, dtype=np.float64, copy=True)
    if ndim is not None and arr.ndim != ndim:
        raise DimensionMismatch(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


# ---------------------------------------------------------------------------
# Enumerations
# ---------------------------------------------------------------------------


class Method(str, Enum):
    """Positional-encoding families compared by the library."""

    FSTRIPE1 = "fstripe1"
    ROPE = "rope"
    ROPEPOOL = "ropepool"

    @property
    def pair_based(self) -> bool:
        return self is not Method.FSTRIPE1

    def unit_count(self, dim: int) -> int:
        """Number of analysis units for model dimension *dim*."""
        if self.pair_based:
            if dim % 2:
                raise OddDimension(f"{self.value} needs an even dimension, got D={dim}")
            return dim // 2
        return dim


class Pooling(str, Enum):
    UNPOOLED = "unpooled"
    POOLED = "pooled"


class PositionKind(str, Enum):
    TIME = "time"
    STRUCTURAL_TOKEN = "structural_token"
    STRUCTURAL_VECTOR = "structural_vector"


class InitScheme(str, Enum):
    EXPONENTIAL_SHARED = "exponential_shared"
    EXPONENTIAL_PER_HEAD = "exponential_per_head"
    EXPLICIT = "explicit"
    RANDOM_UNIFORM = "random_uniform"


class MethodTag(str, Enum):
    """Provenance label attached to every :class:`ScoreMatrix`."""

    EXACT = "exact"
    TRANSFORM_UNPOOLED = "transform-unpooled"
    TRANSFORM_POOLED = "transform-pooled"
    SPE = "spe"
    LINEAR_PATH = "linear-path"


class Side(str, Enum):
    QUERY = "query"
    KEY = "key"


# ---------------------------------------------------------------------------
# Positions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PositionalIndexSequence:
    """Per-timestep positional labels, shape ``(T, L)``."""

    entries: FloatArray
    kind: PositionKind = PositionKind.STRUCTURAL_VECTOR

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise DimensionMismatch(
                f"positions must be (T, L) with L >= 1, got shape {arr.shape}"
            )
        if self.kind is PositionKind.TIME:
            expected = np.arange(arr.shape[0], dtype=np.float64).reshape(-1, 1)
            if arr.shape[1] != 1 or not np.array_equal(arr, expected):
                raise DimensionMismatch("time positions must be [0], [1], ..., [T-1]")
        object.__setattr__(self, "entries", frozen(arr))

    @classmethod
    def time(cls, length: int) -> PositionalIndexSequence:
        return cls(
            np.arange(length, dtype=np.float64).reshape(-1, 1), PositionKind.TIME
        )

    @classmethod
    def tokens(cls, labels: ArrayLike) -> PositionalIndexSequence:
        arr = np.asarray(labels, dtype=np.float64).reshape(-1, 1)
        return cls(arr, PositionKind.STRUCTURAL_TOKEN)

    @classmethod
    def vectors(cls, rows: ArrayLike) -> PositionalIndexSequence:
        arr = np.asarray(rows, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        return cls(arr, PositionKind.STRUCTURAL_VECTOR)

    @property
    def length(self) -> int:
        return int(self.entries.shape[0])

    @property
    def label_dim(self) -> int:
        return int(self.entries.shape[1])

    def shifted(self, offset: ArrayLike) -> PositionalIndexSequence:
        """Positions translated by *offset* (kept as structural vectors)."""
        return PositionalIndexSequence.vectors(self.entries + np.asarray(offset))


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PEParams:
    """Frequencies, gains and phases per head and unit.

    ``frequencies`` has shape ``(heads, units, L)``; ``gains`` and ``phases``
    have shape ``(heads, units)``. Units are dimensions for F-StrIPE₁ and
    dimension pairs for RoPE and RoPEPool.
    """

    method: Method
    dim: int
    frequencies: FloatArray
    gains: FloatArray
    phases: FloatArray
    init_scheme: InitScheme = InitScheme.EXPLICIT
    base: float = 10000.0
    head_count: int = field(init=False)

    def __post_init__(self) -> None:
        units = self.method.unit_count(self.dim)
        freqs = frozen(self.frequencies, ndim=3)
        gains = frozen(self.gains, ndim=2)
        phases = frozen(self.phases, ndim=2)
        heads = freqs.shape[0]
        if heads < 1 or freqs.shape[1] != units:
            raise DimensionMismatch(
                f"{self.method.value} with D={self.dim} needs {units} frequency "
                f"units per head, got shape {freqs.shape}"
            )
        if gains.shape != (heads, units) or phases.shape != (heads, units):
            raise DimensionMismatch(
                f"gains/phases must have shape {(heads, units)}, "
                f"got {gains.shape} and {phases.shape}"
            )
        if np.any(gains < 0):
            raise BadGain(f"gains must be non-negative, got min {gains.min()}")
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "gains", gains)
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "head_count", heads)

    @property
    def units(self) -> int:
        return int(self.frequencies.shape[1])

    @property
    def label_dim(self) -> int:
        return int(self.frequencies.shape[2])

    def head(self, index: int) -> PEParams:
        """Single-head view of head *index*."""
        if not 0 <= index < self.head_count:
            raise IndexError(f"head {index} out of range for {self.head_count} heads")
        return replace(
            self,
            frequencies=self.frequencies[index : index + 1],
            gains=self.gains[index : index + 1],
            phases=self.phases[index : index + 1],
        )

    def _single(self, arr: FloatArray) -> FloatArray:
        if self.head_count != 1:
            raise DimensionMismatch(
                f"params hold {self.head_count} heads; select one with .head(h)"
            )
        return arr[0]

    @property
    def unit_frequencies(self) -> FloatArray:
        """``(units, L)`` frequencies of a single-head parameter set."""
        return self._single(self.frequencies)

    @property
    def unit_gains(self) -> FloatArray:
        return self._single(self.gains)

    @property
    def unit_phases(self) -> FloatArray:
        return self._single(self.phases)

    def with_values(
        self,
        frequencies: Optional[ArrayLike] = None,
        gains: Optional[ArrayLike] = None,
        phases: Optional[ArrayLike] = None,
    ) -> PEParams:
        """Copy with some arrays replaced (shapes as stored)."""
        return replace(
            self,
            frequencies=self.frequencies if frequencies is None else frequencies,
            gains=self.gains if gains is None else gains,
            phases=self.phases if phases is None else phases,
            init_scheme=InitScheme.EXPLICIT,
        )


# ---------------------------------------------------------------------------
# Attention inputs and outputs
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QKMatrices:
    """Queries ``(T_Q, D)``, keys ``(T_K, D)`` and optional values ``(T_K, D_v)``."""

    Q: FloatArray
    K: FloatArray
    V: Optional[FloatArray] = None

    def __post_init__(self) -> None:
        q = frozen(self.Q, ndim=2)
        k = frozen(self.K, ndim=2)
        if q.shape[1] != k.shape[1]:
            raise DimensionMismatch(
                f"queries and keys disagree on D: {q.shape[1]} vs {k.shape[1]}"
            )
        object.__setattr__(self, "Q", q)
        object.__setattr__(self, "K", k)
        if self.V is not None:
            v = frozen(self.V, ndim=2)
            if v.shape[0] != k.shape[0]:
                raise DimensionMismatch(
                    f"values need one row per key: {v.shape[0]} vs {k.shape[0]}"
                )
            object.__setattr__(self, "V", v)

    @property
    def dim(self) -> int:
        return int(self.Q.shape[1])


@dataclass(frozen=True, eq=False)
class ScoreMatrix:
    """``T_Q x T_K`` attention coefficients with their provenance."""

    values: FloatArray
    method_tag: MethodTag

    def __post_init__(self) -> None:
        vals = frozen(self.values, ndim=2)
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"{self.method_tag.value} scores contain NaN or Inf")
        object.__setattr__(self, "values", vals)

    @property
    def shape(self) -> tuple[int, int]:
        return (int(self.values.shape[0]), int(self.values.shape[1]))

    def max_abs_diff(self, other: ScoreMatrix) -> float:
        if self.shape != other.shape:
            raise DimensionMismatch(
                f"score shapes differ: {self.shape} vs {other.shape}"
            )
        if self.values.size == 0:
            return 0.0
        return float(np.max(np.abs(self.values - other.values)))
