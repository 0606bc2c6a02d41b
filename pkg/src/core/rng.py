"""Seeded, platform-stable random streams.

Streams are keyed by ``(seed, *key)`` through :class:`numpy.random.SeedSequence`
and drive the counter-based :class:`numpy.random.Philox` bit generator.
Gaussian draws use the Box-Muller transform on Philox uniforms, so a given
key always yields the same matrix regardless of numpy's default normal
sampler.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray


def stream(seed: int, *key: int) -> np.random.Generator:
    """Return a generator for the stream identified by *seed* and *key*."""
    entropy = [int(seed) & 0xFFFFFFFF, *(int(k) & 0xFFFFFFFF for k in key)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def uniform_open_closed(
    gen: np.random.Generator, shape: int | tuple[int, ...]
) -> NDArray[np.float64]:
    """Uniform draws on (0, 1]."""
    return 1.0 - gen.random(shape)


def box_muller(
    gen: np.random.Generator, shape: int | tuple[int, ...]
) -> NDArray[np.float64]:
    """Standard normal draws of the given *shape* via Box-Muller."""
    size = int(np.prod(shape, dtype=np.int64))
    pairs = (size + 1) // 2
    u1 = uniform_open_closed(gen, pairs)
    u2 = gen.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])
    return z[:size].reshape(shape)


def gaussian(seed: int, shape: int | tuple[int, ...], *key: int) -> NDArray[np.float64]:
    """Shortcut: Box-Muller normals from the ``(seed, *key)`` stream."""
    return box_muller(stream(seed, *key), shape)
