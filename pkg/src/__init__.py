"""stripes - positional encodings as kernels: oracles, transforms and checks."""

from __future__ import annotations

__version__ = "0.1.0"
