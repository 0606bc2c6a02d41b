"""Central configuration for stripes.

Reads from .env.local in the project root directory.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path

from dotenv import load_dotenv

# Project root is two levels up from this file: src/config.py -> src/ -> project root
ROOT_DIR = Path(__file__).resolve().parent.parent
ENV_PATH = ROOT_DIR / ".env.local"

load_dotenv(dotenv_path=ENV_PATH)


class Config:
    # Parallelism (0 = one worker per CPU)
    try:
        THREADS: int = int(os.getenv("STRIPES_THREADS", "0"))
    except (ValueError, TypeError):
        THREADS: int = 0

    try:
        SEED: int = int(os.getenv("STRIPES_SEED", "0"))
    except (ValueError, TypeError):
        SEED: int = 0

    try:
        ROPE_BASE: float = float(os.getenv("STRIPES_ROPE_BASE", "10000"))
    except (ValueError, TypeError):
        ROPE_BASE: float = 10000.0

    # Tolerances used by the verify suites
    try:
        EXACT_TOL: float = float(os.getenv("STRIPES_EXACT_TOL", "1e-12"))
    except (ValueError, TypeError):
        EXACT_TOL: float = 1e-12

    try:
        LINEAR_TOL: float = float(os.getenv("STRIPES_LINEAR_TOL", "1e-10"))
    except (ValueError, TypeError):
        LINEAR_TOL: float = 1e-10

    # Output
    OUTPUT_DIR: str = os.getenv("STRIPES_OUTPUT_DIR", "runs")
    LOG_LEVEL: str = os.getenv("STRIPES_LOG_LEVEL", "WARNING").upper()

    # Database
    DB_PATH: str = os.getenv(
        "STRIPES_DB_PATH",
        str(Path.home() / ".stripes" / "runs.db"),
    )

    @classmethod
    def workers(cls) -> int:
        """Effective worker count for parallel searches."""
        if cls.THREADS > 0:
            return cls.THREADS
        return os.cpu_count() or 1


logger = logging.getLogger(__name__)

if Config.THREADS < 0:
    logger.warning(
        "STRIPES_THREADS=%d is negative; using one worker per CPU", Config.THREADS
    )
