"""Kernel views of PE-enriched attention: Gram matrices and PD tests."""

from __future__ import annotations

from .analysis import (
    KernelSample,
    PDReport,
    Witness,
    factorization_check,
    gram_matrix,
    kernel_terms,
    pd_check,
    pd_witness_search,
)
from .fixtures import load_witness, save_witness

__all__ = [
    "KernelSample",
    "PDReport",
    "Witness",
    "factorization_check",
    "gram_matrix",
    "kernel_terms",
    "load_witness",
    "pd_check",
    "pd_witness_search",
    "save_witness",
]
