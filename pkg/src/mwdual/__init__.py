"""Exact MacWilliams-duality tools for weights on finite chain rings and matrix rings.

The package builds linear codes from multiplicity functions, computes their
partition and w-weight enumerators exactly, transforms them to the dual
code, and constructs pairs of codes with equal w-weight enumerators but
different dual enumerators.
"""
from __future__ import annotations

from .chaingap import FAILS, RESPECTS, UNKNOWN, Verdict, build_chain_pair, classify_chain, verify_chain_witness
from .chainring import ChainRing, chain_kravchuk, generalized_kravchuk
from .codes import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    ChainModule,
    MatrixModule,
    MultiplicityFunction,
    brute_force_dual_wwe,
    code_size,
    generator_matrix,
    se_from_orbits,
    wwe_from_orbits,
)
from .enumerators import PartitionEnumerator, WWEnumerator, macwilliams_transform, specialize, truncated_dual_wwe
from .matrixgap import build_degenerate_pair, build_swap, classify_matrix, verify_matrix_witness
from .matrixring import Subspace, orbit_index, rank_kravchuk
from .weights import WeightTable, homogeneous_chain, homogeneous_matrix


def classify(w: WeightTable) -> Verdict:
    """Classify a chain or matrix weight."""
    return classify_chain(w) if w.family == "chain" else classify_matrix(w)


__all__ = [
    "BudgetExceeded", "ChainModule", "ChainRing", "DEFAULT_BUDGET", "FAILS", "MatrixModule",
    "MultiplicityFunction", "PartitionEnumerator", "RESPECTS", "Subspace", "UNKNOWN", "Verdict",
    "WWEnumerator", "WeightTable", "brute_force_dual_wwe", "build_chain_pair", "build_degenerate_pair",
    "build_swap", "chain_kravchuk", "classify", "classify_chain", "classify_matrix", "code_size",
    "generalized_kravchuk", "generator_matrix", "homogeneous_chain", "homogeneous_matrix",
    "macwilliams_transform", "orbit_index", "rank_kravchuk", "se_from_orbits", "specialize",
    "truncated_dual_wwe", "verify_chain_witness", "verify_matrix_witness", "wwe_from_orbits",
]
