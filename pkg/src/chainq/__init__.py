"""Cyclic codes over F_{2^m}[u]/(u^{k+1}) and the quantum codes they induce.

The pipeline: factor x^n - 1 over GF(2^m), pick a slot assignment of the
irreducible factors, build the cyclic code over the chain ring, certify
dual-containment, map through the Gray and trace maps to classical linear
codes, measure distances exactly, and emit CSS quantum parameters.
"""

from .chainring import ChainRing
from .code import (
    CyclicCodeR,
    SlotAssignment,
    build_code,
    code_from_descriptor,
    descriptor,
    dual_slot,
)
from .field import GF, DualBasis, gf_cache, self_dual_basis
from .fqlinear import (
    BudgetExceeded,
    LinearCode,
    cyclic_code,
    enumerate_weights,
    macwilliams,
    min_distance,
)
from .gray import (
    gray_distance,
    gray_image_code,
    gray_vector,
    gray_weight,
    residue_torsion_distance,
)
from .polyring import FactorCache, Factorization, factor_xn_minus_1
from .quantum import (
    NotDualContaining,
    QuantumParams,
    construction_i,
    construction_ii,
    css,
    stabilizer_matrices,
)
from .search import SearchBudgets, SearchResult, reproduce_table1, run_search
from .tracemap import binary_image_code, expand_code

__version__ = "0.1.0"

__all__ = [
    "GF",
    "BudgetExceeded",
    "ChainRing",
    "CyclicCodeR",
    "DualBasis",
    "FactorCache",
    "Factorization",
    "LinearCode",
    "NotDualContaining",
    "QuantumParams",
    "SearchBudgets",
    "SearchResult",
    "SlotAssignment",
    "__version__",
    "binary_image_code",
    "build_code",
    "code_from_descriptor",
    "construction_i",
    "construction_ii",
    "css",
    "cyclic_code",
    "descriptor",
    "dual_slot",
    "enumerate_weights",
    "expand_code",
    "factor_xn_minus_1",
    "gf_cache",
    "gray_distance",
    "gray_image_code",
    "gray_vector",
    "gray_weight",
    "macwilliams",
    "min_distance",
    "reproduce_table1",
    "residue_torsion_distance",
    "run_search",
    "self_dual_basis",
    "stabilizer_matrices",
]
