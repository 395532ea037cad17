"""Enumeration of 1x2 juxtaposition permutation classes Av(abc|xy).

Three independent counting routes (brute force, context-free grammars,
closed-form generating functions), the Dyck-path encodings of 231-, 321-
and 312-avoiders, and exhaustively checked bijections between the
equinumerous classes.
"""

from .perm import Av, Basis, ClassSpec, ExhaustionBoundError, Permutation, contains, avoids_all, enumerate_class, symmetry
from .juxtaposition import (
    CLASS_A,
    CLASS_B,
    CLASS_C,
    GriddedPermutation,
    JuxtSpec,
    canonical_gridding,
    count_by_bruteforce,
    griddings,
    juxt,
    verify_basis_identity,
)
from .dyck import DecoratedDyckPath, DyckPath, decorated_to_gridded, dyck_to_perm231, dyck_to_perm321, perm231_to_dyck, perm321_to_dyck
from .grammar import GrammarSystem, builtin_grammar, check_unambiguity_counts, solve_series, transcribe
from .series import TruncatedSeries
from .gf import SeriesExpr, expand, verify_algebraic
from .bijections import lam, phi, psi, theta, verify_bijection

__version__ = "0.1.0"

__all__ = [
    "Av", "Basis", "ClassSpec", "ExhaustionBoundError", "Permutation", "contains", "avoids_all",
    "enumerate_class", "symmetry", "CLASS_A", "CLASS_B", "CLASS_C", "GriddedPermutation", "JuxtSpec",
    "canonical_gridding", "count_by_bruteforce", "griddings", "juxt", "verify_basis_identity",
    "DecoratedDyckPath", "DyckPath", "decorated_to_gridded", "dyck_to_perm231", "dyck_to_perm321",
    "perm231_to_dyck", "perm321_to_dyck", "GrammarSystem", "builtin_grammar", "check_unambiguity_counts",
    "solve_series", "transcribe", "TruncatedSeries", "SeriesExpr", "expand", "verify_algebraic",
    "lam", "phi", "psi", "theta", "verify_bijection",
]
