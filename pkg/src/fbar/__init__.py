"""Exact computations with component groups, their subgroup catalogues and
the convolution algebras of equivariant bundles on the resulting sets."""

from .catalogue import GroupKind, cf_e, verify_catalogue
from .chartab import CharacterTable, character_table, inner_product
from .cyclotomic import Cyclotomic
from .errors import (
    ConsistencyError,
    FbarError,
    InconsistentSystem,
    MembershipError,
    NonNaturalSolution,
    RankDeficient,
    SizeLimitError,
    SolverError,
    ValidationError,
)
from .f2_families import OrderedBasis, Subspace2, cf_enumerate, cf_membership_report
from .groups import Group, Perm, Subgroup, make_elementary_abelian2, make_symmetric
from .kconv import ConvAlg, EqBundle, algebra, convolve, verify_dimension_identity
from .mdecomp import ClassFn, FMatrix, MPoint, MSet, decompose, f_matrix, f_vector, m_set
from .yprime import GSet, build_yprime

__version__ = "0.1.0"

__all__ = [
    "ClassFn", "CharacterTable", "ConsistencyError", "ConvAlg", "Cyclotomic", "EqBundle",
    "FMatrix", "FbarError", "GSet", "Group", "GroupKind", "InconsistentSystem", "MPoint",
    "MSet", "MembershipError", "NonNaturalSolution", "OrderedBasis", "Perm", "RankDeficient",
    "SizeLimitError", "SolverError", "Subgroup", "Subspace2", "ValidationError", "algebra",
    "build_yprime", "cf_e", "cf_enumerate", "cf_membership_report", "character_table",
    "convolve", "decompose", "f_matrix", "f_vector", "inner_product", "m_set",
    "make_elementary_abelian2", "make_symmetric", "verify_catalogue", "verify_dimension_identity",
]
