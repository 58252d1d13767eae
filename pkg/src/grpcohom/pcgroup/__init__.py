"""Finite groups given by power-commutator presentations.

A presentation lists generators g_1, ..., g_L with relative orders
r_i >= 2, power relations g_i**r_i = (word in later generators) and
commutator relations [g_j, g_i] = (word in generators past g_i) for
j > i.  Every element then has a unique normal form
g_1**e_1 * ... * g_L**e_L with 0 <= e_i < r_i, provided the
presentation is consistent; `check_consistency` decides that and
`FiniteGroup` refuses inconsistent input.
"""

from .presentation import (
    PcPresentation,
    Word,
    collect,
    check_consistency,
    inverse_word,
)
from .group import FiniteGroup, GroupInvariants
from .families import (
    FamilyParams,
    construct_family_G,
    construct_family_H,
    cyclic_group,
    direct_product,
    semidirect_cyclic,
    alperin_atiyah_pair,
)
from .isomorphism import IsoCertificate, is_isomorphic

__all__ = [
    "PcPresentation",
    "Word",
    "collect",
    "check_consistency",
    "inverse_word",
    "FiniteGroup",
    "GroupInvariants",
    "FamilyParams",
    "construct_family_G",
    "construct_family_H",
    "cyclic_group",
    "direct_product",
    "semidirect_cyclic",
    "alperin_atiyah_pair",
    "IsoCertificate",
    "is_isomorphic",
]
