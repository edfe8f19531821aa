"""Fusion-stable characters of finite groups and the orbit-category limit that classifies them."""

from .analysis import (
    LemmaReport,
    PsiCodomain,
    TheoremVerdict,
    abelianization_order,
    is_isomorphic,
    lemma_cent_check,
    lemma_meta_check,
    lemma_odd_check,
    maximal_class_bound_check,
    psi_codomain,
    quaternion_case_check,
    rank_hypothesis_report,
    theorem_verdict,
    thomas_membership,
)
from .catalog import catalog, parse_group_spec, resolve
from .characters import (
    Character,
    CharacterTable,
    ClassFunction,
    character_table,
    fusion_stable_characters,
    restrict,
)
from .cyclotomic import Cyclotomic
from .fusion import goldschmidt_family, principal_radical_family, verify_element_fusion_family
from .group import PermutationGroup
from .orbit import limit_elements, orbit_category, pi1, sigma, verify_theorem_char
from .perm import Permutation
from .presentation import Presentation, coset_enumeration, parse_presentation

__version__ = "0.1.0"

__all__ = [
    "Character",
    "CharacterTable",
    "ClassFunction",
    "Cyclotomic",
    "LemmaReport",
    "Permutation",
    "PermutationGroup",
    "Presentation",
    "PsiCodomain",
    "TheoremVerdict",
    "abelianization_order",
    "catalog",
    "character_table",
    "coset_enumeration",
    "fusion_stable_characters",
    "goldschmidt_family",
    "is_isomorphic",
    "lemma_cent_check",
    "lemma_meta_check",
    "lemma_odd_check",
    "limit_elements",
    "maximal_class_bound_check",
    "orbit_category",
    "parse_group_spec",
    "parse_presentation",
    "pi1",
    "principal_radical_family",
    "psi_codomain",
    "quaternion_case_check",
    "rank_hypothesis_report",
    "resolve",
    "restrict",
    "sigma",
    "theorem_verdict",
    "thomas_membership",
    "verify_element_fusion_family",
    "verify_theorem_char",
]
