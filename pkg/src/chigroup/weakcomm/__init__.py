"""Weak commutativity constructions: chi(H), nu(H) and their verification routines."""

from .checks import (
    SchurReport,
    induced_epimorphism,
    schur_multiplier,
    verify_abelian_theorem,
    verify_canonical_quotients,
    verify_corollary_chimodR,
    verify_gamma_series,
    verify_lemma_chain,
    verify_R_oracle,
)
from .chi import ChiContext, build_chi, build_R, build_R_definition, build_R_oracle, chi_presentation
from .model import BudgetExceeded, ConstructionError, FiniteGroupModel, model_group
from .nu import NuContext, build_nu, nu_generator_variant, nu_presentation
from .report import Check, CheckReport

__all__ = [
    "BudgetExceeded", "ChiContext", "Check", "CheckReport", "ConstructionError", "FiniteGroupModel", "NuContext",
    "SchurReport", "build_R", "build_R_definition", "build_R_oracle", "build_chi", "build_nu",
    "chi_presentation", "induced_epimorphism", "model_group", "nu_generator_variant",
    "nu_presentation", "schur_multiplier", "verify_R_oracle", "verify_abelian_theorem",
    "verify_canonical_quotients", "verify_corollary_chimodR", "verify_gamma_series",
    "verify_lemma_chain",
]
