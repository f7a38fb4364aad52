"""Lagrangian Grassmannian in the symmetric-unitary and involution models,
the product ``(A, B) -> A conj(B) A`` on it, and the computation of the
mapping degree of its second-slot map for odd n."""

from .combinatorics import LemmaReport, d_brute, d_closed, lemma_report, mp_recursion, pa, sigma
from .degree import AngleSpec, DegreeReport, default_angles, degree, enumerate_preimages
from .errors import DegeneracyError, InvariantError, LagrangianError, ScopeError, VerificationError
from .models import (
    AntiSympInvolution,
    LagrangianPlane,
    SymmetricUnitary,
    random_lagrangian,
    theta_involution,
    theta_unitary,
)
from .search import SearchConfig, SearchOutcome, multistart

__version__ = "0.1.0"

__all__ = [
    "AngleSpec", "AntiSympInvolution", "DegeneracyError", "DegreeReport", "InvariantError",
    "LagrangianError", "LagrangianPlane", "LemmaReport", "ScopeError", "SearchConfig",
    "SearchOutcome", "SymmetricUnitary", "VerificationError", "d_brute", "d_closed",
    "default_angles", "degree", "enumerate_preimages", "lemma_report", "mp_recursion",
    "multistart", "pa", "random_lagrangian", "sigma", "theta_involution", "theta_unitary",
]
