"""Exact q-calculus: the graded algebra of theta and D at generic q, its limit at
odd roots of unity (with the bosonic pair z, dz), and ket representations."""

from .fsusy import FsElem, FsMonomial, fs_D, fs_D_power, fs_normal_order, fsusy_transform_check, g_L, transfer_from_generic
from .gencalc import GradedElem, Monomial, d_theta, graded_bracket, identity_eq15, normal_order, qexp, qN, translate_check
from .limits import LimitResult, lemma_suite, limit_at_root, qexp_factorization_check, reduce_theta_power
from .representation import Ket, ProductKet, act, act_product, defcr_check_exact, oscillator_a, reduce_ket
from .scalar import CycloNum, PoleAtRoot, RatQ, cyclotomic, eval_at_root, q_half, qfact, qnum

__all__ = [
    "CycloNum", "FsElem", "FsMonomial", "GradedElem", "Ket", "LimitResult", "Monomial",
    "PoleAtRoot", "ProductKet", "RatQ", "act", "act_product", "cyclotomic", "d_theta",
    "defcr_check_exact", "eval_at_root", "fs_D", "fs_D_power", "fs_normal_order",
    "fsusy_transform_check", "g_L", "graded_bracket", "identity_eq15", "lemma_suite",
    "limit_at_root", "normal_order", "oscillator_a", "q_half", "qN", "qexp",
    "qexp_factorization_check", "qfact", "qnum", "reduce_ket", "reduce_theta_power",
    "transfer_from_generic", "translate_check",
]
__version__ = "0.1.0"
