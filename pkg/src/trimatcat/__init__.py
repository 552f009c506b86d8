"""Exact triangular matrix categories.

Build Λ = [𝒯 0; M 𝒰] from two finite K-linear categories and a bimodule,
then move between Λ-modules and triples (A, f, B) with exact arithmetic
over Q or a prime field.

>>> from trimatcat import fixture
>>> L = fixture("a2").L
>>> L.dim("t|u", "t|u")
3
"""
from .exact_linalg import QQ, PrimeField, field_from_spec
from .quiver_cat import parse_quiver, path_category
from .klinear_core import Report, check_category_axioms, radical_subspace
from .bimodule import Bimodule, bimodule_from_hom, check_bimodule, hom_bimodule, zero_bimodule
from .trimat import LambdaCategory, build_lambda, lambda_radical, opposite_lambda
from .functor_modules import (
    FiniteModule, ModuleTriple, TripleMorphism, check_triple, module_from_triple,
    projective_triple, triple_from_module,
)
from .duality import double_dual_check, nu_square_check, theta_hat
from .fixtures import fixture

__version__ = "0.1.0"

__all__ = [
    "QQ", "PrimeField", "field_from_spec",
    "parse_quiver", "path_category",
    "Report", "check_category_axioms", "radical_subspace",
    "Bimodule", "bimodule_from_hom", "check_bimodule", "hom_bimodule", "zero_bimodule",
    "LambdaCategory", "build_lambda", "lambda_radical", "opposite_lambda",
    "FiniteModule", "ModuleTriple", "TripleMorphism", "check_triple", "module_from_triple",
    "projective_triple", "triple_from_module",
    "double_dual_check", "nu_square_check", "theta_hat",
    "fixture",
]
