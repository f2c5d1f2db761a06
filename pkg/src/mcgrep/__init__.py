"""Exact linear-algebra tools for low-dimensional linear representations of surface mapping class groups."""

from .exact import Matrix, Scalar
from .surface import GeneratorId, SurfaceSig, TwistWord
from .symplectic import rho0
from .cocycles import CrossedHomData, GeneratorRep, build_phi_c, cohomologous_mod_scalar
from .normal_form import (
    classify_dichotomy,
    condition_check,
    extra_gen_solve,
    key_lemma_solve,
    normalize_chain,
    normalize_chain_2g,
)

__all__ = [
    "Matrix",
    "Scalar",
    "GeneratorId",
    "SurfaceSig",
    "TwistWord",
    "rho0",
    "CrossedHomData",
    "GeneratorRep",
    "build_phi_c",
    "cohomologous_mod_scalar",
    "classify_dichotomy",
    "condition_check",
    "extra_gen_solve",
    "key_lemma_solve",
    "normalize_chain",
    "normalize_chain_2g",
]
