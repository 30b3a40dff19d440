"""Immanants, generalized matrix functions and their trace polynomial lifts."""

from .characters import (
    CharacterTable,
    GroupFunction,
    Partition,
    builtin_a4_table,
    convolve,
    hook_degree,
    idempotent_function,
    mn_character,
    partitions_of,
    sn_character,
)
from .gmf import determinant, gmf_tensor_oracle, gmf_value, immanant, permanent
from .matcore import gram_vectors, hermitian_eigen, is_psd, matrix_sqrt, permutation_operator, random_psd
from .permgroup import (
    Permutation,
    Subgroup,
    canonical_cycles,
    compose,
    conjugacy_classes,
    cycle_type,
    enumerate_symmetric,
    generate_subgroup,
    inverse,
    sign,
    symmetric_group,
)
from .tracepoly import TracePolynomial, TraceTerm, evaluate, evaluate_T_scalar, lift_function, lift_sigma, render
from .verifier import InequalitySpec, VerificationReport, builtin_suite, check_identity, check_loewner, check_scalar

__version__ = "0.1.0"

__all__ = [
    "builtin_a4_table",
    "builtin_suite",
    "canonical_cycles",
    "CharacterTable",
    "check_identity",
    "check_loewner",
    "check_scalar",
    "compose",
    "conjugacy_classes",
    "convolve",
    "cycle_type",
    "determinant",
    "enumerate_symmetric",
    "evaluate",
    "evaluate_T_scalar",
    "generate_subgroup",
    "gmf_tensor_oracle",
    "gmf_value",
    "gram_vectors",
    "GroupFunction",
    "hermitian_eigen",
    "hook_degree",
    "idempotent_function",
    "immanant",
    "InequalitySpec",
    "inverse",
    "is_psd",
    "lift_function",
    "lift_sigma",
    "matrix_sqrt",
    "mn_character",
    "Partition",
    "partitions_of",
    "permanent",
    "Permutation",
    "permutation_operator",
    "random_psd",
    "render",
    "sign",
    "sn_character",
    "Subgroup",
    "symmetric_group",
    "TracePolynomial",
    "TraceTerm",
    "VerificationReport",
]
