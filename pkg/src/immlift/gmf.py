"""Determinant, permanent, immanants and generalized matrix functions.

Everything here evaluates sums of the form

    d_f(A) = Σ_σ f(σ) Π_t a[t, σ(t)]

over a permutation group.  The scalar routines accept a single ``n × n``
matrix or a stack ``(..., n, n)`` and return a complex scalar or an array.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .characters import GroupFunction, as_partition, hook_degree, idempotent_function, mn_character
from .matcore import as_matrix, gram_vectors, kron_all, permutation_operator, permuted_trace
from .permgroup import Permutation, Subgroup, cycle_type, inverse, symmetric_group


def _scalar(x):
    return complex(x) if np.ndim(x) == 0 else x


def determinant(A):
    """LU-based determinant (LAPACK getrf via numpy)."""
    return _scalar(np.linalg.det(as_matrix(A)))


def permanent(A):
    """Ryser's formula with Gray-code ordering of column subsets, O(2^n n)."""
    A = as_matrix(A)
    n = A.shape[-1]
    if n == 0:
        return _scalar(np.ones(A.shape[:-2], dtype=complex))
    if n > 20:
        raise ValueError("permanent is limited to n <= 20")
    row_sums = np.zeros(A.shape[:-1], dtype=complex)
    total = np.zeros(A.shape[:-2], dtype=complex)
    members = [False] * n
    subset_size = 0
    for k in range(1, 2**n):
        j = (k & -k).bit_length() - 1  # bit flipped between Gray codes k-1 and k
        if members[j]:
            row_sums -= A[..., :, j]
            subset_size -= 1
        else:
            row_sums += A[..., :, j]
            subset_size += 1
        members[j] = not members[j]
        total += (-1) ** subset_size * np.prod(row_sums, axis=-1)
    return _scalar((-1) ** n * total)


@lru_cache(maxsize=None)
def _images(elements: tuple[Permutation, ...]) -> np.ndarray:
    return np.array([[i - 1 for i in p.images] for p in elements], dtype=np.intp)


def permutation_monomials(A, elements) -> np.ndarray:
    """Array of Π_t a[t, σ(t)], one entry per permutation in ``elements`` (last axis)."""
    A = as_matrix(A)
    cols = _images(tuple(elements))
    rows = np.arange(A.shape[-1])
    return np.prod(A[..., rows, cols], axis=-1)


def _weights(f: GroupFunction) -> np.ndarray:
    return np.array([complex(v) for _, v in f.items()])


def gmf_value(H: Subgroup, f: GroupFunction, A):
    """Σ_{σ∈H} f(σ) Π_t a[t, σ(t)]."""
    A = as_matrix(A)
    if A.shape[-1] != H.n:
        raise ValueError(f"matrix size {A.shape[-1]} does not match degree {H.n}")
    if f.domain != H:
        missing = [p for p in H.elements if p not in f.values]
        if missing:
            raise ValueError(f"function undefined on {missing[0]}")
        weights = np.array([complex(f(p)) for p in H.elements])
    else:
        weights = _weights(f)
    return _scalar(permutation_monomials(A, H.elements) @ weights)


def gmf(f: GroupFunction, A):
    """``gmf_value`` over the domain of ``f``."""
    return gmf_value(f.domain, f, A)


@lru_cache(maxsize=None)
def _character_weights(parts: tuple[int, ...]) -> np.ndarray:
    # class function: one MN evaluation per cycle type
    cache = {}
    out = []
    for p in symmetric_group(sum(parts)).elements:
        mu = cycle_type(p)
        if mu not in cache:
            cache[mu] = mn_character(parts, mu)
        out.append(cache[mu])
    return np.array(out, dtype=float)


def immanant(lam, A):
    lam = as_partition(lam)
    A = as_matrix(A)
    n = A.shape[-1]
    if n != lam.n:
        raise ValueError(f"matrix size {n} does not match |λ| = {lam.n}")
    G = symmetric_group(n)
    return _scalar(permutation_monomials(A, G.elements) @ _character_weights(lam.parts))


def normalized_immanant(lam, A):
    return immanant(lam, A) / hook_degree(lam)


def gmf_tensor_oracle(H: Subgroup, f: GroupFunction, A) -> complex:
    """Σ_{σ∈H} f(σ) tr[σ⁻¹ X_1 ⊗ ... ⊗ X_n] with X_i = |v_i><v_i| built from Gram vectors.

    Brute force on the full tensor space; only for small n.
    """
    A = as_matrix(A)
    n = A.shape[-1]
    if n != H.n:
        raise ValueError(f"matrix size {n} does not match degree {H.n}")
    if n > 4:
        raise ValueError("tensor oracle is limited to n <= 4")
    big = kron_all(gram_vectors(A).projectors())
    total = 0j
    for sigma in H.elements:
        weight = complex(f(sigma))
        if weight:
            total += weight * permuted_trace(inverse(sigma), big)
    return total


def projector_norm_form(H: Subgroup, chi: GroupFunction, A) -> float:
    """(|H|/χ(e)) ‖p_χ v‖² with v = v_1 ⊗ ... ⊗ v_n the tensor of Gram vectors.

    ``p_χ`` is realised as the operator Σ_σ c(σ) op(σ) from the central
    idempotent coefficients, so this equals ``gmf_value(H, chi, A)`` when
    ``chi`` is an irreducible character of ``H``.
    """
    A = as_matrix(A)
    n = A.shape[-1]
    gram = gram_vectors(A)
    m = gram.vectors.shape[0]
    v = np.ones(1, dtype=complex)
    for col in gram.vectors.T:
        v = np.kron(v, col)
    coeffs = idempotent_function(H, chi)
    Pv = sum(complex(c) * (permutation_operator(s, m) @ v) for s, c in coeffs.items())
    degree = complex(chi(Permutation.identity(n))).real
    return H.order / degree * float(np.vdot(Pv, Pv).real)
