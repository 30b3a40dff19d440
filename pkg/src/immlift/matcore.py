"""Dense complex matrices: Hermitian eigensolver, PSD tests, square roots,
tensor-factor permutation operators and seeded random PSD sampling.

Matrices are plain ``numpy`` complex arrays.  Functions that only need
elementwise or matmul operations accept stacks of shape ``(..., m, m)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .permgroup import Permutation, inverse

DEFAULT_TOL = 1e-9
MAX_TENSOR_DIM = 4096


class NotHermitian(ValueError):
    pass


class NotPSD(ValueError):
    pass


def as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim < 2 or M.shape[-1] != M.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def dagger(M: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(M, -1, -2))


def _norm(M: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(M) ** 2, axis=(-2, -1)))


def hermitian_eigen(M, max_sweeps: int = 60, check: bool = True):
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix.

    Cyclic complex Jacobi.  Each rotation first removes the phase of the
    pivot entry and then applies the real symmetric rotation that zeroes it.
    Works on stacks ``(..., m, m)``; every matrix in a stack is iterated on
    its own convergence test, so the result for one matrix does not depend
    on what else is in the stack.

    Returns ``(w, V)`` with ``M @ V ≈ V * w``.
    """
    M = as_matrix(M)
    scale = _norm(M)
    if check and np.any(_norm(M - dagger(M)) > 1e-10 * np.maximum(scale, 1e-300)):
        raise NotHermitian("matrix is not Hermitian within 1e-10·‖M‖")
    A = 0.5 * (M + dagger(M))
    batch = A.shape[:-2]
    m = A.shape[-1]
    A = A.reshape((-1, m, m)).copy()
    V = np.broadcast_to(np.eye(m, dtype=complex), A.shape).copy()
    norms = np.maximum(_norm(A), np.finfo(float).tiny)
    threshold = np.finfo(float).eps * norms
    # pivots below this are left alone; their total is far under ``threshold``
    negligible = 1e-20 * norms
    rows = np.arange(A.shape[0])
    offdiag = 1 - np.eye(m)

    for _ in range(max_sweeps):
        off = _norm(A * offdiag)
        active = off > threshold
        if not active.any():
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                b = A[:, p, q]
                mag = np.abs(b)
                rot = active & (mag > negligible)
                if not rot.any():
                    continue
                safe = np.where(rot, mag, 1.0)
                phase = np.where(rot, b / safe, 1.0)
                tau = (A[:, q, q].real - A[:, p, p].real) / (2 * safe)
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1 + tau**2))
                t = np.where(rot, t, 0.0)
                c = 1 / np.sqrt(1 + t**2)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u_pp, u_pq = c, s
                u_qp, u_qq = -s * np.conj(phase), c * np.conj(phase)
                u_pp = np.where(rot, u_pp, 1.0)
                u_qq = np.where(rot, u_qq, 1.0)
                u_pq = np.where(rot, u_pq, 0.0)
                u_qp = np.where(rot, u_qp, 0.0)
                for X in (A, V):
                    cp, cq = X[:, :, p].copy(), X[:, :, q].copy()
                    X[:, :, p] = cp * u_pp[:, None] + cq * u_qp[:, None]
                    X[:, :, q] = cp * u_pq[:, None] + cq * u_qq[:, None]
                rp, rq = A[:, p, :].copy(), A[:, q, :].copy()
                A[:, p, :] = np.conj(u_pp)[:, None] * rp + np.conj(u_qp)[:, None] * rq
                A[:, q, :] = np.conj(u_pq)[:, None] * rp + np.conj(u_qq)[:, None] * rq
                A[rows[rot], p, q] = 0
                A[rows[rot], q, p] = 0

    w = np.diagonal(A, axis1=1, axis2=2).real
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    V = np.take_along_axis(V, order[:, None, :], axis=2)
    return w.reshape(batch + (m,)), V.reshape(batch + (m, m))


def hermitian_eigvals(M, check: bool = True) -> np.ndarray:
    return hermitian_eigen(M, check=check)[0]


@dataclass(frozen=True)
class PSDReport:
    is_psd: bool
    min_eigenvalue: float
    hermiticity_defect: float
    scale: float

    def __bool__(self):
        return self.is_psd


def is_psd(M, tol: float = DEFAULT_TOL) -> PSDReport:
    """PSD test with tolerance relative to ``max(1, ‖M‖)`` (Frobenius)."""
    M = as_matrix(M)
    if M.ndim != 2:
        raise ValueError("is_psd takes a single matrix")
    scale = max(1.0, float(_norm(M)))
    defect = float(_norm(M - dagger(M)))
    w = hermitian_eigvals(0.5 * (M + dagger(M)), check=False)
    lo = float(w[0])
    ok = defect <= tol * scale and lo >= -tol * scale
    return PSDReport(ok, lo, defect, scale)


def matrix_sqrt(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The unique PSD square root; eigenvalues within tolerance below zero are clamped."""
    M = as_matrix(M)
    report = is_psd(M, tol)
    if not report:
        raise NotPSD(f"matrix is not PSD (min eigenvalue {report.min_eigenvalue:.3g})")
    w, V = hermitian_eigen(0.5 * (M + dagger(M)), check=False)
    root = np.sqrt(np.clip(w, 0, None))
    return (V * root) @ dagger(V)


@dataclass(frozen=True)
class GramDecomposition:
    source: np.ndarray
    vectors: np.ndarray  # column j is the Gram vector v_j

    def gram(self) -> np.ndarray:
        return dagger(self.vectors) @ self.vectors

    def projectors(self) -> list[np.ndarray]:
        """Rank-one matrices |v_j><v_j|."""
        return [np.outer(v, np.conj(v)) for v in self.vectors.T]


def gram_vectors(A, tol: float = DEFAULT_TOL) -> GramDecomposition:
    """Gram vectors of ``A`` taken as the columns of its PSD square root."""
    A = as_matrix(A)
    return GramDecomposition(A, matrix_sqrt(A, tol))


@lru_cache(maxsize=4096)
def permutation_index(sigma: Permutation, m: int) -> np.ndarray:
    """Column of the single 1 in each row of ``permutation_operator(sigma, m)``."""
    n = sigma.n
    dim = m**n
    if dim > MAX_TENSOR_DIM:
        raise ValueError(f"tensor dimension m^n = {dim} exceeds {MAX_TENSOR_DIM}")
    # output index (j_1..j_n) reads input index (j_σ(1)..j_σ(n))
    idx = np.indices((m,) * n).reshape(n, -1)
    source = np.ravel_multi_index(tuple(idx[sigma(t) - 1] for t in range(1, n + 1)), (m,) * n)
    source.setflags(write=False)
    return source


def permutation_operator(sigma: Permutation, m: int) -> np.ndarray:
    """Matrix of ``sigma`` acting on (C^m)^{⊗n} by permuting tensor factors.

    ``v_1 ⊗ ... ⊗ v_n`` is sent to ``v_{σ⁻¹(1)} ⊗ ... ⊗ v_{σ⁻¹(n)}``, so the
    map is a homomorphism: ``op(σ) @ op(τ) == op(σ∘τ)``.
    """
    source = permutation_index(sigma, m)
    dim = source.size
    op = np.zeros((dim, dim))
    op[np.arange(dim), source] = 1
    return op


def permuted_trace(sigma: Permutation, B) -> complex:
    """tr(op(σ) @ B) for a square ``B`` on the tensor space, read off without forming op(σ)."""
    B = np.asarray(B)
    dim = B.shape[-1]
    m = round(dim ** (1 / sigma.n))
    source = permutation_index(sigma, m)
    if source.size != dim:
        raise ValueError(f"operand of size {dim} is not a tensor power for degree {sigma.n}")
    return complex(B[source, np.arange(dim)].sum())


def permutation_operator_inverse(sigma: Permutation, m: int) -> np.ndarray:
    return permutation_operator(inverse(sigma), m)


def kron_all(mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for X in mats:
        out = np.kron(out, X)
    return out


def rng(seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator keyed by ``(seed, *key)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((int(seed),) + tuple(int(k) for k in key))))


def complex_gaussian(gen: np.random.Generator, shape) -> np.ndarray:
    return (gen.standard_normal(shape) + 1j * gen.standard_normal(shape)) / np.sqrt(2)


def random_psd(m: int, seed: int, trace_one: bool = False, key: tuple[int, ...] = ()) -> np.ndarray:
    """``G G†`` for a standard complex Gaussian ``m × m`` matrix ``G``.

    The stream is determined by ``(seed, *key)`` alone.
    """
    if m < 1:
        raise ValueError("m must be positive")
    G = complex_gaussian(rng(seed, *key), (m, m))
    A = G @ dagger(G)
    A = 0.5 * (A + dagger(A))
    if trace_one:
        A = A / np.trace(A).real
    return A


def random_complex(m: int, seed: int, key: tuple[int, ...] = ()) -> np.ndarray:
    return complex_gaussian(rng(seed, *key), (m, m))


def matrix_to_json(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_from_json(data) -> np.ndarray:
    """Parse nested ``[re, im]`` pairs; bare real numbers are accepted too."""
    if isinstance(data, str):
        data = json.loads(data)
    rows = []
    for row in data:
        rows.append([complex(z[0], z[1]) if isinstance(z, (list, tuple)) else complex(z) for z in row])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix rows must be non-empty and of equal length")
    return np.array(rows, dtype=complex)
