"""Matrix-valued trace polynomials attached to functions on S_n.

For a permutation σ of degree n written in canonical cycle order, the term
``lift_sigma(σ)`` is the product of traces of the cycles that avoid n,
times the ordered product of the matrices in the cycle that ends with n
(with X_n itself dropped).  Summing these with weights f(σ) gives the
matrix polynomial in X_1..X_{n-1} whose compression <w|·|w> is the scalar
sum Σ f(σ) tr(σ⁻¹ X_1 ⊗ ... ⊗ X_{n-1} ⊗ |w><w|).
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number

import numpy as np

from .characters import DomainError, GroupFunction
from .matcore import as_matrix, kron_all, permuted_trace
from .permgroup import Permutation, canonical_cycles, inverse

ZERO_COEFF = 1e-14

Word = tuple[int, ...]


def canonical_rotation(word: Word) -> Word:
    """Rotate a cyclic word so it starts at its smallest index (first occurrence of the least rotation)."""
    if not word:
        return word
    return min(word[k:] + word[:k] for k in range(len(word)))


@dataclass(frozen=True)
class TraceTerm:
    coefficient: Number
    traced: tuple[Word, ...]
    open: Word

    def __post_init__(self):
        traced = tuple(sorted(canonical_rotation(tuple(w)) for w in self.traced))
        object.__setattr__(self, "traced", traced)
        object.__setattr__(self, "open", tuple(self.open))

    @property
    def key(self):
        return self.traced, self.open

    def variables(self) -> set[int]:
        return {i for w in self.traced for i in w} | set(self.open)


def lift_sigma(sigma: Permutation) -> TraceTerm:
    cycles = canonical_cycles(sigma)
    *others, last = cycles
    return TraceTerm(1, tuple(others), last[:-1])


@dataclass(frozen=True)
class TracePolynomial:
    n: int
    terms: tuple[TraceTerm, ...] = field(default=())

    @property
    def arity(self) -> int:
        return self.n - 1

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: TracePolynomial) -> TracePolynomial:
        if self.n != other.n:
            raise ValueError("polynomials in different numbers of variables")
        return collect(self.n, self.terms + other.terms)

    def __mul__(self, c) -> TracePolynomial:
        return collect(self.n, [TraceTerm(c * t.coefficient, t.traced, t.open) for t in self.terms])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def term_map(self) -> dict:
        return {t.key: t.coefficient for t in self.terms}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {
                    "coeff": [complex(t.coefficient).real, complex(t.coefficient).imag],
                    "traced": [list(w) for w in t.traced],
                    "open": list(t.open),
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data) -> TracePolynomial:
        if isinstance(data, str):
            data = json.loads(data)
        terms = []
        for t in data["terms"]:
            re, im = t["coeff"]
            terms.append(TraceTerm(complex(re, im) if im else re, tuple(tuple(w) for w in t["traced"]), tuple(t["open"])))
        return collect(int(data["n"]), terms)


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    return abs(c) <= ZERO_COEFF


def _tidy(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    if isinstance(c, complex) and c.imag == 0:
        return c.real
    return c


def collect(n: int, terms) -> TracePolynomial:
    """Merge terms with equal (traced words, open word) and drop zeros."""
    acc: dict = defaultdict(int)
    order = []
    for t in terms:
        if t.key not in acc:
            order.append(t.key)
        acc[t.key] += t.coefficient
    kept = [TraceTerm(_tidy(acc[k]), *k) for k in sorted(order, key=_sort_key) if not _is_zero(acc[k])]
    return TracePolynomial(n, tuple(kept))


def _sort_key(key):
    traced, open_word = key
    return (len(open_word), tuple(len(w) for w in traced), traced, open_word)


def lift_function(f: GroupFunction) -> TracePolynomial:
    """Σ_σ f(σ) lift_sigma(σ) over S_n, collected."""
    if not f.domain.is_symmetric:
        raise DomainError("lift_function needs a function on all of S_n; zero-extend subgroup functions first")
    terms = []
    for sigma, value in f.items():
        t = lift_sigma(sigma)
        terms.append(TraceTerm(value, t.traced, t.open))
    return collect(f.n, terms)


def _prepare(X, n_vars: int, dim: int | None):
    X = [as_matrix(x) for x in X]
    if len(X) != n_vars:
        raise ValueError(f"expected {n_vars} matrices, got {len(X)}")
    if X:
        shape = X[0].shape
        if any(x.shape != shape for x in X):
            raise ValueError("all matrices must have the same shape")
        return X, shape[:-2], shape[-1]
    if dim is None:
        raise ValueError("dimension needed when there are no matrix variables")
    return X, (), dim


def evaluate(P: TracePolynomial, X, dim: int | None = None) -> np.ndarray:
    """Evaluate at matrices ``X = [X_1, ..., X_{n-1}]`` (each ``(..., m, m)``).

    ``dim`` gives the matrix size when ``n == 1`` and there are no inputs.
    """
    X, batch, m = _prepare(X, P.arity, dim)
    eye = np.eye(m, dtype=complex)
    products: dict[Word, np.ndarray] = {(): np.broadcast_to(eye, batch + (m, m))}

    def product(word: Word) -> np.ndarray:
        if word not in products:
            products[word] = product(word[:-1]) @ X[word[-1] - 1]
        return products[word]

    traces: dict[Word, np.ndarray] = {}

    def trace(word: Word) -> np.ndarray:
        if word not in traces:
            traces[word] = np.trace(product(word), axis1=-2, axis2=-1)
        return traces[word]

    out = np.zeros(batch + (m, m), dtype=complex)
    for t in P.terms:
        scalar = np.full(batch, complex(t.coefficient))
        for w in t.traced:
            scalar = scalar * trace(w)
        out = out + scalar[..., None, None] * product(t.open)
    return out


def evaluate_T_scalar(sigma: Permutation, X) -> complex | np.ndarray:
    """Product of traces over all canonical cycles, the last one closed by X_n."""
    X, batch, m = _prepare(X, sigma.n, None)
    value = np.ones(batch, dtype=complex)
    for cycle in canonical_cycles(sigma):
        prod = X[cycle[0] - 1]
        for i in cycle[1:]:
            prod = prod @ X[i - 1]
        value = value * np.trace(prod, axis1=-2, axis2=-1)
    return complex(value) if value.ndim == 0 else value


def kostant_trace(sigma: Permutation, X) -> complex:
    """tr(σ⁻¹ X_1 ⊗ ... ⊗ X_n) computed on the full tensor space."""
    X = [as_matrix(x) for x in X]
    return permuted_trace(inverse(sigma), kron_all(X))


def _fmt_coeff(c) -> str:
    if isinstance(c, (int, Fraction)):
        return str(c)
    if isinstance(c, float):
        return f"{c:.12g}"
    c = complex(c)
    if abs(c.imag) < ZERO_COEFF:
        return f"{c.real:.12g}"
    return f"({c.real:.12g}{c.imag:+.12g}i)"


def _neg(c) -> bool:
    if isinstance(c, complex):
        return c.imag == 0 and c.real < 0
    return c < 0


def render(P: TracePolynomial, fmt: str = "text", trace_one: bool = False) -> str:
    """Human-readable form.  ``trace_one`` drops single-variable traces tr(X_i).

    With ``trace_one`` the displayed terms are re-collected after the
    substitution; the polynomial itself is unchanged.
    """
    terms = P.terms
    if trace_one:
        terms = collect(P.n, [TraceTerm(t.coefficient, tuple(w for w in t.traced if len(w) > 1), t.open) for t in terms]).terms
    if fmt == "latex":
        tr, one, dot, minus = r"\operatorname{tr}", r"\mathbb{1}", " ", "-"
        var = lambda i: f"X_{{{i}}}"
    else:
        tr, one, dot, minus = "tr", "1", "·", "−"
        var = lambda i: f"X{i}"
    if not terms:
        return "0"
    pieces = []
    for k, t in enumerate(terms):
        c = t.coefficient
        negative = _neg(c)
        mag = -c if negative else c
        factors = [f"{tr}(" + "".join(var(i) for i in w) + ")" for w in t.traced]
        factors.append("".join(var(i) for i in t.open) if t.open else one)
        body = dot.join(factors)
        if mag != 1:
            body = _fmt_coeff(mag) + dot + body if fmt != "latex" else _fmt_coeff(mag) + " " + body
        if k == 0:
            pieces.append(("-" if fmt == "latex" else "−") + body if negative else body)
        else:
            pieces.append((f" {minus} " if negative else " + ") + body)
    return "".join(pieces)
