"""Randomized checks of scalar and matrix (Löwner order) inequalities.

A check draws seeded random matrices trial by trial, evaluates a margin
and records the worst one.  Trial ``t`` always uses the random streams
keyed by ``(seed, t, i)``; trials are processed in fixed-size chunks, so a
report does not depend on how many worker threads ran the chunks.

Margins are normalised by a per-trial scale:

* scalar checks: Π_t a_tt, which bounds every monomial Π a_{tσ(t)} of a
  PSD matrix;
* matrix checks: Π_i ‖X_i‖_1 (trace norm), which bounds every trace word.

``min_statistic`` in a report is the worst normalised margin: the
smallest eigenvalue for Löwner checks, the smallest scalar margin for
scalar checks and minus the largest residual norm for identities.  A trial
fails when its statistic is below ``-tol``.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .characters import (
    GroupFunction,
    OMEGA,
    Partition,
    builtin_a4_table,
    constant_one,
    delta_identity,
    hook_degree,
    idempotent_function,
    partitions_of,
    sign_function,
    sn_character,
)
from .gmf import permutation_monomials
from .matcore import dagger, hermitian_eigvals, matrix_from_json, matrix_to_json, random_complex, random_psd
from .permgroup import Permutation, symmetric_group
from .tracepoly import TracePolynomial, evaluate, lift_function

KINDS = ("scalar-nonneg", "scalar-difference", "loewner-nonneg", "loewner-difference", "matrix-identity")
CHUNK = 100
DEFAULT_TRIALS = 1000
DEFAULT_TOL = 1e-8


class UnknownSuite(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class InequalitySpec:
    """One inequality or identity to test.

    The tested quantity is ``Σ_i weights[i] · d_{functions[i]}`` (scalar
    kinds) or its lift (matrix kinds), unless ``expression`` supplies a
    closed-form matrix function of the sampled matrices.  For
    ``matrix-identity`` the residual ``value - reference`` must vanish.
    """

    name: str
    kind: str
    n: int
    functions: tuple[GroupFunction, ...] = ()
    weights: tuple = ()
    expression: Callable | None = None
    reference: Callable | None = None
    trace_one: bool = True
    sampler: str = "psd"
    m: int | None = None
    conjecture: bool = False
    description: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.weights and len(self.weights) != len(self.functions):
            raise ValueError("weights and functions differ in length")
        if self.kind.endswith("difference") and len(self.functions) != 2 and self.expression is None:
            raise ValueError("difference specs take exactly two functions")
        if not self.functions and self.expression is None:
            raise ValueError("spec needs functions or a closed-form expression")
        for f in self.functions:
            if f.n != self.n:
                raise ValueError(f"function of degree {f.n} in a degree-{self.n} spec")

    @property
    def arity(self) -> int:
        """Number of matrix variables of a lifted spec."""
        return self.n - 1

    @cached_property
    def combined(self) -> GroupFunction:
        weights = self.weights or (1,) * len(self.functions)
        total = None
        for w, f in zip(weights, self.functions):
            term = w * (f if f.domain.is_symmetric else f.zero_extend())
            total = term if total is None else total + term
        return total

    @cached_property
    def polynomial(self) -> TracePolynomial | None:
        return lift_function(self.combined) if self.functions else None

    @cached_property
    def _weight_vector(self) -> np.ndarray:
        return np.array([complex(v) for _, v in self.combined.items()])

    def scalar_value(self, A: np.ndarray) -> np.ndarray:
        return permutation_monomials(A, symmetric_group(self.n).elements) @ self._weight_vector

    def matrix_value(self, X: Sequence[np.ndarray], m: int) -> np.ndarray:
        if self.expression is not None:
            value = self.expression(X)
        else:
            value = evaluate(self.polynomial, X, dim=m)
        if self.reference is not None:
            value = value - self.reference(X)
        return value


@dataclass
class VerificationReport:
    spec: str
    trials: int
    dim: int
    seed: int
    min_statistic: float
    hermiticity_defect_max: float
    failures: int
    tolerance: float
    status: str
    counterexample: dict | None = field(default=None)

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "no counterexample found")

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def default_workers() -> int:
    env = os.environ.get("IMMLIFT_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _chunks(trials: int):
    return [range(start, min(start + CHUNK, trials)) for start in range(0, trials, CHUNK)]


def _sample(kind: str, m: int, seed: int, trials: range, count: int, trace_one: bool) -> list[np.ndarray]:
    """``count`` stacks of shape (len(trials), m, m); variable i of trial t is keyed (t, i)."""
    out = []
    for i in range(count):
        if kind == "psd":
            mats = [random_psd(m, seed, trace_one, key=(t, i)) for t in trials]
        elif kind == "complex":
            mats = [random_complex(m, seed, key=(t, i)) for t in trials]
        else:
            raise ValueError(f"unknown sampler {kind!r}")
        out.append(np.array(mats).reshape(len(trials), m, m))
    return out


def _trace_norms(X: np.ndarray, psd: bool) -> np.ndarray:
    if psd:
        return np.abs(np.trace(X, axis1=-2, axis2=-1).real)
    return np.linalg.norm(X, ord="nuc", axis=(-2, -1))


def _matrix_scale(X: Sequence[np.ndarray], psd: bool, batch: int) -> np.ndarray:
    scale = np.ones(batch)
    for x in X:
        scale = scale * _trace_norms(x, psd)
    return np.maximum(scale, np.finfo(float).tiny)


def _frob(M):
    return np.sqrt(np.sum(np.abs(M) ** 2, axis=(-2, -1)))


def _matrix_stats(spec: InequalitySpec, X, m: int, batch: int):
    """Per-trial (statistic, hermiticity defect), both normalised."""
    value = spec.matrix_value(X, m)
    value = np.broadcast_to(value, (batch, m, m))
    scale = _matrix_scale(X, spec.sampler == "psd", batch)
    if spec.kind == "matrix-identity":
        # operator norm via the largest eigenvalue of R†R
        gram = dagger(value) @ value
        top = hermitian_eigvals(0.5 * (gram + dagger(gram)), check=False)[:, -1]
        return -np.sqrt(np.maximum(top, 0)) / scale, np.zeros(batch)
    defect = _frob(value - dagger(value)) / scale
    herm = 0.5 * (value + dagger(value))
    low = hermitian_eigvals(herm, check=False)[:, 0] / scale
    return low, defect


def _scalar_stats(spec: InequalitySpec, A: np.ndarray):
    value = spec.scalar_value(A)
    scale = np.maximum(np.prod(np.diagonal(A, axis1=-2, axis2=-1).real, axis=-1), np.finfo(float).tiny)
    return value.real / scale, np.abs(value.imag) / scale


def _status(spec, failures_low: int, failures_herm: int) -> str:
    if spec.conjecture:
        return "counterexample" if failures_low else "no counterexample found"
    if failures_low:
        return "fail" if spec.kind == "matrix-identity" else "counterexample"
    if failures_herm:
        return "fail"
    return "pass"


def _run(spec, trials, dim, seed, tol, herm_tol, workers, evaluate_chunk, explicit=None) -> VerificationReport:
    chunks = _chunks(trials) if explicit is None else [range(len(explicit))]
    workers = workers or default_workers()
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate_chunk, chunks))
    else:
        results = [evaluate_chunk(c) for c in chunks]

    low = np.concatenate([r[0] for r in results])
    defect = np.concatenate([r[1] for r in results])
    bad_low = low < -tol
    bad_herm = defect > herm_tol
    failures = int(np.count_nonzero(bad_low | bad_herm))
    worst = int(np.argmin(low))
    counterexample = None
    if failures:
        k = worst if bad_low.any() else int(np.argmax(defect))
        mats = next(r[2] for r in results if k in r[3])(k)
        counterexample = {
            "trial": k,
            "statistic": float(low[k]),
            "hermiticity_defect": float(defect[k]),
            "matrices": [matrix_to_json(x) for x in mats],
        }
    return VerificationReport(
        spec=spec.name,
        trials=len(low),
        dim=dim,
        seed=seed,
        min_statistic=float(low[worst]),
        hermiticity_defect_max=float(defect.max()),
        failures=failures,
        tolerance=tol,
        status=_status(spec, int(bad_low.sum()), int(bad_herm.sum())),
        counterexample=counterexample,
    )


def check_loewner(
    spec: InequalitySpec,
    trials: int = DEFAULT_TRIALS,
    m: int = 3,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    herm_tol: float | None = None,
    workers: int | None = None,
) -> VerificationReport:
    """Test ``value(X_1..X_{n-1}) ⪰ 0`` (or ``= 0`` for identities) on random matrices."""
    if not (spec.kind.startswith("loewner") or spec.kind == "matrix-identity"):
        raise ValueError(f"spec {spec.name!r} of kind {spec.kind} is not a matrix spec")
    m = spec.m or m
    if m < 1:
        raise ValueError("m must be positive")
    herm_tol = tol if herm_tol is None else herm_tol

    def evaluate_chunk(chunk):
        X = _sample(spec.sampler, m, seed, chunk, spec.arity, spec.trace_one)
        low, defect = _matrix_stats(spec, X, m, len(chunk))
        replay = lambda k: [x[k - chunk.start] for x in X]
        return low, defect, replay, chunk

    return _run(spec, trials, m, seed, tol, herm_tol, workers, evaluate_chunk)


def check_identity(spec_or_poly, m: int = 2, trials: int = DEFAULT_TRIALS, seed: int = 0, tol: float = 1e-11, workers=None):
    """Test that a trace polynomial vanishes on random complex ``m × m`` matrices."""
    if isinstance(spec_or_poly, TracePolynomial):
        P = spec_or_poly
        spec = InequalitySpec(
            "identity", "matrix-identity", P.n, expression=lambda X: evaluate(P, X, dim=m), sampler="complex", trace_one=False
        )
    else:
        spec = spec_or_poly
    return check_loewner(spec, trials=trials, m=m, seed=seed, tol=tol, workers=workers)


def check_scalar(
    spec: InequalitySpec,
    trials: int = DEFAULT_TRIALS,
    n: int | None = None,
    seed: int = 0,
    tol: float = 1e-9,
    matrices: Sequence | None = None,
    herm_tol: float | None = None,
    workers: int | None = None,
) -> VerificationReport:
    """Test ``d_g(A) ≥ 0`` on random PSD ``n × n`` matrices (or on ``matrices``)."""
    if not spec.kind.startswith("scalar"):
        raise ValueError(f"spec {spec.name!r} of kind {spec.kind} is not a scalar spec")
    n = spec.n if n is None else n
    if n != spec.n:
        raise ValueError(f"spec {spec.name!r} has degree {spec.n}, sampler asked for {n}")
    herm_tol = tol if herm_tol is None else herm_tol

    if matrices is not None:
        given = np.array([np.asarray(a, dtype=complex) for a in matrices])

        def evaluate_chunk(chunk):
            low, defect = _scalar_stats(spec, given)
            return low, defect, lambda k: [given[k]], chunk

        return _run(spec, len(given), n, seed, tol, herm_tol, 1, evaluate_chunk, explicit=given)

    def evaluate_chunk(chunk):
        A = np.array([random_psd(n, seed, spec.trace_one, key=(t,)) for t in chunk])
        low, defect = _scalar_stats(spec, A)
        return low, defect, lambda k: [A[k - chunk.start]], chunk

    return _run(spec, trials, n, seed, tol, herm_tol, workers, evaluate_chunk)


def run_spec(spec: InequalitySpec, trials=DEFAULT_TRIALS, m=3, seed=0, tol=DEFAULT_TOL, workers=None) -> VerificationReport:
    if spec.kind.startswith("scalar"):
        return check_scalar(spec, trials, seed=seed, tol=tol, workers=workers)
    if spec.kind == "matrix-identity":
        tol = min(tol, 1e-11 if spec.sampler == "complex" else 1e-10)
    return check_loewner(spec, trials, m, seed, tol, workers=workers)


def replay_counterexample(spec: InequalitySpec, payload: dict) -> float:
    """Recompute the normalised statistic of a stored counterexample."""
    mats = [matrix_from_json(x) for x in payload["matrices"]]
    if spec.kind.startswith("scalar"):
        low, _ = _scalar_stats(spec, np.array(mats))
        return float(low[0])
    m = mats[0].shape[0] if mats else spec.m or 1
    X = [x[None] for x in mats]
    low, _ = _matrix_stats(spec, X, m, 1)
    return float(low[0])


# ---------------------------------------------------------------------------
# closed forms for the three-variable A_4 examples (X, Y, Z of trace one)


def _tr(M):
    return np.trace(M, axis1=-2, axis2=-1)[..., None, None]


def _eye_like(X):
    return np.broadcast_to(np.eye(X.shape[-1]), X.shape)


def a4_L(X, Y, Z):
    return _tr(X @ Y) * Z + _tr(X @ Z) * Y + _tr(Y @ Z) * X


def a4_M(X, Y, Z):
    return _tr(Z @ Y @ X) * _eye_like(X) + X @ Y + Y @ Z + Z @ X


def a4_closed_form(label: str, X, Y, Z):
    one = _eye_like(X)
    L, M = a4_L(X, Y, Z), a4_M(X, Y, Z)
    if label == "chi1":
        return 3 * one - L
    if label == "chi2":
        return one + L + OMEGA * M + np.conj(OMEGA) * dagger(M)
    if label == "chi3":
        return one + L + np.conj(OMEGA) * M + OMEGA * dagger(M)
    raise KeyError(label)


def watkins_a4_form(X, Y, Z):
    one = _eye_like(X)
    L, M = a4_L(X, Y, Z), a4_M(X, Y, Z)
    anti = lambda P, Q: P @ Q + Q @ P
    return (
        (OMEGA - 1) * M
        + (np.conj(OMEGA) - 1) * dagger(M)
        + _tr(L) * one
        + X + Y + Z
        + X @ anti(Y, Z) + Y @ anti(Z, X) + Z @ anti(X, Y)
    )


def anticommutator_lower(X, Y):
    return X @ Y + Y @ X - X - Y - (_tr(X @ Y) - 1) * _eye_like(X)


def anticommutator_upper(X, Y):
    return (2 / 3) * (X + Y + _tr(X @ Y) * _eye_like(X)) - (X @ Y + Y @ X)


def a4_inverse_character(label: str) -> GroupFunction:
    """A_4 character composed with inversion, zero-extended to S_4.

    Lifting σ ↦ χ(σ⁻¹) (the coefficient of σ in the central idempotent, up
    to χ(e)/|A_4|) reproduces the closed forms returned by
    ``a4_closed_form(label, ...)``; lifting χ itself gives the closed form
    of the conjugate character.
    """
    return builtin_a4_table()[label].compose_inverse().zero_extend()


# ---------------------------------------------------------------------------
# built-in suites


def _nonneg_pair(name, f, n):
    return [
        InequalitySpec(f"{name}-scalar", "scalar-nonneg", n, (f,), trace_one=False),
        InequalitySpec(f"{name}-lifted", "loewner-nonneg", n, (f,)),
    ]


def _gmf_nonneg(ns):
    specs = []
    for n in ns:
        for lam in partitions_of(n):
            specs += _nonneg_pair(f"imm{lam}", sn_character(lam), n)
    if 4 in ns:
        table = builtin_a4_table()
        for label in table.labels:
            specs += _nonneg_pair(f"a4-{label}", table[label].zero_extend(), 4)
    return specs


def _a4_examples():
    specs = []
    for label in ("chi1", "chi2", "chi3"):
        specs.append(
            InequalitySpec(
                f"a4-{label}-closed-form",
                "loewner-nonneg",
                4,
                expression=lambda X, label=label: a4_closed_form(label, *X),
                description=f"closed form of the lifted A_4 character {label}",
            )
        )
    specs.append(
        InequalitySpec(
            "a4-chi2-lift-equals-closed-form",
            "matrix-identity",
            4,
            (a4_inverse_character("chi2"),),
            reference=lambda X: a4_closed_form("chi2", *X),
        )
    )
    return specs


def _watkins_a4():
    f = a4_inverse_character("chi2")
    g = f - f(Permutation.identity(4)) * sign_function(4)
    return [
        InequalitySpec("watkins-a4-closed-form", "loewner-nonneg", 4, expression=lambda X: watkins_a4_form(*X)),
        InequalitySpec(
            "watkins-a4-lift-equals-closed-form", "matrix-identity", 4, (g,), reference=lambda X: watkins_a4_form(*X)
        ),
    ]


def _anticommutator():
    det3 = sign_function(3)
    p21 = idempotent_function(symmetric_group(3), sn_character((2, 1)))
    watkins = p21 - Fraction(2, 3) * det3
    return [
        InequalitySpec("anticommutator-lower", "loewner-nonneg", 3, expression=lambda X: anticommutator_lower(*X)),
        InequalitySpec("anticommutator-upper", "loewner-nonneg", 3, expression=lambda X: anticommutator_upper(*X)),
        InequalitySpec(
            "anticommutator-lower-from-det", "matrix-identity", 3, (det3,), reference=lambda X: anticommutator_lower(*X)
        ),
        InequalitySpec(
            "anticommutator-upper-from-watkins",
            "matrix-identity",
            3,
            (watkins,),
            reference=lambda X: anticommutator_upper(*X),
        ),
    ]


def lew_spec(lam=(1, 1, 1), m: int = 2) -> InequalitySpec:
    lam = Partition(tuple(lam))
    return InequalitySpec(
        f"lew-{lam}-m{m}",
        "matrix-identity",
        lam.n,
        (sn_character(lam),),
        trace_one=False,
        sampler="complex",
        m=m,
    )


def hadamard(n):
    return "hadamard", (delta_identity(n), sign_function(n)), (1, -1)


def marcus(n):
    return "marcus", (constant_one(n), delta_identity(n)), (1, -1)


def schur(lam):
    lam = Partition(tuple(lam))
    return f"schur{lam}", (sn_character(lam), sign_function(lam.n)), (Fraction(1, hook_degree(lam)), -1)


def heyfron_links(n):
    """Consecutive single-hook pairs: imm̄[k+1, 1^(n-k-1)] - imm̄[k, 1^(n-k)] ≥ 0."""
    out = []
    for k in range(1, n):
        hi, lo = Partition.hook(n, n - k - 1), Partition.hook(n, n - k)
        out.append(
            (
                f"heyfron{hi}-{lo}",
                (sn_character(hi), sn_character(lo)),
                (Fraction(1, hook_degree(hi)), -Fraction(1, hook_degree(lo))),
            )
        )
    return out


def watkins(f: GroupFunction, tag: str):
    e = Permutation.identity(f.n)
    return f"watkins-{tag}", (f, sign_function(f.n)), (1, -f(e))


def perm_dominance(lam):
    lam = Partition(tuple(lam))
    return f"permdom{lam}", (constant_one(lam.n), sn_character(lam)), (1, -Fraction(1, hook_degree(lam)))


def _families(ns_basic, ns_heyfron, ns_watkins):
    fams = []
    for n in ns_basic:
        fams += [(n, hadamard(n)), (n, marcus(n))]
        fams += [(n, schur(lam)) for lam in partitions_of(n)]
    for n in ns_heyfron:
        fams += [(n, link) for link in heyfron_links(n)]
    for n in ns_watkins:
        G = symmetric_group(n)
        for lam in partitions_of(n):
            chi = sn_character(lam)
            fams.append((n, watkins(chi, f"chi{lam}")))
            fams.append((n, watkins(idempotent_function(G, chi), f"p{lam}")))
    return fams


def _classical(n, lifted: bool):
    if n is None:
        fams = _families(range(2, 6), (4, 5), (3, 4))
    else:
        fams = _families([n], [n] if n >= 3 else [], [n])
    specs = []
    for deg, (name, fns, weights) in fams:
        if lifted and name.startswith("watkins"):
            continue
        kind = "loewner-difference" if lifted else "scalar-difference"
        specs.append(InequalitySpec(f"{name}-n{deg}" + ("-lifted" if lifted else ""), kind, deg, fns, weights, trace_one=lifted))
    if lifted:
        specs += _perm_dominance([n] if n else range(2, 6), scalar=False)
    return specs


def _perm_dominance(ns, scalar=True, lifted=True):
    specs = []
    for n in ns:
        for lam in partitions_of(n)[1:]:  # λ = (n) is an exact equality
            name, fns, weights = perm_dominance(lam)
            if scalar:
                specs.append(InequalitySpec(name, "scalar-difference", n, fns, weights, trace_one=False, conjecture=True))
            if lifted:
                specs.append(InequalitySpec(name + "-lifted", "loewner-difference", n, fns, weights, conjecture=True))
    return specs


SUITES = (
    "gmf-nonneg",
    "a4-examples",
    "watkins-a4",
    "anticommutator",
    "lew-identity",
    "appendix-scalar",
    "appendix-lifted",
    "perm-dominance",
)


def builtin_suite(name: str, n: int | None = None) -> list[InequalitySpec]:
    """Named collection of specs; ``n`` restricts the degree where a suite ranges over several."""
    if name == "gmf-nonneg":
        return _gmf_nonneg([n] if n else range(1, 6))
    if name == "a4-examples":
        return _a4_examples()
    if name == "watkins-a4":
        return _watkins_a4()
    if name == "anticommutator":
        return _anticommutator()
    if name == "lew-identity":
        return [lew_spec()]
    if name == "appendix-scalar":
        return _classical(n, lifted=False)
    if name == "appendix-lifted":
        return _classical(n, lifted=True)
    if name == "perm-dominance":
        return _perm_dominance([n] if n else range(2, 6))
    raise UnknownSuite(name)


def run_suite(name, trials=DEFAULT_TRIALS, m=3, seed=0, tol=DEFAULT_TOL, n=None, workers=None) -> list[VerificationReport]:
    return [run_spec(spec, trials, m, seed, tol, workers) for spec in builtin_suite(name, n)]


def suite_passed(reports: Sequence[VerificationReport], specs: Sequence[InequalitySpec]) -> bool:
    """True when every non-conjecture spec passed."""
    return all(r.passed for r, s in zip(reports, specs) if not s.conjecture)
