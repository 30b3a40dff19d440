import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from immlift.characters import (
    GroupFunction,
    builtin_a4_table,
    constant_one,
    delta_identity,
    partitions_of,
    sign_function,
    sn_character,
)
from immlift.matcore import hermitian_eigvals, kron_all, permutation_operator
from immlift.permgroup import Permutation, enumerate_symmetric, inverse, symmetric_group
from immlift.tracepoly import (
    TracePolynomial,
    TraceTerm,
    canonical_rotation,
    evaluate,
    evaluate_T_scalar,
    kostant_trace,
    lift_function,
    lift_sigma,
    render,
)


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def rand_complex(rng, count, m):
    return [rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m)) for _ in range(count)]


def rand_psd(rng, count, m):
    out = []
    for G in rand_complex(rng, count, m):
        P = G @ G.conj().T
        out.append(P / np.trace(P).real)
    return out


def test_lift_sigma_examples():
    t = lift_sigma(cyc(4, (1, 4), (2, 3)))
    assert t.traced == ((2, 3),) and t.open == (1,)
    t = lift_sigma(Permutation.identity(3))
    assert t.traced == ((1,), (2,)) and t.open == ()
    t = lift_sigma(cyc(3, (1, 2, 3)))
    assert t.traced == () and t.open == (1, 2)


def test_canonical_rotation():
    assert canonical_rotation((3, 1, 2)) == (1, 2, 3)
    assert canonical_rotation((2, 1)) == (1, 2)
    assert TraceTerm(1, ((3, 2), (1,)), ()).traced == ((1,), (2, 3))


def test_lift_function_examples():
    P = lift_function(sign_function(2))
    assert P.term_map() == {(((1,),), ()): 1, ((), (1,)): -1}
    assert render(P) == "tr(X1)·1 − X1"
    P = lift_function(delta_identity(3))
    assert P.term_map() == {(((1,), (2,)), ()): 1}
    P = lift_function(builtin_a4_table()["chi1"].zero_extend())
    assert render(P, trace_one=True) == "3·1 − tr(X1X2)·X3 − tr(X1X3)·X2 − tr(X2X3)·X1"


def test_lift_requires_symmetric_domain():
    with pytest.raises(ValueError):
        lift_function(builtin_a4_table()["chi1"])


def test_per_lift_has_six_terms():
    assert len(lift_function(constant_one(3))) == 6


def test_evaluate_examples():
    P = lift_function(sign_function(2))
    assert np.allclose(evaluate(P, [np.diag([2.0, 1.0])]), np.diag([1, 2]))
    m = 3
    Q = lift_function(delta_identity(3))
    assert np.allclose(evaluate(Q, [np.eye(m), np.eye(m)]), m * m * np.eye(m))
    R = lift_function(sn_character((2, 1)))
    assert np.allclose(evaluate(R, [np.zeros((2, 2))] * 2), 0)
    # n = 1: no variables; the lift is the constant f(e)·𝟙
    assert np.allclose(evaluate(lift_function(constant_one(1)), [], dim=2), np.eye(2))
    with pytest.raises(ValueError):
        evaluate(P, [np.eye(2), np.eye(2)])


def test_evaluate_T_scalar_examples(rng):
    I = np.eye(2)
    assert evaluate_T_scalar(Permutation.identity(2), [I, I]) == pytest.approx(4)
    assert evaluate_T_scalar(cyc(2, (1, 2)), [I, I]) == pytest.approx(2)
    X = rand_complex(rng, 3, 2)
    for sigma in enumerate_symmetric(3):
        assert evaluate_T_scalar(sigma, X) == pytest.approx(kostant_trace(sigma, X), rel=1e-10)


def test_kostant_against_index_oracle(rng):
    # independent of permutation_operator: contract the Kronecker tensor index by index
    X = rand_complex(rng, 3, 2)
    big = kron_all(X).reshape((2,) * 6)
    for sigma in enumerate_symmetric(3):
        s = inverse(sigma)
        total = 0j
        for idx in np.ndindex(2, 2, 2):
            # the operator for s has entry 1 at (row i, column j) when i_l = j_{s(l)}
            out = tuple(idx[s(l) - 1] for l in range(1, 4))
            total += big[out + idx]
        assert total == pytest.approx(evaluate_T_scalar(sigma, X), rel=1e-10)


@pytest.mark.parametrize("sigma", enumerate_symmetric(4), ids=str)
def test_closure_identity(sigma, rng):
    X = rand_complex(rng, 4, 2)
    term = lift_sigma(sigma)
    T_tilde = evaluate(TracePolynomial(4, (term,)), X[:3])
    assert np.trace(T_tilde @ X[3]) == pytest.approx(evaluate_T_scalar(sigma, X), rel=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_lift_is_linear(seed):
    rng = np.random.default_rng(seed)
    G = symmetric_group(3)
    f = GroupFunction.from_callable(G, lambda p: complex(*rng.standard_normal(2)))
    g = GroupFunction.from_callable(G, lambda p: complex(*rng.standard_normal(2)))
    a, b = rng.standard_normal(2)
    X = rand_complex(rng, 2, 3)
    lhs = evaluate(lift_function(a * f + b * g), X)
    rhs = a * evaluate(lift_function(f), X) + b * evaluate(lift_function(g), X)
    assert np.allclose(lhs, rhs, atol=1e-10 * (1 + np.abs(rhs).max()))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_character_lifts_hermitian_psd(n, rng):
    for lam in partitions_of(n):
        P = lift_function(sn_character(lam))
        for _ in range(5):
            value = evaluate(P, rand_psd(rng, n - 1, 3))
            assert np.abs(value - value.conj().T).max() < 1e-12
            # (1^4) at m=3 vanishes identically, so skip the relative Hermiticity guard
            assert hermitian_eigvals((value + value.conj().T) / 2, check=False).min() >= -1e-10


@pytest.mark.parametrize("lam", partitions_of(3) + partitions_of(4), ids=str)
def test_sandwich_equals_tensor_sum(lam, rng):
    # <w|d̃_χ(X)|w> = Σ χ(σ) tr(σ⁻¹ X_1⊗...⊗X_{n-1}⊗|w><w|)
    n, m = lam.n, 2
    chi = sn_character(lam)
    X = rand_psd(rng, n - 1, m)
    w = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    sandwich = np.vdot(w, evaluate(lift_function(chi), X) @ w)
    big = kron_all(X + [np.outer(w, w.conj())])
    direct = sum(complex(v) * np.trace(permutation_operator(inverse(s), m) @ big) for s, v in chi.items())
    assert sandwich == pytest.approx(direct, rel=1e-10)


def test_json_round_trip():
    P = lift_function(builtin_a4_table()["chi2"].zero_extend())
    data = json.loads(json.dumps(P.to_json()))
    Q = TracePolynomial.from_json(data)
    assert Q.n == P.n and len(Q) == len(P)
    rng = np.random.default_rng(0)
    X = rand_complex(rng, 3, 2)
    assert np.allclose(evaluate(P, X), evaluate(Q, X), atol=1e-12)


def test_render_latex():
    text = render(lift_function(sign_function(2)), "latex")
    assert r"\operatorname{tr}" in text and r"\mathbb{1}" in text and "X_{1}" in text
