"""Independent brute-force oracles shared by the test modules."""

import itertools
from collections import defaultdict
from math import prod

import numpy as np
import pytest


def definitional_sum(A, weight):
    """Σ_σ weight(images) Π_t a[t, σ(t)] with σ given as a 0-based image tuple."""
    n = A.shape[0]
    total = 0j
    for images in itertools.permutations(range(n)):
        w = weight(images)
        if w:
            total += w * prod(A[t, images[t]] for t in range(n))
    return total


def parity(images):
    inversions = sum(1 for i in range(len(images)) for j in range(i + 1, len(images)) if images[i] > images[j])
    return -1 if inversions % 2 else 1


def frobenius_character(lam, mu):
    """χ^λ(μ) as the coefficient of x^(λ+δ) in p_μ · Π_{i<j}(x_i - x_j).

    Polynomials are dicts from exponent tuples to integer coefficients.
    """
    k = len(lam)

    def mul(p, q):
        out = defaultdict(int)
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return out

    def unit(i, power):
        e = [0] * k
        e[i] = power
        return tuple(e)

    poly = {(0,) * k: 1}
    for part in mu:
        poly = mul(poly, {unit(i, part): 1 for i in range(k)})
    for i in range(k):
        for j in range(i + 1, k):
            poly = mul(poly, {unit(i, 1): 1, unit(j, 1): -1})
    target = tuple(lam[i] + (k - 1 - i) for i in range(k))
    return poly.get(target, 0)


def random_psd_np(rng, n, rank=None):
    rank = rank or n
    G = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    return G @ G.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
