import cmath
import json
from fractions import Fraction
from math import factorial

import pytest

from conftest import frobenius_character
from immlift.characters import (
    OMEGA,
    CharacterTable,
    DomainError,
    GroupFunction,
    Partition,
    builtin_a4_table,
    class_size,
    convolve,
    hook_degree,
    idempotent_function,
    mn_character,
    partitions_of,
    sign_function,
    sn_character,
    sn_character_table,
)
from immlift.permgroup import Permutation, generate_subgroup, sign, symmetric_group


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


P = Partition


def test_partitions_of():
    assert partitions_of(3) == [P((3,)), P((2, 1)), P((1, 1, 1))]
    assert partitions_of(1) == [P((1,))]
    assert len(partitions_of(5)) == 7
    assert [len(partitions_of(n)) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
    with pytest.raises(ValueError):
        partitions_of(9)


def test_partition_validation():
    with pytest.raises(ValueError):
        P((1, 2))
    with pytest.raises(ValueError):
        P((2, 0))
    assert P.parse("(2,1)") == P((2, 1))
    assert P((3, 1)).conjugate() == P((2, 1, 1))


def test_hook_degree_examples():
    assert hook_degree((4,)) == 1
    assert hook_degree((1, 1, 1)) == 1
    assert hook_degree((2, 1)) == 2


@pytest.mark.parametrize("n", range(1, 9))
def test_hook_degrees_square_sum(n):
    assert sum(hook_degree(l) ** 2 for l in partitions_of(n)) == factorial(n)


def test_mn_examples():
    assert mn_character((2, 1), (3,)) == -1
    assert mn_character((2, 1), (2, 1)) == 0
    assert mn_character((1, 1, 1), (2, 1)) == -1
    with pytest.raises(ValueError):
        mn_character((2, 1), (2, 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_mn_matches_frobenius_formula(n):
    for lam in partitions_of(n):
        for mu in partitions_of(n):
            assert mn_character(lam, mu) == frobenius_character(lam.parts, mu.parts), (lam, mu)


@pytest.mark.parametrize("n", range(1, 9))
def test_mn_identity_class_is_degree(n):
    for lam in partitions_of(n):
        assert mn_character(lam, (1,) * n) == hook_degree(lam)


@pytest.mark.parametrize("n", range(1, 9))
def test_sn_orthogonality_exact(n):
    lams = partitions_of(n)
    for a in lams:
        for b in lams:
            s = sum(class_size(mu) * mn_character(a, mu) * mn_character(b, mu) for mu in lams)
            assert s == (factorial(n) if a == b else 0)


def test_sign_and_trivial_characters():
    chi = sn_character((1, 1, 1, 1))
    assert all(chi(p) == sign(p) for p in symmetric_group(4))
    assert all(v == 1 for _, v in sn_character((4,)).items())


def test_a4_table_values():
    t = builtin_a4_table()
    assert t.labels == ("trivial", "chi1", "chi2", "chi3")
    assert t["chi1"](cyc(4, (1, 2), (3, 4))) == -1
    assert t["chi2"](cyc(4, (1, 2, 3))) == OMEGA
    assert t["chi2"](cyc(4, (1, 3, 2))) == OMEGA.conjugate()
    assert t["chi3"](cyc(4, (1, 2, 3))) == OMEGA.conjugate()
    e = Permutation.identity(4)
    assert [t[l](e) for l in t.labels] == [1, 3, 1, 1]
    assert abs(OMEGA - cmath.exp(2j * cmath.pi / 3)) < 1e-15


def test_a4_table_class_functions_and_orthogonality():
    t = builtin_a4_table()
    assert all(row.is_class_function() for row in t.rows)
    assert t.orthogonality_defect() < 1e-12


def test_character_table_json_round_trip():
    t = builtin_a4_table()
    data = json.loads(json.dumps(t.to_json()))
    assert data["degree"] == 4
    assert all(len(pair) == 2 for row in data["characters"] for pair in row["values"])
    back = CharacterTable.from_json(data)
    assert back.labels == t.labels
    for a, b in zip(back.rows, t.rows):
        assert a.close_to(b)
    s3 = sn_character_table(3)
    assert CharacterTable.from_json(s3.to_json())["(2,1)"].close_to(s3["(2,1)"])


def test_character_table_json_rejects_bad_classes():
    data = builtin_a4_table().to_json()
    data["classes"][1] = data["classes"][0]
    with pytest.raises(DomainError):
        CharacterTable.from_json(data)


def test_idempotent_function_examples():
    S3 = symmetric_group(3)
    p = idempotent_function(S3, sn_character((2, 1)))
    e = Permutation.identity(3)
    assert p(e) == Fraction(2, 3)
    assert p(cyc(3, (1, 2, 3))) == p(cyc(3, (1, 3, 2))) == Fraction(-1, 3)
    assert all(p(cyc(3, t)) == 0 for t in [(1, 2), (1, 3), (2, 3)])

    trivial = generate_subgroup(3, [])
    one = GroupFunction(trivial, {e: 1})
    assert idempotent_function(trivial, one)(e) == 1

    S2 = symmetric_group(2)
    q = idempotent_function(S2, sign_function(2))
    assert q(Permutation.identity(2)) == Fraction(1, 2)
    assert q(cyc(2, (1, 2))) == Fraction(-1, 2)


def test_idempotent_function_requires_full_domain():
    H = symmetric_group(3)
    partial = GroupFunction(generate_subgroup(3, []), {Permutation.identity(3): 1})
    with pytest.raises(DomainError):
        idempotent_function(H, partial)


def test_convolve_identity_element():
    S3 = symmetric_group(3)
    delta = GroupFunction.from_callable(S3, lambda p: 1 if p == Permutation.identity(3) else 0)
    f = GroupFunction.from_callable(S3, lambda p: p.images[0] + 2 * p.images[1])
    assert convolve(delta, f).values == f.values
    assert convolve(f, delta).values == f.values


@pytest.mark.parametrize("n", range(1, 6))
def test_sn_idempotents_exact(n):
    G = symmetric_group(n)
    ps = {lam: idempotent_function(G, sn_character(lam)) for lam in partitions_of(n)}
    for a, p in ps.items():
        assert convolve(p, p).values == p.values
        for b, q in ps.items():
            if a != b:
                assert all(v == 0 for v in convolve(p, q).values.values())


def test_a4_idempotents():
    t = builtin_a4_table()
    ps = [idempotent_function(t.group, row) for row in t.rows]
    for i, p in enumerate(ps):
        assert convolve(p, p).close_to(p, 1e-12)
        for j, q in enumerate(ps):
            if i != j:
                assert all(abs(v) < 1e-12 for v in convolve(p, q).values.values())


def test_group_function_domain_checks():
    S3 = symmetric_group(3)
    with pytest.raises(DomainError):
        GroupFunction(S3, {Permutation.identity(3): 1})
    f = sn_character((2, 1))
    g = builtin_a4_table()["chi1"]
    with pytest.raises(DomainError):
        convolve(f, g)


def test_group_function_json_round_trip():
    f = idempotent_function(symmetric_group(3), sn_character((2, 1)))
    back = GroupFunction.from_json(json.loads(json.dumps(f.to_json())))
    assert back.close_to(f)


def test_zero_extend():
    chi1 = builtin_a4_table()["chi1"].zero_extend()
    assert chi1.domain == symmetric_group(4)
    assert chi1(cyc(4, (1, 2))) == 0
    assert chi1(cyc(4, (1, 3), (2, 4))) == -1
