"""Partitions, irreducible characters of S_n, and functions on permutation groups.

S_n characters are computed exactly (Python ints) with the
Murnaghan-Nakayama border-strip recursion.  Subgroup characters come from
tables; the alternating group A_4 is built in.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial, prod
from numbers import Number
from typing import Callable, Mapping

from .permgroup import (
    MAX_DEGREE,
    Permutation,
    Subgroup,
    alternating_group,
    compose,
    conjugacy_classes,
    cycle_type,
    generate_subgroup,
    inverse,
    sign,
    symmetric_group,
)

OMEGA = cmath.exp(2j * cmath.pi / 3)


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def conjugate(self) -> Partition:
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse ``"2,1"`` or ``"(2,1)"``."""
        text = text.strip().strip("()[]")
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))

    @classmethod
    def hook(cls, n: int, k: int) -> Partition:
        """Single-hook shape [n-k, 1^k]."""
        return cls((n - k,) + (1,) * k)


def as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def partitions_of(n: int) -> list[Partition]:
    """Partitions of ``n`` in reverse-lexicographic order, (n) first and (1^n) last."""
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"n must be in 1..{MAX_DEGREE}, got {n}")

    def gen(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return [Partition(p) for p in gen(n, n)]


def hook_degree(lam) -> int:
    """Dimension of the irreducible representation, by the hook length formula."""
    lam = as_partition(lam)
    conj = lam.conjugate()
    hooks = prod(
        (lam[i] - j - 1) + (conj[j] - i - 1) + 1
        for i in range(lam.rows)
        for j in range(lam[i])
    )
    return factorial(lam.n) // hooks


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    # beta-set (first-column hook lengths); removing a border strip of length r
    # moves one bead from b to b - r
    k = len(lam)
    beta = [lam[i] + (k - 1 - i) for i in range(k)]
    beads = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in beads:
            continue
        height = sum(1 for x in beta if c < x < b)
        new_beta = sorted((beads - {b}) | {c}, reverse=True)
        new_lam = tuple(x - (k - 1 - i) for i, x in enumerate(new_beta))
        new_lam = tuple(p for p in new_lam if p > 0)
        total += (-1) ** height * _mn(new_lam, rest)
    return total


def mn_character(lam, mu) -> int:
    """Value of the irreducible character ``lam`` on the class of cycle type ``mu``."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.n != mu.n:
        raise ValueError(f"size mismatch: |{lam}| = {lam.n} but |{mu}| = {mu.n}")
    return _mn(lam.parts, mu.parts)


def class_size(mu) -> int:
    """Number of permutations of cycle type ``mu``: n! / z_mu."""
    mu = as_partition(mu)
    z = 1
    for length in set(mu.parts):
        mult = mu.parts.count(length)
        z *= length**mult * factorial(mult)
    return factorial(mu.n) // z


class DomainError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GroupFunction:
    """A function on the elements of a permutation group.

    Values may be ints, Fractions or complex numbers; exact values are kept
    exact under the arithmetic defined here.
    """

    domain: Subgroup
    values: Mapping[Permutation, Number]
    label: str = ""

    def __post_init__(self):
        missing = [p for p in self.domain.elements if p not in self.values]
        if missing:
            raise DomainError(f"function undefined on {len(missing)} elements, e.g. {missing[0]}")
        extra = [p for p in self.values if p not in self.domain]
        if extra:
            raise DomainError(f"value given outside the domain, e.g. {extra[0]}")
        object.__setattr__(self, "values", dict(self.values))

    @classmethod
    def from_callable(cls, domain: Subgroup, fn: Callable[[Permutation], Number], label: str = "") -> GroupFunction:
        return cls(domain, {p: fn(p) for p in domain.elements}, label)

    @property
    def n(self) -> int:
        return self.domain.n

    def __call__(self, p: Permutation):
        return self.values[p]

    def items(self):
        return ((p, self.values[p]) for p in self.domain.elements)

    def _check_same(self, other):
        if self.domain != other.domain:
            raise DomainError("group functions live on different domains")

    def __add__(self, other: GroupFunction) -> GroupFunction:
        self._check_same(other)
        return GroupFunction(self.domain, {p: v + other.values[p] for p, v in self.items()})

    def __sub__(self, other: GroupFunction) -> GroupFunction:
        self._check_same(other)
        return GroupFunction(self.domain, {p: v - other.values[p] for p, v in self.items()})

    def __mul__(self, c) -> GroupFunction:
        return GroupFunction(self.domain, {p: c * v for p, v in self.items()}, self.label)

    __rmul__ = __mul__

    def __neg__(self) -> GroupFunction:
        return self * -1

    def __truediv__(self, c) -> GroupFunction:
        if isinstance(c, int):
            c = Fraction(c)
        return GroupFunction(self.domain, {p: v / c for p, v in self.items()}, self.label)

    def close_to(self, other: GroupFunction, tol: float = 1e-12) -> bool:
        self._check_same(other)
        return all(abs(complex(v) - complex(other.values[p])) <= tol for p, v in self.items())

    def compose_inverse(self) -> GroupFunction:
        """The function σ ↦ f(σ⁻¹)."""
        return GroupFunction(self.domain, {p: self.values[inverse(p)] for p in self.domain.elements}, self.label)

    def zero_extend(self, n: int | None = None) -> GroupFunction:
        """Extend by zero to the full symmetric group."""
        full = symmetric_group(n or self.n)
        if full.n != self.n:
            raise DomainError(f"cannot extend a degree-{self.n} function to degree {full.n}")
        return GroupFunction(full, {p: self.values.get(p, 0) for p in full.elements}, self.label)

    def is_class_function(self, tol: float = 1e-12) -> bool:
        for _, members in conjugacy_classes(self.domain):
            v0 = complex(self.values[members[0]])
            if any(abs(complex(self.values[m]) - v0) > tol for m in members):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "label": self.label,
            "values": [[p.to_json(), _complex_pair(v)] for p, v in self.items()],
        }

    @classmethod
    def from_json(cls, data, domain: Subgroup | None = None) -> GroupFunction:
        """Load ``{"n": n, "values": [[images, [re, im]], ...]}``.

        Elements not listed get the value 0; the domain defaults to S_n.
        """
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["n"])
        domain = domain or symmetric_group(n)
        values = {p: 0 for p in domain.elements}
        for images, value in data["values"]:
            p = Permutation(tuple(images))
            if p not in domain:
                raise DomainError(f"{p} is not in the domain")
            values[p] = _from_pair(value)
        return cls(domain, values, data.get("label", ""))


def _complex_pair(v) -> list[float]:
    c = complex(v)
    return [c.real, c.imag]


def _from_pair(v):
    if isinstance(v, (list, tuple)):
        re, im = v
        return complex(re, im) if im else (int(re) if float(re).is_integer() else float(re))
    return v


def delta_identity(n: int) -> GroupFunction:
    e = Permutation.identity(n)
    return GroupFunction.from_callable(symmetric_group(n), lambda p: 1 if p == e else 0, "delta_e")


def constant_one(n: int) -> GroupFunction:
    return GroupFunction.from_callable(symmetric_group(n), lambda p: 1, "per")


def sign_function(n: int) -> GroupFunction:
    return GroupFunction.from_callable(symmetric_group(n), sign, "det")


def sn_character(lam) -> GroupFunction:
    """Irreducible character of S_n as a function on all n! elements."""
    lam = as_partition(lam)
    cache: dict[Partition, int] = {}

    def value(p):
        mu = cycle_type(p)
        if mu not in cache:
            cache[mu] = mn_character(lam, mu)
        return cache[mu]

    return GroupFunction.from_callable(symmetric_group(lam.n), value, f"chi{lam}")


@dataclass(frozen=True)
class CharacterTable:
    group: Subgroup
    labels: tuple[str, ...]
    rows: tuple[GroupFunction, ...]

    def __getitem__(self, label: str) -> GroupFunction:
        return self.rows[self.labels.index(label)]

    @cached_property
    def classes(self):
        return conjugacy_classes(self.group)

    def orthogonality_defect(self) -> float:
        """Largest deviation of Σ χ_i(σ) conj(χ_j(σ)) from |H| δ_ij."""
        order = self.group.order
        worst = 0.0
        for i, chi in enumerate(self.rows):
            for j, psi in enumerate(self.rows):
                s = sum(complex(chi(p)) * complex(psi(p)).conjugate() for p in self.group)
                worst = max(worst, abs(s - (order if i == j else 0)))
        return worst

    def to_json(self) -> dict:
        gens = _small_generating_set(self.group)
        return {
            "degree": self.group.n,
            "generators": [g.to_json() for g in gens],
            "classes": [rep.to_json() for rep, _ in self.classes],
            "characters": [
                {"label": label, "values": [_complex_pair(row(rep)) for rep, _ in self.classes]}
                for label, row in zip(self.labels, self.rows)
            ],
        }

    @classmethod
    def from_json(cls, data) -> CharacterTable:
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["degree"])
        group = generate_subgroup(n, [Permutation(tuple(g)) for g in data["generators"]])
        classes = conjugacy_classes(group)
        lookup = {m: k for k, (_, members) in enumerate(classes) for m in members}
        reps = [Permutation(tuple(r)) for r in data["classes"]]
        for r in reps:
            if r not in lookup:
                raise DomainError(f"class representative {r} is not in the group")
        if sorted(lookup[r] for r in reps) != list(range(len(classes))):
            raise DomainError("class representatives must hit every conjugacy class exactly once")
        labels, rows = [], []
        for entry in data["characters"]:
            by_class = {lookup[r]: _from_pair(v) for r, v in zip(reps, entry["values"])}
            rows.append(GroupFunction.from_callable(group, lambda p: by_class[lookup[p]], entry["label"]))
            labels.append(entry["label"])
        return cls(group, tuple(labels), tuple(rows))


def _small_generating_set(group: Subgroup) -> list[Permutation]:
    gens: list[Permutation] = []
    current = generate_subgroup(group.n, gens)
    for p in group.elements:
        if p not in current:
            gens.append(p)
            current = generate_subgroup(group.n, gens)
            if current.order == group.order:
                break
    return gens


def sn_character_table(n: int) -> CharacterTable:
    lams = partitions_of(n)
    return CharacterTable(symmetric_group(n), tuple(str(l) for l in lams), tuple(sn_character(l) for l in lams))


def builtin_a4_table() -> CharacterTable:
    """Character table of A_4 with the labelling trivial, chi1, chi2, chi3.

    chi2 takes the value ω = exp(2πi/3) on the class of (123) and ω̄ on the
    class of (132); chi3 is its complex conjugate.
    """
    group = alternating_group(4)
    c123 = Permutation.from_cycles(4, [(1, 2, 3)])
    c132 = Permutation.from_cycles(4, [(1, 3, 2)])
    double = Permutation.from_cycles(4, [(1, 2), (3, 4)])
    e = Permutation.identity(4)
    lookup = {}
    for _, members in conjugacy_classes(group):
        for key in (e, double, c123, c132):
            if key in members:
                lookup.update({m: key for m in members})
    table = {
        "trivial": {e: 1, double: 1, c123: 1, c132: 1},
        "chi1": {e: 3, double: -1, c123: 0, c132: 0},
        "chi2": {e: 1, double: 1, c123: OMEGA, c132: OMEGA.conjugate()},
        "chi3": {e: 1, double: 1, c123: OMEGA.conjugate(), c132: OMEGA},
    }
    rows = tuple(
        GroupFunction.from_callable(group, lambda p, row=row: row[lookup[p]], label)
        for label, row in table.items()
    )
    return CharacterTable(group, tuple(table), rows)


def idempotent_function(H: Subgroup, chi: GroupFunction) -> GroupFunction:
    """Coefficients c(σ) of the central idempotent Σ_σ c(σ) σ attached to ``chi``.

    c(σ) = χ(e) χ(σ⁻¹) / |H|.  Integer-valued characters give Fraction
    coefficients.
    """
    missing = [p for p in H.elements if p not in chi.values]
    if missing:
        raise DomainError(f"character undefined on {missing[0]}")
    degree = chi(Permutation.identity(H.n))
    scale = Fraction(degree, H.order) if _exact(chi) else degree / H.order
    return GroupFunction.from_callable(H, lambda p: scale * chi(inverse(p)), f"p[{chi.label}]")


def _exact(f: GroupFunction) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in f.values.values())


def convolve(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """(f*g)(σ) = Σ_τ f(τ) g(τ⁻¹σ), the product in the group algebra."""
    f._check_same(g)
    H = f.domain
    out = {p: 0 for p in H.elements}
    for tau, a in f.items():
        if a == 0:
            continue
        for rho, b in g.items():
            if b == 0:
                continue
            out[compose(tau, rho)] += a * b
    return GroupFunction(H, out)

