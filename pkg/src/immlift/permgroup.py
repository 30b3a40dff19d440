"""Permutations of {1..n}, canonical cycle notation, and small subgroups of S_n.

Permutations are stored in one-line notation with 1-based images, so
``Permutation((2, 3, 1))`` sends 1 -> 2, 2 -> 3 and 3 -> 1.  Cycles are
written the usual way: ``(a b c)`` means a -> b -> c -> a.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Sequence

MAX_DEGREE = 8


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build a permutation of degree ``n`` from (possibly overlapping-free) cycles."""
        images = list(range(1, n + 1))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if not 1 <= a <= n or a in seen:
                    raise ValueError(f"bad cycle {tuple(cycle)} for degree {n}")
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, t: int) -> int:
        return self.images[t - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __str__(self):
        cycles = [c for c in self.cycles if len(c) > 1]
        if not cycles:
            return "e"
        return "".join("(" + "".join(map(str, c)) + ")" for c in cycles)

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, each starting at its smallest element, fixed points included."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            t = self(start)
            while t != start:
                cycle.append(t)
                seen.add(t)
                t = self(t)
            out.append(tuple(cycle))
        return tuple(out)

    def to_json(self) -> list[int]:
        return list(self.images)

    @classmethod
    def from_json(cls, data) -> Permutation:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q``, i.e. apply ``q`` first."""
    if p.n != q.n:
        raise DegreeMismatch(f"cannot compose degree {p.n} with degree {q.n}")
    return Permutation(tuple(p.images[i - 1] for i in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for t, image in enumerate(p.images, start=1):
        inv[image - 1] = t
    return Permutation(tuple(inv))


def sign(p: Permutation) -> int:
    return -1 if (p.n - len(p.cycles)) % 2 else 1


def cycle_type(p: Permutation):
    from .characters import Partition

    return Partition(sorted((len(c) for c in p.cycles), reverse=True))


def canonical_cycles(p: Permutation) -> tuple[tuple[int, ...], ...]:
    """Cycles in canonical order.

    Every cycle is rotated so that its largest element comes last, and the
    cycles are sorted by that largest element.  The cycle holding ``n`` is
    therefore the final one and ends with ``n``.  Fixed points stay in the
    list as 1-cycles.
    """
    rotated = []
    for cycle in p.cycles:
        k = cycle.index(max(cycle))
        rotated.append(cycle[k + 1:] + cycle[: k + 1])
    rotated.sort(key=lambda c: c[-1])
    return tuple(rotated)


def _check_degree(n: int) -> None:
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"degree must be in 1..{MAX_DEGREE}, got {n}")


def enumerate_symmetric(n: int) -> list[Permutation]:
    """All ``n!`` permutations of degree ``n`` in lexicographic one-line order."""
    _check_degree(n)
    return [Permutation(images) for images in itertools.permutations(range(1, n + 1))]


@dataclass(frozen=True)
class Subgroup:
    n: int
    elements: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p):
        return p in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def index(self) -> dict[Permutation, int]:
        """Position of every element in ``elements``."""
        return {p: i for i, p in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_symmetric(self) -> bool:
        return len(self.elements) == factorial(self.n)


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> Subgroup:
    return Subgroup(n, tuple(enumerate_symmetric(n)))


def generate_subgroup(n: int, generators: Iterable[Permutation]) -> Subgroup:
    """Closure of ``generators`` under composition (finite group, so inverses come free)."""
    _check_degree(n)
    gens = list(generators)
    for g in gens:
        if g.n != n:
            raise DegreeMismatch(f"generator {g} has degree {g.n}, expected {n}")
    e = Permutation.identity(n)
    elements = {e}
    frontier = [e]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in elements:
                    elements.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(n, tuple(elements))


def alternating_group(n: int) -> Subgroup:
    return Subgroup(n, tuple(p for p in enumerate_symmetric(n) if sign(p) == 1))


def conjugacy_classes(H: Subgroup) -> list[tuple[Permutation, tuple[Permutation, ...]]]:
    """Conjugacy classes of ``H`` as (representative, members), sorted by representative.

    The representative is the lexicographically smallest one-line form in
    its class.
    """
    remaining = set(H.elements)
    inverses = {h: inverse(h) for h in H.elements}
    classes = []
    while remaining:
        x = min(remaining)
        orbit = {compose(compose(h, x), inverses[h]) for h in H.elements}
        remaining -= orbit
        members = tuple(sorted(orbit))
        classes.append((members[0], members))
    classes.sort(key=lambda c: c[0])
    return classes
