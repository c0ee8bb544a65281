"""Exact symmetric-group machinery.

Permutations of {0, ..., n-1}, a canonical enumeration of S_n, cycle data,
hard-coded conjugacy-class/character tables for S3 and S4, and irrep
multiplicities of the representation that permutes tensor factors of
(C^d)^{x n}.  Everything here is exact integer arithmetic; floating point
never enters.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

MAX_DEGREE = 8
TABLE_DEGREES = (3, 4)


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., n-1} in image form: i maps to images[i]."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection on 0..{len(self.images) - 1}: {self.images!r}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def is_identity(self) -> bool:
        return all(im == i for i, im in enumerate(self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, im in enumerate(self.images):
            inv[im] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: compose(p, q)(i) = p(q(i))."""
        if self.n != other.n:
            raise ValueError(f"degree mismatch: {self.n} vs {other.n}")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles in traversal order (c, p(c), p(p(c)), ...).

        Each cycle starts at its smallest member; cycles are ordered by that
        member; fixed points appear as 1-cycles.
        """
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_count(self) -> int:
        """Number of disjoint cycles, fixed points counted as 1-cycles."""
        return len(self.cycles())

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths, sorted decreasingly (a partition of n)."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def transposition(n: int, i: int, j: int) -> Permutation:
    images = list(range(n))
    images[i], images[j] = images[j], images[i]
    return Permutation(tuple(images))


def from_cycle(n: int, cycle: tuple[int, ...]) -> Permutation:
    """Permutation mapping cycle[k] to cycle[k+1] (cyclically), fixing the rest."""
    images = list(range(n))
    for k, c in enumerate(cycle):
        images[c] = cycle[(k + 1) % len(cycle)]
    return Permutation(tuple(images))


class CanonicalGroupOrder:
    """All n! elements of S_n, sorted lexicographically by image tuple.

    The identity is element 0.  This fixed ordering indexes every vector and
    matrix built over the group elsewhere in the package.
    """

    def __init__(self, n: int):
        if not 1 <= n <= MAX_DEGREE:
            raise ValueError(f"group degree must be in 1..{MAX_DEGREE}, got {n}")
        self.n = n
        self.elements: tuple[Permutation, ...] = tuple(
            Permutation(images) for images in itertools.permutations(range(n))
        )
        self._index = {p.images: i for i, p in enumerate(self.elements)}

    def index(self, p: Permutation) -> int:
        return self._index[p.images]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> Permutation:
        return self.elements[i]


@lru_cache(maxsize=None)
def enumerate_group(n: int) -> CanonicalGroupOrder:
    """Canonical (lexicographic) ordering of S_n, 1 <= n <= 8."""
    return CanonicalGroupOrder(n)


# --------------------------------------------------------------------------
# Conjugacy classes and character tables
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjugacyClass:
    cycle_type: tuple[int, ...]
    size: int


@dataclass(frozen=True)
class Irrep:
    label: str
    dim: int
    characters: tuple[int, ...]  # one value per conjugacy class, table order


@dataclass(frozen=True)
class CharacterTable:
    n: int
    classes: tuple[ConjugacyClass, ...]
    irreps: tuple[Irrep, ...]

    def class_index(self, cycle_type: tuple[int, ...]) -> int:
        for i, c in enumerate(self.classes):
            if c.cycle_type == cycle_type:
                return i
        raise KeyError(f"no class with cycle type {cycle_type} in S_{self.n}")

    def character(self, irrep_index: int, p: Permutation) -> int:
        return self.irreps[irrep_index].characters[self.class_index(p.cycle_type())]


# Irreps are listed so that the multiplicity vector returned by
# multiplicities() matches the standard closed-form polynomials in d
# (see multiplicity tests).  Characters are all real integers.
_S3_TABLE = CharacterTable(
    n=3,
    classes=(
        ConjugacyClass((1, 1, 1), 1),
        ConjugacyClass((2, 1), 3),
        ConjugacyClass((3,), 2),
    ),
    irreps=(
        Irrep("trivial", 1, (1, 1, 1)),
        Irrep("sign", 1, (1, -1, 1)),
        Irrep("standard", 2, (2, 0, -1)),
    ),
)

_S4_TABLE = CharacterTable(
    n=4,
    classes=(
        ConjugacyClass((1, 1, 1, 1), 1),
        ConjugacyClass((2, 1, 1), 6),
        ConjugacyClass((2, 2), 3),
        ConjugacyClass((3, 1), 8),
        ConjugacyClass((4,), 6),
    ),
    irreps=(
        Irrep("trivial", 1, (1, 1, 1, 1, 1)),
        Irrep("sign", 1, (1, -1, 1, 1, -1)),
        Irrep("two_dim", 2, (2, 0, 2, -1, 0)),
        Irrep("standard_times_sign", 3, (3, -1, -1, 0, 1)),
        Irrep("standard", 3, (3, 1, -1, 0, -1)),
    ),
)

_TABLES = {3: _S3_TABLE, 4: _S4_TABLE}


def character_table(n: int) -> CharacterTable:
    """Hard-coded character table of S_n; only n in {3, 4} are supported."""
    try:
        return _TABLES[n]
    except KeyError:
        raise ValueError(f"character table only available for n in {TABLE_DEGREES}, got {n}") from None


def cycle_count(p: Permutation) -> int:
    return p.cycle_count()


def natural_character(p: Permutation, d: int) -> int:
    """Trace of the operator permuting the factors of (C^d)^{x n}: d**cycle_count."""
    if d < 1:
        raise ValueError(f"local dimension must be >= 1, got {d}")
    return d ** p.cycle_count()


def class_natural_character(cls: ConjugacyClass, d: int) -> int:
    """d**(number of cycles) for any element of the class."""
    return d ** len(cls.cycle_type)


@lru_cache(maxsize=None)
def multiplicities(n: int, d: int) -> tuple[int, ...]:
    """Multiplicity of each irrep inside the tensor-factor-permuting rep at local dimension d.

    Computed as the exact class-sum scalar product
    k_alpha = (1/n!) * sum_C |C| * d**l(C) * chi_alpha(C), which is always a
    non-negative integer.
    """
    table = character_table(n)
    if d < 1:
        raise ValueError(f"local dimension must be >= 1, got {d}")
    group_order = math.factorial(n)
    ks = []
    for irrep in table.irreps:
        acc = sum(
            cls.size * class_natural_character(cls, d) * chi
            for cls, chi in zip(table.classes, irrep.characters)
        )
        k = Fraction(acc, group_order)
        if k.denominator != 1 or k < 0:
            raise AssertionError(f"multiplicity not a non-negative integer: {k} (n={n}, d={d})")
        ks.append(int(k))
    return tuple(ks)
