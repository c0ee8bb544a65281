"""The Gram matrix of tensor-factor-permutation operators and its exact algebra.

For g, h in S_n the operators V_g permuting the factors of (C^d)^{x n} have
Hilbert-Schmidt overlaps tr(V_{g^-1} V_h) = d**l(g^-1 h), where l counts
cycles.  The resulting n! x n! matrix M is a linear combination of the
class matrices M_alpha = (chi_alpha(g^-1 h)), which are proportional to a
complete set of orthogonal projectors.  That gives M's spectrum, exact
(pseudo)inverses from character data alone, and a minimal-polynomial form
of the inverse for S3 and S4.

All matrices here are exact (object arrays of ints/Fractions).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import rational
from .permgroup import (
    CanonicalGroupOrder,
    Permutation,
    character_table,
    enumerate_group,
    multiplicities,
    natural_character,
)

GRAM_DEGREES = (3, 4)


class SingularGramError(ValueError):
    """The Gram matrix has a vanishing irrep multiplicity and no inverse."""


def _require_gram_degree(n: int) -> None:
    if n not in GRAM_DEGREES:
        raise ValueError(f"Gram algebra is implemented for n in {GRAM_DEGREES}, got {n}")


@dataclass(eq=False)
class GramMatrix:
    """Exact overlap matrix entries[g][h] = d**l(g^-1 h) over the canonical order."""

    n: int
    d: int
    order: CanonicalGroupOrder
    entries: np.ndarray  # object dtype, Python ints

    @property
    def size(self) -> int:
        return len(self.order)


@lru_cache(maxsize=None)
def build_gram(n: int, d: int) -> GramMatrix:
    _require_gram_degree(n)
    if d < 1:
        raise ValueError(f"local dimension must be >= 1, got {d}")
    order = enumerate_group(n)
    size = len(order)
    entries = np.empty((size, size), dtype=object)
    inverses = [g.inverse() for g in order]
    for i, ginv in enumerate(inverses):
        for j, h in enumerate(order):
            entries[i, j] = natural_character(ginv.compose(h), d)
    return GramMatrix(n=n, d=d, order=order, entries=entries)


@lru_cache(maxsize=None)
def class_matrix(n: int, irrep_index: int) -> np.ndarray:
    """Matrix (chi_alpha(g^-1 h)) over the canonical order; Hermitian, and
    (d_alpha/n!) times it is an orthogonal projector."""
    table = character_table(n)
    order = enumerate_group(n)
    size = len(order)
    out = np.empty((size, size), dtype=object)
    inverses = [g.inverse() for g in order]
    for i, ginv in enumerate(inverses):
        for j, h in enumerate(order):
            out[i, j] = table.character(irrep_index, ginv.compose(h))
    return out


@lru_cache(maxsize=None)
def projector(n: int, irrep_index: int) -> np.ndarray:
    """Orthogonal projector (d_alpha/n!) * M_alpha, exact Fractions."""
    table = character_table(n)
    coeff = Fraction(table.irreps[irrep_index].dim, math.factorial(n))
    return rational.scale(coeff, class_matrix(n, irrep_index))


@dataclass(frozen=True)
class GramSpectralData:
    """Eigenvalues n!*k_alpha/d_alpha of M, each with multiplicity d_alpha**2."""

    n: int
    d: int
    eigenvalues: tuple[Fraction, ...]
    multiplicities: tuple[int, ...]  # d_alpha**2, summing to n!
    irrep_multiplicities: tuple[int, ...]  # k_alpha

    def eigenvalue_multiset(self) -> list[Fraction]:
        out = []
        for lam, m in zip(self.eigenvalues, self.multiplicities):
            out.extend([lam] * m)
        return sorted(out)


def spectral_data(n: int, d: int) -> GramSpectralData:
    _require_gram_degree(n)
    table = character_table(n)
    ks = multiplicities(n, d)
    group_order = math.factorial(n)
    eigs = tuple(Fraction(group_order * k, irrep.dim) for k, irrep in zip(ks, table.irreps))
    mults = tuple(irrep.dim ** 2 for irrep in table.irreps)
    return GramSpectralData(n=n, d=d, eigenvalues=eigs, multiplicities=mults,
                            irrep_multiplicities=ks)


def determinant_formula(n: int, d: int) -> Fraction:
    """prod_alpha (n! k_alpha / d_alpha)**(d_alpha**2); zero iff some k_alpha is."""
    data = spectral_data(n, d)
    det = Fraction(1)
    for lam, m in zip(data.eigenvalues, data.multiplicities):
        det *= lam ** m
    return det


def trace_formula(n: int, d: int) -> int:
    """n! * d**n, the trace of the Gram matrix."""
    return math.factorial(n) * d ** n


def spectral_inverse(gram: GramMatrix) -> np.ndarray:
    """Exact inverse (1/n!^2) sum_alpha (d_alpha^2/k_alpha) M_alpha.

    Raises SingularGramError when some k_alpha vanishes (then only the
    pseudoinverse exists).
    """
    table = character_table(gram.n)
    ks = multiplicities(gram.n, gram.d)
    zero = [irrep.label for irrep, k in zip(table.irreps, ks) if k == 0]
    if zero:
        raise SingularGramError(
            f"Gram matrix singular at n={gram.n}, d={gram.d}: zero multiplicity for {zero}"
        )
    group_order = math.factorial(gram.n)
    size = gram.size
    out = rational.zeros(size, size)
    for idx, (irrep, k) in enumerate(zip(table.irreps, ks)):
        coeff = Fraction(irrep.dim ** 2, group_order ** 2 * k)
        out = out + rational.scale(coeff, class_matrix(gram.n, idx))
    return out


def pseudoinverse(gram: GramMatrix) -> np.ndarray:
    """Moore-Penrose pseudoinverse: eigenvalue-reciprocal sum over the
    projectors of irreps with nonzero multiplicity,

        sum_{k_alpha>0} (1/lambda_alpha) P_alpha
        = sum_{k_alpha>0} d_alpha^2 / (n!^2 k_alpha) * M_alpha.

    Coincides with spectral_inverse when every multiplicity is nonzero.
    """
    table = character_table(gram.n)
    ks = multiplicities(gram.n, gram.d)
    group_order = math.factorial(gram.n)
    size = gram.size
    out = rational.zeros(size, size)
    for idx, (irrep, k) in enumerate(zip(table.irreps, ks)):
        if k == 0:
            continue
        coeff = Fraction(irrep.dim ** 2, group_order ** 2 * k)
        out = out + rational.scale(coeff, class_matrix(gram.n, idx))
    return out


def support_projector(gram: GramMatrix) -> np.ndarray:
    """Orthogonal projector onto the range of the Gram matrix: sum of the
    projectors of irreps with nonzero multiplicity."""
    ks = multiplicities(gram.n, gram.d)
    size = gram.size
    out = rational.zeros(size, size)
    for idx, k in enumerate(ks):
        if k == 0:
            continue
        out = out + projector(gram.n, idx)
    return out


def minpoly_coefficients(n: int, d: int) -> tuple:
    """Elementary symmetric functions e_1..e_r of the r distinct eigenvalues.

    The inverse is then (M^{r-1} - e_1 M^{r-2} + ... +- e_{r-1}) / e_r.
    """
    import itertools

    eigs = spectral_data(n, d).eigenvalues
    r = len(eigs)
    es = []
    for k in range(1, r + 1):
        acc = Fraction(0)
        for combo in itertools.combinations(eigs, k):
            term = Fraction(1)
            for lam in combo:
                term *= lam
            acc += term
        es.append(acc)
    return tuple(es)


def _s4_polynomial_coefficients(d: int) -> tuple[int, int, int, int, int]:
    """Closed-form coefficients of the degree-4 inverse polynomial for S4."""
    s1 = d ** 2 * (5 * d ** 2 + 19)
    s2 = 2 * d ** 2 * (d ** 2 - 1) * (5 * d ** 4 + 23 * d ** 2 + 20)
    s3 = 2 * d ** 4 * (d ** 2 - 1) ** 2 * (5 * d ** 4 + 7 * d ** 2 + 12)
    s4 = d ** 4 * (d ** 2 - 1) ** 3 * (d ** 2 - 4) * (5 * d ** 4 - 9 * d ** 2 + 36)
    s5 = d ** 6 * (d ** 2 - 1) ** 4 * (d ** 2 - 4) ** 2 * (d ** 2 - 9)
    return s1, s2, s3, s4, s5


def minpoly_inverse_s4(gram: GramMatrix) -> np.ndarray:
    """Inverse of the S4 Gram matrix as (M^4 - s1 M^3 + s2 M^2 - s3 M + s4)/s5.

    Valid for d >= 4; for d in {1, 2, 3} the denominator s5 vanishes.
    """
    if gram.n != 4:
        raise ValueError(f"S4 minimal-polynomial inverse needs n=4, got n={gram.n}")
    d = gram.d
    s1, s2, s3, s4, s5 = _s4_polynomial_coefficients(d)
    if s5 == 0:
        raise SingularGramError(f"degree-4 inverse polynomial degenerates at d={d} (need d >= 4)")
    m = gram.entries
    m2 = m.dot(m)
    m3 = m2.dot(m)
    m4 = m3.dot(m)
    size = gram.size
    out = np.empty((size, size), dtype=object)
    for i in range(size):
        for j in range(size):
            num = m4[i, j] - s1 * m3[i, j] + s2 * m2[i, j] - s3 * m[i, j] + (s4 if i == j else 0)
            out[i, j] = Fraction(num, s5)
    return out


def minpoly_inverse_s3(gram: GramMatrix) -> np.ndarray:
    """Inverse of the S3 Gram matrix as (M^2 - 3d(d^2+1) M + 3d^4(d^2-1))/s3,
    with s3 = d^3 (d^2-1)^2 (d^2-4); valid for d >= 3."""
    if gram.n != 3:
        raise ValueError(f"S3 minimal-polynomial inverse needs n=3, got n={gram.n}")
    d = gram.d
    c1 = 3 * d * (d ** 2 + 1)
    c0 = 3 * d ** 4 * (d ** 2 - 1)
    s3 = d ** 3 * (d ** 2 - 1) ** 2 * (d ** 2 - 4)
    if s3 == 0:
        raise SingularGramError(f"degree-2 inverse polynomial degenerates at d={d} (need d >= 3)")
    m = gram.entries
    m2 = m.dot(m)
    size = gram.size
    out = np.empty((size, size), dtype=object)
    for i in range(size):
        for j in range(size):
            num = m2[i, j] - c1 * m[i, j] + (c0 if i == j else 0)
            out[i, j] = Fraction(num, s3)
    return out


def s3_inverse_entry_table(d: int) -> dict[tuple[int, ...], Fraction]:
    """Explicit S3 inverse entries keyed by the cycle type of g^-1 h.

    diagonal: (d^6 - 3 d^4 + 2 d^2)/s3, transposition class: (d^3 - d^5)/s3,
    3-cycle class: (2 d^4 - 2 d^2)/s3, with s3 = d^3 (d^2-1)^2 (d^2-4).
    """
    s3 = d ** 3 * (d ** 2 - 1) ** 2 * (d ** 2 - 4)
    if s3 == 0:
        raise SingularGramError(f"S3 inverse entries undefined at d={d} (need d >= 3)")
    return {
        (1, 1, 1): Fraction(d ** 6 - 3 * d ** 4 + 2 * d ** 2, s3),
        (2, 1): Fraction(d ** 3 - d ** 5, s3),
        (3,): Fraction(2 * d ** 4 - 2 * d ** 2, s3),
    }


def adjacency_decomposition(n: int, d: int) -> list[tuple[np.ndarray, int]]:
    """Association-scheme split of the Gram matrix.

    Returns one 0/1 adjacency matrix per conjugacy class (identity class
    first) paired with its weight d**l(class); the weighted sum reproduces
    the Gram matrix and the unweighted sum is the all-ones matrix.
    """
    _require_gram_degree(n)
    table = character_table(n)
    order = enumerate_group(n)
    size = len(order)
    inverses = [g.inverse() for g in order]
    mats = [np.zeros((size, size), dtype=object) for _ in table.classes]
    for i, ginv in enumerate(inverses):
        for j, h in enumerate(order):
            cls_idx = table.class_index(ginv.compose(h).cycle_type())
            mats[cls_idx][i, j] = 1
    weights = [d ** len(cls.cycle_type) for cls in table.classes]
    return list(zip(mats, weights))


# --------------------------------------------------------------------------
# Numeric span projector (floating point; used as an independent oracle)
# --------------------------------------------------------------------------

@dataclass(eq=False)
class SpanProjector:
    """Orthogonal projector onto span{psi_i}, P = sum_ij X_ij |psi_i><psi_j|,
    where X is the pseudoinverse of the vectors' Gram matrix."""

    basis: np.ndarray  # columns are the spanning vectors
    mid: np.ndarray    # pseudoinverse of the Gram matrix

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.basis @ (self.mid @ (self.basis.conj().T @ v))

    def matrix(self) -> np.ndarray:
        return self.basis @ self.mid @ self.basis.conj().T

    @property
    def rank(self) -> int:
        g = self.basis.conj().T @ self.basis
        return int(round(np.trace(self.mid @ g).real))


def projector_from_vectors(vectors) -> SpanProjector:
    """Build the orthogonal projector onto the span of arbitrary vectors.

    Vectors may be given as arrays of any shape; they are flattened.  Works
    for linearly dependent and even repeated inputs via the pseudoinverse.
    """
    cols = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    basis = np.column_stack(cols)
    g = basis.conj().T @ basis
    mid = np.linalg.pinv(g, hermitian=True)
    return SpanProjector(basis=basis, mid=mid)
