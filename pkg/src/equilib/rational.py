"""Dense exact-rational linear algebra on small matrices.

Matrices are numpy object arrays holding Python ints / Fractions, so all
results are exact.  Sizes here are tiny (at most 24 x 24), which keeps the
pure-Python cost negligible.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np


class SingularMatrixError(ValueError):
    pass


def as_matrix(rows) -> np.ndarray:
    """Object-dtype matrix from nested sequences of ints/Fractions."""
    a = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            a[i, j] = x
    return a


def identity(n: int) -> np.ndarray:
    a = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            a[i, j] = Fraction(i == j)
    return a


def zeros(n: int, m: int) -> np.ndarray:
    a = np.empty((n, m), dtype=object)
    a[:] = Fraction(0)
    return a


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.matmul rejects object dtype; dot supports it.
    return a.dot(b)


def mat_pow(a: np.ndarray, k: int) -> np.ndarray:
    if k < 1:
        raise ValueError("exponent must be >= 1")
    out = a
    for _ in range(k - 1):
        out = out.dot(a)
    return out


def scale(c, a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i, j] = c * a[i, j]
    return out


def matrices_equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(a[i, j] == b[i, j] for i in range(a.shape[0]) for j in range(a.shape[1]))


def is_identity(a: np.ndarray) -> bool:
    n = a.shape[0]
    return a.shape == (n, n) and all(
        a[i, j] == (1 if i == j else 0) for i in range(n) for j in range(n)
    )


def to_float(a: np.ndarray) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in a], dtype=float)


def _fraction_copy(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i, j] = Fraction(a[i, j])
    return out


def invert(a: np.ndarray) -> np.ndarray:
    """Exact inverse by Gauss-Jordan elimination; raises SingularMatrixError."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"square matrix required, got shape {a.shape}")
    m = _fraction_copy(a)
    inv = identity(n)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r, col] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {col})")
        if pivot_row != col:
            m[[col, pivot_row]] = m[[pivot_row, col]]
            inv[[col, pivot_row]] = inv[[pivot_row, col]]
        pivot = m[col, col]
        if pivot != 1:
            m[col, :] = [x / pivot for x in m[col, :]]
            inv[col, :] = [x / pivot for x in inv[col, :]]
        for r in range(n):
            if r == col or m[r, col] == 0:
                continue
            factor = m[r, col]
            m[r, :] = [x - factor * y for x, y in zip(m[r, :], m[col, :])]
            inv[r, :] = [x - factor * y for x, y in zip(inv[r, :], inv[col, :])]
    return inv


def determinant(a: np.ndarray) -> Fraction:
    """Exact determinant by row reduction."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"square matrix required, got shape {a.shape}")
    m = _fraction_copy(a)
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r, col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[[col, pivot_row]] = m[[pivot_row, col]]
            det = -det
        pivot = m[col, col]
        det *= pivot
        for r in range(col + 1, n):
            if m[r, col] == 0:
                continue
            factor = m[r, col] / pivot
            m[r, col:] = [x - factor * y for x, y in zip(m[r, col:], m[col, col:])]
    return det
