"""Twirl traces over permutation operators via overlap vectors.

The n-fold twirl tau(B) = avg_U U^{xn} B U^{xn dagger} over Haar U is the
orthogonal projection (in Hilbert-Schmidt space) onto span{V_pi}.  For
operators A, B on (C^d)^{xn},

    tr[A^dagger tau(B)] = sum_{pi,sigma} conj(a_pi) (M^+)_{pi sigma} b_sigma,

with a_pi = tr(A V_{pi^{-1}}), b_pi = tr(B V_{pi^{-1}}) and M^+ the
(pseudo)inverse of the Gram matrix from :mod:`equilib.gram`.

Conventions (fixed by the dense-oracle tests):

* V_sigma (v_1 x ... x v_n) = v_{sigma(1)} x ... x v_{sigma(n)}, so slot k of
  the output holds input factor sigma(k).
* tr(V_sigma A_1 x ... x A_n) factorizes over the cycles of sigma; a cycle
  (c0, c1, ..., c_{m-1}) with sigma(c_j) = c_{j+1} contributes
  tr(A_{c0} A_{c1} ... A_{c_{m-1}}).

Overlap components can be evaluated three ways: dense matrices (the small-d
oracle), tensor-split Kron factors (traces split into system x bath parts),
or spectral factors that never materialize a d^n-dimensional object.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .gram import projector_from_vectors
from .permgroup import CanonicalGroupOrder, Permutation, enumerate_group

DEFAULT_MAX_DENSE_DIM = 256


class DimensionLimitError(ValueError):
    """Dense-oracle dimension exceeds the configured cap (EQUILIB_MAX_DIM)."""


def max_dense_dim() -> int:
    raw = os.environ.get("EQUILIB_MAX_DIM", "")
    if not raw:
        return DEFAULT_MAX_DENSE_DIM
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"EQUILIB_MAX_DIM must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"EQUILIB_MAX_DIM must be positive, got {value}")
    return value


def _check_dense_dim(dim: int) -> None:
    cap = max_dense_dim()
    if dim > cap:
        raise DimensionLimitError(
            f"dense operator dimension {dim} exceeds cap {cap} (set EQUILIB_MAX_DIM to raise)"
        )


# --------------------------------------------------------------------------
# Factor operators
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseFactor:
    """Diagonal evolution factor exp(i * power * E * t), one weight per level."""

    power: int


@dataclass(frozen=True)
class ProjectorFactor:
    """Spectral projector onto one energy level, carrying a summation tag.

    Factors sharing a tag are summed over a common level index; distinct
    tags are summed independently.
    """

    tag: str


@dataclass(eq=False)
class KronFactor:
    """A factor of the form (system part) x (bath part); cycle traces split."""

    sys: np.ndarray
    bath: np.ndarray


SpectralFactor = Union[PhaseFactor, ProjectorFactor]
DenseLike = Union[np.ndarray, KronFactor]


@dataclass(eq=False)
class ProductTerm:
    """coeff * F_1 x F_2 x ... x F_n with homogeneous factor kind."""

    factors: tuple
    coeff: complex = 1.0


def _is_spectral(factors) -> bool:
    return all(isinstance(f, (PhaseFactor, ProjectorFactor)) for f in factors)


def _as_terms(operator) -> list[ProductTerm]:
    if isinstance(operator, ProductTerm):
        return [operator]
    if isinstance(operator, (list, tuple)):
        if operator and all(isinstance(t, ProductTerm) for t in operator):
            return list(operator)
        return [ProductTerm(factors=tuple(operator))]
    raise TypeError(f"expected ProductTerm, sequence of ProductTerm, or factor sequence, "
                    f"got {type(operator).__name__}")


# --------------------------------------------------------------------------
# Dense permutation operators and the cycle trace rule
# --------------------------------------------------------------------------

def perm_operator(p: Permutation, d: int) -> np.ndarray:
    """Dense operator permuting the factors of (C^d)^{xn}; real 0/1 matrix."""
    n = p.n
    dim = d ** n
    _check_dense_dim(dim)
    v = np.zeros((dim, dim))
    strides = [d ** (n - 1 - k) for k in range(n)]
    for col, j in enumerate(np.ndindex(*([d] * n))):
        row = sum(j[p(k)] * strides[k] for k in range(n))
        v[row, col] = 1.0
    return v


def _factor_dim(f: DenseLike) -> int:
    if isinstance(f, KronFactor):
        return f.sys.shape[0] * f.bath.shape[0]
    return f.shape[0]


def _cycle_trace_dense(factors: Sequence[DenseLike], cycle: Sequence[int]) -> complex:
    if all(isinstance(factors[c], KronFactor) for c in cycle):
        first = factors[cycle[0]]
        ms, mb = first.sys, first.bath
        for c in cycle[1:]:
            ms = ms @ factors[c].sys
            mb = mb @ factors[c].bath
        return complex(np.trace(ms)) * complex(np.trace(mb))
    mats = [np.kron(factors[c].sys, factors[c].bath) if isinstance(factors[c], KronFactor)
            else np.asarray(factors[c]) for c in cycle]
    acc = mats[0]
    for m in mats[1:]:
        acc = acc @ m
    return complex(np.trace(acc))


def trace_perm_product(p: Permutation, factors: Sequence[DenseLike]) -> complex:
    """tr(V_p * F_1 x ... x F_n) via the cycle factorization.

    Each cycle of p contributes the trace of the factors multiplied along the
    cycle traversal; the full trace is the product over cycles.
    """
    if len(factors) != p.n:
        raise ValueError(f"{p.n} factors required, got {len(factors)}")
    dims = {_factor_dim(f) for f in factors}
    if len(dims) != 1:
        raise ValueError(f"factor dimensions differ: {sorted(dims)}")
    out = complex(1.0)
    for cycle in p.cycles():
        out *= _cycle_trace_dense(factors, cycle)
    return out


# --------------------------------------------------------------------------
# Spectral factors: cycle data reduces to sums sum_j d_j^m exp(i w E_j t)
# --------------------------------------------------------------------------

def spectral_pieces(p: Permutation, factors: Sequence[SpectralFactor]) -> list[tuple[int, int]]:
    """Reduce tr(V_p * product) for diagonal spectral factors to (m, w) pieces.

    Every cycle yields a net phase power w (sum of PhaseFactor powers) and a
    set of level tags.  Cycles sharing tags are forced onto a common level
    index and merge into one piece; a piece (m, w) stands for the scalar
    sum_j d_j^m exp(i w E_j t).  The component value is the product of its
    pieces.
    """
    if len(factors) != p.n:
        raise ValueError(f"{p.n} factors required, got {len(factors)}")
    cyc_data = []
    for cycle in p.cycles():
        w = 0
        tags = set()
        for c in cycle:
            f = factors[c]
            if isinstance(f, PhaseFactor):
                w += f.power
            else:
                tags.add(f.tag)
        cyc_data.append((w, frozenset(tags)))

    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: str, y: str) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for _, tags in cyc_data:
        for tag in tags:
            parent.setdefault(tag, tag)
        tags = list(tags)
        for a, b in zip(tags, tags[1:]):
            union(a, b)

    pieces: list[tuple[int, int]] = []
    groups: dict[str, list[int]] = {}
    for w, tags in cyc_data:
        if not tags:
            pieces.append((1, w))
        else:
            root = find(next(iter(tags)))
            groups.setdefault(root, []).append(w)
    for ws in groups.values():
        pieces.append((len(ws), sum(ws)))
    return pieces


def _spectral_component(p, factors, energies, degeneracies, t) -> complex:
    value = complex(1.0)
    for m, w in spectral_pieces(p, factors):
        value *= complex(np.sum(degeneracies.astype(float) ** m * np.exp(1j * w * energies * t)))
    return value


PIECE_SYMBOLS = {
    (1, 0): "D",      # sum d_j            (total dimension)
    (1, 1): "F", (1, -1): "F*",            # sum d_j e^{+-iEt}
    (1, 2): "G", (1, -2): "G*",            # sum d_j e^{+-2iEt}
    (2, 0): "Q",                            # sum d_j^2
    (2, 1): "P", (2, -1): "P*",            # sum d_j^2 e^{+-iEt}
    (3, 0): "C",                            # sum d_j^3
}


def piece_symbol(m: int, w: int) -> str:
    return PIECE_SYMBOLS.get((m, w), f"S({m},{w})")


def overlap_monomials(term: ProductTerm, order: CanonicalGroupOrder) -> list[tuple[str, ...]]:
    """Symbolic overlap components for a spectral product term.

    Component pi is returned as the sorted tuple of piece symbols whose
    product it equals, for a generic spectrum (no relations assumed between
    the spectral sums).
    """
    if not _is_spectral(term.factors):
        raise TypeError("symbolic overlaps only defined for spectral factors")
    out = []
    for p in order:
        pieces = spectral_pieces(p.inverse(), term.factors)
        out.append(tuple(sorted(piece_symbol(m, w) for m, w in pieces)))
    return out


# --------------------------------------------------------------------------
# Overlap vectors and the twirl trace
# --------------------------------------------------------------------------

@dataclass(eq=False)
class OverlapVector:
    """Components tr(A V_{pi^{-1}}) indexed by the canonical group order."""

    n: int
    components: np.ndarray

    def __add__(self, other: "OverlapVector") -> "OverlapVector":
        self._check(other)
        return OverlapVector(self.n, self.components + other.components)

    def __sub__(self, other: "OverlapVector") -> "OverlapVector":
        self._check(other)
        return OverlapVector(self.n, self.components - other.components)

    def _check(self, other: "OverlapVector") -> None:
        if self.n != other.n:
            raise ValueError(f"degree mismatch: {self.n} vs {other.n}")


def overlap_vector(operator, order: CanonicalGroupOrder, *,
                   energies: np.ndarray | None = None,
                   degeneracies: np.ndarray | None = None,
                   t: float | None = None) -> OverlapVector:
    """Overlap components tr(A V_{pi^{-1}}) of A = sum of product terms.

    Dense or Kron factors are traced by matrix products along cycles;
    spectral factors (PhaseFactor/ProjectorFactor) additionally need the
    spectrum arrays and a time.
    """
    terms = _as_terms(operator)
    size = len(order)
    comps = np.zeros(size, dtype=complex)
    for term in terms:
        if _is_spectral(term.factors):
            if energies is None or degeneracies is None or t is None:
                raise ValueError("spectral factors require energies, degeneracies and t")
            en = np.asarray(energies, dtype=float)
            dg = np.asarray(degeneracies)
            for i, p in enumerate(order):
                comps[i] += term.coeff * _spectral_component(p.inverse(), term.factors, en, dg, t)
        else:
            for i, p in enumerate(order):
                comps[i] += term.coeff * trace_perm_product(p.inverse(), term.factors)
    return OverlapVector(order.n, comps)


def _gram_inv_to_float(gram_inv: np.ndarray) -> np.ndarray:
    if gram_inv.dtype == object:
        return np.array([[float(x) for x in row] for row in gram_inv], dtype=float)
    return np.asarray(gram_inv, dtype=float)


def twirl_trace(a: OverlapVector, b: OverlapVector, gram_inv: np.ndarray) -> complex:
    """<a| M^+ |b> with the bra entering conjugated.

    Equals tr[A^dagger tau_n(B)]; for Hermitian A this is tr[A tau_n(B)].
    gram_inv must be the (pseudo)inverse built for the same n and local
    dimension as the overlap vectors.
    """
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")
    minv = _gram_inv_to_float(gram_inv)
    if minv.shape != (len(a.components), len(b.components)):
        raise ValueError(f"Gram inverse shape {minv.shape} does not match degree {a.n}")
    return complex(np.conj(a.components) @ minv @ b.components)


def projected_twirl(b: np.ndarray, d: int, n: int) -> np.ndarray:
    """tau_n(B) computed by orthogonal projection onto span{V_pi}.

    Uses the numeric span projector (floating-point pseudoinverse), which is
    independent of the exact character-theoretic Gram inverses; serves as an
    oracle for the overlap-vector path.
    """
    b = np.asarray(b, dtype=complex)
    dim = d ** n
    _check_dense_dim(dim)
    if b.shape != (dim, dim):
        raise ValueError(f"operator shape {b.shape} does not match dimension {dim}")
    order = enumerate_group(n)
    vs = [perm_operator(p, d) for p in order]
    proj = projector_from_vectors([v.ravel() for v in vs])
    return proj.apply(b.ravel()).reshape(dim, dim)


# --------------------------------------------------------------------------
# Monte-Carlo twirl (independent stochastic oracle)
# --------------------------------------------------------------------------

def mc_twirl(b: np.ndarray, d: int, n: int, samples: int, seed: int
             ) -> tuple[np.ndarray, np.ndarray]:
    """Estimate tau_n(B) by averaging U^{xn} B U^{xn dagger} over Haar samples.

    Returns (mean, componentwise standard error).  Per-sample RNG streams are
    derived from (seed, sample index), so the estimate does not depend on how
    samples are batched.
    """
    from .montecarlo import haar_unitary

    b = np.asarray(b, dtype=complex)
    dim = d ** n
    _check_dense_dim(dim)
    if b.shape != (dim, dim):
        raise ValueError(f"operator shape {b.shape} does not match dimension {dim}")
    if samples < 2:
        raise ValueError("at least 2 samples required for a standard error")
    acc = np.zeros((dim, dim), dtype=complex)
    acc_sq = np.zeros((dim, dim))
    for k in range(samples):
        u = haar_unitary(d, (seed, k))
        un = u
        for _ in range(n - 1):
            un = np.kron(un, u)
        sample = un @ b @ un.conj().T
        acc += sample
        acc_sq += np.abs(sample) ** 2
    mean = acc / samples
    var = np.maximum(acc_sq / samples - np.abs(mean) ** 2, 0.0)
    stderr = np.sqrt(var / max(samples - 1, 1))
    return mean, stderr
