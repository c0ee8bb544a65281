"""Haar-averaged distance of a subsystem from its dephased equilibrium state.

A system S (dimension d_S) and bath B (dimension d_B) evolve under a random
Hamiltonian H = U H0 U^dagger whose eigenbasis U is Haar distributed and
whose spectrum (levels E_j with degeneracies d_j) is fixed.  Starting from a
pure product state, the squared Hilbert-Schmidt distance between the reduced
state rho_S(t) and the reduced dephased state omega_S, averaged over U, is a
4-copy twirl trace and is evaluated here exactly through the Gram-matrix
engine.  The module also provides the leading-order closed form, exact time
averages with gap-degeneracy corrections, weighted inverse-gap statistics,
and the Gaussian-spectrum ensemble average.

Spectral scalars used throughout (t suppressed):

    phase_sum            sum_j d_j e^{i E_j t}     (trace of the evolution)
    double_phase_sum     sum_j d_j e^{2 i E_j t}
    weighted_phase_sum   sum_j d_j^2 e^{i E_j t}
    degeneracy_square_sum  sum_j d_j^2
    degeneracy_cube_sum    sum_j d_j^3
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .gram import build_gram, pseudoinverse
from .permgroup import Permutation, enumerate_group
from .twirl import (
    KronFactor,
    OverlapVector,
    PhaseFactor,
    ProductTerm,
    ProjectorFactor,
    overlap_vector,
)

GAP_ATOL = 1e-12  # absolute tolerance deciding equality of float gaps

Energy = "float | Fraction"


class SpectrumFormatError(ValueError):
    """A spectrum description (dict or JSON file) is malformed."""


@dataclass(frozen=True)
class Spectrum:
    """Energy levels (E_j, degeneracy d_j) with a system/bath split.

    Energies must be strictly increasing and degeneracies must sum to
    d_S * d_B.  Energies may be Fractions; then gap comparisons are exact,
    which is the reliable way to encode intentional gap degeneracies.
    """

    d_S: int
    d_B: int
    levels: tuple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple((e, int(k)) for e, k in self.levels))
        if self.d_S < 1 or self.d_B < 1:
            raise ValueError(f"dimensions must be >= 1, got d_S={self.d_S}, d_B={self.d_B}")
        if not self.levels:
            raise ValueError("at least one energy level required")
        for e, k in self.levels:
            if k < 1:
                raise ValueError(f"degeneracy must be a positive integer, got {k}")
        es = [e for e, _ in self.levels]
        for a, b in zip(es, es[1:]):
            if not (float(a) < float(b)):
                raise ValueError(f"energies must be strictly increasing, got {a!r} >= {b!r}")
        total = sum(k for _, k in self.levels)
        if total != self.dim:
            raise ValueError(
                f"degeneracies sum to {total}, expected d_S*d_B = {self.dim}"
            )

    @property
    def dim(self) -> int:
        return self.d_S * self.d_B

    @property
    def n_levels(self) -> int:
        return len(self.levels)

    @property
    def exact(self) -> bool:
        return all(isinstance(e, Fraction) for e, _ in self.levels)

    def energies(self) -> np.ndarray:
        return np.array([float(e) for e, _ in self.levels])

    def degeneracies(self) -> np.ndarray:
        return np.array([k for _, k in self.levels], dtype=np.int64)

    def expanded_energies(self) -> np.ndarray:
        """One energy per Hilbert-space dimension, level j repeated d_j times."""
        return np.repeat(self.energies(), self.degeneracies())

    def level_slices(self) -> list[slice]:
        out, start = [], 0
        for _, k in self.levels:
            out.append(slice(start, start + k))
            start += k
        return out

    def block_mask(self) -> np.ndarray:
        """Boolean d x d mask selecting the level-diagonal blocks."""
        labels = np.repeat(np.arange(self.n_levels), self.degeneracies())
        return labels[:, None] == labels[None, :]

    def shifted(self, offset) -> "Spectrum":
        return Spectrum(self.d_S, self.d_B,
                        tuple((e + offset, k) for e, k in self.levels))


def spectrum_from_dict(obj, where: str = "spectrum") -> Spectrum:
    if not isinstance(obj, dict):
        raise SpectrumFormatError(f"{where}: expected a JSON object, got {type(obj).__name__}")
    for field in ("d_S", "d_B", "levels"):
        if field not in obj:
            raise SpectrumFormatError(f"{where}: missing required field {field!r}")
    d_s, d_b, levels = obj["d_S"], obj["d_B"], obj["levels"]
    if not isinstance(d_s, int) or not isinstance(d_b, int):
        raise SpectrumFormatError(f"{where}: d_S and d_B must be integers")
    if not isinstance(levels, list) or not levels:
        raise SpectrumFormatError(f"{where}: levels must be a non-empty array")
    parsed = []
    for i, lvl in enumerate(levels):
        loc = f"{where}: levels[{i}]"
        if not isinstance(lvl, dict):
            raise SpectrumFormatError(f"{loc}: expected an object")
        if "deg" not in lvl:
            raise SpectrumFormatError(f"{loc}: missing field 'deg'")
        deg = lvl["deg"]
        if not isinstance(deg, int) or deg < 1:
            raise SpectrumFormatError(f"{loc}: 'deg' must be a positive integer")
        if "E_num" in lvl or "E_den" in lvl:
            if not (isinstance(lvl.get("E_num"), int) and isinstance(lvl.get("E_den"), int)):
                raise SpectrumFormatError(f"{loc}: 'E_num' and 'E_den' must both be integers")
            if lvl["E_den"] == 0:
                raise SpectrumFormatError(f"{loc}: 'E_den' must be nonzero")
            energy = Fraction(lvl["E_num"], lvl["E_den"])
        elif "E" in lvl:
            if not isinstance(lvl["E"], (int, float)) or isinstance(lvl["E"], bool):
                raise SpectrumFormatError(f"{loc}: 'E' must be a number")
            energy = float(lvl["E"])
        else:
            raise SpectrumFormatError(f"{loc}: need 'E' or ('E_num', 'E_den')")
        parsed.append((energy, deg))
    try:
        return Spectrum(d_s, d_b, tuple(parsed))
    except ValueError as exc:
        raise SpectrumFormatError(f"{where}: {exc}") from exc


def spectrum_to_dict(s: Spectrum) -> dict:
    levels = []
    for e, k in s.levels:
        if isinstance(e, Fraction):
            levels.append({"E_num": e.numerator, "E_den": e.denominator, "deg": k})
        else:
            levels.append({"E": float(e), "deg": k})
    return {"d_S": s.d_S, "d_B": s.d_B, "levels": levels}


def load_spectrum(path) -> Spectrum:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise SpectrumFormatError(f"{path}: cannot read file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpectrumFormatError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return spectrum_from_dict(obj, where=str(path))


# --------------------------------------------------------------------------
# Spectral scalars
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralSummary:
    """The time-dependent scalars entering every closed form."""

    t: float
    dim: int
    phase_sum: complex            # sum d_j e^{i E_j t}
    double_phase_sum: complex     # sum d_j e^{2 i E_j t}
    weighted_phase_sum: complex   # sum d_j^2 e^{i E_j t}
    degeneracy_square_sum: int    # sum d_j^2
    degeneracy_cube_sum: int      # sum d_j^3


def spectral_summary(s: Spectrum, t: float) -> SpectralSummary:
    en = s.energies()
    dg = s.degeneracies().astype(float)
    phase = np.exp(1j * en * t)
    return SpectralSummary(
        t=float(t),
        dim=s.dim,
        phase_sum=complex(np.sum(dg * phase)),
        double_phase_sum=complex(np.sum(dg * phase ** 2)),
        weighted_phase_sum=complex(np.sum(dg ** 2 * phase)),
        degeneracy_square_sum=int(np.sum(dg.astype(np.int64) ** 2)),
        degeneracy_cube_sum=int(np.sum(dg.astype(np.int64) ** 3)),
    )


# --------------------------------------------------------------------------
# The 4-copy trace operators
#
# With W = exp(i t H0) and spectral projectors P_i, the squared HS distance
# averaged over the Haar eigenbasis equals tr[Y tau_4(X)] where, in plain
# slot order (1, 2, 3, 4),
#
#   X = W x W x W^+ x W^+
#     - sum_i W x P_i x W^+ x P_i
#     - sum_i P_i x W x P_i x W^+
#     + sum_{ij} P_i x P_j x P_i x P_j
#
# and Y = V_pair (sigma x sigma x F), with V_pair swapping copies (1,2) with
# (3,4), sigma the initial pure product state and F the system-only swap of
# copies 3 and 4.
# --------------------------------------------------------------------------

_PAIR_SWAP = Permutation((2, 3, 0, 1))


def distance_operator_terms() -> list[ProductTerm]:
    """The four spectral product terms of X (coefficients +1, -1, -1, +1)."""
    w, wd = PhaseFactor(1), PhaseFactor(-1)
    pi, pj = ProjectorFactor("i"), ProjectorFactor("j")
    return [
        ProductTerm((w, w, wd, wd), 1.0),
        ProductTerm((w, pi, wd, pi), -1.0),
        ProductTerm((pi, w, pi, wd), -1.0),
        ProductTerm((pi, pj, pi, pj), 1.0),
    ]


def overlap_term_family() -> dict[str, ProductTerm]:
    """The individual product terms of X with unit coefficient, by name."""
    w, wd = PhaseFactor(1), PhaseFactor(-1)
    pi, pj = ProjectorFactor("i"), ProjectorFactor("j")
    return {
        "evolution_only": ProductTerm((w, w, wd, wd), 1.0),
        "evolution_dephased_right": ProductTerm((w, pi, wd, pi), 1.0),
        "evolution_dephased_left": ProductTerm((pi, w, pi, wd), 1.0),
        "dephased_only": ProductTerm((pi, pj, pi, pj), 1.0),
    }


def _x_overlap(s: Spectrum, t: float) -> np.ndarray:
    order = enumerate_group(4)
    vec = overlap_vector(distance_operator_terms(), order,
                         energies=s.energies(), degeneracies=s.degeneracies(), t=t)
    return vec.components


def _pure_state(dim: int, state) -> np.ndarray:
    if state is None:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
        return v
    v = np.asarray(state, dtype=complex).ravel()
    if v.shape != (dim,):
        raise ValueError(f"state must have dimension {dim}, got shape {v.shape}")
    norm = np.linalg.norm(v)
    if not np.isclose(norm, 1.0, atol=1e-10):
        raise ValueError(f"state must be normalized, got norm {norm}")
    return v


def initial_state_overlap(d_S: int, d_B: int, system_state=None, bath_state=None
                          ) -> np.ndarray:
    """Overlap components tr(Y V_{pi^{-1}}) of the readout operator Y.

    Y compares the two evolved copies with the two dephased copies through a
    system-only swap.  The pair swap V_pair in Y is absorbed by evaluating
    the product-operator overlaps at a shifted group element (this is the
    single place the (3,4,1,2) copy-reordering convention enters; pinned by
    the dense-oracle test).
    """
    order = enumerate_group(4)
    sys_vec = _pure_state(d_S, system_state)
    bath_vec = _pure_state(d_B, bath_state)
    sigma_s = np.outer(sys_vec, sys_vec.conj())
    sigma_b = np.outer(bath_vec, bath_vec.conj())
    eye_b = np.eye(d_B, dtype=complex)
    sigma = KronFactor(sigma_s, sigma_b)
    terms = []
    for i in range(d_S):
        for j in range(d_S):
            e_ij = np.zeros((d_S, d_S), dtype=complex)
            e_ij[i, j] = 1.0
            e_ji = np.zeros((d_S, d_S), dtype=complex)
            e_ji[j, i] = 1.0
            terms.append(ProductTerm((sigma, sigma, KronFactor(e_ij, eye_b),
                                      KronFactor(e_ji, eye_b)), 1.0))
    u = overlap_vector(terms, order).components
    out = np.empty(len(order), dtype=complex)
    for idx, p in enumerate(order):
        out[idx] = u[order.index(p.compose(_PAIR_SWAP))]
    return out


def _readout_bra_components(a: np.ndarray) -> np.ndarray:
    """Bra components tr(Y V_pi) = a_{pi^{-1}} from overlaps a_pi = tr(Y V_{pi^{-1}}).

    Y is not Hermitian (the pair swap does not commute with the rest), so the
    bra side of the twirl trace must enter by index inversion, not complex
    conjugation.
    """
    order = enumerate_group(4)
    bra = np.empty_like(a)
    for idx, p in enumerate(order):
        bra[idx] = a[order.index(p.inverse())]
    return bra


@lru_cache(maxsize=None)
def _default_readout_bra(d_S: int, d_B: int) -> tuple:
    """Exact row vector (tr(Y V_pi))_pi M^+ for the default |0>|0> initial state.

    The readout overlaps are non-negative integers, so the contraction with
    the exact rational pseudoinverse is carried out in exact arithmetic and
    converted to floats once.
    """
    a = _readout_bra_components(initial_state_overlap(d_S, d_B))
    a_int = []
    for v in a:
        r = int(round(v.real))
        if abs(v - r) > 1e-9:
            raise AssertionError(f"readout overlap expected integral, got {v}")
        a_int.append(r)
    minv = pseudoinverse(build_gram(4, d_S * d_B))
    size = len(a_int)
    bra = []
    for col in range(size):
        acc = Fraction(0)
        for row in range(size):
            acc += a_int[row] * minv[row, col]
        bra.append(float(acc))
    return tuple(bra)


def exact_haar_distance(s: Spectrum, t: float, system_state=None, bath_state=None) -> float:
    """Haar-ensemble average of the squared HS distance, exact at finite d.

    Evaluated as sum_{pi,sigma} tr(Y V_pi) (M^+)_{pi sigma} x_sigma where x
    are the overlaps of the evolution-minus-dephasing operator and M^+ the
    exact rational (pseudo)inverse of the S4 Gram matrix at local dimension
    d = d_S*d_B.  The pseudoinverse covers d < 4, where the Gram matrix is
    singular.
    """
    x = _x_overlap(s, t)
    if system_state is None and bath_state is None:
        bra = np.array(_default_readout_bra(s.d_S, s.d_B))
    else:
        a = _readout_bra_components(initial_state_overlap(s.d_S, s.d_B, system_state, bath_state))
        minv = pseudoinverse(build_gram(4, s.dim))
        minv_f = np.array([[float(v) for v in row] for row in minv])
        bra = a @ minv_f
    value = complex(bra @ x)
    return value.real


def leading_order_distance(s: Spectrum, t) -> float | np.ndarray:
    """Large-bath closed form: |eta|^2/(d^2 d_S) + (|xi|^2 - gamma)^2/d^4.

    Here xi/eta are the single/double phase sums and gamma the degeneracy
    square sum.  Accepts a scalar or an array of times.
    """
    t_arr = np.asarray(t, dtype=float)
    en = s.energies()
    dg = s.degeneracies().astype(float)
    d = float(s.dim)
    gamma = float(np.sum(dg ** 2))
    phases = np.exp(1j * np.multiply.outer(t_arr, en))
    xi = phases @ dg
    eta = (phases ** 2) @ dg
    value = (np.abs(eta) ** 2) / (d ** 2 * s.d_S) + ((np.abs(xi) ** 2 - gamma) ** 2) / d ** 4
    if np.isscalar(t) or t_arr.ndim == 0:
        return float(value)
    return value


def trace_norm_bound(hs_distance_sq: float, d_S: int) -> float:
    """Upper bound sqrt(d_S * hs_distance_sq) on the trace-norm distance."""
    if hs_distance_sq < 0:
        if hs_distance_sq < -1e-12:
            raise ValueError(f"squared distance must be >= 0, got {hs_distance_sq}")
        hs_distance_sq = 0.0
    return math.sqrt(d_S * hs_distance_sq)


# --------------------------------------------------------------------------
# Gap statistics and exact time averages
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GapPair:
    upper: int           # level index j (E_j > E_k)
    lower: int           # level index k
    gap: float
    weight: int          # d_j * d_k
    gap_degeneracy: int  # total weight of *other* pairs sharing this gap


@dataclass(frozen=True)
class GapStatistics:
    pairs: tuple[GapPair, ...]
    inverse_gap_average: float | None          # (1/d^2) sum w/gap; None for < 2 levels
    inverse_gap_difference_average: float      # (1/d^4) sum over distinct-gap pair pairs
    degeneracy_diagnostic: float               # gamma/d^2
    gap_degeneracy_diagnostic: float           # (1/d^4) sum gap_degeneracy * weight


def _gap_groups(s: Spectrum, atol: float = GAP_ATOL):
    """Pairs (j>k) grouped by equal gap.

    Fraction-energy spectra group exactly; float spectra group by sorting and
    chaining gaps closer than atol.  Returns a list of (gap_float, pair_list)
    with pair_list entries (j, k, weight).
    """
    dg = s.degeneracies()
    pairs = []
    exact = s.exact
    for j in range(s.n_levels):
        for k in range(j):
            if exact:
                delta = s.levels[j][0] - s.levels[k][0]
            else:
                delta = float(s.levels[j][0]) - float(s.levels[k][0])
            pairs.append((delta, j, k, int(dg[j] * dg[k])))
    if not pairs:
        return []
    if exact:
        groups: dict = {}
        for delta, j, k, w in pairs:
            groups.setdefault(delta, []).append((j, k, w))
        return [(float(delta), members) for delta, members in sorted(groups.items())]
    pairs.sort(key=lambda item: item[0])
    grouped = []
    current = [pairs[0]]
    for item in pairs[1:]:
        if item[0] - current[-1][0] <= atol:
            current.append(item)
        else:
            grouped.append(current)
            current = [item]
    grouped.append(current)
    return [(sum(p[0] for p in grp) / len(grp), [(j, k, w) for _, j, k, w in grp])
            for grp in grouped]


def gap_statistics(s: Spectrum, atol: float = GAP_ATOL) -> GapStatistics:
    """Weighted inverse-gap averages and degeneracy diagnostics.

    The inverse-gap average is reported as None (undefined, not zero) for a
    single-level spectrum.
    """
    d = float(s.dim)
    dg = s.degeneracies().astype(np.int64)
    gamma = int(np.sum(dg ** 2))
    groups = _gap_groups(s, atol)

    pairs = []
    for gap, members in groups:
        total_w = sum(w for _, _, w in members)
        for j, k, w in members:
            pairs.append(GapPair(upper=j, lower=k, gap=float(gap), weight=w,
                                 gap_degeneracy=total_w - w))
    if not pairs:
        inv_gap = None
    else:
        inv_gap = sum(p.weight / p.gap for p in pairs) / d ** 2

    inv_diff = 0.0
    for gi, (gap_i, members_i) in enumerate(groups):
        w_i = sum(w for _, _, w in members_i)
        for gj, (gap_j, members_j) in enumerate(groups):
            if gi == gj:
                continue
            w_j = sum(w for _, _, w in members_j)
            inv_diff += w_i * w_j / abs(gap_i - gap_j)
    inv_diff /= d ** 4

    gap_deg_diag = sum(p.gap_degeneracy * p.weight for p in pairs) / d ** 4
    return GapStatistics(
        pairs=tuple(pairs),
        inverse_gap_average=inv_gap,
        inverse_gap_difference_average=inv_diff,
        degeneracy_diagnostic=gamma / d ** 2,
        gap_degeneracy_diagnostic=gap_deg_diag,
    )


def time_average_constants(s: Spectrum) -> tuple[float, float]:
    """T-independent floor of the time-averaged leading-order distance.

    Returns (exact, variant).  The exact value,

        gamma/(d^2 d_S) + sum_{j != k} d_j^2 d_k^2 / d^4
                        + 2 sum_{j>k} gap_deg_{jk} d_j d_k / d^4,

    is the true infinite-time average of the leading-order expression (its
    middle term is the surviving diagonal of the squared phase-sum
    fluctuation).  The variant replaces the middle term by 2 gamma^2/d^4; it
    is reported for comparison because it appears in transcriptions of this
    average, but it is inconsistent with direct quadrature (see the
    validation suite).
    """
    d = float(s.dim)
    dg = s.degeneracies().astype(float)
    gamma = float(np.sum(dg ** 2))
    p4 = float(np.sum(dg ** 4))
    cross = 0.0
    for _, members in _gap_groups(s):
        total = sum(w for _, _, w in members)
        sq = sum(w * w for _, _, w in members)
        cross += total * total - sq  # sum over pairs of weight * gap_degeneracy
    base = gamma / (d ** 2 * s.d_S)
    exact_floor = base + (gamma ** 2 - p4) / d ** 4 + 2.0 * cross / d ** 4
    variant_floor = base + 2.0 * gamma ** 2 / d ** 4 + 2.0 * cross / d ** 4
    return exact_floor, variant_floor


def time_average(s: Spectrum, horizon: float) -> float:
    """Exact average of the leading-order distance over [0, T].

    Closed form: the T-independent floor (see time_average_constants) plus
    sinc-type terms over single gaps (gap-degenerate partners folded in) and
    a double sum over pairs of distinct gaps.
    """
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    d = float(s.dim)
    big_t = float(horizon)
    groups = _gap_groups(s)
    floor, _ = time_average_constants(s)

    single = 0.0
    for gap, members in groups:
        total_w = sum(w for _, _, w in members)
        dg = s.degeneracies()
        sinc = math.sin(2.0 * big_t * gap) / gap
        for j, k, w in members:
            dj, dk = float(dg[j]), float(dg[k])
            gap_deg = total_w - w
            coeff = w / s.d_S + (dj * dk) ** 2 / d ** 2 + gap_deg * w / d ** 2
            single += coeff * sinc
    single /= big_t * d ** 2

    double = 0.0
    for gi, (gap_i, members_i) in enumerate(groups):
        w_i = sum(w for _, _, w in members_i)
        for gj, (gap_j, members_j) in enumerate(groups):
            if gi == gj:
                continue
            w_j = sum(w for _, _, w in members_j)
            double += w_i * w_j * (
                math.sin(big_t * (gap_i + gap_j)) / (gap_i + gap_j)
                + math.sin(big_t * (gap_i - gap_j)) / (gap_i - gap_j)
            )
    double *= 2.0 / (big_t * d ** 4)
    return floor + single + double


def time_average_tail_bound(s: Spectrum) -> float:
    """Exact bound K with |time_average(T) - floor| <= K/T for all T > 0."""
    d = float(s.dim)
    dg = s.degeneracies()
    groups = _gap_groups(s)
    k_single = 0.0
    for gap, members in groups:
        total_w = sum(w for _, _, w in members)
        for j, k, w in members:
            dj, dk = float(dg[j]), float(dg[k])
            coeff = w / s.d_S + (dj * dk) ** 2 / d ** 2 + (total_w - w) * w / d ** 2
            k_single += coeff / gap
    k_single /= d ** 2
    k_double = 0.0
    for gi, (gap_i, members_i) in enumerate(groups):
        w_i = sum(w for _, _, w in members_i)
        for gj, (gap_j, members_j) in enumerate(groups):
            if gi == gj:
                continue
            w_j = sum(w for _, _, w in members_j)
            k_double += w_i * w_j * (1.0 / (gap_i + gap_j) + 1.0 / abs(gap_i - gap_j))
    k_double *= 2.0 / d ** 4
    return k_single + k_double


# --------------------------------------------------------------------------
# Gaussian spectrum ensemble
# --------------------------------------------------------------------------

def _distinct_index_sums(degeneracies) -> tuple[float, float, float, float]:
    """Sums over distinct level indices of degeneracy products.

    Returns (sum_{j!=k} d_j d_k, sum_{j!=k} d_j^2 d_k^2,
             sum over distinct {j,k,s} of d_j^2 d_k d_s,
             sum over 4 distinct indices of d_j d_k d_r d_s),
    all computed from power sums.
    """
    dg = np.asarray(degeneracies, dtype=float)
    p1 = float(np.sum(dg))
    p2 = float(np.sum(dg ** 2))
    p3 = float(np.sum(dg ** 3))
    p4 = float(np.sum(dg ** 4))
    pair = p1 ** 2 - p2
    pair_sq = p2 ** 2 - p4
    triple = p2 * p1 ** 2 - 2.0 * p1 * p3 - p2 ** 2 + 2.0 * p4
    quad = p1 ** 4 - 6.0 * p1 ** 2 * p2 + 3.0 * p2 ** 2 + 8.0 * p1 * p3 - 6.0 * p4
    return pair, pair_sq, triple, quad


def gaussian_average_coefficients(degeneracies, d_S: int) -> tuple[float, dict[int, float]]:
    """Constant floor and decay coefficients of the Gaussian-ensemble average.

    The ensemble average of the leading-order distance over i.i.d. Gaussian
    energies of width sigma is

        floor + sum_k c_k exp(-k t^2 sigma^2),  k = 1..4.
    """
    dg = np.asarray(degeneracies, dtype=float)
    d = float(np.sum(dg))
    gamma = float(np.sum(dg ** 2))
    pair, pair_sq, triple, quad = _distinct_index_sums(dg)
    floor = gamma / (d ** 2 * d_S) + pair_sq / d ** 4
    coeffs = {
        1: 2.0 * triple / d ** 4,
        2: quad / d ** 4,
        3: 2.0 * triple / d ** 4,
        4: pair / (d ** 2 * d_S) + pair_sq / d ** 4,
    }
    return floor, coeffs


def gaussian_average(degeneracies, d_S: int, sigma: float, t) -> float | np.ndarray:
    """Ensemble average of the leading-order distance for i.i.d. normal(0, sigma^2)
    level energies at fixed degeneracies.

    Exact for the product measure (independence factorizes every cross
    moment); consists of a constant floor plus four Gaussian decays
    exp(-k t^2 sigma^2).
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    floor, coeffs = gaussian_average_coefficients(degeneracies, d_S)
    t_arr = np.asarray(t, dtype=float)
    value = floor + sum(c * np.exp(-k * (t_arr * sigma) ** 2) for k, c in coeffs.items())
    if np.isscalar(t) or t_arr.ndim == 0:
        return float(value)
    return value


# --------------------------------------------------------------------------
# Transcription cross-check of the finite-d closed form
# --------------------------------------------------------------------------

def transcribed_closed_form(s: Spectrum, t: float, b: float) -> float:
    """A published long closed form for the exact Haar average, transcribed
    verbatim; it contains a symbol b that its source never defines, so b must
    be supplied by the caller.

    This is a documented cross-check only: the Gram-engine value
    (exact_haar_distance) is ground truth; see long_form_report.
    """
    summ = spectral_summary(s, t)
    d = float(s.dim)
    d_s, d_b = float(s.d_S), float(s.d_B)
    xi = summ.phase_sum
    eta = summ.double_phase_sum
    p = summ.weighted_phase_sum
    gamma = float(summ.degeneracy_square_sum)
    iota = float(summ.degeneracy_cube_sum)
    xi2 = abs(xi) ** 2
    xi4 = xi2 ** 2
    pref = -1.0 / (d ** 2 * (2 + d) * (-3 - d + 3 * d ** 2 + d ** 3))
    big = (
        4 * d + 4 * d ** 2 + 2 * d ** 3 - 4 * d * d_b + 4 * d ** 3 * d_b + d ** 4 * d_b
        - xi4 * (2 + d) * (1 + d - d_b - d_s)
        - 4 * d * d_s - 2 * d ** 3 * d_s - 4 * d ** 4 * d_s - d ** 5 * d_s
        - b * (2 + (-2 + 2 * d + 4 * d ** 2 + d ** 3) * d_b - (2 + 4 * d + d ** 2) * d_s)
        + 4 * gamma - 4 * d * gamma - 6 * d ** 2 * gamma - 2 * d ** 3 * gamma
        - 4 * d_b * gamma + 2 * d * d_b * gamma + 5 * d ** 2 * d_b * gamma + d ** 3 * d_b * gamma
        - 4 * d_s * gamma + 2 * d * d_s * gamma + 5 * d ** 2 * d_s * gamma + d ** 3 * d_s * gamma
        - 2 * gamma ** 2 - 3 * d * gamma ** 2 - d ** 2 * gamma ** 2
        + 2 * d_b * gamma ** 2 + d * d_b * gamma ** 2 + 2 * d_s * gamma ** 2 + d * d_s * gamma ** 2
        + 2 * xi2 * (1 + d - d_b - d_s) * (d + 2 * gamma + d * gamma)
        + 4 * iota + 4 * d * iota - 4 * d_b * iota - 4 * d_s * iota
        + (1 + d - d_b - d_s) * (np.conj(xi) ** 2 * eta + xi ** 2 * np.conj(eta))
        + (-4 - 4 * d + 4 * d_b + 4 * d_s) * (np.conj(p) * xi + p * np.conj(xi))
    )
    return float((pref * big).real)


def long_form_report(s: Spectrum, t: float) -> dict:
    """Compare the Gram-engine value against the transcribed long form for a
    few natural guesses of its undefined symbol b.  Records the discrepancy;
    does not resolve it."""
    engine = exact_haar_distance(s, t)
    summ = spectral_summary(s, t)
    xi2 = abs(summ.phase_sum) ** 2
    candidates = {
        "b = |phase_sum|^4": xi2 ** 2,
        "b = |phase_sum|^2": xi2,
        "b = 0": 0.0,
    }
    rows = {}
    for label, b in candidates.items():
        value = transcribed_closed_form(s, t, b)
        rows[label] = {
            "transcribed": value,
            "abs_discrepancy": abs(value - engine),
        }
    return {"engine": engine, "candidates": rows}
