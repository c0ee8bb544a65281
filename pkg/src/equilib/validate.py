"""Named validation checks wiring every closed form to an independent oracle.

Each check returns a CheckResult with a margin (headroom in [-inf, 1]: 1 is
perfect, 0 sits exactly at the threshold, negative fails) and a details dict.
The CLI `validate` subcommand and the acceptance test module both run these.
"""
from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import rational
from .equilibrium import (
    Spectrum,
    exact_haar_distance,
    gaussian_average,
    gaussian_average_coefficients,
    initial_state_overlap,
    leading_order_distance,
    long_form_report,
    overlap_term_family,
    time_average,
    time_average_constants,
)
from .gram import (
    build_gram,
    determinant_formula,
    minpoly_inverse_s3,
    minpoly_inverse_s4,
    projector,
    pseudoinverse,
    s3_inverse_entry_table,
    spectral_data,
    spectral_inverse,
    support_projector,
    trace_formula,
)
from .montecarlo import (
    dephase,
    haar_unitary,
    mc_average_distance,
    mc_distance_sweep,
    partial_trace,
    sample_gaussian_spectrum,
)
from .permgroup import character_table, enumerate_group
from .twirl import (
    ProductTerm,
    overlap_monomials,
    overlap_vector,
    projected_twirl,
    twirl_trace,
)

MC_SIGMA_THRESHOLD = 4.0  # statistical acceptance threshold, per design


@dataclass
class CheckResult:
    name: str
    passed: bool
    margin: float
    runtime_s: float
    details: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self, include_runtime: bool = True) -> dict:
        out = {
            "name": self.name,
            "passed": bool(self.passed),
            "margin": float(self.margin),
            "details": _jsonable(self.details),
            "notes": list(self.notes),
        }
        if include_runtime:
            out["runtime_s"] = round(self.runtime_s, 3)
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def _z_margin(worst_z: float) -> float:
    return 1.0 - worst_z / MC_SIGMA_THRESHOLD


def _rel_margin(worst_rel: float, tol: float) -> float:
    if worst_rel == 0.0:
        return 1.0
    return 1.0 - worst_rel / tol


# --------------------------------------------------------------------------
# Frozen inputs
# --------------------------------------------------------------------------

def random_nondegenerate_spectrum(d_S: int, d_B: int, seed: int) -> Spectrum:
    """Nondegenerate spectrum with 3-decimal energies drawn from (0, 3)."""
    rng = np.random.default_rng(seed)
    d = d_S * d_B
    grid = rng.choice(np.arange(1, 3000), size=d, replace=False)
    energies = np.sort(grid) / 1000.0
    return Spectrum(d_S, d_B, tuple((float(e), 1) for e in energies))


def ladder_spectrum(d_S: int, d_B: int, n_levels: int = 8) -> Spectrum:
    """Equally spaced integer levels with equal degeneracies d/n_levels.

    The normalized spectral profile is independent of d_B, so the
    leading-order remainder can be compared across bath sizes; at
    t = 2*pi/n_levels the phase sums vanish exactly.
    """
    d = d_S * d_B
    if d % n_levels:
        raise ValueError(f"d={d} not divisible by {n_levels}")
    return Spectrum(d_S, d_B, tuple((Fraction(j), d // n_levels) for j in range(n_levels)))


FOUR_LEVEL_SPECTRUM = Spectrum(2, 2, ((0.0, 1), (0.7, 1), (1.9, 1), (3.4, 1)))


# --------------------------------------------------------------------------
# 1. Gram inverse agreement
# --------------------------------------------------------------------------

def check_gram_inverse(ds=(4, 5, 6, 7, 8), budget_s: float = 10.0) -> CheckResult:
    start = time.perf_counter()
    ok = True
    per_d = {}
    for d in ds:
        g = build_gram(4, d)
        spect = spectral_inverse(g)
        poly = minpoly_inverse_s4(g)
        elim = rational.invert(g.entries)
        agree_sp = rational.matrices_equal(spect, poly)
        agree_se = rational.matrices_equal(spect, elim)
        unit = rational.is_identity(rational.mat_mul(g.entries, spect))
        per_d[d] = {"spectral_eq_minpoly": agree_sp, "spectral_eq_elimination": agree_se,
                    "product_is_identity": unit}
        ok = ok and agree_sp and agree_se and unit
    runtime = time.perf_counter() - start
    within_budget = runtime < budget_s
    return CheckResult(
        name="gram-inverse",
        passed=ok and within_budget,
        margin=min(1.0 if ok else -1.0, 1.0 - runtime / budget_s),
        runtime_s=runtime,
        details={"per_d": per_d, "runtime_s": runtime, "budget_s": budget_s},
    )


# --------------------------------------------------------------------------
# 2. Explicit S3 inverse entries
# --------------------------------------------------------------------------

def check_s3_inverse(ds=(3, 4, 5)) -> CheckResult:
    start = time.perf_counter()
    ok = True
    per_d = {}
    order = enumerate_group(3)
    for d in ds:
        g = build_gram(3, d)
        inv = spectral_inverse(g)
        table = s3_inverse_entry_table(d)
        class_ok = True
        for i, gi in enumerate(order):
            for j, h in enumerate(order):
                expected = table[gi.inverse().compose(h).cycle_type()]
                if inv[i, j] != expected:
                    class_ok = False
        ref_row = sorted([table[(1, 1, 1)]] + [table[(2, 1)]] * 3 + [table[(3,)]] * 2)
        rows_ok = all(sorted(inv[i, :]) == ref_row for i in range(6))
        poly_ok = rational.matrices_equal(inv, minpoly_inverse_s3(g))
        per_d[d] = {"entries_by_class": class_ok, "row_multisets": rows_ok,
                    "minpoly_agrees": poly_ok}
        ok = ok and class_ok and rows_ok and poly_ok
    return CheckResult(
        name="s3-inverse",
        passed=ok,
        margin=1.0 if ok else -1.0,
        runtime_s=time.perf_counter() - start,
        details={"per_d": per_d},
    )


# --------------------------------------------------------------------------
# 3. Spectral data: eigenvalues, determinant, trace
# --------------------------------------------------------------------------

def check_spectral_data(ds=(4, 5, 6), rel_tol: float = 1e-8) -> CheckResult:
    start = time.perf_counter()
    ok = True
    worst_rel = 0.0
    per_d = {}
    for d in ds:
        g = build_gram(4, d)
        numeric = np.sort(np.linalg.eigvalsh(rational.to_float(g.entries)))
        theory = np.array([float(v) for v in spectral_data(4, d).eigenvalue_multiset()])
        rel = float(np.max(np.abs(numeric - theory) / np.abs(theory)))
        worst_rel = max(worst_rel, rel)
        det_exact = rational.determinant(g.entries)
        det_ok = det_exact == determinant_formula(4, d)
        trace_ok = sum(g.entries[i, i] for i in range(g.size)) == trace_formula(4, d)
        per_d[d] = {"eig_rel_err": rel, "det_matches": det_ok, "trace_matches": trace_ok}
        ok = ok and rel <= rel_tol and det_ok and trace_ok
    return CheckResult(
        name="spectral-data",
        passed=ok,
        margin=_rel_margin(worst_rel, rel_tol) if ok else -1.0,
        runtime_s=time.perf_counter() - start,
        details={"per_d": per_d, "worst_eig_rel_err": worst_rel, "rel_tol": rel_tol},
    )


# --------------------------------------------------------------------------
# 4. Twirl correctness at small dimension
# --------------------------------------------------------------------------

def _random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def check_twirl_small_d(n_ops: int = 20, mc_samples: int = 5000, seed: int = 41,
                        rel_tol: float = 1e-10) -> CheckResult:
    start = time.perf_counter()
    d, n = 3, 4
    order = enumerate_group(n)
    pinv = pseudoinverse(build_gram(n, d))
    rng = np.random.default_rng(seed)
    worst_rel = 0.0
    pairs = []
    for _ in range(n_ops):
        a_factors = tuple(_random_hermitian(rng, d) for _ in range(n))
        b_factors = tuple(_random_hermitian(rng, d) for _ in range(n))
        a_vec = overlap_vector(ProductTerm(a_factors), order)
        b_vec = overlap_vector(ProductTerm(b_factors), order)
        value = twirl_trace(a_vec, b_vec, pinv)
        a_dense = a_factors[0]
        for f in a_factors[1:]:
            a_dense = np.kron(a_dense, f)
        b_dense = b_factors[0]
        for f in b_factors[1:]:
            b_dense = np.kron(b_dense, f)
        oracle = complex(np.trace(a_dense @ projected_twirl(b_dense, d, n)))
        rel = abs(value - oracle) / max(abs(oracle), 1e-30)
        worst_rel = max(worst_rel, rel)
        pairs.append((a_dense, b_dense, value))
    # scalar Monte-Carlo twirl on the first pair
    a_dense, b_dense, value = pairs[0]
    samples = np.empty(mc_samples)
    for k in range(mc_samples):
        u = haar_unitary(d, (seed, k))
        u4 = np.kron(np.kron(np.kron(u, u), u), u)
        samples[k] = np.trace(a_dense @ (u4 @ b_dense @ u4.conj().T)).real
    mc_mean = samples.mean()
    mc_err = samples.std(ddof=1) / math.sqrt(mc_samples)
    z = abs(value.real - mc_mean) / mc_err
    ok = worst_rel <= rel_tol and z <= MC_SIGMA_THRESHOLD
    return CheckResult(
        name="twirl-smalld",
        passed=ok,
        margin=min(_rel_margin(worst_rel, rel_tol), _z_margin(z)),
        runtime_s=time.perf_counter() - start,
        details={"worst_rel_err": worst_rel, "rel_tol": rel_tol,
                 "mc_value": mc_mean, "mc_stderr": mc_err, "exact_value": value.real,
                 "mc_z": z, "n_operators": n_ops, "mc_samples": mc_samples},
    )


# --------------------------------------------------------------------------
# 5. Exact Haar distance vs Monte Carlo
# --------------------------------------------------------------------------

def check_main_mc(bath_dims=(4, 8), samples: int = 4000, n_times: int = 10,
                  seed: int = 20107, budget_s: float = 300.0) -> CheckResult:
    start = time.perf_counter()
    worst_z = 0.0
    per_case = {}
    ts = np.linspace(0.0, 3.0, n_times)
    cross_check = None
    for i, d_b in enumerate(bath_dims):
        s = random_nondegenerate_spectrum(2, d_b, seed + i)
        mean, err = mc_distance_sweep(s, ts, samples=samples, seed=seed + 100 + i)
        zs = []
        for t, m, e in zip(ts, mean, err):
            exact = exact_haar_distance(s, float(t))
            zs.append(abs(exact - m) / e)
        worst = float(max(zs))
        worst_z = max(worst_z, worst)
        per_case[f"d_B={d_b}"] = {"worst_z": worst, "zs": [float(z) for z in zs]}
        if cross_check is None:
            # informational: the transcribed long closed form never matches
            # the engine for any natural guess of its undefined symbol
            cross_check = long_form_report(s, 0.7)
    runtime = time.perf_counter() - start
    ok = worst_z <= MC_SIGMA_THRESHOLD and runtime < budget_s
    return CheckResult(
        name="main-mc",
        passed=ok,
        margin=min(_z_margin(worst_z), 1.0 - runtime / budget_s),
        runtime_s=runtime,
        details={"per_case": per_case, "worst_z": worst_z, "samples": samples,
                 "runtime_s": runtime, "budget_s": budget_s,
                 "long_form_cross_check": cross_check},
        notes=["long_form_cross_check records the discrepancy of a published "
               "transcription (undefined symbol b); engine value is ground truth"],
    )


# --------------------------------------------------------------------------
# 6. Leading-order remainder shrinks with the bath
# --------------------------------------------------------------------------

def check_leading_order_scaling(t: float = 2 * math.pi / 8, min_ratio: float = 1.8
                                ) -> CheckResult:
    start = time.perf_counter()
    remainders = {}
    for d_b in (8, 16):
        s = ladder_spectrum(2, d_b)
        remainders[d_b] = abs(exact_haar_distance(s, t) - leading_order_distance(s, t))
    ratio = remainders[8] / remainders[16]
    ok = ratio >= min_ratio
    return CheckResult(
        name="leading-order-scaling",
        passed=ok,
        margin=ratio / min_ratio - 1.0,
        runtime_s=time.perf_counter() - start,
        details={"t": t, "remainder_dB8": remainders[8], "remainder_dB16": remainders[16],
                 "ratio": ratio, "min_ratio": min_ratio},
    )


# --------------------------------------------------------------------------
# 7. Time average: closed form vs quadrature; infinite-horizon floor
# --------------------------------------------------------------------------

def check_time_average(rel_tol: float = 1e-6, floor_tol: float = 1e-12) -> CheckResult:
    start = time.perf_counter()
    s = FOUR_LEVEL_SPECTRUM
    worst_rel = 0.0
    per_t = {}
    for horizon, npts in ((5.0, 400001), (50.0, 1600001)):
        ts = np.linspace(0.0, horizon, npts)
        quad = float(np.trapezoid(leading_order_distance(s, ts), ts)) / horizon
        closed = time_average(s, horizon)
        rel = abs(closed - quad) / abs(quad)
        worst_rel = max(worst_rel, rel)
        per_t[horizon] = {"closed": closed, "quadrature": quad, "rel_err": rel}
    floor_exact, floor_variant = time_average_constants(s)
    d = s.dim
    expected_floor = 1.0 / (d * s.d_S) + (d * d - d) / d ** 4
    floor_err = abs(floor_exact - expected_floor)
    variant_value = 1.0 / (d * s.d_S) + 2.0 / d ** 2
    ok = worst_rel <= rel_tol and floor_err <= floor_tol
    notes = [
        "floor checked against the exact infinite-horizon average "
        "1/(d*d_S) + (d^2-d)/d^4 for a nondegenerate, gap-nondegenerate spectrum",
        f"transcribed-variant floor {floor_variant} (would be {variant_value} here) "
        "is inconsistent with quadrature; see decisions ledger",
    ]
    return CheckResult(
        name="time-average",
        passed=ok,
        margin=min(_rel_margin(worst_rel, rel_tol), _rel_margin(floor_err, floor_tol)),
        runtime_s=time.perf_counter() - start,
        details={"per_horizon": per_t, "floor_exact": floor_exact,
                 "floor_expected": expected_floor, "floor_abs_err": floor_err,
                 "floor_transcribed_variant": floor_variant},
        notes=notes,
    )


# --------------------------------------------------------------------------
# 8. Gaussian ensemble: sampling oracle, rigorous bounds, decay envelope
# --------------------------------------------------------------------------

def check_gaussian_ensemble(n_spectra: int = 10000, seed: int = 99) -> CheckResult:
    start = time.perf_counter()
    d_s, d_b = 2, 8
    d = d_s * d_b
    sigma = math.log(d)
    ts = np.array([0.0, 0.2, 0.4, 0.8, 1.5]) / sigma
    values = np.empty((n_spectra, len(ts)))
    for k in range(n_spectra):
        en = sample_gaussian_spectrum(d, sigma, (seed, k))
        sp = Spectrum(d_s, d_b, tuple((float(e), 1) for e in en))
        values[k] = leading_order_distance(sp, ts)
    sampled = values.mean(axis=0)
    stderr = values.std(axis=0, ddof=1) / math.sqrt(n_spectra)
    closed = gaussian_average(np.ones(d, dtype=int), d_s, sigma, ts)
    zs = np.abs(closed - sampled) / (stderr + 1e-15)
    worst_z = float(zs.max())

    # rigorous bound check at d = 16: one positive term below, all decays
    # dominated by the slowest exponential above
    degs = np.ones(d, dtype=int)
    floor, coeffs = gaussian_average_coefficients(degs, d_s)
    n_lv = d
    lower_coeff = (n_lv * n_lv - n_lv) / (d ** 2 * d_s)
    coeff_sum = sum(coeffs.values())
    t_grid = np.linspace(0.0, 3.0 / sigma, 13)
    bounds_ok = True
    for t in t_grid:
        val = gaussian_average(degs, d_s, sigma, float(t))
        lower = lower_coeff * math.exp(-4 * t * t * sigma * sigma)
        upper = floor + coeff_sum * math.exp(-t * t * sigma * sigma)
        if not (val >= lower - 1e-12 and val <= upper + 1e-12):
            bounds_ok = False
    envelope_ratio = (gaussian_average(degs, d_s, sigma, 3.0 / sigma) - floor) / (
        gaussian_average(degs, d_s, sigma, 0.0) - floor)
    envelope_ok = envelope_ratio <= math.exp(-4)
    ok = worst_z <= MC_SIGMA_THRESHOLD and bounds_ok and envelope_ok
    return CheckResult(
        name="gaussian-ensemble",
        passed=ok,
        margin=min(_z_margin(worst_z), 1.0 if (bounds_ok and envelope_ok) else -1.0),
        runtime_s=time.perf_counter() - start,
        details={"worst_z": worst_z, "zs": [float(z) for z in zs],
                 "ts": [float(t) for t in ts], "bounds_hold": bounds_ok,
                 "envelope_ratio_at_3_over_sigma": float(envelope_ratio),
                 "envelope_threshold": math.exp(-4), "n_spectra": n_spectra},
    )


# --------------------------------------------------------------------------
# 9. Overlap-vector multisets
# --------------------------------------------------------------------------

# Reference multisets of the four spectral overlap vectors, as piece-symbol
# monomials: D = sum d_j, F/F* = single phase sum, G/G* = double phase sum,
# Q = sum d_j^2, P/P* = weighted phase sum, C = sum d_j^3.
REFERENCE_X_MULTISETS = {
    "evolution_only": Counter({
        ("F", "F", "F*", "F*"): 1,
        ("D", "F", "F*"): 4,
        ("F", "F", "G*"): 1,
        ("F*", "F*", "G"): 1,
        ("G", "G*"): 1,
        ("D", "D"): 2,
        ("F", "F*"): 8,
        ("D",): 6,
    }),
    "evolution_dephased_right": Counter({
        ("F", "F*", "Q"): 1,
        ("F*", "P"): 2,
        ("F", "P*"): 2,
        ("D", "Q"): 1,
        ("D", "F", "F*"): 1,
        ("Q",): 6,
        ("D", "D"): 1,
        ("F", "F*"): 4,
        ("D",): 6,
    }),
    "dephased_only": Counter({
        ("Q", "Q"): 1,
        ("D", "Q"): 2,
        ("C",): 4,
        ("Q",): 10,
        ("D", "D"): 1,
        ("D",): 6,
    }),
}
REFERENCE_X_MULTISETS["evolution_dephased_left"] = \
    REFERENCE_X_MULTISETS["evolution_dephased_right"]

# The published transcription of the evolution_dephased vectors lists a bare
# D where the cycle decomposition gives D*Q (one entry out of 24); the
# corrected multiset above is what the decomposition and the dense oracle
# produce.  See the decisions ledger.
TRANSCRIBED_EVOLUTION_DEPHASED = Counter(REFERENCE_X_MULTISETS["evolution_dephased_right"])
TRANSCRIBED_EVOLUTION_DEPHASED[("D", "Q")] -= 1
TRANSCRIBED_EVOLUTION_DEPHASED[("D",)] += 1
TRANSCRIBED_EVOLUTION_DEPHASED = +TRANSCRIBED_EVOLUTION_DEPHASED

# Readout overlap values as monomials in (d_S, d_B):
# {1 x4, d_S x8, d_B x8, d*d_B x2, d*d_S x2}.
REFERENCE_READOUT_MULTISET = Counter({
    (): 4,
    ("dS",): 8,
    ("dB",): 8,
    ("dS", "dB", "dB"): 2,
    ("dS", "dS", "dB"): 2,
})


def _classify_readout(d_s: int, d_b: int) -> Counter:
    vals = initial_state_overlap(d_s, d_b)
    monomials = {
        (): 1,
        ("dS",): d_s,
        ("dB",): d_b,
        ("dS", "dB"): d_s * d_b,
        ("dS", "dB", "dB"): d_s * d_b * d_b,
        ("dS", "dS", "dB"): d_s * d_s * d_b,
    }
    out = Counter()
    for v in vals:
        r = v.real
        matches = [m for m, value in monomials.items() if abs(r - value) < 1e-9]
        if len(matches) != 1:
            raise AssertionError(
                f"readout value {r} at (d_S={d_s}, d_B={d_b}) matches {matches}")
        out[matches[0]] += 1
    return out


def check_overlap_multisets() -> CheckResult:
    start = time.perf_counter()
    order = enumerate_group(4)
    family = overlap_term_family()
    per_name = {}
    ok = True
    for name, term in family.items():
        computed = Counter(overlap_monomials(term, order))
        match = computed == REFERENCE_X_MULTISETS[name]
        per_name[name] = {"matches_reference": match}
        ok = ok and match
    c2 = Counter(overlap_monomials(family["evolution_dephased_right"], order))
    transcription_delta = {
        "missing_vs_transcription": dict(
            {" * ".join(k): v for k, v in (c2 - TRANSCRIBED_EVOLUTION_DEPHASED).items()}),
        "extra_in_transcription": dict(
            {" * ".join(k): v for k, v in (TRANSCRIBED_EVOLUTION_DEPHASED - c2).items()}),
    }
    # componentwise comparison of the two evolution_dephased vectors under
    # the canonical ordering
    left = overlap_monomials(family["evolution_dephased_left"], order)
    right = overlap_monomials(family["evolution_dephased_right"], order)
    same_positions = sum(a == b for a, b in zip(left, right))
    # readout multisets at two generic dimension pairs
    readout_ok = True
    for d_s, d_b in ((2, 5), (3, 7)):
        if _classify_readout(d_s, d_b) != REFERENCE_READOUT_MULTISET:
            readout_ok = False
    ok = ok and readout_ok
    return CheckResult(
        name="overlap-multisets",
        passed=ok,
        margin=1.0 if ok else -1.0,
        runtime_s=time.perf_counter() - start,
        details={"per_name": per_name, "readout_matches": readout_ok,
                 "evolution_dephased_componentwise_equal": same_positions == len(order),
                 "matching_positions": same_positions,
                 "transcription_delta_one_entry": transcription_delta},
        notes=["the two evolution_dephased vectors are equal as multisets but "
               "not componentwise under the canonical ordering"],
    )


# --------------------------------------------------------------------------
# 10. Property suites
# --------------------------------------------------------------------------

def check_properties(seed: int = 7) -> CheckResult:
    start = time.perf_counter()
    failures = []

    def expect(cond, label):
        if not cond:
            failures.append(label)

    # projector completeness and idempotence for S3 and S4
    for n in (3, 4):
        table = character_table(n)
        size = len(enumerate_group(n))
        total = rational.zeros(size, size)
        for a in range(len(table.irreps)):
            pa = projector(n, a)
            expect(rational.matrices_equal(rational.mat_mul(pa, pa), pa),
                   f"projector idempotent n={n} irrep={a}")
            for b in range(a + 1, len(table.irreps)):
                pb = projector(n, b)
                prod = rational.mat_mul(pa, pb)
                expect(all(prod[i, j] == 0 for i in range(size) for j in range(size)),
                       f"projector orthogonality n={n} ({a},{b})")
            total = total + pa
        expect(rational.is_identity(total), f"projector completeness n={n}")

    # pseudoinverse support law M X = X M = Q, Q^2 = Q
    for n, dd in ((3, (1, 2, 3)), (4, (2, 3, 4))):
        for d in dd:
            g = build_gram(n, d)
            x = pseudoinverse(g)
            q = support_projector(g)
            expect(rational.matrices_equal(rational.mat_mul(g.entries, x), q),
                   f"M X = Q at n={n} d={d}")
            expect(rational.matrices_equal(rational.mat_mul(x, g.entries), q),
                   f"X M = Q at n={n} d={d}")
            expect(rational.matrices_equal(rational.mat_mul(q, q), q),
                   f"Q idempotent at n={n} d={d}")

    # dephasing and partial trace
    rng = np.random.default_rng(seed)
    s6 = Spectrum(2, 3, ((0.0, 1), (0.4, 2), (1.1, 3)))
    g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    rho = g @ g.conj().T
    rho /= np.trace(rho)
    deph = dephase(rho, s6)
    expect(abs(np.trace(deph) - 1.0) < 1e-12, "dephasing preserves trace")
    expect(np.allclose(dephase(deph, s6), deph, atol=1e-12), "dephasing idempotent")
    expect(abs(np.trace(partial_trace(rho, 2, 3)) - np.trace(rho)) < 1e-12,
           "partial trace preserves trace")
    rho_s = rng.standard_normal((2, 2)); rho_s = rho_s @ rho_s.T; rho_s /= np.trace(rho_s)
    rho_b = rng.standard_normal((3, 3)); rho_b = rho_b @ rho_b.T; rho_b /= np.trace(rho_b)
    expect(np.allclose(partial_trace(np.kron(rho_s, rho_b), 2, 3), rho_s, atol=1e-12),
           "partial trace of product state")

    # energy-shift invariance and time-reversal symmetry of the engine
    s = Spectrum(2, 4, ((0.0, 1), (0.13, 2), (0.55, 1), (0.9, 3), (1.7, 1)))
    for t in (0.3, 1.1):
        base = exact_haar_distance(s, t)
        expect(abs(exact_haar_distance(s.shifted(5.0), t) - base) < 1e-10,
               f"energy-shift invariance t={t}")
        expect(abs(exact_haar_distance(s, -t) - base) < 1e-12,
               f"time-reversal symmetry t={t}")
    u = haar_unitary(s.dim, seed)
    from .montecarlo import evolve_and_measure
    expect(abs(evolve_and_measure(s, u, 0.8) - evolve_and_measure(s.shifted(3.0), u, 0.8)) < 1e-10,
           "sampled distance energy-shift invariance")

    # seed determinism
    m1 = mc_average_distance(s, 0.9, samples=50, seed=123)
    m2 = mc_average_distance(s, 0.9, samples=50, seed=123)
    expect(m1 == m2, "mc_average_distance deterministic per seed")
    sweep_mean, _ = mc_distance_sweep(s, [0.4, 0.9], samples=50, seed=123)
    single_mean, _ = mc_average_distance(s, 0.9, samples=50, seed=123)
    expect(sweep_mean[1] == single_mean, "sweep column equals single-time estimate")

    ok = not failures
    return CheckResult(
        name="properties",
        passed=ok,
        margin=1.0 if ok else -1.0,
        runtime_s=time.perf_counter() - start,
        details={"failures": failures},
    )


# --------------------------------------------------------------------------
# Registry / runner
# --------------------------------------------------------------------------

CHECKS = {
    "gram-inverse": check_gram_inverse,
    "s3-inverse": check_s3_inverse,
    "spectral-data": check_spectral_data,
    "twirl-smalld": check_twirl_small_d,
    "main-mc": check_main_mc,
    "leading-order-scaling": check_leading_order_scaling,
    "time-average": check_time_average,
    "gaussian-ensemble": check_gaussian_ensemble,
    "overlap-multisets": check_overlap_multisets,
    "properties": check_properties,
}


def run_checks(names=None) -> list[CheckResult]:
    if names is None:
        names = list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {unknown}; available: {sorted(CHECKS)}")
    return [CHECKS[name]() for name in names]


def report_dict(results, include_runtime: bool = True) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "checks": [r.to_dict(include_runtime=include_runtime) for r in results],
    }
