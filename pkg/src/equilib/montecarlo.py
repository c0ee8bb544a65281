"""Independent stochastic oracles: Haar unitaries, exact evolution, dephasing.

Every estimator derives the RNG stream of sample k from (seed, k), so results
are bit-identical however samples are batched across workers; reductions use
numpy's pairwise summation over a fixed sample order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equilibrium import Spectrum


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed unitary via a complex Ginibre matrix and QR.

    The diagonal of R is rotated to positive reals, which removes the phase
    ambiguity of plain QR and makes the distribution exactly Haar.
    """
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    rng = _rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))
    return q


@dataclass(eq=False)
class RandomHamiltonian:
    """H = U H0 U^dagger for a fixed spectrum and a sampled eigenbasis U."""

    spectrum: Spectrum
    unitary: np.ndarray

    def matrix(self) -> np.ndarray:
        h0 = np.diag(self.spectrum.expanded_energies())
        return self.unitary @ h0 @ self.unitary.conj().T

    def eigenprojectors(self) -> list[np.ndarray]:
        u = self.unitary
        return [u[:, sl] @ u[:, sl].conj().T for sl in self.spectrum.level_slices()]


def random_hamiltonian(s: Spectrum, seed) -> RandomHamiltonian:
    return RandomHamiltonian(spectrum=s, unitary=haar_unitary(s.dim, seed))


# --------------------------------------------------------------------------
# Density-matrix plumbing
# --------------------------------------------------------------------------

def is_density_matrix(rho: np.ndarray, atol: float = 1e-12) -> bool:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if not np.allclose(rho, rho.conj().T, atol=atol):
        return False
    if abs(np.trace(rho) - 1.0) > atol:
        return False
    eigs = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    return bool(eigs.min() >= -1e-10)


def partial_trace(rho: np.ndarray, d_S: int, d_B: int, keep: str = "S") -> np.ndarray:
    """Partial trace of an operator on C^{d_S} x C^{d_B} (kron index order)."""
    rho = np.asarray(rho)
    if rho.shape != (d_S * d_B, d_S * d_B):
        raise ValueError(f"operator shape {rho.shape} does not match {d_S}x{d_B}")
    blocks = rho.reshape(d_S, d_B, d_S, d_B)
    if keep == "S":
        return np.einsum("ibjb->ij", blocks)
    if keep == "B":
        return np.einsum("ibid->bd", blocks)
    raise ValueError(f"keep must be 'S' or 'B', got {keep!r}")


def dephase(rho: np.ndarray, s: Spectrum) -> np.ndarray:
    """Remove matrix elements between distinct energy levels (in the H0 basis)."""
    rho = np.asarray(rho)
    if rho.shape != (s.dim, s.dim):
        raise ValueError(f"operator shape {rho.shape} does not match dimension {s.dim}")
    return rho * s.block_mask()


# --------------------------------------------------------------------------
# Distance sampling
# --------------------------------------------------------------------------

def _initial_vector(s: Spectrum, system_state, bath_state) -> np.ndarray:
    def pure(dim, state):
        if state is None:
            v = np.zeros(dim, dtype=complex)
            v[0] = 1.0
            return v
        v = np.asarray(state, dtype=complex).ravel()
        if v.shape != (dim,):
            raise ValueError(f"state must have dimension {dim}, got shape {v.shape}")
        n = np.linalg.norm(v)
        if not np.isclose(n, 1.0, atol=1e-10):
            raise ValueError(f"state must be normalized, got norm {n}")
        return v

    return np.kron(pure(s.d_S, system_state), pure(s.d_B, bath_state))


def evolve_and_measure(s: Spectrum, unitary: np.ndarray, t: float,
                       system_state=None, bath_state=None) -> float:
    """||tr_B rho(t) - tr_B omega||_2^2 for one H = U H0 U^dagger.

    Evolution uses the spectral form exp(-iHt) = U exp(-iH0 t) U^dagger, so
    it is exact; omega is the initial state dephased across energy levels.
    """
    unitary = np.asarray(unitary, dtype=complex)
    if unitary.shape != (s.dim, s.dim):
        raise ValueError(f"unitary shape {unitary.shape} does not match dimension {s.dim}")
    values = _distances_for_sample(s, unitary, np.array([float(t)]), system_state, bath_state)
    return float(values[0])


def _distances_for_sample(s: Spectrum, unitary: np.ndarray, ts: np.ndarray,
                          system_state=None, bath_state=None) -> np.ndarray:
    psi = _initial_vector(s, system_state, bath_state)
    energies = s.expanded_energies()
    v = unitary.conj().T @ psi
    dephased = np.outer(v, v.conj()) * s.block_mask()
    omega_s = partial_trace(unitary @ dephased @ unitary.conj().T, s.d_S, s.d_B)
    out = np.empty(len(ts))
    for i, t in enumerate(ts):
        phi = unitary @ (np.exp(-1j * energies * t) * v)
        bloc = phi.reshape(s.d_S, s.d_B)
        rho_s = bloc @ bloc.conj().T
        diff = rho_s - omega_s
        out[i] = float(np.sum(np.abs(diff) ** 2))
    return out


def mc_distance_sweep(s: Spectrum, ts, samples: int, seed: int,
                      system_state=None, bath_state=None
                      ) -> tuple[np.ndarray, np.ndarray]:
    """Sample mean and standard error of the subsystem distance on a time grid.

    One Haar eigenbasis is drawn per sample (stream (seed, k)) and reused for
    every grid time, so columns are correlated across t but each column is a
    valid mean over independent samples.
    """
    if samples < 2:
        raise ValueError("at least 2 samples required for a standard error")
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    values = np.empty((samples, len(ts)))
    for k in range(samples):
        u = haar_unitary(s.dim, (seed, k))
        values[k] = _distances_for_sample(s, u, ts, system_state, bath_state)
    mean = values.mean(axis=0)
    stderr = values.std(axis=0, ddof=1) / math.sqrt(samples)
    return mean, stderr


def mc_average_distance(s: Spectrum, t: float, samples: int, seed: int,
                        system_state=None, bath_state=None) -> tuple[float, float]:
    """Monte-Carlo estimate (mean, standard error) of the Haar-averaged distance."""
    mean, stderr = mc_distance_sweep(s, [t], samples, seed, system_state, bath_state)
    return float(mean[0]), float(stderr[0])


def sample_gaussian_spectrum(n_levels: int, sigma: float, seed) -> np.ndarray:
    """i.i.d. normal(0, sigma^2) level energies, sorted ascending."""
    if n_levels < 1:
        raise ValueError(f"need at least one level, got {n_levels}")
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    rng = _rng(seed)
    return np.sort(rng.normal(0.0, sigma, size=n_levels))
