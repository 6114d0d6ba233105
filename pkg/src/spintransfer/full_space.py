"""Brute-force reference dynamics in the full tensor-product Hilbert space.

Builds the dense XX Hamiltonian with standard spin-s matrices (local basis
ordered m = s, s-1, .., -s, so index 0 is the site ground level), evolves the
product initial state exactly by eigendecomposition, and partial-traces onto
the last site.  Site 1 is the slowest-varying index of the tensor product.

This module exists to be trusted rather than fast; the total dimension is
capped at 4096.
"""

from __future__ import annotations

import math

import numpy as np

from .chain import ChainSpec, SpinMagnitude
from .fidelity import BlochState

__all__ = [
    "DIMENSION_CAP",
    "DimensionCapError",
    "spin_operators",
    "full_hamiltonian",
    "total_sz_diagonal",
    "excitation_sector_indices",
    "FullSpaceModel",
    "evolve_and_trace",
    "full_fidelity",
    "cross_check",
]

DIMENSION_CAP = 4096

# Population may leak out of the receiver's two reachable levels only through
# numerical error; more than this is a logic fault upstream.
_LEAKAGE_TOL = 1e-12


class DimensionCapError(ValueError):
    """Total Hilbert-space dimension exceeds the brute-force cap."""


def spin_operators(spin: SpinMagnitude) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Sx, Sy, Sz) for one site of magnitude s, basis m = s, s-1, .., -s.

    Matrix elements follow <m+1|S+|m> = sqrt(s(s+1) - m(m+1)).
    """
    s = spin.s
    d = spin.dim
    m = s - np.arange(d)
    sz = np.diag(m).astype(complex)
    raising = np.zeros((d, d), dtype=complex)
    raising[np.arange(d - 1), np.arange(1, d)] = np.sqrt(
        s * (s + 1.0) - m[1:] * (m[1:] + 1.0)
    )
    sx = (raising + raising.conj().T) / 2.0
    sy = (raising - raising.conj().T) / 2.0j
    return sx, sy, sz


def _site_dims(spec: ChainSpec) -> list[int]:
    dims = [site.spin.dim for site in spec.sites]
    total = math.prod(dims)
    if total > DIMENSION_CAP:
        raise DimensionCapError(f"total dimension {total} exceeds the cap {DIMENSION_CAP}")
    return dims


def _embed_pair(op_a: np.ndarray, op_b: np.ndarray, bond: int, dims: list[int]) -> np.ndarray:
    """op_a on site `bond`, op_b on site bond+1, identity elsewhere (0-based)."""
    out = np.eye(1, dtype=complex)
    for i, d in enumerate(dims):
        if i == bond:
            out = np.kron(out, op_a)
        elif i == bond + 1:
            out = np.kron(out, op_b)
        else:
            out = np.kron(out, np.eye(d, dtype=complex))
    return out


def _embed_single(op: np.ndarray, site: int, dims: list[int]) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for i, d in enumerate(dims):
        out = np.kron(out, op if i == site else np.eye(d, dtype=complex))
    return out


def full_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Dense H = sum_i J_i (Sx_i Sx_{i+1} + Sy_i Sy_{i+1}) + sum_i B_i Sz_i."""
    dims = _site_dims(spec)
    total = math.prod(dims)
    h = np.zeros((total, total), dtype=complex)
    ops = [spin_operators(site.spin) for site in spec.sites]
    for bond, j in enumerate(spec.couplings):
        sx_a, sy_a, _ = ops[bond]
        sx_b, sy_b, _ = ops[bond + 1]
        h += j * (_embed_pair(sx_a, sx_b, bond, dims) + _embed_pair(sy_a, sy_b, bond, dims))
    for site, spec_site in enumerate(spec.sites):
        if spec_site.field != 0.0:
            _, _, sz = ops[site]
            h += spec_site.field * _embed_single(sz, site, dims)
    return h


def total_sz_diagonal(spec: ChainSpec) -> np.ndarray:
    """Diagonal of the total-Sz operator (it is diagonal in the product basis)."""
    dims = _site_dims(spec)
    diag = np.zeros(1)
    for site, d in zip(spec.sites, dims):
        m = site.spin.s - np.arange(d)
        diag = (diag[:, None] + m[None, :]).reshape(-1)
    return diag


def excitation_sector_indices(spec: ChainSpec) -> list[int]:
    """Flat indices of (|0>, |1>, .., |N>) in the tensor-product basis."""
    dims = _site_dims(spec)
    strides = np.ones(len(dims), dtype=int)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    return [0] + [int(strides[n]) for n in range(len(dims))]


class FullSpaceModel:
    """Precomputed dense Hamiltonian and spectrum for repeated evaluations."""

    def __init__(self, spec: ChainSpec):
        self.spec = spec
        self.dims = _site_dims(spec)
        self.hamiltonian = full_hamiltonian(spec)
        self.eigenvalues, self.eigenvectors = np.linalg.eigh(self.hamiltonian)

    def initial_state(self, state: BlochState) -> np.ndarray:
        """Site 1 in the Bloch state, every other site in its ground level."""
        a0, a1 = state.amplitudes()
        psi = np.zeros(math.prod(self.dims), dtype=complex)
        stride_first = math.prod(self.dims[1:])
        psi[0] = a0
        psi[stride_first] = a1
        return psi

    def evolve(self, psi: np.ndarray, t: float) -> np.ndarray:
        coeffs = self.eigenvectors.conj().T @ psi
        coeffs *= np.exp(-1j * self.eigenvalues * float(t))
        return self.eigenvectors @ coeffs

    def receiver_density(self, state: BlochState, t: float) -> np.ndarray:
        """Evolve and trace out everything but the last site's two reachable levels."""
        psi = self.evolve(self.initial_state(state), t)
        block = psi.reshape(-1, self.dims[-1])
        rho = block.T @ block.conj()
        top = rho[:2, :2]
        leak = abs(np.trace(top).real - 1.0)
        if leak > _LEAKAGE_TOL:
            raise RuntimeError(
                f"population {leak:.3e} leaked out of the receiver's reachable levels"
            )
        return top

    def fidelity(self, state: BlochState, t: float) -> float:
        rho = self.receiver_density(state, t)
        amps = np.array(state.amplitudes())
        return float(np.real(amps.conj() @ rho @ amps))


def evolve_and_trace(spec: ChainSpec, state: BlochState, t: float) -> np.ndarray:
    """One-shot receiver density matrix from the full-space route."""
    return FullSpaceModel(spec).receiver_density(state, t)


def full_fidelity(spec: ChainSpec, state: BlochState, t: float) -> float:
    """One-shot transfer fidelity from the full-space route."""
    return FullSpaceModel(spec).fidelity(state, t)


def cross_check(spec: ChainSpec, state: BlochState, t: float) -> float:
    """|F_full - F_subspace| for one chain, input state, and time."""
    from . import excitation, fidelity

    record = excitation.transfer_amplitude(spec, t)
    f_sub = fidelity.fidelity(record.f, state)
    f_full = full_fidelity(spec, state, t)
    return abs(f_full - f_sub)
