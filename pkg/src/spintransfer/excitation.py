"""Zero-plus-single-excitation dynamics of an XX chain.

The all-up product state |0> and the N single-flip states |n> (site n lowered
by one magnetic quantum) span an invariant subspace of the XX Hamiltonian.
Within it the Hamiltonian is the vacuum energy E0 = sum_i B_i s_i plus a real
symmetric tridiagonal block with

    onsite[n]  = E0 - B_n           (one flip removes one quantum of Zeeman energy)
    hopping[i] = J_i sqrt(s_i s_{i+1})

Transfer amplitudes are evaluated by spectral synthesis, never by time
stepping, so they are exact at any t:

    f0    = exp(-i E0 t)
    fn[n] = sum_k v_k[n] v_k[1] exp(-i eps_k t)
    f     = conj(f0) * fn[N],  gamma = arg(f) on (-pi, pi]

All functions here are pure; a shared EigenSystem may be read concurrently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec

__all__ = [
    "ConvergenceFailureError",
    "SingleExcitationHamiltonian",
    "EigenSystem",
    "AmplitudeRecord",
    "reduce",
    "eigensolve",
    "amplitudes",
    "transfer_amplitude",
    "time_series",
    "propagator",
]

# Convergence threshold for neglecting an off-diagonal element, relative to
# its two diagonal neighbours, and the sweep budget per eigenvalue.
_OFFDIAG_TOL = 1e-15
_MAX_SWEEPS = 50

# Below this magnitude the phase of f is numerically meaningless.
PHASE_DEGENERATE_TOL = 1e-12


class ConvergenceFailureError(RuntimeError):
    """The tridiagonal eigensolver exceeded its sweep budget for one eigenvalue."""


@dataclass(frozen=True)
class SingleExcitationHamiltonian:
    """Vacuum energy plus the symmetric tridiagonal single-excitation block."""

    vacuum_energy: float
    onsite: tuple[float, ...]
    hopping: tuple[float, ...]

    @property
    def n_sites(self) -> int:
        return len(self.onsite)

    def matrix(self) -> np.ndarray:
        """Dense N x N excitation block (mainly for tests and cross-checks)."""
        m = np.diag(np.asarray(self.onsite, dtype=float))
        off = np.asarray(self.hopping, dtype=float)
        idx = np.arange(len(off))
        m[idx, idx + 1] = off
        m[idx + 1, idx] = off
        return m


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Full spectrum of the excitation block; column k of vectors pairs with values[k]."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True, eq=False)
class AmplitudeRecord:
    """Transfer amplitudes of one chain at one time.

    fn[n] is the amplitude for the excitation injected at site 1 to be found
    at site n+1; f = conj(f0) * fn[-1] is the phase-referenced end-to-end
    amplitude and gamma its argument.  When |f| <= PHASE_DEGENERATE_TOL the
    phase is reported as 0 and phase_degenerate is set.
    """

    t: float
    f0: complex
    fn: np.ndarray
    f: complex
    gamma: float
    phase_degenerate: bool


def _hopping_scale(s_left: float, s_right: float) -> float:
    return math.sqrt(s_left * s_right)


def reduce(spec: ChainSpec) -> SingleExcitationHamiltonian:
    """Project a chain onto its zero-plus-single-excitation sector."""
    spins = spec.spins()
    fields = spec.fields()
    e0 = float(np.dot(fields, spins))
    onsite = tuple(float(e0 - b) for b in fields)
    hopping = tuple(
        float(j * _hopping_scale(spins[i], spins[i + 1]))
        for i, j in enumerate(spec.couplings)
    )
    return SingleExcitationHamiltonian(vacuum_energy=e0, onsite=onsite, hopping=hopping)


def eigensolve(h: SingleExcitationHamiltonian) -> EigenSystem:
    """Diagonalise the excitation block by the implicit-shift QL method.

    Eigenvalues come back ascending with orthonormal eigenvectors in the
    matching columns.  An off-diagonal entry counts as converged once it
    drops below 1e-15 * (|d_i| + |d_{i+1}|); each eigenvalue gets at most
    50 sweeps before ConvergenceFailureError is raised.
    """
    d = np.asarray(h.onsite, dtype=float).copy()
    n = d.size
    e = np.zeros(n)
    if n > 1:
        e[: n - 1] = h.hopping
    v = np.eye(n)

    for l in range(n):
        sweeps = 0
        while True:
            for m in range(l, n - 1):
                if abs(e[m]) <= _OFFDIAG_TOL * (abs(d[m]) + abs(d[m + 1])):
                    break
            else:
                m = n - 1
            if m == l:
                break
            if sweeps >= _MAX_SWEEPS:
                raise ConvergenceFailureError(
                    f"eigenvalue {l} of {n} not converged after {_MAX_SWEEPS} sweeps"
                )
            sweeps += 1

            # Wilkinson shift from the leading 2x2, then one QL sweep of
            # Givens rotations from m-1 down to l.
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # Underflow: the sweep has split the matrix early.
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = v[:, i + 1].copy()
                v[:, i + 1] = s * v[:, i] + c * col
                v[:, i] = c * v[:, i] - s * col
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0

    order = np.argsort(d, kind="stable")
    return EigenSystem(values=d[order], vectors=v[:, order])


def _principal_branch(angle: float) -> float:
    # atan2 returns [-pi, pi]; fold the single point -pi onto +pi.
    return math.pi if angle == -math.pi else angle


def amplitudes(h: SingleExcitationHamiltonian, eig: EigenSystem, t: float) -> AmplitudeRecord:
    """Evaluate f0, all fn, and f at one time from a precomputed spectrum."""
    t = float(t)
    phases = np.exp(-1j * eig.values * t)
    fn = eig.vectors @ (eig.vectors[0] * phases)
    f0 = cmath.exp(-1j * h.vacuum_energy * t)
    f = complex(np.conj(f0) * fn[-1])
    degenerate = abs(f) <= PHASE_DEGENERATE_TOL
    gamma = 0.0 if degenerate else _principal_branch(math.atan2(f.imag, f.real))
    return AmplitudeRecord(t=t, f0=f0, fn=fn, f=f, gamma=gamma, phase_degenerate=degenerate)


def transfer_amplitude(spec: ChainSpec, t: float) -> AmplitudeRecord:
    """One-shot convenience: reduce, diagonalise, evaluate at a single time."""
    h = reduce(spec)
    return amplitudes(h, eigensolve(h), t)


def time_series(spec: ChainSpec, t_grid) -> list[AmplitudeRecord]:
    """Amplitudes on an ascending time grid, sharing a single eigensolve."""
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1:
        raise ValueError("time grid must be one-dimensional")
    if grid.size > 1 and np.any(np.diff(grid) < 0):
        raise ValueError("time grid must be ascending")
    h = reduce(spec)
    eig = eigensolve(h)
    return [amplitudes(h, eig, t) for t in grid]


def propagator(h: SingleExcitationHamiltonian, eig: EigenSystem, t: float) -> np.ndarray:
    """(N+1) x (N+1) propagator on the zero-plus-single-excitation sector.

    Row/column 0 is the vacuum; rows 1..N are the single-flip states.
    """
    n = h.n_sites
    u = np.zeros((n + 1, n + 1), dtype=complex)
    u[0, 0] = cmath.exp(-1j * h.vacuum_energy * float(t))
    u[1:, 1:] = (eig.vectors * np.exp(-1j * eig.values * float(t))) @ eig.vectors.T
    return u
