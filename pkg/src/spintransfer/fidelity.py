"""Receiver-side density matrix and fidelity measures for a channel amplitude f.

For the input state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> sent through a
channel with end-to-end amplitude f, the receiver's reduced density matrix is

    rho = [[1 - sin^2(theta/2) |f|^2,   (1/2) sin(theta) e^{-i phi} conj(f)],
           [(1/2) sin(theta) e^{i phi} f,        sin^2(theta/2) |f|^2      ]]

and the fidelity F = <in|rho|in>.  Averaging F uniformly over the Bloch sphere
gives

    Fbar = 1/2 + |f| cos(gamma) / 3 + |f|^2 / 6,   gamma = arg(f).

A receiver-side gate diag{1, e^{-i vartheta}} with vartheta = arg(f) removes
the phase penalty, raising the average to 1/2 + |f|/3 + |f|^2/6; no local
gate can repair |f| < 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AmplitudeOutOfRangeError",
    "BlochState",
    "FidelityReport",
    "reduced_density",
    "fidelity",
    "average_fidelity",
    "corrected_average_fidelity",
    "bloch_average_quadrature",
    "fidelity_report",
]

# |f| may exceed 1 by at most this much (upstream round-off); beyond it the
# input is treated as corrupt.
_CLAMP_EXCESS = 1e-9
_BOUNDARY_TOL = 1e-12


class AmplitudeOutOfRangeError(ValueError):
    """|f| exceeds 1 by more than round-off can explain."""


@dataclass(frozen=True)
class BlochState:
    """A pure qubit state by its polar and azimuthal Bloch angles."""

    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi!r}")

    def amplitudes(self) -> tuple[complex, complex]:
        """(amplitude on |0>, amplitude on |1>)."""
        return (
            complex(math.cos(self.theta / 2.0)),
            cmath.exp(1j * self.phi) * math.sin(self.theta / 2.0),
        )


def _checked_amplitude(f: complex) -> complex:
    f = complex(f)
    mag = abs(f)
    if mag > 1.0 + _CLAMP_EXCESS:
        raise AmplitudeOutOfRangeError(
            f"|f| = {mag!r} exceeds 1 beyond the round-off allowance {_CLAMP_EXCESS}"
        )
    if mag > 1.0:
        return f / mag
    return f


def _clip_boundary(value: float) -> float:
    if 1.0 < value <= 1.0 + _BOUNDARY_TOL:
        return 1.0
    if -_BOUNDARY_TOL <= value < 0.0:
        return 0.0
    return value


def reduced_density(f: complex, state: BlochState) -> np.ndarray:
    """2x2 receiver density matrix; Hermitian, trace one, positive semidefinite."""
    f = _checked_amplitude(f)
    pop = math.sin(state.theta / 2.0) ** 2 * abs(f) ** 2
    off = 0.5 * math.sin(state.theta) * cmath.exp(-1j * state.phi) * f.conjugate()
    return np.array([[1.0 - pop, off], [off.conjugate(), pop]], dtype=complex)


def fidelity(f: complex, state: BlochState) -> float:
    """Overlap of the received state with the sent one for a single input."""
    f = _checked_amplitude(f)
    c2 = math.cos(state.theta / 2.0) ** 2
    s2 = math.sin(state.theta / 2.0) ** 2
    mag2 = abs(f) ** 2
    return c2 * (1.0 - mag2 * s2 + 2.0 * s2 * f.real) + mag2 * s2 * s2


def average_fidelity(f: complex) -> float:
    """Fidelity averaged uniformly over all pure input states."""
    f = _checked_amplitude(f)
    return _clip_boundary(0.5 + f.real / 3.0 + abs(f) ** 2 / 6.0)


def corrected_average_fidelity(f: complex) -> tuple[float, float]:
    """Best average fidelity after the receiver's phase gate, and the gate phase.

    The gate diag{1, e^{-i vartheta}} with vartheta = arg(f) rotates f onto
    the positive real axis, so the corrected value is the average fidelity
    evaluated at |f|.  At f = 0 the phase is reported as 0.
    """
    f = _checked_amplitude(f)
    mag = abs(f)
    phase = math.atan2(f.imag, f.real)
    return _clip_boundary(0.5 + mag / 3.0 + mag * mag / 6.0), phase


def bloch_average_quadrature(f: complex, n_theta: int = 64, n_phi: int = 64) -> float:
    """Numerical sphere average of fidelity(f, .) as an independent check.

    Gauss-Legendre in cos(theta) with n_theta nodes crossed with the uniform
    trapezoid rule in phi (endpoints identified) with n_phi nodes.  The
    integrand is a low-degree polynomial in cos(theta), so modest resolutions
    are already exact to round-off.
    """
    if n_theta < 2 or n_phi < 2:
        raise ValueError("need at least 2 nodes per angle")
    nodes, weights = np.polynomial.legendre.leggauss(n_theta)
    thetas = np.arccos(nodes)
    phis = 2.0 * math.pi * np.arange(n_phi) / n_phi
    acc = 0.0
    for theta, w in zip(thetas, weights):
        ring = sum(fidelity(f, BlochState(theta, phi)) for phi in phis) / n_phi
        acc += w * ring
    return acc / 2.0


@dataclass(frozen=True)
class FidelityReport:
    """Average-fidelity summary of a channel amplitude at one time."""

    t: float
    f: complex
    abs_f: float
    gamma: float
    fbar: float
    fbar_corrected: float
    correction_phase: float


def fidelity_report(t: float, f: complex, phase_degenerate: bool = False) -> FidelityReport:
    """Bundle plain and corrected average fidelities for one (t, f) pair."""
    f = _checked_amplitude(f)
    fbar = average_fidelity(f)
    corrected, phase = corrected_average_fidelity(f)
    if phase_degenerate:
        phase = 0.0
    gamma = 0.0 if phase_degenerate else phase
    return FidelityReport(
        t=float(t),
        f=f,
        abs_f=abs(f),
        gamma=gamma,
        fbar=fbar,
        fbar_corrected=corrected,
        correction_phase=phase,
    )
