"""Closed-form spectra, transfer amplitudes, and field-tuning rules.

Each of the five reference systems admits an exact solution.  The formulas
here are written straight from those solutions, independently of the
numerical engine, so the two paths cross-check each other.

Shorthand used below (all for coupling J and field B):

    mu = sqrt(B^2 + J^2)      two spin-1/2 sites, field on the first
    nu = sqrt(B^2 + 2 J^2)    three spin-1/2 sites, field on the centre
    xi = sqrt(B^2 + 4 J^2)    spin-1 centre carrying the field
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .chain import PRESET_NAMES, UnknownPresetError, preset
from .chain import ChainSpec

__all__ = [
    "DegenerateSystemError",
    "NotTunableError",
    "PresetSystem",
    "analytic_f",
    "analytic_spectrum",
    "critical_field",
    "zero_field_critical_time",
]

_SQRT2 = math.sqrt(2.0)


class DegenerateSystemError(ValueError):
    """The closed form is ill-posed for these parameters (J = B = 0 style)."""


class NotTunableError(ValueError):
    """No exact field tuning exists for this system."""


@dataclass(frozen=True)
class PresetSystem:
    """One of the five reference systems with its coupling and field."""

    name: str
    J: float
    B: float

    def __post_init__(self) -> None:
        if self.name not in PRESET_NAMES:
            raise UnknownPresetError(
                f"unknown preset {self.name!r}; known: {', '.join(PRESET_NAMES)}"
            )
        object.__setattr__(self, "J", float(self.J))
        object.__setattr__(self, "B", float(self.B))

    def chain(self) -> ChainSpec:
        return preset(self.name, self.J, self.B)


def _split_level_amplitude(j_eff: float, b: float, t: float) -> complex:
    """Common kernel of the two centre-field three-site amplitudes.

    f = j_eff^2 e^{i(B-w)t/2} / (2w(w-B)) + j_eff^2 e^{i(B+w)t/2} / (2w(w+B)) - 1/2
    with w = sqrt(B^2 + 2 j_eff^2).  The weights are evaluated as (w +- B)/(4w),
    equal by w^2 - B^2 = 2 j_eff^2, which stays finite as j_eff -> 0.
    """
    w = math.sqrt(b * b + 2.0 * j_eff * j_eff)
    if w == 0.0:
        raise DegenerateSystemError("closed form undefined at J = B = 0")
    w_minus = (w + b) / (4.0 * w)
    w_plus = (w - b) / (4.0 * w)
    return (
        w_minus * cmath.exp(1j * (b - w) * t / 2.0)
        + w_plus * cmath.exp(1j * (b + w) * t / 2.0)
        - 0.5
    )


def analytic_f(sys: PresetSystem, t: float) -> complex:
    """Exact end-to-end amplitude f(t) for a reference system."""
    j, b = sys.J, sys.B
    t = float(t)
    if sys.name == "sec2-two-spin":
        return -1j * cmath.exp(1j * b * t) * math.sin(_SQRT2 * j * t / 2.0)
    if sys.name == "sec2-three-spin-center":
        return -cmath.exp(1j * b * t) * math.sin(j * t / 2.0) ** 2
    if sys.name == "sec3-two-spin":
        mu = math.hypot(b, j)
        if mu == 0.0:
            raise DegenerateSystemError("closed form undefined at J = B = 0")
        return -1j * cmath.exp(1j * b * t / 2.0) * (j / mu) * math.sin(mu * t / 2.0)
    if sys.name == "sec3-three-spin-center":
        return _split_level_amplitude(j, b, t)
    if sys.name == "sec4-three-spin-center":
        # Same kernel with j_eff = sqrt(2) J: the spin-1 centre rescales both
        # bonds, mapping this system onto the previous one exactly.
        return _split_level_amplitude(_SQRT2 * j, b, t)
    raise UnknownPresetError(sys.name)


def analytic_spectrum(sys: PresetSystem) -> tuple[np.ndarray, np.ndarray]:
    """Exact eigenpairs over the basis (|0>, |1>, .., |N>), vacuum included.

    Returns (values, vectors) with one eigenvector per column, ordered as the
    levels are conventionally listed for each system (vacuum first).
    """
    j, b = sys.J, sys.B
    if sys.name == "sec2-two-spin":
        values = np.array([1.5 * b, 0.5 * (b + _SQRT2 * j), 0.5 * (b - _SQRT2 * j)])
        r = 1.0 / _SQRT2
        vectors = np.array(
            [
                [1.0, 0.0, 0.0],
                [0.0, r, -r],
                [0.0, r, r],
            ]
        )
        return values, vectors
    if sys.name == "sec2-three-spin-center":
        values = np.array([2.0 * b, b, b + j, b - j])
        r = 1.0 / _SQRT2
        vectors = np.array(
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, -r, 0.5, 0.5],
                [0.0, 0.0, 0.5 * _SQRT2, -0.5 * _SQRT2],
                [0.0, r, 0.5, 0.5],
            ]
        )
        return values, vectors
    if sys.name == "sec3-two-spin":
        mu = math.hypot(b, j)
        if mu == 0.0 or j == 0.0:
            raise DegenerateSystemError("printed eigenvectors degenerate when J = 0")
        values = np.array([0.5 * b, 0.5 * mu, -0.5 * mu])
        n_plus = math.sqrt(2.0 * mu * (mu + b))
        n_minus = math.sqrt(2.0 * mu * (mu - b))
        vectors = np.array(
            [
                [1.0, 0.0, 0.0],
                [0.0, j / n_plus, j / n_minus],
                [0.0, (b + mu) / n_plus, (b - mu) / n_minus],
            ]
        )
        return values, vectors
    if sys.name == "sec3-three-spin-center":
        nu = math.sqrt(b * b + 2.0 * j * j)
        if nu == 0.0 or j == 0.0:
            raise DegenerateSystemError("printed eigenvectors degenerate when J = 0")
        values = np.array([0.5 * b, 0.5 * b, 0.5 * nu, -0.5 * nu])
        r = 1.0 / _SQRT2
        n_plus = math.sqrt(2.0 * nu * (nu - b))
        n_minus = math.sqrt(2.0 * nu * (nu + b))
        vectors = np.array(
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, -r, j / n_plus, j / n_minus],
                [0.0, 0.0, (nu - b) / n_plus, -(b + nu) / n_minus],
                [0.0, r, j / n_plus, j / n_minus],
            ]
        )
        return values, vectors
    if sys.name == "sec4-three-spin-center":
        xi = math.sqrt(b * b + 4.0 * j * j)
        if xi == 0.0 or j == 0.0:
            raise DegenerateSystemError("printed eigenvectors degenerate when J = 0")
        values = np.array([b, b, 0.5 * (b + xi), 0.5 * (b - xi)])
        r = 1.0 / _SQRT2
        n_plus = math.sqrt(xi * (xi - b))
        n_minus = math.sqrt(xi * (xi + b))
        vectors = np.array(
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, -r, j / n_plus, j / n_minus],
                [0.0, 0.0, (xi - b) / (_SQRT2 * n_plus), -(b + xi) / (_SQRT2 * n_minus)],
                [0.0, r, j / n_plus, j / n_minus],
            ]
        )
        return values, vectors
    raise UnknownPresetError(sys.name)


def zero_field_critical_time(name: str, J: float, k: int = 0) -> float:
    """k-th time at which |f| peaks at unit magnitude when B = 0.

    Only the two spin-impurity systems reach |f| = 1; for the others no such
    time exists and NotTunableError is raised.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if J == 0.0:
        raise DegenerateSystemError("no critical time for an uncoupled chain")
    if name == "sec2-two-spin":
        return (2 * k + 1) * math.pi / (_SQRT2 * abs(J))
    if name == "sec2-three-spin-center":
        return (2 * k + 1) * math.pi / abs(J)
    if name in PRESET_NAMES:
        raise NotTunableError(f"{name} admits no unit-amplitude critical time")
    raise UnknownPresetError(name)


def critical_field(sys: PresetSystem, t_c: float, k_parity: str, l: int = 0) -> float:
    """Field strength that makes the transfer at t_c perfect, Fbar(t_c) = 1.

    k_parity is "even" or "odd" and refers to the index k of the critical
    time t_c = (2k+1)pi/(sqrt(2) J) of the two-site system, whose amplitude
    at t_c flips sign with that parity.  For the three-site system the sign
    is parity independent.  Raises NotTunableError for the systems where no
    exact tuning exists.
    """
    if t_c <= 0.0:
        raise ValueError(f"t_c must be positive, got {t_c!r}")
    if l < 0:
        raise ValueError(f"l must be nonnegative, got {l}")
    if k_parity not in ("even", "odd"):
        raise ValueError(f'k_parity must be "even" or "odd", got {k_parity!r}')
    if sys.name == "sec2-two-spin":
        if k_parity == "even":
            return (4 * l + 1) * math.pi / (2.0 * t_c)
        return (4 * l + 3) * math.pi / (2.0 * t_c)
    if sys.name == "sec2-three-spin-center":
        return (2 * l + 1) * math.pi / t_c
    raise NotTunableError(f"{sys.name} cannot be tuned to perfect transfer")
