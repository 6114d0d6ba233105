"""Self-check suite: every headline number is recomputed and compared.

Each check is deterministic (fixed seeds, no network, no external data) and
reports its name, the tolerance it enforces, and the measured value, so a
failure names exactly which piece of physics broke.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import closed_forms, fidelity, full_space, optimize
from .chain import (
    ChainSpec,
    PRESET_NAMES,
    SPIN_HALF,
    SPIN_ONE,
    SiteSpec,
    engineered_chain,
    preset,
)
from .closed_forms import PresetSystem
from .excitation import amplitudes, eigensolve, reduce
from .fidelity import BlochState
from .optimize import SearchConfig

__all__ = ["CheckResult", "CHECK_NAMES", "run_all"]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    tolerance: float | None
    measured: float | None
    detail: str = ""

    def __post_init__(self) -> None:
        # numpy scalars leak in from vectorised checks; keep the record
        # plain-Python so it serialises everywhere
        object.__setattr__(self, "passed", bool(self.passed))
        if self.tolerance is not None:
            object.__setattr__(self, "tolerance", float(self.tolerance))
        if self.measured is not None:
            object.__setattr__(self, "measured", float(self.measured))


_REGISTRY: list[tuple[tuple[str, ...], Callable[[], list[CheckResult]]]] = []


def _register(*names: str):
    def deco(fn: Callable[[], list[CheckResult]]):
        _REGISTRY.append((names, fn))
        return fn

    return deco


@_register("two-spin-impurity-max-fbar", "two-spin-impurity-peak-time")
def _check_two_spin_impurity_peak() -> list[CheckResult]:
    """Bare two-site spin-impurity channel peaks at Fbar = 2/3, t = pi/(sqrt2 J)."""
    j = 1.0
    t_star = math.pi / (_SQRT2 * j)
    spec = preset("sec2-two-spin", j, 0.0)
    res = optimize.maximize_fidelity(spec, SearchConfig(t_max=1.25 * t_star))
    err_f = abs(res.fbar - 2.0 / 3.0)
    err_t = abs(res.best_t - t_star)
    return [
        CheckResult("two-spin-impurity-max-fbar", err_f <= 1e-9, 1e-9, err_f,
                    f"fbar={res.fbar:.12f}"),
        CheckResult("two-spin-impurity-peak-time", err_t <= 1e-8, 1e-8, err_t,
                    f"t={res.best_t:.12f} vs {t_star:.12f}"),
    ]


@_register("field-tuning-perfect-fbar")
def _check_field_tuning() -> list[CheckResult]:
    """Tuned (t_c, B_c) pairs reach Fbar = 1 for both spin-impurity systems."""
    j = 1.3
    worst = 0.0
    for name in ("sec2-two-spin", "sec2-three-spin-center"):
        for k in (0, 1):
            for l in (0, 1):
                rep = optimize.verify_field_formula(PresetSystem(name, j, 0.0), k, l)
                worst = max(worst, abs(1.0 - rep.fbar))
    return [CheckResult("field-tuning-perfect-fbar", worst <= 1e-9, 1e-9, worst,
                        "8 (system, k, l) combinations")]


@_register("three-spin-impurity-bare-max", "three-spin-impurity-corrected")
def _check_three_spin_impurity() -> list[CheckResult]:
    """Bare centre-impurity chain is a dead channel; a phase flip rescues it."""
    j = 1.0
    spec = preset("sec2-three-spin-center", j, 0.0)
    res = optimize.maximize_fidelity(spec, SearchConfig(t_max=4.0 * math.pi / j))
    err_bare = abs(res.fbar - 0.5)
    t_c = math.pi / j
    record = amplitudes(*_solved(spec), t_c)
    corrected, phase = fidelity.corrected_average_fidelity(record.f)
    err_corr = abs(corrected - 1.0)
    return [
        CheckResult("three-spin-impurity-bare-max", err_bare <= 1e-9, 1e-9, err_bare,
                    f"fbar={res.fbar:.12f} at t={res.best_t:.3e}"),
        CheckResult("three-spin-impurity-corrected", err_corr <= 1e-9, 1e-9, err_corr,
                    f"corrected={corrected:.12f}, gate phase={phase:.6f}"),
    ]


def _solved(spec: ChainSpec):
    h = reduce(spec)
    return h, eigensolve(h)


@_register("field-impurity-amplitude-bound", "field-impurity-strictly-lossy")
def _check_field_impurity_bound() -> list[CheckResult]:
    """sup_t |f| of the edge-field two-site chain equals J/mu and stays below 1."""
    rng = np.random.default_rng(11)
    worst_err = 0.0
    worst_sup = 0.0
    for _ in range(20):
        j = rng.uniform(0.2, 2.5)
        b = rng.uniform(0.2, 2.5) * rng.choice([-1.0, 1.0])
        mu = math.hypot(b, j)
        spec = preset("sec3-two-spin", j, b)
        cfg = SearchConfig(t_max=20.0 * math.pi / mu)
        res = optimize.maximize_fidelity(spec, cfg, corrected=True)
        worst_err = max(worst_err, abs(res.abs_f - j / mu))
        worst_sup = max(worst_sup, res.abs_f)
    return [
        CheckResult("field-impurity-amplitude-bound", worst_err <= 1e-6, 1e-6, worst_err,
                    "20 random (J, B), 10 periods each"),
        CheckResult("field-impurity-strictly-lossy", worst_sup < 1.0, None, worst_sup,
                    "sup|f| must stay strictly below 1"),
    ]


@_register("corrected-peak-field-impurity")
def _check_corrected_peak_field_impurity() -> list[CheckResult]:
    """Centre-field chain at J = 2 sqrt(2) B / 3: corrected peak near 0.9678."""
    b = 1.0
    spec = preset("sec3-three-spin-center", 2.0 * _SQRT2 * b / 3.0, b)
    res = optimize.maximize_fidelity(spec, SearchConfig(t_max=200.0 / b), corrected=True)
    err = abs(res.fbar_corrected - 0.9678)
    return [CheckResult("corrected-peak-field-impurity", err <= 5e-4, 5e-4, err,
                        f"corrected max={res.fbar_corrected:.6f} at t={res.best_t:.4f}")]


@_register("corrected-peak-double-impurity")
def _check_corrected_peak_double_impurity() -> list[CheckResult]:
    """Spin-1 centre carrying the field, J = 2B/3: corrected peak near 0.9678."""
    b = 1.0
    spec = preset("sec4-three-spin-center", 2.0 * b / 3.0, b)
    res = optimize.maximize_fidelity(spec, SearchConfig(t_max=200.0 / b), corrected=True)
    err = abs(res.fbar_corrected - 0.9678)
    return [CheckResult("corrected-peak-double-impurity", err <= 5e-4, 5e-4, err,
                        f"corrected max={res.fbar_corrected:.6f} at t={res.best_t:.4f}")]


@_register("strong-coupling-fbar")
def _check_strong_coupling() -> list[CheckResult]:
    """J = 100 B nearly restores the edge-field channel without any correction."""
    b = 1.0
    spec = preset("sec3-two-spin", 100.0 * b, b)
    res = optimize.maximize_fidelity(spec, SearchConfig(t_max=1.5 * math.pi / b))
    return [CheckResult("strong-coupling-fbar", res.fbar >= 0.999, None, res.fbar,
                        "requires fbar >= 0.999")]


@_register(*[f"closed-form-f-{name}" for name in PRESET_NAMES])
def _check_closed_form_amplitudes() -> list[CheckResult]:
    """Printed amplitude formulas agree with the spectral engine."""
    rng = np.random.default_rng(23)
    results = []
    for name in PRESET_NAMES:
        worst = 0.0
        for _ in range(100):
            j = rng.uniform(0.1, 3.0)
            b = rng.uniform(0.0, 3.0)
            t = rng.uniform(0.0, 50.0)
            sys = PresetSystem(name, j, b)
            record = amplitudes(*_solved(sys.chain()), t)
            worst = max(worst, abs(record.f - closed_forms.analytic_f(sys, t)))
        results.append(CheckResult(f"closed-form-f-{name}", worst <= 1e-10, 1e-10, worst,
                                   "100 random (J, B, t)"))
    return results


@_register(*[f"spectrum-{name}" for name in PRESET_NAMES])
def _check_spectra() -> list[CheckResult]:
    """Engine spectra reproduce the printed eigenvalues, vacuum included."""
    j, b = 1.1, 0.7
    results = []
    for name in PRESET_NAMES:
        sys = PresetSystem(name, j, b)
        values, _ = closed_forms.analytic_spectrum(sys)
        h, eig = _solved(sys.chain())
        numeric = np.sort(np.append(eig.values, h.vacuum_energy))
        worst = float(np.max(np.abs(np.sort(values) - numeric)))
        results.append(CheckResult(f"spectrum-{name}", worst <= 1e-12, 1e-12, worst,
                                   f"J={j}, B={b}"))
    return results


def _random_chain(rng: np.random.Generator, max_sites: int) -> ChainSpec:
    n = int(rng.integers(2, max_sites + 1))
    sites = tuple(
        SiteSpec(
            spin=SPIN_ONE if rng.uniform() < 0.5 else SPIN_HALF,
            field=float(rng.uniform(-2.0, 2.0)),
        )
        for _ in range(n)
    )
    couplings = tuple(float(rng.uniform(-2.0, 2.0)) for _ in range(n - 1))
    return ChainSpec(sites=sites, couplings=couplings)


@_register("excitation-block-embedding", "subspace-vs-full", "sz-conservation")
def _check_full_space_equivalence() -> list[CheckResult]:
    """Dense tensor-product dynamics agrees with the subspace pipeline."""
    rng = np.random.default_rng(37)
    specs = [preset(name, 0.9, 0.6) for name in PRESET_NAMES]
    specs += [_random_chain(rng, 6) for _ in range(50)]

    worst_block = 0.0
    worst_fid = 0.0
    worst_comm = 0.0
    for spec in specs:
        model = full_space.FullSpaceModel(spec)
        h, eig = _solved(spec)

        idx = full_space.excitation_sector_indices(spec)
        block = model.hamiltonian[np.ix_(idx, idx)].real
        expected = np.zeros_like(block)
        expected[0, 0] = h.vacuum_energy
        expected[1:, 1:] = h.matrix()
        worst_block = max(worst_block, float(np.max(np.abs(block - expected))))

        sz = full_space.total_sz_diagonal(spec)
        comm = np.abs(model.hamiltonian * (sz[None, :] - sz[:, None]))
        worst_comm = max(worst_comm, float(np.max(comm)))

        for _ in range(20):
            t = float(rng.uniform(0.0, 20.0))
            state = BlochState(float(rng.uniform(0.0, math.pi)),
                               float(rng.uniform(0.0, 2.0 * math.pi)))
            f_sub = fidelity.fidelity(amplitudes(h, eig, t).f, state)
            f_full = model.fidelity(state, t)
            worst_fid = max(worst_fid, abs(f_full - f_sub))

    return [
        CheckResult("excitation-block-embedding", worst_block <= 1e-13, 1e-13, worst_block,
                    "55 chains"),
        CheckResult("subspace-vs-full", worst_fid <= 1e-10, 1e-10, worst_fid,
                    "55 chains, 20 random (t, theta, phi) each"),
        CheckResult("sz-conservation", worst_comm <= 1e-13, 1e-13, worst_comm,
                    "max |[H, Sz_total]| entry"),
    ]


@_register("fbar-quadrature")
def _check_quadrature() -> list[CheckResult]:
    """Sphere quadrature reproduces the closed-form average fidelity."""
    rng = np.random.default_rng(41)
    worst = 0.0
    for _ in range(100):
        f = math.sqrt(rng.uniform()) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        direct = fidelity.average_fidelity(f)
        quad = fidelity.bloch_average_quadrature(f, 64, 64)
        worst = max(worst, abs(direct - quad))
    return [CheckResult("fbar-quadrature", worst <= 1e-10, 1e-10, worst,
                        "100 random f in the unit disk, 64x64 nodes")]


@_register("unitarity-excitation-norm", "unitarity-vacuum-phase")
def _check_unitarity() -> list[CheckResult]:
    """Evolution stays unitary: sum |fn|^2 = 1 and |f0| = 1 on random chains."""
    rng = np.random.default_rng(43)
    worst_norm = 0.0
    worst_vac = 0.0
    for _ in range(200):
        spec = _random_chain(rng, 12)
        record = amplitudes(*_solved(spec), float(rng.uniform(0.0, 50.0)))
        worst_norm = max(worst_norm, abs(float(np.sum(np.abs(record.fn) ** 2)) - 1.0))
        worst_vac = max(worst_vac, abs(abs(record.f0) - 1.0))
    return [
        CheckResult("unitarity-excitation-norm", worst_norm <= 1e-12, 1e-12, worst_norm,
                    "200 random chains and times"),
        CheckResult("unitarity-vacuum-phase", worst_vac <= 1e-12, 1e-12, worst_vac,
                    "200 random chains and times"),
    ]


@_register("engineered-chain-transfer")
def _check_engineered_transfer() -> list[CheckResult]:
    """Engineered couplings give perfect transfer on plain chains (found, not assumed)."""
    worst = 0.0
    details = []
    for n in (5, 8):
        spec = engineered_chain(n, lam=1.0)
        res = optimize.maximize_fidelity(spec, SearchConfig(t_max=1.3 * math.pi),
                                         corrected=True)
        worst = max(worst, 1.0 - res.abs_f)
        details.append(f"N={n}: max|f|={res.abs_f:.12f} at t={res.best_t:.6f}")
    return [CheckResult("engineered-chain-transfer", worst <= 1e-9, 1e-9, worst,
                        "; ".join(details))]


@_register("engineered-spin-impurity-report")
def _check_engineered_impurity_report() -> list[CheckResult]:
    """Report-only experiment: engineered chain with one spin-1 site.

    No threshold is asserted; the measured peaks are recorded so the claim
    that a spin impurity merely shifts the perfect-transfer time can be
    judged from data.
    """
    details = []
    for n in (4, 5, 6, 8):
        for k in sorted({2, (n + 1) // 2}):
            spec = engineered_chain(n, lam=1.0, spin_one_site=k)
            res = optimize.maximize_fidelity(spec, SearchConfig(t_max=60.0 * math.pi),
                                             corrected=True)
            details.append(f"N={n} k={k}: max|f|={res.abs_f:.6f} at t={res.best_t:.4f}")
    return [CheckResult("engineered-spin-impurity-report", True, None, None,
                        "; ".join(details))]


CHECK_NAMES: tuple[str, ...] = tuple(name for names, _ in _REGISTRY for name in names)


def run_all(
    only: str | None = None,
    on_result: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    """Run every check (or those whose name contains `only`), in order.

    A check that raises is reported as failed rather than aborting the run.
    """
    results: list[CheckResult] = []
    for names, fn in _REGISTRY:
        if only is not None and not any(only in name for name in names):
            continue
        try:
            batch = fn()
        except Exception as exc:  # noqa: BLE001 - a broken check is a failed check
            batch = [
                CheckResult(name, False, None, None, f"error: {exc!r}") for name in names
            ]
        for result in batch:
            results.append(result)
            if on_result is not None:
                on_result(result)
    return results
