"""Compact self-check: every closed form against an independent numerical path.

Used by the ``validate`` command.  Each check returns the largest deviation
found and the tolerance it must meet.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bloch, correlators, spectra, statistics
from .errors import DetectorDark
from .model import KondoParams, amplitudes_for, build_driven_config, config_from_lambda_psi
from .oracle import LinearSystem, default_step, integrate_rk4


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.deviation <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: max deviation {self.deviation:.3e} (tolerance {self.tolerance:.1e}) {status}"


def _configs(seed: int = 7, count: int = 6):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        lam = 10 ** rng.uniform(-1.0, np.log10(50.0))
        psi = rng.uniform(0.05, np.pi - 0.05)
        out.append(config_from_lambda_psi(lam, psi, J=rng.uniform(0.02, 0.4)))
    return out, rng


def _spin_system(config, target_scale, v0) -> LinearSystem:
    """``dv/dt = h_eff x v - Gamma (v - target_scale n_cl / 2)`` as a linear system."""
    h = config.h_eff
    cross = np.array([[0.0, -h[2], h[1]], [h[2], 0.0, -h[0]], [-h[1], h[0], 0.0]])
    return LinearSystem(cross - config.Gamma * np.eye(3), 0.5 * target_scale * config.Gamma * config.n_cl, v0)


def _rk4_final(system: LinearSystem, config, tau):
    step = default_step(config.Gamma, config.Omega)
    _, states = integrate_rk4(system, tau, step, record_every=10**12)
    return states[-1]


def check_bloch(configs, rng) -> CheckResult:
    worst = 0.0
    for cfg in configs:
        s0 = rng.normal(size=3)
        s0 *= 0.5 / np.linalg.norm(s0)
        tau = 3.0 / cfg.Gamma
        ref = _rk4_final(_spin_system(cfg, 1.0, s0), cfg, tau).real
        worst = max(worst, float(np.max(np.abs(ref - bloch.bloch_evolve(cfg, s0, tau)))))
    return CheckResult("bloch closed form vs RK4", worst, 1e-8)


def check_correlators(configs) -> CheckResult:
    worst = 0.0
    for cfg in configs:
        tau = 2.0 / cfg.Gamma
        pairs = (
            (correlators.unresolved_system(cfg), correlators.unresolved_closed_form(cfg, tau)),
            (correlators.resolved_system(cfg), correlators.resolved_closed_form(cfg, tau)),
        )
        for system, closed in pairs:
            ref = _rk4_final(system, cfg, tau)
            worst = max(worst, float(np.max(np.abs(ref - closed.as_vector()))))
    return CheckResult("spin correlators closed form vs RK4", worst, 1e-8)


def check_k_vectors(configs, rng) -> CheckResult:
    worst = 0.0
    for cfg in configs:
        m = rng.normal(size=3)
        m /= np.linalg.norm(m)
        tau = 1.5 / cfg.Gamma
        for k0 in (statistics.k_initial_unscaled(cfg), statistics.k_initial_unscaled(cfg, m)):
            ref = _rk4_final(_spin_system(cfg, k0.source_norm, k0.value), cfg, tau).real
            got = statistics.k_evolve(cfg, k0, tau).value
            worst = max(worst, float(np.max(np.abs(ref - got))) / max(1.0, abs(k0.source_norm)))
    return CheckResult("auxiliary g2 vectors vs RK4", worst, 1e-8)


def check_spectrum_transform() -> CheckResult:
    """Numerical transform of the inelastic correlator against the Lorentzian form."""
    cfg = config_from_lambda_psi(3.0, 1.1, J=0.1)
    nu = np.linspace(-3.0, 3.0, 13)
    tau = np.linspace(0.0, 40.0 / cfg.Gamma, 200001)
    corr = spectra.c0_inelastic(cfg, tau)
    phase = np.exp(-1j * np.outer(nu * cfg.Omega, tau))
    numeric = 2.0 * np.trapezoid(phase * corr, tau, axis=1).real
    closed = spectra.inelastic_density(cfg, nu)
    return CheckResult("inelastic spectrum vs numerical transform", float(np.max(np.abs(numeric - closed))), 1e-5)


def check_outgoing_field(configs) -> CheckResult:
    worst = 0.0
    for cfg in configs:
        field = spectra.outgoing_field(cfg, amplitudes_for(cfg.n_cl, cfg.f), check_tol=np.inf)
        worst = max(worst, float(np.max(np.abs(field.s_q - spectra.cs_elastic_zero(cfg)))) / cfg.f)
    return CheckResult("outgoing field: scattering matrix vs correlator (per unit flux)", worst, 1e-12)


def check_power(configs) -> CheckResult:
    worst = 0.0
    for cfg in configs:
        budget = spectra.power_accounting(cfg)
        worst = max(worst, abs(budget.P_numeric / budget.P_tot - 1.0))
    return CheckResult("output power conservation (relative)", worst, 1e-4)


def check_g2(configs, rng) -> CheckResult:
    worst = 0.0
    for cfg in configs:
        n, m = rng.normal(size=(2, 3))
        n /= np.linalg.norm(n)
        m /= np.linalg.norm(m)
        taus = np.linspace(0.0, 5.0 / cfg.Gamma, 11)
        try:
            a = statistics.g2(cfg, n, m, taus)
        except DetectorDark:
            continue
        b = statistics.g2_from_combinations(cfg, n, m, taus)
        worst = max(worst, float(np.max(np.abs(a - b))))
    return CheckResult("g2 two-path agreement", worst, 1e-12)


def check_free_field() -> CheckResult:
    cfg = build_driven_config(KondoParams(J=0.0, f=1.0, delta=0.3), [1.0, 0.0, 0.0])
    dev = float(np.max(np.abs(statistics.g2(cfg, [1, 0, 0], [0, 0, 1], np.linspace(0, 5, 6)) - 1.0)))
    return CheckResult("free field g2 = 1", dev, 1e-14)


def run_all(seed: int = 7) -> list[CheckResult]:
    configs, rng = _configs(seed)
    return [
        check_bloch(configs, rng),
        check_correlators(configs),
        check_k_vectors(configs, rng),
        check_spectrum_transform(),
        check_outgoing_field(configs),
        check_power(configs),
        check_g2(configs, rng),
        check_free_field(),
    ]
