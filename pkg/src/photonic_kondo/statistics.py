"""Intensity correlations of the scattered light.

Coincidences between a detector with polarization ``m`` (first photon) and
one with polarization ``n`` (second photon, delayed by ``tau``) are built
from auxiliary vectors that obey the same equation of motion as the local
spin.  The vectors are evolved unscaled, ``K_m = (m . C_s(0)) k_m`` and
``K_0 = f k_0``, so a detector orthogonal to ``C_s(0)`` causes no division
by zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import relax_precess, require_dissipation, stationary_bloch
from .errors import DetectorDark, InvalidParameter, NonUnitDetector
from .model import DrivenConfig, as_unit_vector

DARK_EPS = 1e-9


def _detector(v, name: str) -> np.ndarray:
    return as_unit_vector(v, name, error=NonUnitDetector)


def _free(config: DrivenConfig) -> bool:
    return config.phi == 0.0


def cs_zero(config: DrivenConfig) -> np.ndarray:
    """Stationary polarization density ``C_s(0)`` of the outgoing field.

    ``(f/2) [cos^2(phi/2) n_cl + 2 sin^2(phi/2) <S> - sin(phi) n_cl x <S>]``.
    """
    n_cl = np.asarray(config.n_cl)
    if _free(config):
        return 0.5 * config.f * n_cl
    require_dissipation(config)
    half = 0.5 * config.phi
    s = stationary_bloch(config)
    return 0.5 * config.f * (
        np.cos(half) ** 2 * n_cl + 2.0 * np.sin(half) ** 2 * s - np.sin(config.phi) * np.cross(n_cl, s)
    )


@dataclass(frozen=True)
class KVector:
    """Unscaled auxiliary vector at delay ``tau``; relaxes to ``source_norm * <S>_st``."""

    tau: np.ndarray
    value: np.ndarray
    source_norm: float


def k_initial_unscaled(config: DrivenConfig, m=None) -> KVector:
    """Initial auxiliary vector right after the first detection.

    ``m = None`` selects the polarization-blind channel ``K_0(0)``, otherwise
    the channel of a first photon detected with polarization ``m``.
    """
    require_dissipation(config)
    half = 0.5 * config.phi
    c2, s2, sphi = np.cos(half) ** 2, np.sin(half) ** 2, np.sin(config.phi)
    s = stationary_bloch(config)
    n_cl = np.asarray(config.n_cl)
    f = config.f
    if m is None:
        value = f * (s * c2 + 0.5 * n_cl * s2 + 0.5 * np.cross(n_cl, s) * sphi)
        return KVector(np.float64(0.0), value, float(f))
    m = _detector(m, "m")
    value = 0.5 * f * (
        np.dot(n_cl, m) * s * c2
        + n_cl * np.dot(s, m) * s2
        - 0.25 * sphi * np.cross(m, n_cl - 2.0 * s)
    )
    return KVector(np.float64(0.0), value, float(np.dot(m, cs_zero(config))))


def k_evolve(config: DrivenConfig, k0: KVector, tau) -> KVector:
    """Propagate ``k0`` by ``tau`` with the spin propagator; ``tau`` may be an array."""
    require_dissipation(config)
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0) or not np.all(np.isfinite(tau)):
        raise InvalidParameter("delay must be finite and non-negative")
    target = k0.source_norm * stationary_bloch(config)
    value = relax_precess(k0.value, target, config.n_h, config.Omega, config.Gamma, tau)
    return KVector(tau, value, k0.source_norm)


@dataclass(frozen=True)
class GCombinations:
    """Polarization-projected coincidence rates ``G_nm, G_n0, G_0m, G_00``."""

    G_nm: np.ndarray
    G_n0: np.ndarray
    G_0m: float
    G_00: float

    def __getitem__(self, key):
        return getattr(self, key)

    def detected(self) -> np.ndarray:
        """``G_nm + (G_0m + G_n0)/2 + G_00/4``: coincidences behind polarizers ``n`` and ``m``."""
        return self.G_nm + 0.5 * (self.G_0m + self.G_n0) + 0.25 * self.G_00


def _projected(config: DrivenConfig, n, weight, vec) -> np.ndarray:
    """``(f/2) n . [weight cos^2(phi/2) n_cl + 2 sin^2(phi/2) K - sin(phi) n_cl x K]``."""
    half = 0.5 * config.phi
    n_cl = np.asarray(config.n_cl)
    inner = (
        weight * np.cos(half) ** 2 * n_cl
        + 2.0 * np.sin(half) ** 2 * vec
        - np.sin(config.phi) * np.cross(n_cl, vec)
    )
    return 0.5 * config.f * (inner @ n)


def g_combinations(config: DrivenConfig, n, m, tau) -> GCombinations:
    """Stationary coincidence combinations at delay ``tau`` (scalar or array)."""
    n, m = _detector(n, "n"), _detector(m, "m")
    f = config.f
    tau = np.asarray(tau, dtype=float)
    if _free(config):
        n_cl = np.asarray(config.n_cl)
        ones = np.ones_like(tau)
        return GCombinations(
            G_nm=0.25 * f * f * np.dot(m, n_cl) * np.dot(n, n_cl) * ones,
            G_n0=0.5 * f * f * np.dot(n, n_cl) * ones,
            G_0m=0.5 * f * f * float(np.dot(m, n_cl)),
            G_00=f * f,
        )
    k_m = k_evolve(config, k_initial_unscaled(config, m), tau)
    k_0 = k_evolve(config, k_initial_unscaled(config), tau)
    return GCombinations(
        G_nm=_projected(config, n, k_m.source_norm, k_m.value),
        G_n0=_projected(config, n, f, k_0.value),
        G_0m=f * k_m.source_norm,
        G_00=f * f,
    )


def _denominators(config: DrivenConfig, n, m) -> tuple[float, float]:
    cs = cs_zero(config)
    d_m = 0.5 * config.f + float(np.dot(m, cs))
    d_n = 0.5 * config.f + float(np.dot(n, cs))
    if min(d_m, d_n) <= DARK_EPS * config.f:
        raise DetectorDark("a detector polarization receives no photons; g2 undefined")
    return d_m, d_n


def g2(config: DrivenConfig, n, m, tau) -> np.ndarray:
    """Normalised coincidence function ``g2_{n,m}(tau)``.

    ``m`` is the polarization of the first detected photon and ``n`` that of
    the second.  The expression is written as unity plus a transient that
    decays with the spin relaxation.

    Raises
    ------
    DetectorDark
        If either detector receives no photons.
    """
    n, m = _detector(n, "n"), _detector(m, "m")
    if not config.f > 0:
        raise DetectorDark("no drive photons; g2 undefined")
    tau = np.asarray(tau, dtype=float)
    if _free(config):
        _denominators(config, n, m)
        return np.ones_like(tau)
    d_m, d_n = _denominators(config, n, m)
    half = 0.5 * config.phi
    s = stationary_bloch(config)
    n_cl = np.asarray(config.n_cl)

    def l_proj(k: KVector) -> np.ndarray:
        d = k.value - k.source_norm * s
        return (np.sin(half) * d - np.cos(half) * np.cross(n_cl, d)) @ n

    k_m = k_evolve(config, k_initial_unscaled(config, m), tau)
    k_0 = k_evolve(config, k_initial_unscaled(config), tau)
    excess = l_proj(k_m) + 0.5 * l_proj(k_0)
    return 1.0 + config.f * np.sin(half) * excess / (d_m * d_n)


def g2_from_combinations(config: DrivenConfig, n, m, tau) -> np.ndarray:
    """``g2`` as the ratio of detected coincidences at ``tau`` and at infinite delay."""
    n, m = _detector(n, "n"), _detector(m, "m")
    _denominators(config, n, m)
    now = g_combinations(config, n, m, tau).detected()
    if _free(config):
        late = g_combinations(config, n, m, 0.0).detected()
        return now / late
    # analytic large-delay limit: K -> source_norm <S>_st
    s = stationary_bloch(config)
    a_m = float(np.dot(m, cs_zero(config)))
    f = config.f
    late = GCombinations(
        G_nm=_projected(config, n, a_m, a_m * s),
        G_n0=_projected(config, n, f, f * s),
        G_0m=f * a_m,
        G_00=f * f,
    ).detected()
    return now / late


@dataclass(frozen=True)
class G2Curve:
    n: np.ndarray
    m: np.ndarray
    taus: np.ndarray
    values: np.ndarray


def g2_curve(config: DrivenConfig, n, m, tau_max: float, n_points: int = 400) -> G2Curve:
    """``g2_{n,m}`` on ``n_points`` uniform delays in ``[0, tau_max]``."""
    if not tau_max > 0 or n_points < 2:
        raise InvalidParameter("need tau_max > 0 and n_points >= 2")
    taus = np.linspace(0.0, tau_max, n_points)
    n, m = _detector(n, "n"), _detector(m, "m")
    return G2Curve(n=n, m=m, taus=taus, values=g2(config, n, m, taus))
