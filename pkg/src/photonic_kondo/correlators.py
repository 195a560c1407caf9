"""Stationary two-time spin-spin correlators.

Two closed sets of scalar projections of ``C^{ij}(tau) = <S^i(t+tau) S^j(t)>``
are provided, each as an exact closed form and as the linear ODE system it
solves (for integration by :mod:`photonic_kondo.oracle`):

* unresolved set ``(A, B_cl, B_h, C_clh, C_hh, D)``
* resolved set ``(C_clcl, C_hcl, E_R, E_L, F, Fbar)``

plus the coefficients ``a, b, c`` of ``A_R + A_L - n_cl A - i B_g`` in the
basis ``{n_cl, n_h, n_cl x n_h}``.  Everything is complex and vectorised over
``tau``; only ``tau >= 0`` is accepted.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import NamedTuple

import numpy as np

from .bloch import require_dissipation
from .errors import InvalidParameter
from .model import DrivenConfig
from .oracle import LinearSystem


class _Shape(NamedTuple):
    lam: float
    cos: float
    sin2: float
    cos2_half: float
    sin2_half: float
    norm: float  # 1 + lam^2
    q: float  # (1 + lam^2 cos^2 psi) / (1 + lam^2)
    k: float  # lam sin^2 psi / (1 + lam^2)


def _shape(config: DrivenConfig) -> _Shape:
    require_dissipation(config)
    lam, psi = config.lam, config.psi
    c = np.cos(psi)
    s2 = np.sin(psi) ** 2
    norm = 1.0 + lam * lam
    return _Shape(
        lam=lam,
        cos=c,
        sin2=s2,
        cos2_half=np.cos(psi / 2) ** 2,
        sin2_half=np.sin(psi / 2) ** 2,
        norm=norm,
        q=(1.0 + lam * lam * c * c) / norm,
        k=lam * s2 / norm,
    )


def _tau(tau) -> np.ndarray:
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0) or not np.all(np.isfinite(tau)):
        raise InvalidParameter("correlators are defined for finite tau >= 0 only")
    return tau


def _exponentials(config: DrivenConfig, tau):
    g, w = config.Gamma, config.Omega
    return (
        np.exp(-g * tau),
        np.exp(-(g - 1j * w) * tau),
        np.exp(-(g + 1j * w) * tau),
    )


class _Vectorlike:
    """Mixin: pack/unpack the complex components in declaration order."""

    @classmethod
    def names(cls) -> tuple:
        return tuple(f.name for f in fields(cls) if f.name != "tau")

    def as_vector(self) -> np.ndarray:
        return np.stack([np.asarray(getattr(self, n), dtype=complex) for n in self.names()], axis=-1)

    @classmethod
    def from_vector(cls, tau, vec):
        vec = np.asarray(vec, dtype=complex)
        return cls(tau, *(vec[..., i] for i in range(vec.shape[-1])))


@dataclass(frozen=True)
class UnresolvedCorrelators(_Vectorlike):
    tau: np.ndarray
    A: np.ndarray
    B_cl: np.ndarray
    B_h: np.ndarray
    C_clh: np.ndarray
    C_hh: np.ndarray
    D: np.ndarray


@dataclass(frozen=True)
class ResolvedCorrelators(_Vectorlike):
    tau: np.ndarray
    C_clcl: np.ndarray
    C_hcl: np.ndarray
    E_R: np.ndarray
    E_L: np.ndarray
    F: np.ndarray
    Fbar: np.ndarray


@dataclass(frozen=True)
class AbcCoefficients(_Vectorlike):
    tau: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray


# -- unresolved set ---------------------------------------------------------


def unresolved_initial(config: DrivenConfig) -> UnresolvedCorrelators:
    p = _shape(config)
    return UnresolvedCorrelators(
        tau=np.float64(0.0),
        A=np.complex128(0.75),
        B_cl=np.complex128(0.5j * p.q),
        B_h=np.complex128(0.5j * p.cos),
        C_clh=np.complex128(0.25 * p.cos - 0.25j * p.k),
        C_hh=np.complex128(0.25),
        D=np.complex128(-0.25j * p.sin2 / p.norm),
    )


def unresolved_stationary(config: DrivenConfig) -> UnresolvedCorrelators:
    """Large-delay constants, i.e. products of stationary expectation values."""
    p = _shape(config)
    return UnresolvedCorrelators(
        tau=np.float64(np.inf),
        A=np.complex128(0.25 * p.q),
        B_cl=np.complex128(0.0),
        B_h=np.complex128(0.0),
        C_clh=np.complex128(0.25 * p.cos * p.q),
        C_hh=np.complex128(0.25 * p.cos**2),
        D=np.complex128(-0.25 * p.sin2 * p.lam * p.cos / p.norm),
    )


def unresolved_closed_form(config: DrivenConfig, tau) -> UnresolvedCorrelators:
    tau = _tau(tau)
    p = _shape(config)
    e0, em, ep = _exponentials(config, tau)
    lam, c, s2, ch, sh, n = p.lam, p.cos, p.sin2, p.cos2_half, p.sin2_half, p.norm

    c_hh = 0.25 * (c * c + s2 * e0)
    c_clh = 0.25 * c * (p.q + s2 * e0) - 0.25j * s2 * (ch * em / (lam + 1j) + sh * ep / (lam - 1j))
    d = 0.25 * s2 * (ch * em / (lam + 1j) - sh * ep / (lam - 1j) - lam * c / n)
    w_minus = ch - 0.25 * s2 / n
    w_plus = sh - 0.25 * s2 / n
    a = 0.25 * p.q + 0.25 * s2 * e0 + 0.5 * w_minus * em + 0.5 * w_plus * ep
    b_h = 0.5j * w_minus * em - 0.5j * w_plus * ep
    b_cl = (
        0.25j * s2 / n * (1 - 1j * lam * c) * e0
        + 1j * (ch * (0.25 * s2 / (1 - 1j * lam) + 0.5 * c) - 0.125 * c * s2 / n) * em
        + 1j * (sh * (0.25 * s2 / (1 + 1j * lam) - 0.5 * c) + 0.125 * c * s2 / n) * ep
    )
    return UnresolvedCorrelators(tau, a, b_cl, b_h, c_clh, c_hh, d)


def unresolved_ode_rhs(config: DrivenConfig, state: UnresolvedCorrelators) -> UnresolvedCorrelators:
    p = _shape(config)
    w, g = config.Omega, config.Gamma
    s = state
    return UnresolvedCorrelators(
        tau=s.tau,
        A=w * s.B_h - g * (s.A - 0.25 * p.q),
        B_cl=w * (s.C_clh - p.cos * s.A) - g * s.B_cl,
        B_h=w * (s.C_hh - s.A) - g * (s.B_h - 0.25 * p.k),
        C_clh=w * s.D - g * (s.C_clh - 0.25 * p.cos),
        C_hh=-g * (s.C_hh - 0.25 * p.cos**2),
        D=w * (p.cos * s.C_hh - s.C_clh) - g * s.D,
    )


def combined_unresolved(config: DrivenConfig, tau) -> np.ndarray:
    """Closed form of ``A(tau) + i B_cl(tau)`` grouped by exponential."""
    tau = _tau(tau)
    p = _shape(config)
    e0, em, ep = _exponentials(config, tau)
    pre = 0.25 * p.k
    return (
        0.25 * p.q
        + pre * (p.lam + 1j * p.cos) * e0
        + pre * (p.lam - 1j * p.cos2_half) * em
        + pre * (p.lam + 1j * p.sin2_half) * ep
    )


# -- resolved set -----------------------------------------------------------


def resolved_initial(config: DrivenConfig) -> ResolvedCorrelators:
    p = _shape(config)
    e = 0.25 * p.cos * p.lam * p.lam * p.sin2 / p.norm
    return ResolvedCorrelators(
        tau=np.float64(0.0),
        C_clcl=np.complex128(0.25),
        C_hcl=np.complex128(0.25 * p.cos + 0.25j * p.k),
        E_R=np.complex128(-1j * e),
        E_L=np.complex128(1j * e),
        F=np.complex128(0.25 * p.sin2),
        Fbar=np.complex128(0.25j * p.sin2 / p.norm),
    )


def resolved_stationary(config: DrivenConfig) -> ResolvedCorrelators:
    p = _shape(config)
    return ResolvedCorrelators(
        tau=np.float64(np.inf),
        C_clcl=np.complex128(0.25 * p.q**2),
        C_hcl=np.complex128(0.25 * p.cos * p.q),
        E_R=np.complex128(-0.25 * p.k * p.q),
        E_L=np.complex128(-0.25 * p.k * p.q),
        F=np.complex128(0.25 * p.k**2),
        Fbar=np.complex128(-0.25 * p.lam * p.cos * p.sin2 / p.norm),
    )


def resolved_closed_form(config: DrivenConfig, tau) -> ResolvedCorrelators:
    tau = _tau(tau)
    p = _shape(config)
    e0, em, ep = _exponentials(config, tau)
    lam, c, s2, n, q, k = p.lam, p.cos, p.sin2, p.norm, p.q, p.k

    c_hcl = 0.25 * c * q + 0.25 * k * (lam * c + 1j) * e0
    osc_m = k + lam * (1 + c) - 1j * (c + q)
    osc_p = k + lam * (1 - c) - 1j * (c - q)
    c_clcl = 0.25 * q * q + 0.25 * c * k * (lam * c + 1j) * e0 + 0.125 * k * (osc_m * em + osc_p * ep)
    e_l = -0.25 * k * q + 0.125j * k * (osc_m * em - osc_p * ep)
    fbar = 0.25 * s2 / n * (-lam * c + (1j + lam * c) * e0)
    f_m = 1 + c + 1j * lam / (1 - 1j * lam) * s2 / n
    f_p = 1 - c - 1j * lam / (1 + 1j * lam) * s2 / n
    f = 0.25 * k * k + 0.125 * s2 * (f_m * em + f_p * ep)
    e_r = -0.25 * k * q + 0.25 * c * s2 / n * (1j + lam * c) * e0 - 0.125j * s2 * (f_m * em - f_p * ep)
    return ResolvedCorrelators(tau, c_clcl, c_hcl, e_r, e_l, f, fbar)


def resolved_ode_rhs(config: DrivenConfig, state: ResolvedCorrelators) -> ResolvedCorrelators:
    p = _shape(config)
    w, g = config.Omega, config.Gamma
    s = state
    return ResolvedCorrelators(
        tau=s.tau,
        C_clcl=w * s.E_L - g * (s.C_clcl - 0.25 * p.q),
        C_hcl=-g * (s.C_hcl - 0.25 * p.cos * p.q),
        E_R=w * s.F - g * (s.E_R + 0.25 * p.k),
        E_L=w * (p.cos * s.C_hcl - s.C_clcl) - g * s.E_L,
        F=w * (p.cos * s.Fbar - s.E_R) - g * s.F,
        Fbar=-g * (s.Fbar + 0.25 * p.cos * p.k),
    )


# -- a, b, c ----------------------------------------------------------------


def abc_amplitudes(config: DrivenConfig) -> np.ndarray:
    """Amplitudes of ``a, b, c`` on ``(1, e^{-Gamma tau}, e^{-(Gamma - i Omega) tau}, e^{-(Gamma + i Omega) tau})``.

    Returns a complex array of shape ``(3, 4)``; rows are ``a, b, c``.
    """
    p = _shape(config)
    lam, c, n, q, k = p.lam, p.cos, p.norm, p.q, p.k
    rot = (1 + 1j * lam) / (1 - 1j * lam)
    return np.array([
        [0.25 * (1 - lam * lam) * q / n, -0.25 * lam * lam * p.sin2 / n,
         -0.125j * k * rot, 0.125j * k / rot],
        [0.5 * lam * lam * c * q / n, 0.25 * k * (1j + 2 * lam * c),
         0.125 * k * (2 * lam - 2 * lam * c / (1 - 1j * lam) - 1j),
         -0.125 * k * (2 * lam + 2 * lam * c / (1 + 1j * lam) + 1j)],
        [-0.5 * lam * q / n, -0.25 * k, 0.125 * k * rot, 0.125 * k / rot],
    ], dtype=complex)


def abc_coefficients(config: DrivenConfig, tau) -> AbcCoefficients:
    """Components of ``A_R + A_L - n_cl A - i B_g`` along ``n_cl, n_h, n_cl x n_h``."""
    tau = _tau(tau)
    amp = abc_amplitudes(config)
    basis = np.stack((np.ones_like(tau), *_exponentials(config, tau)), axis=-1)
    a, b, c = (basis @ amp[j] for j in range(3))
    return AbcCoefficients(tau, a, b, c)


# -- linear systems for the RK4 reference ------------------------------------


def _affine(rhs, config, cls, dim) -> tuple[np.ndarray, np.ndarray]:
    zero = cls.from_vector(0.0, np.zeros(dim, dtype=complex))
    b = rhs(config, zero).as_vector()
    m = np.empty((dim, dim), dtype=complex)
    for j in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[j] = 1.0
        m[:, j] = rhs(config, cls.from_vector(0.0, e)).as_vector() - b
    return m, b


def unresolved_system(config: DrivenConfig) -> LinearSystem:
    """Unresolved ODE system with its printed initial values, as a :class:`LinearSystem`."""
    m, b = _affine(unresolved_ode_rhs, config, UnresolvedCorrelators, 6)
    return LinearSystem(m, b, unresolved_initial(config).as_vector())


def resolved_system(config: DrivenConfig) -> LinearSystem:
    m, b = _affine(resolved_ode_rhs, config, ResolvedCorrelators, 6)
    return LinearSystem(m, b, resolved_initial(config).as_vector())
