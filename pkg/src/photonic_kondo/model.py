"""Static model parameters of the photonic Kondo model.

Covers the mapping from a far-detuned Lambda emitter onto the exchange
coupling J, the scattering phase, Jones calculus for the coherent drive and
the derived precession/decay parameters of the local pseudo-spin.

Pauli convention (used everywhere in the package): basis ordering (+, -),
sigma_z diagonal, sigma_y = ((0, -i), (i, 0)).  The phase velocity is unity
and all rates share one frequency unit.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AnisotropicCoupling,
    InvalidParameter,
    NegativeCoupling,
    NonPositiveOmega3,
    NonUnitVector,
    ZeroEffectiveField,
    ZeroField,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

E_X = np.array([1.0, 0.0, 0.0])
E_Y = np.array([0.0, 1.0, 0.0])
E_Z = np.array([0.0, 0.0, 1.0])

UNIT_TOL = 1e-12


def _frozen(v) -> np.ndarray:
    a = np.array(v, dtype=float)
    a.setflags(write=False)
    return a


def as_unit_vector(v, name="vector", tol=UNIT_TOL, error=NonUnitVector) -> np.ndarray:
    """Return ``v`` as a float 3-array after checking ``|v| = 1`` within ``tol``."""
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise error(f"{name} must be a 3-vector, got shape {a.shape}")
    norm = np.linalg.norm(a)
    if not np.isfinite(norm) or abs(norm - 1.0) > tol:
        raise error(f"{name} must be a unit vector, |{name}| = {float(norm)!r}")
    return a


def pauli_bilinear(u, v=None) -> np.ndarray:
    """Real 3-vector ``sum_{s,s'} conj(u_s) sigma_{s s'} v_{s'}`` (``v`` defaults to ``u``)."""
    u = np.asarray(u, dtype=complex)
    v = u if v is None else np.asarray(v, dtype=complex)
    out = np.einsum("s,ist,t->i", u.conj(), PAULI, v)
    return out.real


@dataclass(frozen=True)
class EmitterSpec:
    """Lambda emitter: couplings g_+, g_-, upper level omega3, two-photon detuning."""

    g_plus: float
    g_minus: float
    omega3: float
    delta: float = 0.0

    def __post_init__(self):
        if not self.omega3 > 0:
            raise NonPositiveOmega3(f"omega3 must be positive, got {self.omega3!r}")
        if not self.far_detuned:
            warnings.warn(
                f"|delta| = {abs(self.delta)} is not small against omega3 = {self.omega3}; "
                "the effective exchange model may be inaccurate",
                stacklevel=2,
            )

    @property
    def far_detuned(self) -> bool:
        return abs(self.delta) < 0.1 * self.omega3


@dataclass(frozen=True)
class KondoCoupling:
    J: float
    J_par: float
    J_perp: float
    anisotropic: bool

    def require_isotropic(self) -> float:
        if self.anisotropic:
            raise AnisotropicCoupling(
                f"anisotropic couplings J_par={self.J_par}, J_perp={self.J_perp} are not supported "
                "by the dynamics routines"
            )
        return self.J


def derive_kondo_coupling(spec: EmitterSpec) -> KondoCoupling:
    """Exchange couplings of the effective Kondo model.

    ``J = 4 g_+ g_- / omega3`` (equal to ``4 g^2 / omega3`` in the isotropic
    case), together with the anisotropic pair ``J_par = 2 (g_+^2 + g_-^2) / omega3``
    and ``J_perp = 4 g_+ g_- / omega3``.
    """
    if not spec.omega3 > 0:
        raise NonPositiveOmega3(f"omega3 must be positive, got {spec.omega3!r}")
    gp, gm, w3 = float(spec.g_plus), float(spec.g_minus), float(spec.omega3)
    j_perp = 4.0 * gp * gm / w3
    j_par = 2.0 * (gp * gp + gm * gm) / w3
    return KondoCoupling(J=j_perp, J_par=j_par, J_perp=j_perp, anisotropic=gp != gm)


@dataclass(frozen=True)
class ScatteringPhase:
    J: float
    phi: float

    @property
    def unitary(self) -> complex:
        return complex(np.exp(1j * self.phi))


def scattering_phase(J: float) -> ScatteringPhase:
    """Singlet scattering phase ``phi = 2 arctan(pi J)`` in ``[0, pi)``."""
    if J < 0:
        raise NegativeCoupling(f"exchange coupling must be non-negative, got {J!r}")
    return ScatteringPhase(J=float(J), phi=2.0 * float(np.arctan(np.pi * J)))


@dataclass(frozen=True)
class JonesPolarization:
    """Coherent drive amplitudes ``alpha_+``, ``alpha_-`` of a pulse of length ``length``."""

    alpha_plus: complex
    alpha_minus: complex
    length: float = 1.0

    def __post_init__(self):
        if not self.length > 0:
            raise InvalidParameter(f"pulse length must be positive, got {self.length!r}")

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([self.alpha_plus, self.alpha_minus], dtype=complex)

    @property
    def f(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) / self.length)


@dataclass(frozen=True)
class JonesVector:
    f: float
    s_cl: np.ndarray
    n_cl: np.ndarray


def jones_from_amplitudes(pol: JonesPolarization) -> JonesVector:
    """Photon density, classical Jones vector and its unit direction.

    Raises
    ------
    ZeroField
        If both amplitudes vanish; ``n_cl`` is then undefined.
    """
    f = pol.f
    s_cl = pauli_bilinear(pol.amplitudes) / (2.0 * pol.length)
    if f == 0.0:
        raise ZeroField("photon density is zero; supply n_cl directly")
    return JonesVector(f=f, s_cl=_frozen(s_cl), n_cl=_frozen(2.0 * s_cl / f))


def amplitudes_for(n_cl, f: float, length: float = 1.0) -> JonesPolarization:
    """Inverse of :func:`jones_from_amplitudes` with ``alpha_+`` chosen real."""
    n = as_unit_vector(n_cl, "n_cl")
    theta = np.arccos(np.clip(n[2], -1.0, 1.0))
    azim = np.arctan2(n[1], n[0])
    amp = np.sqrt(f * length)
    return JonesPolarization(
        alpha_plus=complex(amp * np.cos(theta / 2)),
        alpha_minus=complex(amp * np.sin(theta / 2) * np.exp(1j * azim)),
        length=length,
    )


@dataclass(frozen=True)
class KondoParams:
    J: float
    f: float
    delta: float = 0.0
    omega0: float = 1.0

    def __post_init__(self):
        if self.J < 0:
            raise NegativeCoupling(f"exchange coupling must be non-negative, got {self.J!r}")
        if self.f < 0:
            raise InvalidParameter(f"photon density must be non-negative, got {self.f!r}")
        if not self.omega0 > 0:
            raise InvalidParameter(f"carrier frequency must be positive, got {self.omega0!r}")


@dataclass(frozen=True)
class DrivenConfig:
    """Kondo parameters plus drive direction, with every derived quantity.

    Attributes
    ----------
    Omega0 : float
        Lamb shift ``pi J f cos^2(phi/2)`` of the Zeeman field along ``n_cl``.
    h_eff : ndarray
        Effective field ``Omega0 n_cl + delta e_z``.
    Omega, n_h : float, ndarray
        Magnitude and direction of ``h_eff``.
    Gamma : float
        Spin decay rate ``(pi/2) J f sin(phi)``.
    lam : float
        ``Omega / Gamma`` (``inf`` when ``Gamma = 0``).
    psi : float
        Angle between ``n_h`` and ``n_cl``.
    degenerate : bool
        True when ``h_eff = 0``; ``n_h`` then defaults to ``e_z``.
    """

    params: KondoParams
    n_cl: np.ndarray
    phase: ScatteringPhase
    Omega0: float
    h_eff: np.ndarray
    Omega: float
    Gamma: float
    n_h: np.ndarray
    lam: float
    psi: float
    degenerate: bool = field(default=False)

    @property
    def J(self) -> float:
        return self.params.J

    @property
    def f(self) -> float:
        return self.params.f

    @property
    def delta(self) -> float:
        return self.params.delta

    @property
    def omega0(self) -> float:
        return self.params.omega0

    @property
    def phi(self) -> float:
        return self.phase.phi

    @property
    def cos_psi(self) -> float:
        return float(np.cos(self.psi))

    @property
    def s_cl(self) -> np.ndarray:
        return 0.5 * self.f * self.n_cl

    def require_axis(self) -> None:
        """Raise :class:`ZeroEffectiveField` on configurations without a precession axis."""
        if self.degenerate:
            raise ZeroEffectiveField("effective field vanishes; precession axis undefined")

    def summary(self) -> dict:
        return {
            "J": self.J,
            "f": self.f,
            "delta": self.delta,
            "omega0": self.omega0,
            "phi": self.phi,
            "Omega0": self.Omega0,
            "Gamma": self.Gamma,
            "Omega": self.Omega,
            "lambda": self.lam,
            "psi": self.psi,
        }


def build_driven_config(params: KondoParams, n_cl) -> DrivenConfig:
    n_cl = as_unit_vector(n_cl, "n_cl")
    phase = scattering_phase(params.J)
    half = 0.5 * phase.phi
    omega0_shift = np.pi * params.J * params.f * np.cos(half) ** 2
    gamma = 0.5 * np.pi * params.J * params.f * np.sin(phase.phi)
    h_eff = omega0_shift * n_cl + params.delta * E_Z
    omega = float(np.linalg.norm(h_eff))
    scale = abs(omega0_shift) + abs(params.delta)
    degenerate = omega <= 1e-14 * scale or omega == 0.0
    if degenerate:
        omega = 0.0
        n_h = E_Z.copy()
    else:
        n_h = h_eff / omega
    # arctan2 keeps full precision near psi = 0 and psi = pi
    psi = float(np.arctan2(np.linalg.norm(np.cross(n_h, n_cl)), np.dot(n_h, n_cl)))
    lam = omega / gamma if gamma > 0 else np.inf
    return DrivenConfig(
        params=params,
        n_cl=_frozen(n_cl),
        phase=phase,
        Omega0=float(omega0_shift),
        h_eff=_frozen(h_eff),
        Omega=omega,
        Gamma=float(gamma),
        n_h=_frozen(n_h),
        lam=float(lam),
        psi=psi,
        degenerate=bool(degenerate),
    )


def config_from_lambda_psi(
    lam: float, psi: float, J: float = 0.1, Gamma: float = 1.0, omega0: float = 100.0
) -> DrivenConfig:
    """Driven configuration with prescribed ``lam = Omega/Gamma`` and angle ``psi``.

    The drive direction ``n_cl`` is placed in the x-z plane and the detuning is
    solved for so that the effective field makes the angle ``psi`` with it.
    Useful for sweeps over the dimensionless shape parameters.
    """
    if not (lam > 0 and 0.0 <= psi <= np.pi):
        raise InvalidParameter(f"need lam > 0 and psi in [0, pi], got {lam!r}, {psi!r}")
    if not J > 0:
        raise NegativeCoupling("J must be positive to set a finite decay rate")
    half = np.arctan(np.pi * J)
    f = Gamma / np.sin(half) ** 2
    omega_lamb = Gamma / (np.pi * J)
    omega = lam * Gamma
    # n_h is n_cl rotated by psi about e_y; require h_eff - Omega0 n_cl to lie along e_z.
    theta = np.arctan2(-omega * np.sin(psi), omega * np.cos(psi) - omega_lamb)
    n_cl = np.array([np.sin(theta), 0.0, np.cos(theta)])
    delta = omega * np.cos(theta + psi) - omega_lamb * np.cos(theta)
    return build_driven_config(KondoParams(J=J, f=f, delta=delta, omega0=omega0), n_cl)
