"""Exact dynamics of the local pseudo-spin and the purity of its state."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, NoDissipation
from .model import DrivenConfig

NORM_TOL = 1e-12


def _check_bloch(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.shape != (3,):
        raise InvalidParameter(f"Bloch vector must have shape (3,), got {s.shape}")
    if np.linalg.norm(s) > 0.5 + NORM_TOL:
        raise InvalidParameter(f"|s| = {np.linalg.norm(s)} exceeds 1/2")
    return s


def require_dissipation(config: DrivenConfig) -> None:
    if not config.Gamma > 0:
        raise NoDissipation("decay rate Gamma vanishes; no unique stationary state")


def bloch_rhs(config: DrivenConfig, s) -> np.ndarray:
    """Right-hand side ``h_eff x s - Gamma (s - n_cl/2)`` of the spin equation of motion."""
    s = np.asarray(s, dtype=float)
    return np.cross(config.h_eff, s) - config.Gamma * (s - 0.5 * config.n_cl)


def relax_precess(v0, target, n_h, Omega: float, Gamma: float, t) -> np.ndarray:
    """Solution of ``dv/dt = Omega n_h x v - Gamma (v - target)`` with ``v(0) = v0``.

    Shared propagator for the Bloch vector and the second-order auxiliary
    vectors.  The projector onto ``n_h`` is applied as ``n_h (n_h . d)``.
    ``t`` may be a scalar or an array; the result then has shape ``t.shape + (3,)``.
    """
    t = np.asarray(t, dtype=float)
    d = np.asarray(v0, dtype=float) - target
    along = n_h * np.dot(n_h, d)
    perp = d - along
    twist = np.cross(n_h, d)
    decay = np.exp(-Gamma * t)[..., None]
    wt = (Omega * t)[..., None]
    out = target + decay * (along + perp * np.cos(wt) + twist * np.sin(wt))
    # exact identity at t = 0
    return np.where(t[..., None] == 0.0, np.asarray(v0, dtype=float), out)


def stationary_bloch(config: DrivenConfig) -> np.ndarray:
    """Stationary Bloch vector ``[n_cl + lam n_h x n_cl + lam^2 cos(psi) n_h] / (2 (1 + lam^2))``."""
    require_dissipation(config)
    lam = config.lam
    n_cl, n_h = config.n_cl, config.n_h
    num = n_cl + lam * np.cross(n_h, n_cl) + lam**2 * config.cos_psi * n_h
    return num / (2.0 * (1.0 + lam**2))


def bloch_evolve(config: DrivenConfig, s0, t) -> np.ndarray:
    """Closed-form ``<S(t)>`` from the initial value ``s0``.

    Without dissipation (``Gamma = 0``) the motion is pure precession about
    ``n_h``; with a vanishing effective field the rotating terms collapse.
    """
    s0 = _check_bloch(s0)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0) or not np.all(np.isfinite(t_arr)):
        raise InvalidParameter("evolution time must be finite and non-negative")
    target = stationary_bloch(config) if config.Gamma > 0 else np.zeros(3)
    return relax_precess(s0, target, config.n_h, config.Omega, config.Gamma, t_arr)


def purity(s) -> float:
    """``tr rho^2 = (1 + 4 |s|^2) / 2`` of the spin state with Bloch vector ``s``."""
    s = np.asarray(s, dtype=float)
    return 0.5 * (1.0 + 4.0 * np.sum(s * s, axis=-1))


def stationary_purity(config: DrivenConfig) -> float:
    require_dissipation(config)
    lam2 = config.lam**2
    return (1.0 + 0.25 * lam2 * (3.0 + np.cos(2.0 * config.psi))) / (1.0 + lam2)


def stationary_impurity(config: DrivenConfig) -> float:
    """``1 - gamma_st = lam^2 sin^2(psi) / (2 (1 + lam^2))`` without cancellation."""
    require_dissipation(config)
    lam2 = config.lam**2
    return float(lam2 * np.sin(config.psi) ** 2 / (2.0 * (1.0 + lam2)))


@dataclass(frozen=True)
class BlochTrajectory:
    times: np.ndarray
    states: np.ndarray
    purities: np.ndarray


def evolve_trajectory(config: DrivenConfig, s0, t_max: float, n_steps: int) -> BlochTrajectory:
    """Sample the closed-form solution on ``n_steps`` uniform times in ``[0, t_max]``."""
    if not t_max > 0 or n_steps < 2:
        raise InvalidParameter("need t_max > 0 and n_steps >= 2")
    times = np.linspace(0.0, t_max, n_steps)
    states = bloch_evolve(config, s0, times)
    return BlochTrajectory(times=times, states=states, purities=purity(states))
