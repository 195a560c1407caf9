"""Fixed-step RK4 integration of small linear ODE systems.

Serves as the independent reference against which every closed-form solution
in the package is checked.  Systems have the form ``dX/dtau = M X + b`` with
constant ``M`` and ``b``; leading batch dimensions are supported so that many
parameter sets can be integrated in one pass.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, StepTooLarge

MAX_DIMENSION = 12


@dataclass(frozen=True)
class LinearSystem:
    """``dX/dtau = matrix @ X + inhomogeneity``, ``X(0) = initial``.

    Shapes: ``matrix (..., d, d)``, ``inhomogeneity (..., d)``, ``initial (..., d)``.
    """

    matrix: np.ndarray
    inhomogeneity: np.ndarray
    initial: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = m.shape[-1]
        if m.ndim < 2 or m.shape[-2] != d:
            raise InvalidParameter(f"matrix must be square, got shape {m.shape}")
        if d > MAX_DIMENSION:
            raise InvalidParameter(f"dimension {d} exceeds {MAX_DIMENSION}")
        b = np.broadcast_to(np.asarray(self.inhomogeneity, dtype=complex), m.shape[:-1])
        x0 = np.broadcast_to(np.asarray(self.initial, dtype=complex), m.shape[:-1])
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "inhomogeneity", b)
        object.__setattr__(self, "initial", x0)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[-1]

    @property
    def batch_shape(self) -> tuple:
        return self.matrix.shape[:-2]

    def rhs(self, x) -> np.ndarray:
        return np.einsum("...ij,...j->...i", self.matrix, x) + self.inhomogeneity

    def row_sum_norm(self) -> np.ndarray:
        return np.abs(self.matrix).sum(axis=-1).max(axis=-1)


def _rk4_step_map(system: LinearSystem, h) -> tuple[np.ndarray, np.ndarray]:
    """One classical RK4 step written as the affine map ``X -> P X + q``.

    The four RK4 stages are evaluated on the augmented homogeneous system
    ``Y' = [[M, b], [0, 0]] Y`` starting from the identity, which for a linear
    autonomous system reproduces stage-by-stage RK4 exactly.
    """
    m, b = system.matrix, system.inhomogeneity
    d = system.dimension
    aug = np.zeros(system.batch_shape + (d + 1, d + 1), dtype=complex)
    aug[..., :d, :d] = m
    aug[..., :d, d] = b
    h = np.asarray(h, dtype=float)[..., None, None]
    y = np.broadcast_to(np.eye(d + 1, dtype=complex), aug.shape)
    k1 = aug @ y
    k2 = aug @ (y + 0.5 * h * k1)
    k3 = aug @ (y + 0.5 * h * k2)
    k4 = aug @ (y + h * k3)
    step = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return step[..., :d, :d], step[..., :d, d]


def integrate_rk4(system: LinearSystem, tau_max, step, record_every: int = 1):
    """Integrate ``system`` from 0 to ``tau_max`` with fixed RK4 steps.

    ``tau_max`` and ``step`` may be scalars or arrays over the batch.  All
    batch members take the same number of steps ``N = ceil(max(tau_max/step))``
    so the effective step ``tau_max/N`` never exceeds the requested one.

    Returns
    -------
    taus : ndarray, shape (n_out,) + batch_shape
    states : ndarray, shape (n_out,) + batch_shape + (d,)

    Raises
    ------
    StepTooLarge
        If ``step * ||M||_row > 0.1`` for any batch member.
    """
    tau_max = np.broadcast_to(np.asarray(tau_max, dtype=float), system.batch_shape)
    step = np.broadcast_to(np.asarray(step, dtype=float), system.batch_shape)
    if np.any(step <= 0) or np.any(tau_max < step):
        raise InvalidParameter("need step > 0 and tau_max >= step")
    bound = system.row_sum_norm()
    if np.any(step * bound > 0.1):
        raise StepTooLarge(
            f"step too large: max step*||M|| = {float(np.max(step * bound)):.3g} > 0.1"
        )
    n_steps = int(np.ceil(np.max(tau_max / step) - 1e-9))
    h = tau_max / n_steps
    p, q = _rk4_step_map(system, h)
    x = system.initial.copy()
    if not (system.matrix.imag.any() or system.inhomogeneity.imag.any() or x.imag.any()):
        # real systems stay real: same result, half the arithmetic
        p, q, x = p.real.copy(), q.real.copy(), x.real.copy()
    # batch axis last keeps the per-step contraction contiguous
    batch, d = system.batch_shape, system.dimension
    p = np.ascontiguousarray(np.moveaxis(p.reshape((-1, d, d)), 0, -1))
    q = np.ascontiguousarray(q.reshape((-1, d)).T)
    x = np.ascontiguousarray(x.reshape((-1, d)).T)
    taus = [np.zeros_like(h)]
    states = [x.T.reshape(batch + (d,))]
    for k in range(1, n_steps + 1):
        x = np.einsum("ijb,jb->ib", p, x) + q
        if k % record_every == 0 or k == n_steps:
            taus.append(k * h)
            states.append(x.T.reshape(batch + (d,)))
    return np.array(taus), np.array(states)


def richardson_check(system: LinearSystem, tau, step=None) -> np.ndarray:
    """Error estimate of the step-``h`` RK4 solution at ``tau``.

    Integrates with ``h`` and ``h/2`` and returns ``16/15 |X_h - X_{h/2}|``
    (max over components), the fourth-order Richardson estimate.
    """
    if step is None:
        step = 0.01 / np.maximum(system.row_sum_norm(), 1e-300)
        step = np.minimum(step, np.asarray(tau, dtype=float))
    step = np.broadcast_to(np.asarray(step, dtype=float), system.batch_shape)
    tau = np.broadcast_to(np.asarray(tau, dtype=float), system.batch_shape)
    n = np.ceil(np.max(tau / step) - 1e-9)
    h = tau / n
    _, coarse = integrate_rk4(system, tau, h, record_every=10**12)
    _, fine = integrate_rk4(system, tau, h / 2, record_every=10**12)
    return 16.0 / 15.0 * np.abs(coarse[-1] - fine[-1]).max(axis=-1)


def default_step(Gamma, Omega) -> np.ndarray:
    """``min(1/Gamma, 1/Omega) / 200`` with zero rates ignored."""
    Gamma = np.asarray(Gamma, dtype=float)
    Omega = np.asarray(Omega, dtype=float)
    rate = np.maximum(Gamma, Omega)
    return 1.0 / (200.0 * rate)
