"""Two-level Lindblad baseline and the truncated-evolution delay function.

Basis ordering is (ground, excited).  The dissipator uses the lowering
operator in the trace-conserving standard form, with the rate fixed so the
excited population decays at exactly gamma when the drive is off.  Dropping
the gain (recycling) term gives a nonconservative evolution whose trace loss
rate, gamma*rho_ee, is the delay function: the density of the first emission
after a reset to the ground state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ModelParams
from .stats import DelayDistribution

MAX_RATE_DT = 0.1

_SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |g><e|
_N_EXCITED = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)


@dataclass
class DensityMatrix2:
    """2x2 Hermitian density matrix in the (ground, excited) basis."""

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        if not np.allclose(self.matrix, self.matrix.conj().T, atol=1e-10):
            raise ValueError("density matrix must be Hermitian")

    @classmethod
    def ground(cls):
        return cls(np.diag([1.0, 0.0]).astype(complex))

    @classmethod
    def excited(cls):
        return cls(np.diag([0.0, 1.0]).astype(complex))

    @property
    def rho_gg(self):
        return self.matrix[0, 0].real

    @property
    def rho_ee(self):
        return self.matrix[1, 1].real

    @property
    def rho_ge(self):
        return self.matrix[0, 1]

    @property
    def rho_eg(self):
        return self.matrix[1, 0]

    def trace(self):
        return float(self.matrix.trace().real)


def _hamiltonian(params: ModelParams):
    return 0.5 * params.omega * np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def _rhs(m, params: ModelParams, truncated: bool):
    h = _hamiltonian(params)
    out = -1j * (h @ m - m @ h)
    out -= 0.5 * params.gamma * (_N_EXCITED @ m + m @ _N_EXCITED)
    if not truncated:
        out += params.gamma * (_SIGMA_MINUS @ m @ _SIGMA_MINUS.conj().T)
    return out


def lindblad_rhs(
    rho: DensityMatrix2, params: ModelParams, truncated: bool = False
) -> DensityMatrix2:
    """Right-hand side of the (optionally truncated) master equation."""
    return DensityMatrix2(_rhs(rho.matrix, params, truncated))


def _rk4_step(m, dt, params, truncated):
    k1 = _rhs(m, params, truncated)
    k2 = _rhs(m + 0.5 * dt * k1, params, truncated)
    k3 = _rhs(m + 0.5 * dt * k2, params, truncated)
    k4 = _rhs(m + dt * k3, params, truncated)
    m = m + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return 0.5 * (m + m.conj().T)  # enforce Hermiticity against drift


def _check_dt(params: ModelParams, dt: float):
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if dt * max(params.omega, params.gamma) > MAX_RATE_DT * (1 + 1e-12):
        raise ValueError(
            f"dt={dt} violates dt*max(omega, gamma) <= {MAX_RATE_DT}"
        )


def integrate(
    rho0: DensityMatrix2,
    params: ModelParams,
    t_end: float,
    dt: float,
    truncated: bool = False,
):
    """Fixed-step RK4 evolution; returns (times, list of DensityMatrix2)."""
    _check_dt(params, dt)
    if t_end <= 0:
        raise ValueError("t_end must be > 0")
    n_steps = max(1, int(round(t_end / dt)))
    m = rho0.matrix.copy()
    times = np.arange(n_steps + 1) * (t_end / n_steps)
    states = [DensityMatrix2(m.copy())]
    h = t_end / n_steps
    for _ in range(n_steps):
        m = _rk4_step(m, h, params, truncated)
        states.append(DensityMatrix2(m.copy()))
    return times, states


def steady_state(params: ModelParams) -> DensityMatrix2:
    """Stationary state of the full evolution, from the linear system."""
    # unknowns: rho_gg, rho_ee, Re(rho_ge), Im(rho_ge)
    om, g = params.omega, params.gamma
    a = np.array(
        [
            [0.0, g, 0.0, -om],
            [0.0, -g, 0.0, om],
            [0.0, 0.0, -0.5 * g, 0.0],
            [0.5 * om, -0.5 * om, 0.0, -0.5 * g],
        ]
    )
    a = np.vstack([a, [1.0, 1.0, 0.0, 0.0]])
    b = np.array([0.0, 0.0, 0.0, 0.0, 1.0])
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    rho_ge = x[2] + 1j * x[3]
    return DensityMatrix2(
        np.array([[x[0], rho_ge], [np.conj(rho_ge), x[1]]], dtype=complex)
    )


def delay_function(params: ModelParams, tau_grid) -> DelayDistribution:
    """Delay function from the truncated evolution started in the ground state.

    Equal to -d/dtau Tr rho(tau) = gamma * rho_ee(tau), evaluated exactly
    along the integration rather than by numerical differentiation.
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if tau_grid.ndim != 1 or tau_grid.size < 2:
        raise ValueError("tau_grid must contain at least two points")
    if tau_grid[0] != 0.0 or np.any(np.diff(tau_grid) <= 0):
        raise ValueError("tau_grid must be increasing and start at 0")

    dt_max = MAX_RATE_DT / max(params.omega, params.gamma)
    m = DensityMatrix2.ground().matrix
    density = np.empty(tau_grid.size)
    density[0] = params.gamma * m[1, 1].real
    for i in range(1, tau_grid.size):
        span = tau_grid[i] - tau_grid[i - 1]
        n_sub = max(1, math.ceil(span / dt_max))
        h = span / n_sub
        for _ in range(n_sub):
            m = _rk4_step(m, h, params, truncated=True)
        if not np.isfinite(m).all():
            raise ArithmeticError(f"integrator failure at tau={tau_grid[i]}")
        density[i] = params.gamma * m[1, 1].real
    return DelayDistribution(tau_grid, np.maximum(density, 0.0), kind="baseline")
