"""Closed-form model of the pumped two-level atom.

Between jumps the atomic angle drifts at omega/2; jumps reset it to zero.
Two jump semantics coexist: resets at rate gamma*sin^2(theta) with
probabilistic photon tagging ("literal"), or resets only at emissions with
rate gamma*sin^4(theta) ("emission only").  Everything here is a pure
function of its arguments.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

HALF_PI = math.pi / 2.0


class JumpSemantics(enum.Enum):
    """Which events reset the trajectory to the ground state."""

    KOLMOGOROV_LITERAL = "literal"
    EMISSION_ONLY = "emission"


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters: Rabi frequency, emission coefficient, initial angle."""

    omega: float
    gamma: float
    theta0: float = 0.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.omega < 0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")
        if not (-HALF_PI <= self.theta0 < HALF_PI):
            raise ValueError(
                f"theta0 must lie in [-pi/2, pi/2), got {self.theta0}"
            )


def reduce_angle(theta):
    """Reduce an angle modulo pi into the principal cell [-pi/2, pi/2)."""
    return (theta + HALF_PI) % math.pi - HALF_PI


def drift_angle(t, params: ModelParams, theta_start):
    """Angle after drifting for time t >= 0 from theta_start (no jumps)."""
    if np.any(np.asarray(t) < 0):
        raise ValueError("t must be >= 0")
    return reduce_angle(theta_start + 0.5 * params.omega * t)


def jump_hazard(theta, gamma):
    """Reset rate gamma*sin^2(theta); lies in [0, gamma]."""
    return gamma * np.sin(theta) ** 2


def emission_intensity(theta, gamma):
    """Photo-emission rate gamma*sin^4(theta) = jump_hazard * sin^2(theta)."""
    return gamma * np.sin(theta) ** 4


def intensity_integral(tau, omega):
    """Closed form of int_0^tau sin^4(omega*t/2) dt.

    sin^4(x) = 3/8 - cos(2x)/2 + cos(4x)/8 gives the antiderivative
    3 tau/8 - sin(omega tau)/(2 omega) + sin(2 omega tau)/(16 omega).
    """
    tau = np.asarray(tau, dtype=float)
    return (
        3.0 * tau / 8.0
        - np.sin(omega * tau) / (2.0 * omega)
        + np.sin(2.0 * omega * tau) / (16.0 * omega)
    )


def waiting_time_density(tau, params: ModelParams):
    """Inter-emission density gamma*sin^4(omega tau/2)*exp(-gamma*I(tau))."""
    if params.omega == 0:
        raise ValueError(
            "waiting_time_density requires omega > 0; "
            "use the no_pump_* functions for an unpumped atom"
        )
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise ValueError("tau must be >= 0")
    lam = emission_intensity(0.5 * params.omega * tau, params.gamma)
    return lam * np.exp(-params.gamma * intensity_integral(tau, params.omega))


def waiting_time_cdf(tau, params: ModelParams):
    """P(interval <= tau) = 1 - exp(-gamma*I(tau))."""
    if params.omega == 0:
        raise ValueError("waiting_time_cdf requires omega > 0")
    tau = np.asarray(tau, dtype=float)
    return 1.0 - np.exp(-params.gamma * intensity_integral(tau, params.omega))


def waiting_time_tail_cutoff(params: ModelParams, mass_tol=1e-12):
    """Time T such that the density mass beyond T is below mass_tol.

    Uses the secular bound gamma*I(tau) >= 3*gamma*tau/8 - gamma/omega.
    """
    return (8.0 / (3.0 * params.gamma)) * (
        -math.log(mass_tol) + params.gamma / params.omega
    )


def waiting_time_normalization(params: ModelParams):
    """Adaptive quadrature of the waiting-time density over [0, inf)."""
    T = waiting_time_tail_cutoff(params)
    n_periods = max(1, int(params.omega * T / (2.0 * math.pi)) + 1)
    val, _ = quad(
        lambda t: float(waiting_time_density(t, params)),
        0.0,
        T,
        limit=max(200, 10 * n_periods),
    )
    return val


def mean_waiting_time(params: ModelParams):
    """Mean inter-emission delay, by adaptive quadrature of tau*density."""
    T = waiting_time_tail_cutoff(params)
    n_periods = max(1, int(params.omega * T / (2.0 * math.pi)) + 1)
    val, _ = quad(
        lambda t: t * float(waiting_time_density(t, params)),
        0.0,
        T,
        limit=max(200, 10 * n_periods),
    )
    return val


def no_pump_excited_population(t, params: ModelParams):
    """Excited population sin^2(theta0)*exp(-gamma*sin^2(theta0)*t) at omega=0."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    s2 = math.sin(params.theta0) ** 2
    return s2 * np.exp(-params.gamma * s2 * t)


def no_pump_emission_probability(theta0):
    """Probability that an unpumped atom ever emits a photon: sin^2(theta0)."""
    return math.sin(theta0) ** 2


def no_pump_final_state(theta0):
    """Amplitude moduli (one-photon, zero-photon) of the asymptotic state."""
    return math.sin(theta0), math.cos(theta0)


def weak_field_delay_scale(params: ModelParams):
    """Weak-field mean-delay scale (omega^4 * gamma)^(-1/5)."""
    if params.omega <= 0:
        raise ValueError("weak_field_delay_scale requires omega > 0")
    return (params.omega**4 * params.gamma) ** (-0.2)


def dressed_delay_scale(params: ModelParams):
    """Dressed-atom delay scale gamma/omega^2, for comparison output."""
    if params.omega <= 0:
        raise ValueError("dressed_delay_scale requires omega > 0")
    return params.gamma / params.omega**2
