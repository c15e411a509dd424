"""Semiclassical rate equation for the site populations.

    dn_A/dtau = -n_A P_AB(tau) + n_B P_BA(tau) = -dn_B/dtau

with the renormalized transition probabilities acting as time-dependent
rates per unit ``tau = |g| t``. Integrated with fixed-step classical RK4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StepTooLarge, WindowTooShort
from .model import ModelParams

__all__ = [
    "DEFAULT_STEP",
    "DEFAULT_TAU_END",
    "RatePopulations",
    "RateTrajectory",
    "equilibrium_stats",
    "integrate",
    "rate_rhs",
]

DEFAULT_STEP = 0.005
DEFAULT_TAU_END = 50.0
MIN_POINTS_PER_PERIOD = 50
MIN_WINDOW_PERIODS = 5


@dataclass(frozen=True)
class RatePopulations:
    n_A: float
    n_B: float
    tau: float = 0.0

    @property
    def total(self) -> float:
        return self.n_A + self.n_B


@dataclass(frozen=True, eq=False)
class RateTrajectory:
    tau: np.ndarray
    n_A: np.ndarray
    n_B: np.ndarray
    step: float
    params: ModelParams

    def __len__(self):
        return self.tau.shape[0]

    @property
    def samples(self) -> list[RatePopulations]:
        return [RatePopulations(float(a), float(b), float(t)) for t, a, b in zip(self.tau, self.n_A, self.n_B)]

    def conservation_drift(self) -> float:
        total = self.n_A[0] + self.n_B[0]
        return float(np.max(np.abs(self.n_A + self.n_B - total)))


def period_tau(params: ModelParams) -> float:
    """Oscillation period of the transition probabilities in units of tau."""
    return math.pi * abs(params.g) / params.omega


def _flux(n_a: float, n_b: float, beta: float, phase: float) -> float:
    # Scalar closed forms; math is much faster than numpy for RK4 stages.
    s2 = math.sin(phase) ** 2
    c2 = 1.0 - s2
    p_ab = beta * s2 / (c2 + beta * s2)
    p_ba = s2 / (beta * c2 + s2)
    return -n_a * p_ab + n_b * p_ba


def rate_rhs(pop: RatePopulations, params: ModelParams, tau: float) -> tuple[float, float]:
    """``(dn_A/dtau, dn_B/dtau)`` with probabilities taken at ``t = tau / |g|``."""
    phase = params.omega * tau / abs(params.g)
    flux = _flux(pop.n_A, pop.n_B, params.beta, phase)
    return flux, -flux


def integrate(
    initial: RatePopulations,
    params: ModelParams,
    tau_end: float = DEFAULT_TAU_END,
    step: float = DEFAULT_STEP,
) -> RateTrajectory:
    """Fixed-step RK4 from ``initial.tau`` to ``tau_end``.

    Sample ``k`` sits at ``initial.tau + k * step``; if the span is not a whole
    number of steps the last sample lands just past ``tau_end``.

    Raises
    ------
    StepTooLarge
        If ``step`` exceeds 1/50 of the probability oscillation period.
    """
    if not step > 0.0:
        raise DomainError(f"step must be positive, got {step!r}")
    if not tau_end > initial.tau:
        raise DomainError(f"tau_end={tau_end!r} must exceed the initial tau={initial.tau!r}")
    limit = period_tau(params) / MIN_POINTS_PER_PERIOD
    if step > limit:
        raise StepTooLarge(
            f"step={step!r} exceeds period/{MIN_POINTS_PER_PERIOD} = {limit:.6g} for beta={params.beta:.6g}"
        )
    n_steps = math.ceil((tau_end - initial.tau) / step - 1e-9)
    tau0 = float(initial.tau)
    taus = tau0 + step * np.arange(n_steps + 1)

    beta = params.beta
    rate = params.omega / abs(params.g)  # d(phase)/d(tau)
    n_a = np.empty(n_steps + 1)
    n_b = np.empty(n_steps + 1)
    a, b = float(initial.n_A), float(initial.n_B)
    n_a[0], n_b[0] = a, b
    half = 0.5 * step
    for k in range(n_steps):
        tk = tau0 + k * step
        p0, p1, p2 = rate * tk, rate * (tk + half), rate * (tk + step)
        k1 = _flux(a, b, beta, p0)
        k2 = _flux(a + half * k1, b - half * k1, beta, p1)
        k3 = _flux(a + half * k2, b - half * k2, beta, p1)
        k4 = _flux(a + step * k3, b - step * k3, beta, p2)
        delta = step * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        a, b = a + delta, b - delta
        n_a[k + 1], n_b[k + 1] = a, b
    return RateTrajectory(taus, n_a, n_b, float(step), params)


def equilibrium_stats(traj: RateTrajectory, tau_from: float) -> tuple[float, float, float]:
    """Window means of ``n_A`` and ``n_B`` and the peak-to-peak swing of ``n_A``.

    The window ``[tau_from, end]`` must span at least five oscillation periods.
    """
    end = float(traj.tau[-1])
    if tau_from < traj.tau[0] or tau_from >= end:
        raise WindowTooShort(f"tau_from={tau_from!r} lies outside the trajectory [{traj.tau[0]}, {end}]")
    span = period_tau(traj.params)
    if end - tau_from < MIN_WINDOW_PERIODS * span - 1e-12:
        raise WindowTooShort(
            f"window [{tau_from}, {end}] covers {(end - tau_from) / span:.2f} periods; "
            f"need at least {MIN_WINDOW_PERIODS}"
        )
    mask = traj.tau >= tau_from
    window_a = traj.n_A[mask]
    return float(np.mean(window_a)), float(np.mean(traj.n_B[mask])), float(np.ptp(window_a))
