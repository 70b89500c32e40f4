"""Counter-rotating hybridized rotating-wave (CHRW) closed forms.

A unitary transformation with a self-consistently chosen rotation fraction xi
maps the strongly driven qubit onto an effective rotating-frame problem that
stays accurate well beyond the ordinary RWA.  This module solves the xi
self-consistency equation, assembles the derived frequencies and angles, and
builds the closed-form one-period propagator, transition probability, and the
idle-time-extended pulse schedule propagator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import DomainError, RootNotFoundError, bessel_j
from .propagator import DriveParams

__all__ = [
    "ChrwSolution",
    "PulseSchedule",
    "solve_xi",
    "chrw_solution",
    "solution_with_xi",
    "u_period",
    "p01",
    "u_schedule",
]


@dataclass(frozen=True)
class ChrwSolution:
    """Derived CHRW quantities for one DriveParams point.

    a = xi*A/omega is the Bessel argument; delta_tilde = delta*J0(a) the
    renormalized gap; a_tilde = A(1-xi) the residual drive; delta_small_tilde
    the detuning delta_tilde - omega; omega_r the generalized Rabi frequency;
    alpha = pi*omega_r/omega; theta_tilde = theta - a.
    """

    xi: float
    a: float
    delta_tilde: float
    a_tilde: float
    delta_small_tilde: float
    theta: float
    omega_r: float
    alpha: float
    theta_tilde: float


@dataclass(frozen=True)
class PulseSchedule:
    """Idle time before the single-period drive and idle time after it."""

    t_idle_before: float
    t_idle_after: float
    drive: DriveParams

    def __post_init__(self) -> None:
        if self.t_idle_before < 0.0 or self.t_idle_after < 0.0:
            raise DomainError("idle times must be non-negative")

    @property
    def tau_plus(self) -> float:
        return 0.5 * (self.t_idle_before + self.t_idle_after) * self.drive.delta

    @property
    def tau_minus(self) -> float:
        return 0.5 * (self.t_idle_after - self.t_idle_before) * self.drive.delta


def _xi_residual(xi: float, delta: float, amplitude: float, omega: float) -> float:
    return amplitude * (1.0 - xi) - 2.0 * delta * bessel_j(1, xi * amplitude / omega)


def _xi_residual_deriv(xi: float, delta: float, amplitude: float, omega: float) -> float:
    x = xi * amplitude / omega
    j1p = 0.5 * (bessel_j(0, x) - bessel_j(2, x))
    return -amplitude - 2.0 * delta * j1p * amplitude / omega


def solve_xi(params: DriveParams | None = None, *, delta: float | None = None,
             amplitude: float | None = None, omega: float | None = None) -> float:
    """Solve A(1 - xi) = 2 delta J1(xi A / omega) for xi on (0, 1].

    Returns the branch continuously connected to xi = omega/(omega + delta)
    at A -> 0.  Accepts either a DriveParams or explicit keyword values (the
    latter admits the degenerate delta = 0 input, which forces xi = 1).
    """
    if params is not None:
        delta, amplitude, omega = params.delta, params.amplitude, params.omega
    if delta is None or amplitude is None or omega is None:
        raise DomainError("provide DriveParams or all of delta, amplitude, omega")
    if omega <= 0.0 or amplitude < 0.0 or delta < 0.0:
        raise DomainError("require omega > 0, amplitude >= 0, delta >= 0")
    if delta == 0.0:
        return 1.0
    seed = omega / (omega + delta)
    if amplitude == 0.0:
        # residual vanishes identically; return the continuation limit
        return seed
    tol = 1e-13 * max(delta, amplitude)
    xi = seed
    for _ in range(60):
        f = _xi_residual(xi, delta, amplitude, omega)
        if abs(f) <= tol:
            return xi
        fp = _xi_residual_deriv(xi, delta, amplitude, omega)
        if fp == 0.0:
            break
        step = f / fp
        xi_new = xi - step
        if not (0.0 < xi_new <= 1.0):
            break
        if abs(step) < 1e-16:
            xi = xi_new
            break
        xi = xi_new
    if abs(_xi_residual(xi, delta, amplitude, omega)) <= tol and 0.0 < xi <= 1.0:
        return xi
    # Newton left the physical branch; bracket sign changes on a dense grid
    # and keep the root nearest the small-A continuation seed
    grid = np.linspace(1e-9, 1.0, 2001)
    vals = [
        _xi_residual(x, delta, amplitude, omega) for x in grid
    ]
    roots = []
    for lo, hi, flo, fhi in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if flo == 0.0:
            roots.append(float(lo))
        elif flo * fhi < 0.0:
            roots.append(
                float(
                    brentq(
                        _xi_residual, lo, hi,
                        args=(delta, amplitude, omega), xtol=1e-15, rtol=8.9e-16,
                    )
                )
            )
    if vals[-1] == 0.0:
        roots.append(1.0)
    if not roots:
        raise RootNotFoundError(
            f"no xi root on (0, 1] for delta={delta}, A={amplitude}, omega={omega}"
        )
    return min(roots, key=lambda r: abs(r - seed))


def solution_with_xi(params: DriveParams, xi: float) -> ChrwSolution:
    """Assemble the derived CHRW quantities for a given rotation fraction."""
    delta, amplitude, omega = params.delta, params.amplitude, params.omega
    a = xi * amplitude / omega
    delta_tilde = delta * bessel_j(0, a)
    a_tilde = amplitude * (1.0 - xi)
    delta_small = delta_tilde - omega
    theta = math.atan2(a_tilde, delta_small)  # in [0, pi] since a_tilde >= 0
    omega_r = math.hypot(delta_small, a_tilde)
    alpha = math.pi * omega_r / omega
    return ChrwSolution(
        xi=xi,
        a=a,
        delta_tilde=delta_tilde,
        a_tilde=a_tilde,
        delta_small_tilde=delta_small,
        theta=theta,
        omega_r=omega_r,
        alpha=alpha,
        theta_tilde=theta - a,
    )


def chrw_solution(params: DriveParams) -> ChrwSolution:
    """Self-consistent CHRW solution for the given drive parameters."""
    return solution_with_xi(params, solve_xi(params))


def _u_period_from(sol: ChrwSolution) -> np.ndarray:
    ca, sa = math.cos(sol.alpha), math.sin(sol.alpha)
    ct, st = math.cos(sol.theta_tilde), math.sin(sol.theta_tilde)
    return -np.array(
        [
            [ca + 1j * sa * ct, sa * st],
            [-sa * st, ca - 1j * sa * ct],
        ],
        dtype=complex,
    )


def u_period(params: DriveParams) -> np.ndarray:
    """Closed-form CHRW evolution operator over one drive period."""
    return _u_period_from(chrw_solution(params))


def p01(params: DriveParams) -> float:
    """CHRW transition probability between the qubit states after one period."""
    sol = chrw_solution(params)
    return math.sin(sol.theta_tilde) ** 2 * math.sin(sol.alpha) ** 2


def _idle_phase(delta: float, t: float) -> np.ndarray:
    # free evolution exp(i delta t sigma_z / 2)
    return np.diag([np.exp(0.5j * delta * t), np.exp(-0.5j * delta * t)])


def u_schedule(schedule: PulseSchedule) -> np.ndarray:
    """CHRW propagator for idle - one drive period - idle."""
    drive = schedule.drive
    mid = u_period(drive)
    return (
        _idle_phase(drive.delta, schedule.t_idle_after)
        @ mid
        @ _idle_phase(drive.delta, schedule.t_idle_before)
    )
