"""Driving-parameter solvers for single-qubit gates.

Solves the closed-form gate conditions (frequency locked to a rational
multiple of the generalized Rabi frequency plus a fixed theta_tilde angle),
refines against the numerically exact propagator, traces the P01 = 1/2 family
curves with their idle-time completion, and locates identity-gate amplitudes.
All quantities are in gap-normalized units (delta = 1 unless stated).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize, root

from .core import (
    DomainError,
    NumericalError,
    PreconditionError,
    RootNotFoundError,
    X_HALF_PI,
    Y_HALF_PI,
    gate_error,
)
from . import chrw
from .propagator import DriveParams, evolve_1q

__all__ = [
    "GateConditionResult",
    "IdleTimes",
    "solve_y_exact",
    "solve_x_exact",
    "family_curve",
    "idle_times_for",
    "identity_curve",
]

_REFINE_STEPS = 2048


@dataclass(frozen=True)
class GateConditionResult:
    """A solved gate operating point.

    ``amplitude``/``omega`` are refined against the exact propagator;
    ``chrw_amplitude``/``chrw_omega`` solve the closed-form conditions, whose
    residuals at that point are stored in ``residuals``.
    """

    amplitude: float
    omega: float
    chrw_amplitude: float
    chrw_omega: float
    branch_indices: tuple[int, int]
    residuals: tuple[float, float]


@dataclass(frozen=True)
class IdleTimes:
    """Idle durations completing a gate, with the phase angle nu used."""

    t_before: float
    t_after: float
    nu: float
    winding: tuple[int, int]


def _condition_residuals(
    a: float, w: float, freq_ratio: float, theta_target: float, delta: float
) -> tuple[float, float]:
    sol = chrw.chrw_solution(DriveParams(delta, a, w))
    return (w - freq_ratio * sol.omega_r, sol.theta_tilde - theta_target)


def _solve_condition(
    freq_ratio: float,
    theta_target: float,
    seed: tuple[float, float],
    delta: float = 1.0,
) -> tuple[float, float]:
    """Joint root of the frequency-lock and angle conditions in (A, omega)."""

    def f(x):
        return _condition_residuals(x[0], x[1], freq_ratio, theta_target, delta)

    res = root(f, x0=np.array(seed), method="hybr", tol=1e-13)
    a, w = float(res.x[0]), float(res.x[1])
    r = _condition_residuals(a, w, freq_ratio, theta_target, delta)
    if not res.success or max(abs(r[0]), abs(r[1])) > 1e-9 * delta:
        raise NumericalError(f"gate condition solver failed: residuals {r}")
    return a, w


def _refine_on_exact(
    seed: tuple[float, float], objective, delta: float = 1.0
) -> tuple[float, float]:
    """Nelder-Mead polish of an operating point on the exact-propagator error."""
    res = minimize(
        objective,
        x0=np.array(seed),
        method="Nelder-Mead",
        options={"xatol": 1e-7, "fatol": 1e-14, "maxiter": 400},
    )
    if not res.success and res.fun > 1e-5:
        raise NumericalError(f"exact-propagator refinement failed: {res.message}")
    return float(res.x[0]), float(res.x[1])


def _y_objective(delta: float = 1.0):
    def obj(x):
        a, w = x
        if a <= 0 or w <= 0:
            return 1.0
        p = DriveParams(delta, a, w)
        u = evolve_1q(p, 0.0, p.period, _REFINE_STEPS)
        return gate_error(u, Y_HALF_PI)

    return obj


def _x_objective(delta: float = 1.0):
    isz = np.diag([1j, -1j])

    def obj(x):
        a, w = x
        if a <= 0 or w <= 0:
            return 1.0
        p = DriveParams(delta, a, w)
        u = evolve_1q(p, 0.0, p.period, _REFINE_STEPS)
        return gate_error(isz @ u, X_HALF_PI)

    return obj


def solve_y_exact(delta: float = 1.0) -> GateConditionResult:
    """Operating point implementing Y_pi/2 with a bare one-period pulse.

    Solves omega = (4/3) Omega_R together with theta_tilde = pi/2 (the k = l
    = 0 branch), then refines on the exact propagator.
    """
    seed = (2.9 * delta, 2.1 * delta)
    a_c, w_c = _solve_condition(4.0 / 3.0, 0.5 * math.pi, seed, delta)
    a, w = _refine_on_exact((a_c, w_c), _y_objective(delta), delta)
    return GateConditionResult(
        amplitude=a,
        omega=w,
        chrw_amplitude=a_c,
        chrw_omega=w_c,
        branch_indices=(0, 0),
        residuals=_condition_residuals(a_c, w_c, 4.0 / 3.0, 0.5 * math.pi, delta),
    )


def solve_x_exact(delta: float = 1.0) -> GateConditionResult:
    """Operating point implementing X_pi/2 with a fixed pi/delta idle after.

    Solves omega = 2 Omega_R together with theta_tilde = pi/4; the post-idle
    t_f = pi/delta supplies the i sigma_z factor completing the gate.
    """
    seed = (0.7 * delta, 0.8 * delta)
    a_c, w_c = _solve_condition(2.0, 0.25 * math.pi, seed, delta)
    a, w = _refine_on_exact((a_c, w_c), _x_objective(delta), delta)
    return GateConditionResult(
        amplitude=a,
        omega=w,
        chrw_amplitude=a_c,
        chrw_omega=w_c,
        branch_indices=(0, 0),
        residuals=_condition_residuals(a_c, w_c, 2.0, 0.25 * math.pi, delta),
    )


def _p01_family(a: float, omega: float, delta: float) -> float:
    """Self-consistent P01; the cheap xi = omega/(omega+delta) shortcut is
    close but shifts the curve by more than the idle-time precondition
    tolerates, so the full root is used throughout."""
    sol = chrw.chrw_solution(DriveParams(delta, a, omega))
    return math.sin(sol.theta_tilde) ** 2 * math.sin(sol.alpha) ** 2


_FAMILY_STEP = 0.005
_FAMILY_A_MAX = 4.0


def family_curve(omega: float, delta: float = 1.0) -> list[float]:
    """All amplitudes in (0, 4*delta] with P01(A, omega) = 1/2.

    Located by sign-change bracketing on an A-grid of step 0.005*delta with
    bisection refinement; returns an empty list when the curve does not reach
    the given frequency.
    """
    if omega <= 0.0:
        raise DomainError(f"omega must be positive, got {omega}")
    grid = np.arange(_FAMILY_STEP, _FAMILY_A_MAX + 0.5 * _FAMILY_STEP, _FAMILY_STEP)
    grid = grid * delta

    def f(a: float) -> float:
        return _p01_family(a, omega, delta) - 0.5

    vals: list[float | None] = []
    for a in grid:
        try:
            vals.append(f(float(a)))
        except RootNotFoundError:
            vals.append(None)
    roots: list[float] = []
    for lo, hi, flo, fhi in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if flo is None or fhi is None:
            continue
        if flo == 0.0:
            roots.append(float(lo))
        elif flo * fhi < 0.0:
            roots.append(float(brentq(f, float(lo), float(hi), xtol=1e-10)))
    if vals and vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def _normalize_gate_name(gate: str) -> str:
    g = gate.strip().lower()
    if g in ("x", "x_half_pi", "x_pi/2"):
        return "x"
    if g in ("y", "y_half_pi", "y_pi/2"):
        return "y"
    raise DomainError(f"unknown gate {gate!r}; expected X_half_pi or Y_half_pi")


def idle_times_for(
    gate: str, params: DriveParams, winding: tuple[int, int] = (0, 0)
) -> IdleTimes:
    """Idle durations completing an X or Y pi/2 gate from a P01 = 1/2 point.

    nu is taken as the argument of cos(alpha) + i sin(alpha) cos(theta_tilde);
    the tau conditions pick up an extra pi when the off-diagonal entry
    sin(alpha) sin(theta_tilde) is negative.  The second winding index is
    raised internally if needed to keep both idle times non-negative.
    """
    g = _normalize_gate_name(gate)
    sol = chrw.chrw_solution(params)
    p = math.sin(sol.theta_tilde) ** 2 * math.sin(sol.alpha) ** 2
    if abs(p - 0.5) > 1e-6:
        raise PreconditionError(
            f"params off the P01 = 1/2 family curve: P01 = {p:.8f}"
        )
    n, k = winding
    sa, ca = math.sin(sol.alpha), math.cos(sol.alpha)
    ct, st = math.cos(sol.theta_tilde), math.sin(sol.theta_tilde)
    nu = math.atan2(sa * ct, ca)
    flip = math.pi if sa * st < 0.0 else 0.0
    if g == "y":
        tau_minus = 2.0 * n * math.pi + flip
    else:
        tau_minus = (2.0 * n + 0.5) * math.pi + flip
    tau_plus = (2.0 * k + 1.0) * math.pi - nu
    while tau_plus < abs(tau_minus):
        k += 1
        tau_plus += 2.0 * math.pi
    delta = params.delta
    t_before = (tau_plus - tau_minus) / delta
    t_after = (tau_plus + tau_minus) / delta
    return IdleTimes(t_before=t_before, t_after=t_after, nu=nu, winding=(n, k))


_IDENTITY_A_MAX = 6.0


def identity_curve(omega: float, k: int = 0, delta: float = 1.0) -> float | None:
    """Amplitude realizing the identity after one period: Omega_R = (2k+1) omega.

    Returns the smallest such A in (0, 6*delta], or None when the condition
    has no solution at this frequency.
    """
    if omega <= 0.0:
        raise DomainError(f"omega must be positive, got {omega}")
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    target = (2 * k + 1) * omega

    def g(a: float) -> float:
        return chrw.chrw_solution(DriveParams(delta, a, omega)).omega_r - target

    grid = np.arange(0.0, _IDENTITY_A_MAX * delta + 1e-12, _FAMILY_STEP * delta)
    vals: list[float | None] = []
    for a in grid:
        try:
            vals.append(g(float(max(a, 0.0))))
        except RootNotFoundError:
            vals.append(None)
    for lo, hi, flo, fhi in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if flo is None or fhi is None:
            continue
        if flo == 0.0 and lo > 0.0:
            return float(lo)
        if flo * fhi < 0.0:
            r = float(brentq(g, float(lo), float(hi), xtol=1e-12))
            if r > 0.0:
                return r
    return None
