"""Rival closed-form approximations to the one-period transition probability.

The double-rotating-frame RWA (DR) keeps the full drive in the Bessel
arguments but skips the self-consistent rotation fraction; the first-order
Magnus expansion averages the Hamiltonian over a period.  ``compare`` lines
the two up against the CHRW form and the numerically exact propagator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DomainError, bessel_j
from . import chrw
from .propagator import DriveParams, evolve_1q

__all__ = ["ApproximationReport", "p01_dr", "p01_magnus", "compare"]

_EXACT_STEPS = 4096


@dataclass(frozen=True)
class ApproximationReport:
    """One comparison row: exact and approximate P01 at a parameter point."""

    omega: float
    amplitude: float
    p01_exact: float
    p01_chrw: float
    p01_dr: float
    p01_magnus: float


def p01_dr(params: DriveParams) -> float:
    """Double-rotating-frame RWA transition probability after one period.

    Uses a = A/omega directly (no self-consistent xi): the renormalized gap
    is delta J0(a), the residual drive delta J1(a).
    """
    a = params.amplitude / params.omega
    delta_small = params.delta * bessel_j(0, a) - params.omega
    nu_tilde = params.delta * bessel_j(1, a)
    omega_r = math.hypot(delta_small, nu_tilde)
    theta = math.atan2(nu_tilde, delta_small)
    alpha = math.pi * omega_r / params.omega
    return math.sin(theta - a) ** 2 * math.sin(alpha) ** 2


def p01_magnus(params: DriveParams) -> float:
    """First-order Magnus (period-averaged Hamiltonian) transition probability."""
    a = params.amplitude / params.omega
    alpha = math.pi * params.delta * bessel_j(0, a) / params.omega
    return math.sin(a) ** 2 * math.sin(alpha) ** 2


def compare(
    params_list: list[DriveParams], steps_per_period: int = _EXACT_STEPS
) -> list[ApproximationReport]:
    """Four-way P01 comparison (exact, CHRW, DR, Magnus) per parameter point."""
    reports = []
    for p in params_list:
        u = evolve_1q(p, 0.0, p.period, steps_per_period)
        reports.append(
            ApproximationReport(
                omega=p.omega,
                amplitude=p.amplitude,
                p01_exact=float(abs(u[1, 0]) ** 2),
                p01_chrw=chrw.p01(p),
                p01_dr=p01_dr(p),
                p01_magnus=p01_magnus(p),
            )
        )
    return reports
