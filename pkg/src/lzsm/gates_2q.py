"""Two-qubit block machinery and sqrt-bSWAP calibration.

The parametrically driven pair decouples, in the permuted basis pairing
(|00>, |11>) and (|10>, |01>), into two effective single-qubit problems with
gaps delta_plus = delta1 + delta2 and delta_minus = delta2 - delta1.  This
module builds the closed-form 4x4 period propagator from the per-block CHRW
solutions, solves the sqrt-bSWAP operating point (the Y_pi/2 problem with
delta -> 2 delta), completes family points with idle times, and estimates the
error from a gap mismatch between the qubits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .core import (
    DomainError,
    NumericalError,
    PreconditionError,
    SQRT_BSWAP,
    bessel_j,
    gate_error,
)
from . import chrw
from .gates_1q import GateConditionResult, IdleTimes, family_curve, solve_y_exact
from .propagator import DriveParams, TwoQubitDriveParams, evolve_2q

__all__ = [
    "BlockChrw",
    "MismatchEstimate",
    "block_chrw",
    "u2q_period",
    "solve_bswap",
    "bswap_family_and_idles",
    "mismatch_error",
    "refine_bswap",
]

# permutation to the block basis order (00, 11, 10, 01)
BLOCK_PERMUTATION = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class BlockChrw:
    """Per-block CHRW solutions and the resulting 2x2 entries (a, b).

    Each block propagator is -[[a, b], [-b, conj(a)]].  ``minus_block`` is
    None in the degenerate delta_minus = 0 case, where the block is exactly
    the identity (a = -1, b = 0); a negative delta_minus is handled through
    the |delta_minus| solution with a basis-relabeling conjugation.
    """

    plus_block: chrw.ChrwSolution
    minus_block: chrw.ChrwSolution | None
    a_plus: complex
    b_plus: float
    a_minus: complex
    b_minus: float


def _block_entries(sol: chrw.ChrwSolution) -> tuple[complex, float]:
    ca, sa = math.cos(sol.alpha), math.sin(sol.alpha)
    ct, st = math.cos(sol.theta_tilde), math.sin(sol.theta_tilde)
    return complex(ca, sa * ct), sa * st


def block_chrw(params: TwoQubitDriveParams) -> BlockChrw:
    """CHRW solutions of both effective blocks for the given drive."""
    delta_plus = params.delta1 + params.delta2
    delta_minus = params.delta2 - params.delta1
    sol_plus = chrw.chrw_solution(
        DriveParams(delta_plus, params.amplitude, params.omega)
    )
    a_plus, b_plus = _block_entries(sol_plus)
    if delta_minus == 0.0:
        # pure sigma_x drive integrates to zero over a full period
        return BlockChrw(sol_plus, None, a_plus, b_plus, -1.0 + 0.0j, 0.0)
    sol_minus = chrw.chrw_solution(
        DriveParams(abs(delta_minus), params.amplitude, params.omega)
    )
    a_minus, b_minus = _block_entries(sol_minus)
    if delta_minus < 0.0:
        a_minus, b_minus = a_minus.conjugate(), -b_minus
    return BlockChrw(sol_plus, sol_minus, a_plus, b_plus, a_minus, b_minus)


def u2q_period(params: TwoQubitDriveParams) -> np.ndarray:
    """Closed-form 4x4 CHRW evolution over one period, basis (00, 01, 10, 11)."""
    blocks = block_chrw(params)
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0] = -blocks.a_plus
    u[0, 3] = -blocks.b_plus
    u[3, 0] = blocks.b_plus
    u[3, 3] = -blocks.a_plus.conjugate()
    u[2, 2] = -blocks.a_minus
    u[2, 1] = -blocks.b_minus
    u[1, 2] = blocks.b_minus
    u[1, 1] = -blocks.a_minus.conjugate()
    return u


def solve_bswap(delta: float = 1.0) -> GateConditionResult:
    """sqrt-bSWAP operating point for identical gaps delta1 = delta2 = delta.

    The plus block sees a gap of 2 delta, so the solution is the Y_pi/2 point
    rescaled by 2 (the conditions are homogeneous in energy).
    """
    r = solve_y_exact(delta)
    return GateConditionResult(
        amplitude=2.0 * r.amplitude,
        omega=2.0 * r.omega,
        chrw_amplitude=2.0 * r.chrw_amplitude,
        chrw_omega=2.0 * r.chrw_omega,
        branch_indices=r.branch_indices,
        residuals=(2.0 * r.residuals[0], 2.0 * r.residuals[1]),
    )


def bswap_family_and_idles(
    omega: float, delta: float = 1.0, winding: tuple[int, int] = (0, 0)
) -> list[tuple[float, IdleTimes]]:
    """All amplitudes with P(00->11) = 1/2 at this frequency, plus idle times.

    Identical gaps assumed.  The two-qubit tau variables carry no 1/2 factor:
    tau_plus = (t_i + t_f) delta, tau_minus = (t_f - t_i) delta, with the
    conditions tau_minus = 2 k pi and tau_plus + nu = (2 n + 1) pi (an extra
    pi on tau_minus when the off-diagonal block entry is negative).
    """
    k, n = winding
    amps = family_curve(omega, delta=2.0 * delta)
    out: list[tuple[float, IdleTimes]] = []
    for a in amps:
        sol = chrw.chrw_solution(DriveParams(2.0 * delta, a, omega))
        a_pl, b_pl = _block_entries(sol)
        nu = math.atan2(a_pl.imag, a_pl.real)
        flip = math.pi if b_pl < 0.0 else 0.0
        tau_minus = 2.0 * k * math.pi + flip
        tau_plus = (2.0 * n + 1.0) * math.pi - nu
        nn = n
        while tau_plus < abs(tau_minus):
            nn += 1
            tau_plus += 2.0 * math.pi
        t_before = (tau_plus - tau_minus) / (2.0 * delta)
        t_after = (tau_plus + tau_minus) / (2.0 * delta)
        out.append(
            (a, IdleTimes(t_before=t_before, t_after=t_after, nu=nu, winding=(k, nn)))
        )
    return out


class MismatchEstimate(NamedTuple):
    """Analytic leakage estimate next to the exact transition probability."""

    estimate: float
    exact: float


def mismatch_error(
    params: TwoQubitDriveParams, steps_per_period: int = 2048
) -> MismatchEstimate:
    """Error from a small gap mismatch: leakage P(|10> -> |01>).

    The analytic estimate is eps^2 pi^2 (delta/omega)^2 J0^2(A/omega)
    sin^2(A/omega) with eps = (delta2 - delta1)/delta1, compared against the
    exact propagator probability.
    """
    eps = (params.delta2 - params.delta1) / params.delta1
    if abs(eps) > 0.1:
        raise PreconditionError(f"mismatch eps = {eps:.3f} beyond the small-eps regime")
    x = params.amplitude / params.omega
    estimate = (
        eps**2
        * math.pi**2
        * (params.delta1 / params.omega) ** 2
        * bessel_j(0, x) ** 2
        * math.sin(x) ** 2
    )
    u = evolve_2q(params, 0.0, params.period, steps_per_period)
    exact = float(abs(u[1, 2]) ** 2)
    return MismatchEstimate(estimate=estimate, exact=exact)


def refine_bswap(
    params: TwoQubitDriveParams, steps_per_period: int = 1024
) -> tuple[float, float, float]:
    """Polish (A, omega) for mismatched gaps on the exact sqrt-bSWAP error.

    Returns the refined amplitude, frequency, and achieved gate error.
    """

    def obj(x):
        a, w = x
        if a <= 0 or w <= 0:
            return 1.0
        p = TwoQubitDriveParams(params.delta1, params.delta2, a, w)
        u = evolve_2q(p, 0.0, p.period, steps_per_period)
        return gate_error(u, SQRT_BSWAP)

    res = minimize(
        obj,
        x0=np.array([params.amplitude, params.omega]),
        method="Nelder-Mead",
        options={"xatol": 1e-7, "fatol": 1e-14, "maxiter": 400},
    )
    if not res.success and res.fun > 1e-4:
        raise NumericalError(f"bswap refinement failed: {res.message}")
    return float(res.x[0]), float(res.x[1]), float(res.fun)
