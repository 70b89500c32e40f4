"""Gate calibration toolkit for strongly driven qubits.

Computes exact and closed-form (CHRW) evolution operators for a qubit under a
single-period sinusoidal drive, solves the driving parameters implementing
X_pi/2, Y_pi/2, identity, and sqrt-bSWAP gates, and evaluates relaxation and
dephasing rates in the Floquet picture.
"""

from .core import (
    DegeneracyError,
    DomainError,
    NumericalError,
    PreconditionError,
    RootNotFoundError,
    SQRT_BSWAP,
    X_HALF_PI,
    Y_HALF_PI,
    bessel_j,
    gate_error,
)
from .propagator import (
    DriveParams,
    FloquetDecomposition,
    TwoQubitDriveParams,
    evolve_1q,
    evolve_2q,
    floquet_decompose,
    fourier_matrix_element,
)
from .chrw import ChrwSolution, PulseSchedule, chrw_solution, p01, solve_xi, u_period, u_schedule
from .gates_1q import (
    GateConditionResult,
    IdleTimes,
    family_curve,
    identity_curve,
    idle_times_for,
    solve_x_exact,
    solve_y_exact,
)
from .gates_2q import bswap_family_and_idles, mismatch_error, solve_bswap, u2q_period
from .floquet_rates import NoiseModel, RateResult, noise_spectrum, rates
from .approximants import ApproximationReport, compare, p01_dr, p01_magnus

__version__ = "0.1.0"

__all__ = [
    "ApproximationReport",
    "ChrwSolution",
    "DegeneracyError",
    "DomainError",
    "DriveParams",
    "FloquetDecomposition",
    "GateConditionResult",
    "IdleTimes",
    "NoiseModel",
    "NumericalError",
    "PreconditionError",
    "PulseSchedule",
    "RateResult",
    "RootNotFoundError",
    "SQRT_BSWAP",
    "TwoQubitDriveParams",
    "X_HALF_PI",
    "Y_HALF_PI",
    "bessel_j",
    "bswap_family_and_idles",
    "chrw_solution",
    "compare",
    "evolve_1q",
    "evolve_2q",
    "family_curve",
    "floquet_decompose",
    "fourier_matrix_element",
    "gate_error",
    "identity_curve",
    "idle_times_for",
    "mismatch_error",
    "noise_spectrum",
    "p01",
    "p01_dr",
    "p01_magnus",
    "rates",
    "solve_bswap",
    "solve_x_exact",
    "solve_xi",
    "solve_y_exact",
    "u2q_period",
    "u_period",
    "u_schedule",
]
