"""Shared numerics: Pauli/gate constants, Bessel functions, the gate-error functional.

Everything works on plain complex numpy arrays of dimension 2 or 4.  Units are
dimensionless throughout (energies in units of the qubit gap, hbar = 1).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "DomainError",
    "NumericalError",
    "RootNotFoundError",
    "DegeneracyError",
    "PreconditionError",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY_2",
    "IDENTITY_4",
    "X_HALF_PI",
    "Y_HALF_PI",
    "SQRT_BSWAP",
    "z_gate",
    "bessel_j",
    "gate_error",
    "unitarity_defect",
    "check_unitary",
]


class DomainError(ValueError):
    """An argument is outside the supported range."""


class NumericalError(RuntimeError):
    """An iterative numerical procedure failed to converge."""


class RootNotFoundError(NumericalError):
    """No root of the self-consistency residual on the search interval."""


class DegeneracyError(NumericalError):
    """Quasienergy eigenphases too close to separate the Floquet modes."""


class PreconditionError(ValueError):
    """Input violates a documented operation precondition."""


SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)

_SQ2 = math.sqrt(0.5)

# exp(-i pi sigma_x / 4)
X_HALF_PI = _SQ2 * np.array([[1, -1j], [-1j, 1]], dtype=complex)
# exp(-i pi sigma_y / 4)
Y_HALF_PI = _SQ2 * np.array([[1, -1], [1, 1]], dtype=complex)

# Two-qubit entangler acting on span{|00>, |11>} only.
SQRT_BSWAP = np.array(
    [
        [_SQ2, 0, 0, -_SQ2],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [_SQ2, 0, 0, _SQ2],
    ],
    dtype=complex,
)


def z_gate(angle: float) -> np.ndarray:
    """Z rotation exp(-i angle sigma_z / 2), realized physically by idling."""
    return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])


_BESSEL_MAX_ORDER = 40
_BESSEL_MAX_ARG = 50.0
_SERIES_CUTOVER = 12.0


def bessel_j(order: int, x: float) -> float:
    """Bessel function of the first kind J_order(x).

    Ascending power series for |x| <= 12, downward Miller recurrence
    normalized by J0 + 2*sum J_{2k} = 1 for larger arguments.  Absolute
    error below 1e-12 over the supported range.
    """
    if order < 0 or order > _BESSEL_MAX_ORDER:
        raise DomainError(f"order {order} outside [0, {_BESSEL_MAX_ORDER}]")
    if not math.isfinite(x) or abs(x) > _BESSEL_MAX_ARG:
        raise DomainError(f"argument {x} outside |x| <= {_BESSEL_MAX_ARG}")
    sign = 1.0
    if x < 0.0:
        x = -x
        if order % 2 == 1:
            sign = -1.0
    if abs(x) <= _SERIES_CUTOVER:
        return sign * _bessel_series(order, x)
    return sign * _bessel_miller(order, x)


def _bessel_series(n: int, x: float) -> float:
    half = 0.5 * x
    term = 1.0
    for k in range(1, n + 1):
        term *= half / k
    total = term
    m = 0
    while True:
        m += 1
        term *= -(half * half) / (m * (m + n))
        total += term
        if abs(term) < 1e-17 * max(1.0, abs(total)) or m > 200:
            return total


def _bessel_miller(n: int, x: float) -> float:
    # start high enough that the downward recurrence has converged at n
    top = max(n, int(x))
    m_start = 2 * ((top + 20 + int(12.0 * math.sqrt(top))) // 2 + 1)
    jp = 0.0
    jc = 1e-30
    norm = 0.0
    result = 0.0
    for k in range(m_start, 0, -1):
        jm = (2.0 * k / x) * jc - jp
        jp = jc
        jc = jm
        if k - 1 != 0 and (k - 1) % 2 == 0:
            norm += 2.0 * jc
        if k - 1 == n:
            result = jc
        if abs(jc) > 1e250:  # rescale to dodge overflow
            jc *= 1e-250
            jp *= 1e-250
            norm *= 1e-250
            result *= 1e-250
    norm += jc
    if n == 0:
        result = jc
    return result / norm


def gate_error(u: np.ndarray, target: np.ndarray) -> float:
    """Average-fidelity gate error of ``u`` against ``target``.

    E = 1 - [Tr(U^dag U) + |Tr(U_tg^dag U)|^2] / (d (d + 1)).  Insensitive
    to a global phase on either operator.
    """
    u = np.asarray(u, dtype=complex)
    target = np.asarray(target, dtype=complex)
    if u.shape != target.shape or u.shape[0] != u.shape[1]:
        raise DomainError(f"dimension mismatch: {u.shape} vs {target.shape}")
    d = u.shape[0]
    if d not in (2, 4):
        raise DomainError(f"unsupported dimension {d}")
    tr_uu = np.trace(u.conj().T @ u).real
    tr_tu = abs(np.trace(target.conj().T @ u)) ** 2
    return float(1.0 - (tr_uu + tr_tu) / (d * (d + 1)))


def unitarity_defect(u: np.ndarray) -> float:
    """Max absolute entry of U^dag U - I."""
    u = np.asarray(u, dtype=complex)
    d = u.shape[-1]
    return float(np.max(np.abs(np.swapaxes(u.conj(), -1, -2) @ u - np.eye(d))))


def check_unitary(u: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Validate unitarity (max-entry norm); returns the array unchanged."""
    if not np.all(np.isfinite(u)):
        raise DomainError("matrix has non-finite entries")
    defect = unitarity_defect(u)
    if defect > tol:
        raise NumericalError(f"unitarity defect {defect:.3e} exceeds {tol:.1e}")
    return u
