"""Acceptance criteria for the toolkit, one test per criterion.

Each test prints a single ``[ACCEPTANCE] <name>: PASS/FAIL (<runtime>)`` line.
All criteria are expected green except ``rates_relaxation_agreement``: the
closed-form relaxation rate genuinely departs from the exact Floquet q-sum by
more than 10% for drive amplitudes beyond ~2.6 gaps (a growing two-photon
relaxation channel the single-term closed form cannot capture), so that test
documents an honest failure rather than a code defect.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import FROZEN_BSWAP, FROZEN_X, FROZEN_Y
from lzsm import chrw
from lzsm.approximants import compare
from lzsm.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, main
from lzsm.core import (
    NumericalError,
    SQRT_BSWAP,
    X_HALF_PI,
    Y_HALF_PI,
    gate_error,
    unitarity_defect,
)
from lzsm.floquet_rates import (
    NoiseModel,
    gamma1_chrw,
    gamma1_exact,
    gamma_phi_chrw,
    gamma_phi_exact,
    rates,
)
from lzsm.gates_1q import (
    family_curve,
    identity_curve,
    idle_times_for,
    solve_x_exact,
    solve_y_exact,
)
from lzsm.gates_2q import mismatch_error, solve_bswap
from lzsm.propagator import (
    DriveParams,
    TwoQubitDriveParams,
    evolve_1q,
    evolve_1q_period_batch,
    evolve_2q,
)

MODEL = NoiseModel(gamma=1.0, t_bath=0.1)
FAMILY_192 = (1.1695290439866517, 2.7550064279995277)


@contextmanager
def criterion(capsys, name):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"[ACCEPTANCE] {name}: FAIL ({time.perf_counter() - t0:.2f}s)")
        raise
    with capsys.disabled():
        print(f"[ACCEPTANCE] {name}: PASS ({time.perf_counter() - t0:.2f}s)")


def test_propagator_convergence_and_unitarity(capsys):
    """Fourth-order step convergence and unitarity of the exact propagator."""
    with criterion(capsys, "propagator_convergence_and_unitarity"):
        for a, w in ((0.5, 0.5), (2.0, 1.0), (4.0, 2.0), (1.0, 4.0)):
            p = DriveParams(1.0, a, w)
            t = p.period
            e1 = np.max(np.abs(evolve_1q(p, 0, t, 128) - evolve_1q(p, 0, t, 512)))
            e2 = np.max(np.abs(evolve_1q(p, 0, t, 256) - evolve_1q(p, 0, t, 1024)))
            assert e1 / e2 >= 15.0
            assert unitarity_defect(evolve_1q(p, 0, t, 1024)) < 1e-9
        p2 = TwoQubitDriveParams(1.0, 1.2, 3.0, 2.0)
        assert unitarity_defect(evolve_2q(p2, 0, p2.period, 1024)) < 1e-9


def test_chrw_accuracy_region(capsys):
    """Closed-form one-period propagator within 1e-3 of exact across the
    validity region omega >= max(delta, A/2), and within 1e-4 along the
    benchmark amplitude A = 1.16 delta."""
    with criterion(capsys, "chrw_accuracy_region"):
        a_grid = np.linspace(0.0, 4.0, 40)
        w_grid = np.linspace(0.5, 4.0, 40)
        aa = np.repeat(a_grid, w_grid.size)
        ww = np.tile(w_grid, a_grid.size)
        u = evolve_1q_period_batch(1.0, aa, ww, 2048)
        worst = 0.0
        for i in range(aa.size):
            if ww[i] < max(1.0, 0.5 * aa[i]):
                continue
            try:
                uc = chrw.u_period(DriveParams(1.0, aa[i], ww[i]))
            except NumericalError:
                continue
            worst = max(worst, gate_error(u[i], uc))
        assert worst <= 1e-3
        sweep = np.linspace(1.0, 4.0, 31)
        u2 = evolve_1q_period_batch(1.0, np.full(sweep.size, 1.16), sweep, 2048)
        for i in range(sweep.size):
            uc = chrw.u_period(DriveParams(1.0, 1.16, sweep[i]))
            assert gate_error(u2[i], uc) <= 1e-4


def test_one_qubit_gate_solvers(capsys):
    """Y/X/identity operating points achieve the stated exact gate errors and
    the half-population family completes both rotations with idle times."""
    with criterion(capsys, "one_qubit_gate_solvers"):
        ry = solve_y_exact()
        assert ry.amplitude == pytest.approx(FROZEN_Y[0], abs=0.01)
        assert ry.omega == pytest.approx(FROZEN_Y[1], abs=0.01)
        py = DriveParams(1.0, ry.amplitude, ry.omega)
        assert gate_error(evolve_1q(py, 0, py.period, 4096), Y_HALF_PI) < 1e-5

        rx = solve_x_exact()
        assert rx.amplitude == pytest.approx(FROZEN_X[0], abs=0.01)
        px = DriveParams(1.0, rx.amplitude, rx.omega)
        isz = np.diag([1j, -1j])
        assert gate_error(isz @ evolve_1q(px, 0, px.period, 4096), X_HALF_PI) < 1e-5

        roots = family_curve(1.92)
        assert len(roots) >= 2
        for a, ref in zip(roots, FAMILY_192):
            assert a == pytest.approx(ref, abs=1e-6)
        for gate, target in (("Y", Y_HALF_PI), ("X", X_HALF_PI)):
            p = DriveParams(1.0, roots[0], 1.92)
            idles = idle_times_for(gate, p)
            u = chrw.u_schedule(chrw.PulseSchedule(idles.t_before, idles.t_after, p))
            assert gate_error(u, target) < 1e-9

        a_id = identity_curve(2.0)
        assert a_id is not None
        pi_ = DriveParams(1.0, a_id, 2.0)
        assert gate_error(evolve_1q(pi_, 0, pi_.period, 4096), np.eye(2)) < 1e-3


def test_two_qubit_bswap(capsys):
    """The entangler operating point, its exact gate error, and the quadratic
    gap-mismatch error estimate."""
    with criterion(capsys, "two_qubit_bswap"):
        r = solve_bswap()
        assert r.amplitude == pytest.approx(FROZEN_BSWAP[0], abs=0.02)
        assert r.omega == pytest.approx(FROZEN_BSWAP[1], abs=0.02)
        p = TwoQubitDriveParams(1.0, 1.0, r.amplitude, r.omega)
        assert gate_error(evolve_2q(p, 0, p.period, 4096), SQRT_BSWAP) < 1e-5
        m1 = mismatch_error(
            TwoQubitDriveParams(1.0, 1.01, r.amplitude, r.omega)
        )
        assert 0.5 <= m1.estimate / m1.exact <= 2.0
        m2 = mismatch_error(
            TwoQubitDriveParams(1.0, 1.02, r.amplitude, r.omega)
        )
        assert m2.exact / m1.exact == pytest.approx(4.0, rel=0.1)


def test_rates_dephasing_and_combined(capsys):
    """Closed-form dephasing within 15% of the exact q-sum across amplitudes,
    the weak-drive limit Gamma_2 = Gamma_1 / 2, and the combined closed-form
    rate within a factor of two at the half-population operating points."""
    with criterion(capsys, "rates_dephasing_and_combined"):
        for a in (0.5, 1.16, 2.0, 2.5, 3.0):
            p = DriveParams(1.0, a, 1.92)
            gc = gamma_phi_chrw(p, MODEL)
            ge = gamma_phi_exact(p, MODEL)
            assert abs(gc - ge) <= 0.15 * ge
        weak = rates(DriveParams(1.0, 1e-6, 0.7), MODEL)
        assert weak.gamma2 == pytest.approx(0.5 * weak.gamma1, rel=1e-3)
        for a in FAMILY_192:
            p = DriveParams(1.0, a, 1.92)
            rc = rates(p, MODEL, mode="chrw")
            re = rates(p, MODEL, mode="exact")
            assert 0.5 <= rc.gamma2 / re.gamma2 <= 2.0


def test_rates_relaxation_agreement(capsys):
    """Closed-form relaxation within 10% of the exact q-sum up to A = 3.

    Documented honest failure: the deviation grows with amplitude (about 5%
    at A = 2, 10% at A = 2.5, 17% at A = 3) because a second-harmonic
    relaxation channel S(gap - 2 omega)|X_ab(-2)|^2 becomes a double-digit
    fraction of the total while the closed form keeps only the q = 0 term.
    """
    with criterion(capsys, "rates_relaxation_agreement"):
        for a in (0.5, 1.16, 2.0, 2.5, 3.0):
            p = DriveParams(1.0, a, 1.92)
            gc = gamma1_chrw(p, MODEL)
            ge = gamma1_exact(p, MODEL)
            assert abs(gc - ge) <= 0.10 * ge, (
                f"A={a}: closed-form {gc:.4f} vs exact {ge:.4f} "
                f"({abs(gc - ge) / ge:.1%} off)"
            )


def test_approximant_ordering(capsys):
    """The self-consistent closed form beats the double-rotating-frame and
    period-averaged rivals against the exact probability at and above the gap
    frequency, along the benchmark amplitude."""
    with criterion(capsys, "approximant_ordering"):
        params = [DriveParams(1.0, 1.16, w) for w in (1.0, 1.5, 2.0, 3.0, 4.0)]
        for r in compare(params):
            e_chrw = abs(r.p01_chrw - r.p01_exact)
            assert e_chrw < abs(r.p01_dr - r.p01_exact)
            assert e_chrw < abs(r.p01_magnus - r.p01_exact)
            assert e_chrw <= 0.01


def test_cli_contract(capsys):
    """Deterministic CSV output and the documented exit codes."""
    with criterion(capsys, "cli_contract"):
        args = [
            "scan-p01", "--engine", "chrw",
            "--a-min", "0", "--a-max", "3", "--a-steps", "7",
            "--w-min", "1", "--w-max", "3", "--w-steps", "5",
        ]
        assert main(args) == EXIT_OK
        out1 = capsys.readouterr().out
        assert main(args) == EXIT_OK
        out2 = capsys.readouterr().out
        assert out1 == out2
        assert out1.splitlines()[0] == "amplitude_over_delta,omega_over_delta,p01"
        assert main(["scan-p01", "--a-min", "2", "--a-max", "1"]) == EXIT_USAGE
        assert (
            main(["rates", "--mode", "exact", "--threads", "1",
                  "--a-min", "0", "--a-max", "0", "--a-steps", "1",
                  "--w-min", "1", "--w-max", "1", "--w-steps", "1",
                  "--steps-per-period", "256"])
            == EXIT_NUMERICAL
        )
        capsys.readouterr()
