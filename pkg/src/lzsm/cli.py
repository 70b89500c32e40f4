"""Command-line front end: parameter scans, gate solvers, and rate tables.

Subcommands emit deterministic CSV (single header row, comma delimiter,
12-significant-digit floats) to stdout or --out; progress and errors go to
stderr.  Exit codes: 0 success, 2 usage error, 3 numerical failure.  All
inputs and outputs are in gap-normalized units (set the physical gap with
--delta).
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .core import (
    IDENTITY_2,
    NumericalError,
    SQRT_BSWAP,
    X_HALF_PI,
    Y_HALF_PI,
    gate_error,
)
from . import approximants, chrw, floquet_rates, gates_1q, gates_2q
from .propagator import (
    DriveParams,
    TwoQubitDriveParams,
    evolve_1q,
    evolve_1q_period_batch,
    evolve_2q,
    evolve_2q_period_batch,
)

THREADS_ENV_VAR = "LZSM_THREADS"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _fmt(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return format(float(x), ".12g")


def _resolve_threads(arg: int | None) -> int:
    if arg is not None:
        return max(1, arg)
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise NumericalError(f"invalid {THREADS_ENV_VAR} value {env!r}")
    return os.cpu_count() or 1


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_csv(path: str | None, header: list[str], rows) -> None:
    fh, close = _open_out(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([c if isinstance(c, str) else _fmt(c) for c in row])
    finally:
        if close:
            fh.close()


def _grid(args) -> tuple[np.ndarray, np.ndarray]:
    for lo, hi, n, name in (
        (args.a_min, args.a_max, args.a_steps, "amplitude"),
        (args.w_min, args.w_max, args.w_steps, "omega"),
    ):
        if n < 1 or lo > hi:
            raise UsageError(f"invalid {name} grid: [{lo}, {hi}] x {n}")
    if args.w_min <= 0.0:
        raise UsageError("omega grid must be strictly positive")
    if args.a_min < 0.0:
        raise UsageError("amplitude grid must be non-negative")
    a = np.linspace(args.a_min, args.a_max, args.a_steps)
    w = np.linspace(args.w_min, args.w_max, args.w_steps)
    return a, w


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delta", type=float, default=1.0, help="qubit gap (energy unit)")
    p.add_argument("--steps-per-period", type=int, default=1024)
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.add_argument(
        "--threads", type=int, default=None,
        help=f"worker count (default: {THREADS_ENV_VAR} or all cores)",
    )


def _add_grid(p: argparse.ArgumentParser, a_max: float = 4.0, w_max: float = 4.0) -> None:
    p.add_argument("--a-min", type=float, default=0.0)
    p.add_argument("--a-max", type=float, default=a_max)
    p.add_argument("--a-steps", type=int, default=40)
    p.add_argument("--w-min", type=float, default=0.5)
    p.add_argument("--w-max", type=float, default=w_max)
    p.add_argument("--w-steps", type=int, default=40)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lzsm",
        description="Driven-qubit gate calibration and decoherence-rate toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan-p01", help="transition probability over an (A, omega) grid")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--engine", choices=["exact", "chrw", "dr", "magnus"], default="exact")
    p.add_argument(
        "--trace", action="store_true",
        help="emit time-resolved populations at (a-min, w-min) instead of a grid",
    )
    p.add_argument(
        "--two-qubit", action="store_true",
        help="with --trace: trace the driven pair starting from |00>",
    )
    p.add_argument(
        "--delta2-ratio", type=float, default=1.0,
        help="delta2/delta1 for --two-qubit traces",
    )
    p.set_defaults(func=cmd_scan_p01)

    p = sub.add_parser("scan-error", help="gate error over an (A, omega) grid")
    _add_common(p)
    _add_grid(p)
    p.add_argument(
        "--target", choices=["Y", "X", "bSWAP", "chrw_vs_exact"], required=True
    )
    p.add_argument(
        "--delta2-ratio", type=float, default=1.0,
        help="delta2/delta1 for target=bSWAP",
    )
    p.set_defaults(func=cmd_scan_error)

    p = sub.add_parser("solve-gate", help="driving parameters implementing a gate")
    _add_common(p)
    p.add_argument("--gate", choices=["X", "Y", "identity", "bswap"], required=True)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--winding", default="0,0", help="winding indices n,k")
    p.add_argument("--k", type=int, default=0, help="identity-branch index")
    p.set_defaults(func=cmd_solve_gate)

    p = sub.add_parser("rates", help="relaxation/dephasing rates over a grid")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--mode", choices=["chrw", "exact", "both"], default="both")
    p.add_argument("--t-bath", type=float, default=0.1)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--q-max", type=int, default=floquet_rates.DEFAULT_Q_MAX)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("compare-approx", help="exact vs CHRW vs DR vs Magnus P01")
    _add_common(p)
    p.add_argument("--amplitude", type=float, default=1.16)
    p.add_argument(
        "--omegas", default="1.0,1.5,2.0,2.5,3.0,3.5,4.0",
        help="comma-separated frequency list",
    )
    p.set_defaults(func=cmd_compare_approx)
    return parser


def _grid_rows(a_grid: np.ndarray, w_grid: np.ndarray):
    """Row-major (amplitude outer, omega inner) flat grid."""
    aa = np.repeat(a_grid, w_grid.size)
    ww = np.tile(w_grid, a_grid.size)
    return aa, ww


def cmd_scan_p01(args) -> None:
    delta = args.delta
    if args.trace:
        _emit_trace(args)
        return
    a_grid, w_grid = _grid(args)
    aa, ww = _grid_rows(a_grid, w_grid)
    if args.engine == "exact":
        u = evolve_1q_period_batch(delta, aa * delta, ww * delta, args.steps_per_period)
        p = np.abs(u[:, 1, 0]) ** 2
    else:
        fns = {
            "chrw": chrw.p01,
            "dr": approximants.p01_dr,
            "magnus": approximants.p01_magnus,
        }
        fn = fns[args.engine]
        p = np.empty(aa.size)
        for i in range(aa.size):
            try:
                p[i] = fn(DriveParams(delta, aa[i] * delta, ww[i] * delta))
            except NumericalError:
                p[i] = math.nan
    rows = ((aa[i], ww[i], p[i]) for i in range(aa.size))
    _write_csv(args.out, ["amplitude_over_delta", "omega_over_delta", "p01"], rows)


_TRACE_SAMPLES = 256


def _emit_trace(args) -> None:
    delta = args.delta
    a, w = args.a_min * delta, args.w_min * delta
    if w <= 0:
        raise UsageError("trace needs a positive w-min")
    period = 2.0 * math.pi / w
    times = np.linspace(0.0, period, _TRACE_SAMPLES + 1)
    if args.two_qubit:
        params2 = TwoQubitDriveParams(delta, delta * args.delta2_ratio, a, w)
        header = ["time_over_period", "p00", "p01", "p10", "p11"]
        u = np.eye(4, dtype=complex)
        rows = []
        for j, t in enumerate(times):
            if j > 0:
                u = evolve_2q(params2, times[j - 1], t, args.steps_per_period) @ u
            pops = np.abs(u[:, 0]) ** 2
            rows.append((t / period, *pops))
    else:
        params = DriveParams(delta, a, w)
        header = ["time_over_period", "p0", "p1"]
        u = np.eye(2, dtype=complex)
        rows = []
        for j, t in enumerate(times):
            if j > 0:
                u = evolve_1q(params, times[j - 1], t, args.steps_per_period) @ u
            rows.append((t / period, abs(u[0, 0]) ** 2, abs(u[1, 0]) ** 2))
    _write_csv(args.out, header, rows)


def cmd_scan_error(args) -> None:
    delta = args.delta
    a_grid, w_grid = _grid(args)
    aa, ww = _grid_rows(a_grid, w_grid)
    spp = args.steps_per_period
    errs = np.empty(aa.size)
    if args.target in ("Y", "X"):
        u = evolve_1q_period_batch(delta, aa * delta, ww * delta, spp)
        if args.target == "X":
            isz = np.diag([1j, -1j])
            target = X_HALF_PI
            u = isz[None, :, :] @ u
        else:
            target = Y_HALF_PI
        for i in range(aa.size):
            errs[i] = gate_error(u[i], target)
    elif args.target == "bSWAP":
        u = evolve_2q_period_batch(
            delta, delta * args.delta2_ratio, aa * delta, ww * delta, spp
        )
        for i in range(aa.size):
            errs[i] = gate_error(u[i], SQRT_BSWAP)
    else:  # chrw_vs_exact
        u = evolve_1q_period_batch(delta, aa * delta, ww * delta, spp)
        for i in range(aa.size):
            try:
                uc = chrw.u_period(DriveParams(delta, aa[i] * delta, ww[i] * delta))
                errs[i] = gate_error(u[i], uc)
            except NumericalError:
                errs[i] = math.nan
    rows = (
        (aa[i], ww[i], errs[i], -math.log10(max(errs[i], 1e-300)))
        for i in range(aa.size)
    )
    _write_csv(
        args.out,
        ["amplitude_over_delta", "omega_over_delta", "error", "neg_log10_error"],
        rows,
    )


_SOLVE_HEADER = [
    "gate",
    "amplitude_over_delta",
    "omega_over_delta",
    "t_idle_before_times_delta",
    "t_idle_after_times_delta",
    "chrw_error",
    "exact_error",
]


def _idle_phase_1q(delta: float, t: float) -> np.ndarray:
    return np.diag([np.exp(0.5j * delta * t), np.exp(-0.5j * delta * t)])


def _idle_phase_2q(delta: float, t: float) -> np.ndarray:
    d = 0.5 * np.array([2 * delta, 0.0, 0.0, -2 * delta])
    return np.diag(np.exp(1j * d * t))


def cmd_solve_gate(args) -> None:
    try:
        winding = tuple(int(x) for x in args.winding.split(","))
        if len(winding) != 2:
            raise ValueError
    except ValueError:
        raise UsageError(f"--winding must be two integers, got {args.winding!r}")
    spp = args.steps_per_period
    rows: list[tuple] = []
    gate = args.gate
    if gate in ("Y", "X") and args.omega is None:
        res = gates_1q.solve_y_exact() if gate == "Y" else gates_1q.solve_x_exact()
        p = DriveParams(1.0, res.amplitude, res.omega)
        u = evolve_1q(p, 0.0, p.period, spp)
        uc = chrw.u_period(p)
        if gate == "Y":
            t_i, t_f = 0.0, 0.0
            target = Y_HALF_PI
        else:
            t_i, t_f = 0.0, math.pi
            target = X_HALF_PI
            u = _idle_phase_1q(1.0, t_f) @ u
            uc = _idle_phase_1q(1.0, t_f) @ uc
        rows.append(
            (gate, res.amplitude, res.omega, t_i, t_f,
             gate_error(uc, target), gate_error(u, target))
        )
    elif gate in ("Y", "X"):
        target = Y_HALF_PI if gate == "Y" else X_HALF_PI
        for a in gates_1q.family_curve(args.omega):
            p = DriveParams(1.0, a, args.omega)
            idles = gates_1q.idle_times_for(gate.lower(), p, winding)
            u = evolve_1q(p, 0.0, p.period, spp)
            wrap = lambda m: (
                _idle_phase_1q(1.0, idles.t_after) @ m @ _idle_phase_1q(1.0, idles.t_before)
            )
            sched = chrw.PulseSchedule(idles.t_before, idles.t_after, p)
            rows.append(
                (gate, a, args.omega, idles.t_before, idles.t_after,
                 gate_error(chrw.u_schedule(sched), target),
                 gate_error(wrap(u), target))
            )
    elif gate == "identity":
        if args.omega is None:
            raise UsageError("--gate identity requires --omega")
        a = gates_1q.identity_curve(args.omega, args.k)
        if a is not None:
            p = DriveParams(1.0, a, args.omega)
            u = evolve_1q(p, 0.0, p.period, spp)
            rows.append(
                ("identity", a, args.omega, 0.0, 0.0,
                 gate_error(chrw.u_period(p), IDENTITY_2),
                 gate_error(u, IDENTITY_2))
            )
    else:  # bswap
        if args.omega is None:
            res = gates_2q.solve_bswap()
            p2 = TwoQubitDriveParams(1.0, 1.0, res.amplitude, res.omega)
            u = evolve_2q(p2, 0.0, p2.period, spp)
            rows.append(
                ("bswap", res.amplitude, res.omega, 0.0, 0.0,
                 gate_error(gates_2q.u2q_period(p2), SQRT_BSWAP),
                 gate_error(u, SQRT_BSWAP))
            )
        else:
            for a, idles in gates_2q.bswap_family_and_idles(args.omega, winding=winding):
                p2 = TwoQubitDriveParams(1.0, 1.0, a, args.omega)
                u = evolve_2q(p2, 0.0, p2.period, spp)
                wrap2 = lambda m: (
                    _idle_phase_2q(1.0, idles.t_after)
                    @ m
                    @ _idle_phase_2q(1.0, idles.t_before)
                )
                rows.append(
                    ("bswap", a, args.omega, idles.t_before, idles.t_after,
                     gate_error(wrap2(gates_2q.u2q_period(p2)), SQRT_BSWAP),
                     gate_error(wrap2(u), SQRT_BSWAP))
                )
    _write_csv(args.out, _SOLVE_HEADER, rows)


def _rates_point(task) -> tuple:
    a, w, delta, gamma, t_bath, mode, q_max, spp = task
    params = DriveParams(delta, a * delta, w * delta)
    model = floquet_rates.NoiseModel(gamma=gamma, t_bath=t_bath * delta)
    cells: list[float] = []
    gap = math.nan
    if mode in ("exact", "both"):
        r = floquet_rates.rates(params, model, "exact", q_max=q_max, steps_per_period=spp)
        cells += [r.gamma1 / gamma, r.gamma_phi / gamma, r.gamma2 / gamma]
        gap = r.floquet_gap / delta
    if mode in ("chrw", "both"):
        try:
            r = floquet_rates.rates(params, model, "chrw")
            chrw_cells = [r.gamma1 / gamma, r.gamma_phi / gamma, r.gamma2 / gamma]
            if math.isnan(gap):
                gap = r.floquet_gap / delta
        except NumericalError:
            chrw_cells = [math.nan] * 3
        if mode == "chrw":
            cells = chrw_cells
        else:
            cells += chrw_cells
    if mode == "both":
        return (a, w, cells[0], cells[1], cells[2], gap, cells[3], cells[4], cells[5])
    return (a, w, cells[0], cells[1], cells[2], gap)


def cmd_rates(args) -> None:
    a_grid, w_grid = _grid(args)
    aa, ww = _grid_rows(a_grid, w_grid)
    header = [
        "amplitude_over_delta",
        "omega_over_delta",
        "gamma1_over_gamma",
        "gamma_phi_over_gamma",
        "gamma2_over_gamma",
        "floquet_gap_over_delta",
    ]
    if args.mode == "both":
        header += [
            "gamma1_chrw_over_gamma",
            "gamma_phi_chrw_over_gamma",
            "gamma2_chrw_over_gamma",
        ]
    tasks = [
        (aa[i], ww[i], args.delta, args.gamma, args.t_bath, args.mode,
         args.q_max, args.steps_per_period)
        for i in range(aa.size)
    ]
    threads = _resolve_threads(args.threads)
    if threads > 1 and len(tasks) > 4 and args.mode != "chrw":
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_rates_point, tasks, chunksize=4))
    else:
        rows = [_rates_point(t) for t in tasks]
    _write_csv(args.out, header, rows)


def cmd_compare_approx(args) -> None:
    try:
        omegas = [float(x) for x in args.omegas.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"invalid --omegas list {args.omegas!r}")
    if not omegas:
        raise UsageError("empty --omegas list")
    delta = args.delta
    params = [DriveParams(delta, args.amplitude * delta, w * delta) for w in omegas]
    reports = approximants.compare(params, steps_per_period=args.steps_per_period)
    rows = (
        (r.omega / delta, r.amplitude / delta, r.p01_exact, r.p01_chrw,
         r.p01_dr, r.p01_magnus)
        for r in reports
    )
    _write_csv(
        args.out,
        ["omega_over_delta", "amplitude_over_delta", "p01_exact", "p01_chrw",
         "p01_dr", "p01_magnus"],
        rows,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, ValueError) as exc:
        print(f"error: numerical: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
