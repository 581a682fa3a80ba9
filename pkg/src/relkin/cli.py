"""Command-line front end.

Subcommands: rigidity, thomas, foucault, compare, sweep, selfcheck.
Exit codes: 0 success, 2 inconclusive verdict, 3 precondition refusal,
64 usage or configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys

import numpy as np

from . import minkowski as mk
from .acceptance import run_selfcheck
from .errors import RelkinError, ScenarioError
from .frames import profile_ode_residual, rigidity_residual
from .precession import (
    compare_foucault_vs_thomas,
    foucault_precession,
    integrate_gyro_in_frame,
    thomas_rotation,
)
from .scenario import PROFILE_KINDS, Scenario, load_scenario, scenario_frame
from .transport import _fw_operator_grid

EXIT_OK = 0
EXIT_INCONCLUSIVE = 2
EXIT_REFUSED = 3
EXIT_USAGE = 64

COMPARE_COLUMNS = (
    "v,gamma,s_T,thomas_angle_unwrapped,foucault_angle_unwrapped,"
    "rigidity_residual,condition_e_residual,verdict"
)


def _g(x) -> str:
    return f"{float(x):.12g}"


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="relkin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_command(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scenario", required=True, help="scenario file (key = value lines)")
        p.add_argument("--steps", type=int, help="override integrator.step_count")
        p.add_argument("--figures", metavar="DIR", help="also render figures into DIR")
        return p

    p = scenario_command("rigidity", "rigidity residuals and verdict for a frame")
    p.set_defaults(func=cmd_rigidity)

    p = scenario_command("thomas", "net rotation of a gyroscope returning to the start point")
    p.add_argument("--csv", help="write a CSV row to this path")
    p.set_defaults(func=cmd_thomas)

    p = scenario_command("foucault", "precession of a comoving gyroscope in the frame")
    p.add_argument("--csv", help="write the comoving gyro history to this path")
    p.set_defaults(func=cmd_foucault)

    p = scenario_command("compare", "Foucault vs Thomas angles and the matching condition")
    p.add_argument("--csv", help="write the CSV row to this path instead of stdout")
    p.set_defaults(func=cmd_compare)

    p = scenario_command("sweep", "compare rows over a range of orbit speeds")
    p.add_argument("--param", default="v", help="swept parameter (only v is supported)")
    p.add_argument("--from", dest="from_", type=float, required=True, metavar="LO")
    p.add_argument("--to", dest="to", type=float, required=True, metavar="HI")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--csv", help="write rows to this path instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selfcheck", help="run every advertised numerical check")
    p.add_argument("--list", action="store_true", help="print check ids without running")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def _load(args) -> Scenario:
    sc = load_scenario(args.scenario)
    if getattr(args, "steps", None) is not None:
        sc = dataclasses.replace(sc, step_count=args.steps)
    sc.validate()
    return sc


def _figure_path(args, name: str) -> str | None:
    if getattr(args, "figures", None) is None:
        return None
    os.makedirs(args.figures, exist_ok=True)
    return os.path.join(args.figures, name)


def _write_csv(path: str | None, header: str, rows: list[str]) -> None:
    text = header + "\n" + "".join(r + "\n" for r in rows)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _compare_row(sc: Scenario) -> tuple[dict, object]:
    frame, line = scenario_frame(sc)
    s_t = line.proper_period()
    res = compare_foucault_vs_thomas(frame, line, s_t, s_t / sc.step_count)
    row = {
        "v": line.rotation_speed,
        "gamma": line.gamma,
        "s_T": s_t,
        "thomas_angle_unwrapped": res.thomas_angle_unwrapped,
        "foucault_angle_unwrapped": res.foucault_angle_unwrapped,
        "rigidity_residual": rigidity_residual(frame, line.point(0.0)),
        "condition_e_residual": res.condition_e_residual,
        "verdict": res.verdict,
    }
    return row, res


def _format_compare_row(row: dict) -> str:
    cells = [_g(row[c]) for c in COMPARE_COLUMNS.split(",")[:-1]]
    cells.append(row["verdict"])
    return ",".join(cells)


def cmd_rigidity(args) -> int:
    sc = _load(args)
    frame, line = scenario_frame(sc)
    period = line.proper_period()
    s_values = np.linspace(0.0, period, 33)
    residuals = [rigidity_residual(frame, line.point(float(s))) for s in s_values]
    for s, r in zip(s_values, residuals):
        print(f"s={_g(s)}  residual={_g(r)}")
    if sc.frame_kind in PROFILE_KINDS:
        from .frames import make_rotating_profile

        k = (sc.omega * sc.radius) ** 2
        r1, r2 = profile_ode_residual(make_rotating_profile(sc.frame_kind, sc.frame_a), k)
        print(f"profile equation residuals at k={_g(k)}: {_g(r1)}, {_g(r2)}")
    worst, best = max(residuals), min(residuals)
    if worst < sc.tol_rigid:
        verdict, code = "rigid", EXIT_OK
    elif best > sc.tol_nonrigid:
        verdict, code = "non-rigid", EXIT_OK
    else:
        verdict, code = "inconclusive", EXIT_INCONCLUSIVE
    print(f"max residual {_g(worst)}  min residual {_g(best)}  verdict: {verdict}")
    fig = _figure_path(args, "rigidity.png")
    if fig:
        from .figures import render_rigidity

        render_rigidity(fig, s_values, residuals, f"{sc.frame_kind} rigidity residuals")
        print(f"figure: {fig}")
    return code


def cmd_thomas(args) -> int:
    sc = _load(args)
    _, line = scenario_frame(sc)
    s_t = line.proper_period()
    res = thomas_rotation(line, s_t, s_t / sc.step_count)
    print(f"return proper time s_T = {_g(s_t)}")
    print(f"principal angle = {_g(res.angle)} rad")
    print(f"unwrapped angle = {_g(res.unwrapped_angle)} rad")
    axis = "none" if res.axis is None else "(" + ", ".join(_g(c) for c in res.axis) + ")"
    print(f"axis = {axis}")
    print(f"retrograde (against the orbit) = {'true' if res.retrograde else 'false'}")
    if args.csv:
        header = "v,gamma,s_T,thomas_angle_principal,thomas_angle_unwrapped,retrograde"
        row = ",".join(
            [
                _g(line.rotation_speed),
                _g(line.gamma),
                _g(s_t),
                _g(res.angle),
                _g(res.unwrapped_angle),
                "true" if res.retrograde else "false",
            ]
        )
        _write_csv(args.csv, header, [row])
        print(f"csv: {args.csv}")
    fig = _figure_path(args, "thomas_orbit.png")
    if fig:
        from .figures import render_orbit_gyro

        n = 256
        ops = _fw_operator_grid(line, 0.0, s_t, n)
        d = line.start_point - line.center
        z0 = d / mk.spatial_norm(d)
        idx = range(0, n + 1, 16)
        points = np.array([line.point(i * s_t / n) for i in idx])
        vectors = np.array([ops[i] @ z0 for i in idx])
        render_orbit_gyro(fig, points, vectors, "transported gyro around the orbit")
        print(f"figure: {fig}")
    return EXIT_OK


def cmd_foucault(args) -> int:
    sc = _load(args)
    frame, line = scenario_frame(sc)
    s_t = line.proper_period()
    report = foucault_precession(frame, line, s_t, s_t / sc.step_count)
    print(f"comoving rate antisymmetry residual = {_g(report.antisymmetry_residual)}")
    if not report.meaningful:
        print("verdict: precession is not meaningful for this frame (refusing)")
        return EXIT_REFUSED
    rates = [mk.rotation_rate(w) for _, w in report.omega0_samples]
    print(
        f"comoving rotation rate over one period: min {_g(min(rates))}  "
        f"max {_g(max(rates))}"
    )
    d = line.start_point - line.center
    z0 = d / mk.spatial_norm(d)
    history = integrate_gyro_in_frame(frame, line, z0, s_t, s_t / sc.step_count)
    h_end = history[-1][1]
    q = math.sqrt(mk.dot(z0, z0) * mk.dot(h_end, h_end))
    angle = math.acos(max(-1.0, min(1.0, mk.dot(z0, h_end) / q)))
    print(f"gyro deflection in the frame after one period = {_g(angle)} rad")
    if args.csv:
        header = "s,h_t,h_x,h_y,h_z"
        rows = [",".join([_g(s)] + [_g(c) for c in h]) for s, h in history]
        _write_csv(args.csv, header, rows)
        print(f"csv: {args.csv}")
    fig = _figure_path(args, "foucault_gyro.png")
    if fig:
        from .figures import render_gyro_history

        render_gyro_history(fig, history, "comoving gyro components")
        print(f"figure: {fig}")
    return EXIT_OK


def cmd_compare(args) -> int:
    sc = _load(args)
    row, res = _compare_row(sc)
    print(f"v = {_g(row['v'])}  gamma = {_g(row['gamma'])}  s_T = {_g(row['s_T'])}")
    print(f"thomas angle (unwrapped) = {_g(row['thomas_angle_unwrapped'])} rad")
    print(f"foucault angle (unwrapped) = {_g(row['foucault_angle_unwrapped'])} rad")
    print(f"condition-e residual = {_g(row['condition_e_residual'])}")
    print(f"verdict: {row['verdict']}")
    _write_csv(args.csv, COMPARE_COLUMNS, [_format_compare_row(row)])
    if args.csv:
        print(f"csv: {args.csv}")
    fig = _figure_path(args, "compare_gyro.png")
    if fig:
        from .figures import render_gyro_history

        frame, line = scenario_frame(sc)
        d = line.start_point - line.center
        z0 = d / mk.spatial_norm(d)
        history = integrate_gyro_in_frame(frame, line, z0, row["s_T"], row["s_T"] / sc.step_count)
        render_gyro_history(fig, history, "comoving gyro components")
        print(f"figure: {fig}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.param != "v":
        raise ScenarioError(f"unsupported sweep parameter {args.param!r} (only v)")
    if not (0.0 < args.from_ < args.to < 1.0):
        raise ScenarioError("sweep range must satisfy 0 < from < to < 1")
    if args.count < 1:
        raise ScenarioError("count must be at least 1")
    sc = _load(args)
    speeds = np.linspace(args.from_, args.to, args.count)
    rows = []
    dicts = []
    for v in speeds:
        row_sc = dataclasses.replace(sc, radius=float(v) / sc.omega)
        row, _ = _compare_row(row_sc)
        dicts.append(row)
        rows.append(_format_compare_row(row))
    _write_csv(args.csv, COMPARE_COLUMNS, rows)
    if args.csv:
        print(f"csv: {args.csv} ({len(rows)} rows)")
    fig = _figure_path(args, "sweep.png")
    if fig:
        from .figures import render_sweep

        render_sweep(fig, dicts)
        print(f"figure: {fig}")
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    return run_selfcheck(list_only=args.list)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RelkinError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
