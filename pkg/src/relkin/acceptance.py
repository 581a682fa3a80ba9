"""Self-check suite: every advertised numerical property, with stated
oracles and tolerances.

Each criterion function returns a list of CheckResult rows; the same
registry backs the selfcheck command and the test suite, so a claim
that fails here fails everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import minkowski as mk
from .frames import (
    RotatingFrame,
    TransportFrame,
    make_rotating_profile,
    orbit_of_rotating_frame,
    profile_ode_residual,
    rigidity_residual,
)
from .precession import (
    _sample_indices,
    compare_foucault_vs_thomas,
    integrate_gyro_in_frame,
    thomas_rotation,
)
from .transport import LieTransportGrid, _fw_operator_grid, integrate_flow
from .worldlines import make_circular_orbit, orthogonal_time

ORIGIN = np.zeros(4)
PLANE = (mk.E_X, mk.E_Y)


@dataclass
class CheckResult:
    cid: str
    passed: bool
    measured: float
    expected: float
    tolerance: float
    mode: str = "below"  # below | rel_below | above | between
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.mode == "between":
            tol = self.note or f"{self.tolerance:.6g}"
        elif self.mode == "above":
            tol = f">{self.tolerance:.6g}"
        else:
            tol = f"{self.tolerance:.6g}"
        return (
            f"{self.cid:<14s} {status}  measured={self.measured:.6g}  "
            f"expected={self.expected:.6g}  tolerance={tol}"
        )


def _below(cid: str, measured: float, tol: float, note: str = "") -> CheckResult:
    return CheckResult(cid, measured < tol, float(measured), 0.0, tol, "below", note)


def _rel_below(cid: str, measured: float, expected: float, tol: float) -> CheckResult:
    rel = abs(measured - expected) / abs(expected)
    return CheckResult(cid, rel < tol, float(rel), float(expected), tol, "rel_below")


def _above(cid: str, measured: float, bound: float, note: str = "") -> CheckResult:
    return CheckResult(cid, measured > bound, float(measured), bound, bound, "above", note)


def _between(cid: str, measured: float, lo: float, hi: float, target: float) -> CheckResult:
    return CheckResult(
        cid,
        lo < measured < hi,
        float(measured),
        target,
        hi,
        "between",
        f"({lo:.6g},{hi:.6g})",
    )


# -- shared fixtures ------------------------------------------------------


@lru_cache(maxsize=None)
def _orbit(v: float, omega: float = 1.0):
    return make_circular_orbit(
        center=ORIGIN,
        axis_velocity=mk.E_T,
        rotation_plane=PLANE,
        omega=omega,
        radius=v / omega,
    )


@lru_cache(maxsize=None)
def _rotating(kind: str, a: float = 1.0):
    profile = make_rotating_profile(kind, a)
    return RotatingFrame(profile, ORIGIN, mk.E_T, mk.wedge(mk.E_Y, mk.E_X))


@lru_cache(maxsize=None)
def _conv_grid(n: int = 4096):
    orbit = _orbit(0.5)
    frame = _rotating("conventional")
    return LieTransportGrid(frame, orbit, orbit.proper_period(), n)


@lru_cache(maxsize=None)
def _fw_ops(v: float, n: int):
    orbit = _orbit(v)
    return _fw_operator_grid(orbit, 0.0, orbit.proper_period(), n)


@lru_cache(maxsize=None)
def _conventional_compare(n: int = 4096):
    orbit = _orbit(0.5)
    frame = _rotating("conventional")
    s_t = orbit.proper_period()
    return compare_foucault_vs_thomas(frame, orbit, s_t, s_t / n)


@lru_cache(maxsize=None)
def _custom_compare(variant: str, n: int, gamma_rate: float = 0.0):
    orbit = _orbit(0.5)
    s_t = orbit.proper_period()
    gamma = None
    if gamma_rate:
        t1, t2, _ = mk.orthonormal_triad(orbit.velocity(0.0))
        gamma = gamma_rate * mk.wedge(t2, t1)
    frame = TransportFrame(orbit, variant, gamma)
    return compare_foucault_vs_thomas(frame, orbit, s_t, s_t / n)


@lru_cache(maxsize=None)
def _thomas_error(v: float, n: int) -> float:
    orbit = _orbit(v)
    s_t = orbit.proper_period()
    res = thomas_rotation(orbit, s_t, s_t / n)
    gamma = orbit.gamma
    return abs(res.unwrapped_angle - 2.0 * math.pi * (gamma - 1.0))


# -- criteria -------------------------------------------------------------


def criterion_1() -> list[CheckResult]:
    """Rigidity dichotomy between the conventional family and the
    historical alternatives."""
    out = []
    worst = 0.0
    for a in (1.0, 1.5):
        for v in (0.3, 0.5, 0.8):
            frame = _rotating("conventional", a)
            start = ORIGIN + (v / a) * mk.E_X
            line = orbit_of_rotating_frame(frame, start)
            period = line.proper_period()
            for s in np.linspace(0.0, period, 50):
                worst = max(worst, rigidity_residual(frame, line.point(s)))
    out.append(_below("1a", worst, 1e-8, "conventional frames rigid"))

    best = math.inf
    for kind, a in (("trocheris_takeno", 1.0), ("modified", 1.0), ("constant_a", 2.0)):
        frame = _rotating(kind, a)
        start = ORIGIN + (0.5 / a) * mk.E_X
        line = orbit_of_rotating_frame(frame, start)
        period = line.proper_period()
        for s in np.linspace(0.0, period, 10):
            best = min(best, rigidity_residual(frame, line.point(s)))
    out.append(_above("1b", best, 1e-3, "alternatives non-rigid"))
    return out


def criterion_2() -> list[CheckResult]:
    """Profile coefficient equations: the conventional family solves the
    rigidity conditions exactly; derivative code checked against closed
    forms written out independently."""
    worst = 0.0
    for a in (1.0, 1.5):
        profile = make_rotating_profile("conventional", a)
        for k in np.linspace(1e-6, 0.8 / a**2, 40):
            r1, r2 = profile_ode_residual(profile, k)
            worst = max(worst, abs(r1), abs(r2))
    out = [_below("2a", worst, 1e-12, "conventional family solves the conditions")]

    profile = make_rotating_profile("trocheris_takeno")
    k = 0.25
    w = math.sqrt(k)
    # independent closed-form derivatives of cosh(sqrt k) and sinh(sqrt k)/sqrt k
    alpha_p = math.sinh(w) / (2.0 * w)
    beta_p = (w * math.cosh(w) - math.sinh(w)) / (2.0 * w**3)
    alpha, beta = math.cosh(w), math.sinh(w) / w
    oracle = (
        2.0 * alpha_p - alpha * beta * beta,
        2.0 * beta_p - beta**3,
    )
    lib = profile_ode_residual(profile, k)
    gap = max(abs(lib[0] - oracle[0]), abs(lib[1] - oracle[1]))
    out.append(_below("2b", gap, 1e-9, "derivatives match the closed forms"))
    return out


def criterion_3() -> list[CheckResult]:
    """Net gyroscopic rotation per lab revolution equals 2 pi (gamma - 1),
    and the integrator converges at fourth order."""
    out = []
    for v in (0.3, 0.5, 0.8):
        gamma = mk.gamma_of_speed(v)
        orbit = _orbit(v)
        s_t = orbit.proper_period()
        res = thomas_rotation(orbit, s_t, s_t / 4096)
        out.append(
            _rel_below(f"3a-v{v}", res.unwrapped_angle, 2.0 * math.pi * (gamma - 1.0), 1e-6)
        )
    e1 = _thomas_error(0.8, 1024)
    e2 = _thomas_error(0.8, 2048)
    e3 = _thomas_error(0.8, 4096)
    out.append(_between("3b-1024/2048", e1 / e2, 8.0, 40.0, 16.0))
    out.append(_between("3b-2048/4096", e2 / e3, 8.0, 40.0, 16.0))
    return out


def criterion_4() -> list[CheckResult]:
    """Precession rate is the negative of the frame angular velocity for
    the rigid rotating frame."""
    grid = _conv_grid()
    frame = _rotating("conventional")
    orbit = _orbit(0.5)
    worst = 0.0
    for i in _sample_indices(grid.n_steps, 100):
        om = grid.precession_rate(i)
        du = frame.jacobian(orbit.point(float(grid.s[i])))
        p = grid.P[i]
        worst = max(worst, float(np.linalg.norm(om + p @ du @ p)))
    return [_below("4", worst, 1e-6, "Omega = -PDUP on the rigid frame")]


def criterion_5() -> list[CheckResult]:
    """Transport-matches-identification comparison: satisfied by the
    conventional frame, violated by the transported-rest-space frames."""
    conv = _conventional_compare()
    out = [
        _below("5a-cond", conv.condition_e_residual, 1e-6),
        _below("5a-angles", abs(conv.thomas_angle - conv.foucault_angle), 1e-5),
    ]
    fw = _custom_compare("fermi_walker", 16384)
    out.append(_below("5b-foucault", fw.foucault_angle, 1e-6))
    out.append(_above("5b-thomas", fw.thomas_angle, 0.9))
    s_t = _orbit(0.5).proper_period()
    gam = _custom_compare("boost", 4096, gamma_rate=0.5 / s_t)
    out.append(
        _above("5c", abs(gam.foucault_angle - gam.thomas_angle), 0.1, "Gamma shifts the angle")
    )
    return out


def criterion_6() -> list[CheckResult]:
    """Transport identities on the flow derivative and its rest-space
    compression."""
    orbit = _orbit(0.5)
    frame = _rotating("conventional")
    grid = _conv_grid()
    u0 = orbit.velocity(0.0)
    p0 = grid.P[0]
    n = grid.n_steps

    worst = 0.0
    for i in (n // 4, n // 2, n):
        worst = max(
            worst,
            float(np.abs(grid.L[i] @ u0 - orbit.velocity(float(grid.s[i]))).max()),
        )
    out = [_below("6-rlie", worst, 1e-6, "L carries the start velocity")]

    worst = 0.0
    for i in (n // 2, n):
        worst = max(
            worst,
            float(np.linalg.norm(grid.A_inv[i] @ grid.A[i] - p0)),
            float(np.linalg.norm(grid.A[i] @ grid.A_inv[i] - grid.P[i])),
        )
    out.append(_below("6-aao", worst, 1e-6, "A and its inverse compress to projectors"))

    s_t = orbit.proper_period()
    for variant in ("boost", "fermi_walker"):
        tframe = TransportFrame(orbit, variant)
        tgrid = LieTransportGrid(tframe, orbit, s_t, 2048)
        ops = _fw_ops(0.5, 2048) if variant == "fermi_walker" else None
        worst = 0.0
        for i in (512, 1024, 2048):
            h = ops[i] if ops is not None else tframe.transport_operator(float(tgrid.s[i]))
            worst = max(
                worst,
                float(np.linalg.norm(tgrid.A[i] - tgrid.P[i] @ h @ p0)),
            )
        out.append(
            _below(f"6-has-{variant}", worst, 1e-6, "Lie transport equals the carrying family")
        )

    eps = 1e-5
    worst = 0.0
    x0 = orbit.point(0.0)
    for direction in range(4):
        e = np.zeros(4)
        e[direction] = eps
        plus = integrate_flow(frame, x0 + e, s_t, 1024)
        minus = integrate_flow(frame, x0 - e, s_t, 1024)
        col = (plus - minus) / (2.0 * eps)
        ref = grid.L[-1][:, direction]
        worst = max(worst, float(np.abs(col - ref).max()) / max(1.0, float(np.abs(ref).max())))
    out.append(_below("6-flow", worst, 1e-5, "L matches flow finite differences"))
    return out


def criterion_7() -> list[CheckResult]:
    """Conservation: transported tetrads keep their inner products, the
    comoving gyro keeps its length, generator exponentials are isometries."""
    orbit = _orbit(0.5)
    u0 = orbit.velocity(0.0)
    ops = _fw_ops(0.5, 4096)
    tetrad = np.column_stack([u0] + mk.orthonormal_triad(u0))
    g0 = tetrad.T @ mk.METRIC @ tetrad
    worst = 0.0
    for i in (2048, 4096):
        z = ops[i] @ tetrad
        worst = max(worst, float(np.abs(z.T @ mk.METRIC @ z - g0).max()))
    out = [_below("7a", worst, 1e-9, "tetrad inner products preserved")]

    frame = _rotating("conventional")
    s_t = orbit.proper_period()
    d = orbit.start_point - orbit.center
    z0 = d / mk.spatial_norm(d)
    history = integrate_gyro_in_frame(frame, orbit, z0, s_t, s_t / 4096)
    drift = max(abs(math.sqrt(mk.dot(h, h)) - 1.0) for _, h in history)
    out.append(_below("7b", drift, 1e-7, "comoving gyro length preserved"))

    gens = [
        0.7 * mk.wedge(mk.E_Y, mk.E_X),
        0.5 * mk.wedge(mk.E_T, mk.E_X),
        0.4 * mk.wedge(mk.E_Y, mk.E_X) + 0.3 * mk.wedge(mk.E_T, mk.E_Z),
    ]
    worst = 0.0
    for gen in gens:
        for s in (0.5, 1.0, 2.0):
            worst = max(worst, mk.isometry_defect(mk.exp_generator(gen, s)))
    out.append(_below("7c", worst, 1e-10, "generator exponentials isometric"))
    return out


def criterion_8() -> list[CheckResult]:
    """Orthogonal-time projection: identity on the curve, chart gradient
    equal to minus the velocity."""
    lines = [_orbit(0.5)]
    tt = _rotating("trocheris_takeno")
    lines.append(orbit_of_rotating_frame(tt, ORIGIN + 0.5 * mk.E_X))
    worst = 0.0
    for line in lines:
        period = line.proper_period()
        for sigma in np.linspace(-1.0, 1.5 * period, 23):
            worst = max(worst, abs(orthogonal_time(line, line.point(sigma)) - sigma))
    out = [_below("8a", worst, 1e-10, "projection is the identity on the curve")]

    line = _orbit(0.5)
    eps = 1e-5
    worst = 0.0
    for sigma in (0.0, 1.3, 4.0):
        x = line.point(sigma)
        expected = -(mk.METRIC @ line.velocity(sigma))
        for direction in range(4):
            e = np.zeros(4)
            e[direction] = eps
            fd = (orthogonal_time(line, x + e) - orthogonal_time(line, x - e)) / (2 * eps)
            worst = max(worst, abs(fd - expected[direction]))
    out.append(_below("8b", worst, 1e-6, "chart gradient is minus the velocity"))
    return out


CRITERIA = {
    "1": ("rigidity dichotomy across frame families", criterion_1),
    "2": ("profile coefficient equations and derivative oracle", criterion_2),
    "3": ("net gyro rotation closed form and integrator order", criterion_3),
    "4": ("precession equals minus the frame angular velocity", criterion_4),
    "5": ("transport-matches-identification comparison", criterion_5),
    "6": ("transport identities", criterion_6),
    "7": ("conservation suite", criterion_7),
    "8": ("orthogonal-time projection", criterion_8),
}


def run_criterion(cid: str) -> list[CheckResult]:
    return CRITERIA[cid][1]()


def run_selfcheck(stream=None, list_only: bool = False) -> int:
    """Run (or list) every criterion; return a process exit code."""
    emit = stream.write if stream is not None else _stdout_write
    if list_only:
        for cid, (desc, _) in CRITERIA.items():
            emit(f"{cid}  {desc}\n")
        return 0
    ok = True
    for cid in CRITERIA:
        for res in run_criterion(cid):
            ok = ok and res.passed
            emit(res.line() + "\n")
    emit("selfcheck: " + ("all criteria passed\n" if ok else "FAILURES above\n"))
    return 0 if ok else 1


def _stdout_write(text: str) -> None:
    import sys

    sys.stdout.write(text)
