"""Fixed-step RK4 integration of flows, linearized transport and
Fermi-Walker transport along world lines."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import minkowski as mk
from .errors import IntegralCurveError, PreconditionError, StepRejectedError
from .frames import FrameField
from .worldlines import WorldLine

DEFAULT_STEPS = 4096
CURVE_TOL = 1e-8
HALVING_TOL = 1e-6


def _rk4(rhs, y0, s0: float, s1: float, n_steps: int):
    h = (s1 - s0) / n_steps
    y = y0
    for i in range(n_steps):
        s = s0 + i * h
        k1 = rhs(s, y)
        k2 = rhs(s + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(s + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(s + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def integrate_flow(
    frame: FrameField, x: np.ndarray, t: float, n_steps: int = DEFAULT_STEPS
) -> np.ndarray:
    """Point reached after flowing for parameter time t along the frame field."""
    return _rk4(lambda s, y: frame.velocity(y), np.asarray(x, dtype=float), 0.0, t, n_steps)


def _jacobian_source(frame: FrameField, line: WorldLine):
    on_curve = getattr(frame, "jacobian_on_curve", None)
    if on_curve is not None and getattr(frame, "line", None) is line:
        return on_curve
    return lambda s: frame.jacobian(line.point(s))


def _check_integral_curve(frame: FrameField, line: WorldLine, s_max: float) -> None:
    for s in np.linspace(0.0, s_max, 17):
        gap = np.linalg.norm(frame.velocity(line.point(s)) - line.velocity(s))
        if gap > CURVE_TOL:
            raise IntegralCurveError(
                f"line is not an integral curve of the frame (gap {gap:.3g} at s={s:.4g})"
            )


def _integrate_jacobian_grid(jac_at, s_max: float, n_steps: int) -> np.ndarray:
    """Grid of the linearized flow L(s_i) with L' = DU(r(s)) L, L(0) = 1."""
    h = s_max / n_steps
    half = 0.5 * h
    jac = [jac_at(0.5 * j * h) for j in range(2 * n_steps + 1)]
    out = np.empty((n_steps + 1, 4, 4))
    out[0] = np.eye(4)
    l_cur = np.eye(4)
    for i in range(n_steps):
        j0, jm, j1 = jac[2 * i], jac[2 * i + 1], jac[2 * i + 2]
        k1 = j0 @ l_cur
        k2 = jm @ (l_cur + half * k1)
        k3 = jm @ (l_cur + half * k2)
        k4 = j1 @ (l_cur + h * k3)
        l_cur = l_cur + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = l_cur
    return out


@dataclass
class TransportState:
    """Linearized flow along a curve and its rest-space compression."""

    s: float
    flow_jacobian: np.ndarray          # L(s), derivative of the flow map
    spatial_transport: np.ndarray      # A(s) = P(s) L(s) P(0)
    spatial_transport_inv: np.ndarray  # P(0) L(s)^-1 P(s)
    projector_start: np.ndarray
    projector_end: np.ndarray


class LieTransportGrid:
    """Stored trajectory of the linearized flow over [0, s_max]."""

    def __init__(self, frame: FrameField, line: WorldLine, s_max: float, n_steps: int):
        if n_steps < 2:
            raise ValueError("need at least 2 steps")
        _check_integral_curve(frame, line, s_max)
        self.frame = frame
        self.line = line
        self.s_max = float(s_max)
        self.n_steps = int(n_steps)
        self.s = np.linspace(0.0, s_max, n_steps + 1)
        jac_at = _jacobian_source(frame, line)
        self.L = _integrate_jacobian_grid(jac_at, s_max, n_steps)

        vel = np.array([line.velocity(si) for si in self.s])
        # batched projectors P_i = 1 + u_i (u_i)^T G
        self.P = np.eye(4) + np.einsum("ni,nj->nij", vel, vel) @ mk.METRIC
        p0 = self.P[0]
        l_inv = np.linalg.inv(self.L)
        self.A = self.P @ self.L @ p0
        self.A_inv = p0 @ l_inv @ self.P
        h = self.s[1] - self.s[0]
        self.A_dot = np.empty_like(self.A)
        self.A_dot[1:-1] = (self.A[2:] - self.A[:-2]) / (2.0 * h)
        if self.n_steps >= 4:
            # five-point central stencil where it fits, matching the
            # integrator's own order away from the ends
            self.A_dot[2:-2] = (
                -self.A[4:] + 8.0 * self.A[3:-1] - 8.0 * self.A[1:-3] + self.A[:-4]
            ) / (12.0 * h)
        self.A_dot[0] = (-3.0 * self.A[0] + 4.0 * self.A[1] - self.A[2]) / (2.0 * h)
        self.A_dot[-1] = (3.0 * self.A[-1] - 4.0 * self.A[-2] + self.A[-3]) / (2.0 * h)

    def state(self, i: int) -> TransportState:
        return TransportState(
            s=float(self.s[i]),
            flow_jacobian=self.L[i],
            spatial_transport=self.A[i],
            spatial_transport_inv=self.A_inv[i],
            projector_start=self.P[0],
            projector_end=self.P[i],
        )

    def comoving_rate(self, i: int) -> np.ndarray:
        """-A^-1 Adot at node i, an operator on the initial rest space."""
        p0 = self.P[0]
        return -(p0 @ (self.A_inv[i] @ self.A_dot[i]) @ p0)

    def precession_rate(self, i: int) -> np.ndarray:
        """-Adot A^-1 at node i, compressed to the rest space at s_i."""
        p = self.P[i]
        return -(p @ (self.A_dot[i] @ self.A_inv[i]) @ p)


def integrate_lie_transport(
    frame: FrameField,
    line: WorldLine,
    s: float,
    n_steps: int = DEFAULT_STEPS,
    halving_check: bool = True,
) -> TransportState:
    """Transport of the rest space along an integral curve of the frame.

    Integrates L' = DU(r(sigma)) L to sigma = s and compresses between the
    rest spaces at the endpoints.  With halving_check the integration is
    repeated at half the step and rejected if the result moves by more
    than the acceptance tolerance.
    """
    _check_integral_curve(frame, line, s)
    jac_at = _jacobian_source(frame, line)
    l_final = _integrate_jacobian_grid(jac_at, s, n_steps)[-1]
    if halving_check:
        l_fine = _integrate_jacobian_grid(jac_at, s, 2 * n_steps)[-1]
        drift = float(np.linalg.norm(l_final - l_fine))
        if drift > HALVING_TOL:
            raise StepRejectedError(
                f"halving the step changed the transport by {drift:.3g}"
            )
    p0 = mk.projector(line.velocity(0.0))
    ps = mk.projector(line.velocity(s))
    return TransportState(
        s=float(s),
        flow_jacobian=l_final,
        spatial_transport=ps @ l_final @ p0,
        spatial_transport_inv=p0 @ np.linalg.inv(l_final) @ ps,
        projector_start=p0,
        projector_end=ps,
    )


# -- Fermi-Walker transport ---------------------------------------------


def _fw_rate_grid(line: WorldLine, s0: float, s1: float, n_steps: int) -> list[np.ndarray]:
    return [
        mk.wedge(line.velocity(s), line.acceleration(s))
        for s in np.linspace(s0, s1, 2 * n_steps + 1)
    ]


def _fw_operator_grid(line: WorldLine, s0: float, s1: float, n_steps: int) -> np.ndarray:
    """Grid of transport operators solving H' = (rdot ^ rddot) H."""
    h = (s1 - s0) / n_steps
    half = 0.5 * h
    rate = _fw_rate_grid(line, s0, s1, n_steps)
    out = np.empty((n_steps + 1, 4, 4))
    out[0] = np.eye(4)
    cur = np.eye(4)
    for i in range(n_steps):
        w0, wm, w1 = rate[2 * i], rate[2 * i + 1], rate[2 * i + 2]
        k1 = w0 @ cur
        k2 = wm @ (cur + half * k1)
        k3 = wm @ (cur + half * k2)
        k4 = w1 @ (cur + h * k3)
        cur = cur + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = cur
    return out


@dataclass
class GyroState:
    """Gyroscopic vector along a world line, optionally with its
    frame-space representative."""

    s: float
    vector: np.ndarray
    frame_representative: np.ndarray | None = None


def fermi_walker_transport(
    line: WorldLine, z0: np.ndarray, s: float, n_steps: int = DEFAULT_STEPS
) -> GyroState:
    """Fermi-Walker transport of z0 from r(0) to r(s).

    The transport law z' = rdot dot(rddot, z) - rddot dot(rdot, z)
    preserves dot(z, rdot) and the norm of z.
    """
    z0 = np.asarray(z0, dtype=float)
    if abs(mk.dot(z0, line.velocity(0.0))) > 1e-10:
        raise PreconditionError("initial vector is not orthogonal to the velocity")
    ops = _fw_operator_grid(line, 0.0, s, n_steps)
    return GyroState(s=float(s), vector=ops[-1] @ z0)


def transport_operator(
    line: WorldLine, variant: str, s: float, n_steps: int = DEFAULT_STEPS
) -> np.ndarray:
    """Lorentz map carrying the rest space at r(0) to r(s).

    variant 'boost' gives the closed-form boost between the endpoint
    velocities; 'fermi_walker' integrates the transport equation for the
    whole tangent space, which carries rdot(0) to rdot(s) as well.
    """
    if variant == "boost":
        return mk.boost(line.velocity(0.0), line.velocity(s))
    if variant == "fermi_walker":
        return _fw_operator_grid(line, 0.0, s, n_steps)[-1]
    raise ValueError(f"unknown transport variant {variant!r}")


class FermiWalkerFamily:
    """Fermi-Walker operators over a span, evaluable at arbitrary s.

    Operators are stored on a grid; off-grid values re-integrate from the
    nearest stored node with two small steps, keeping the dense output at
    the accuracy of the grid itself.
    """

    def __init__(self, line: WorldLine, s_lo: float, s_hi: float, n_steps: int):
        if not s_lo < 0.0 < s_hi and not s_lo == 0.0:
            s_lo = min(s_lo, 0.0)
        self.line = line
        self.s_lo = float(s_lo)
        self.s_hi = float(s_hi)
        self.h = (s_hi - s_lo) / n_steps
        # integrate forward and backward from 0 so H(0) is exactly 1
        n_fwd = int(round(s_hi / self.h))
        n_bwd = n_steps - n_fwd
        fwd = _fw_operator_grid(line, 0.0, n_fwd * self.h, n_fwd)
        if n_bwd > 0:
            bwd = _fw_operator_grid(line, 0.0, -n_bwd * self.h, n_bwd)
            self.grid = np.concatenate([bwd[::-1][:-1], fwd])
        else:
            self.grid = fwd
        self.s_lo = -n_bwd * self.h
        self.n_steps = n_steps

    def at(self, s: float) -> np.ndarray:
        if not self.s_lo - 1e-9 <= s <= self.s_hi + 1e-9:
            raise ValueError(f"s = {s:.6g} outside the transported span")
        idx = int(np.clip(np.floor((s - self.s_lo) / self.h), 0, self.n_steps))
        s_node = self.s_lo + idx * self.h
        delta = s - s_node
        cur = self.grid[idx]
        if abs(delta) < 1e-15:
            return cur.copy()
        line = self.line

        def rhs(sig, y):
            return mk.wedge(line.velocity(sig), line.acceleration(sig)) @ y

        return _rk4(rhs, cur, s_node, s, 2)
