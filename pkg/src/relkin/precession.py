"""Foucault precession, Thomas rotation, and the comparison between them.

Everything here runs on top of the transport module: the spacelike Lie
transport A(s) of a frame along one of its space points gives the
comoving gyroscope equation h0' = -(A^-1 Adot) h0, and Fermi-Walker
transport of a spatial triad gives the net rotation once the velocity
returns to its initial value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import minkowski as mk
from .errors import (
    MeaningfulnessError,
    PreconditionError,
    RelkinError,
    ReturnConditionError,
    StepRejectedError,
)
from .frames import FrameField, TransportFrame, angular_velocity
from .transport import LieTransportGrid, _fw_operator_grid
from .worldlines import CircularOrbit, WorldLine

MEANINGFUL_TOL = 1e-6
RETURN_TOL = 1e-8
MATCH_CONDITION_TOL = 1e-6
MATCH_ANGLE_TOL = 1e-5
UNWRAP_MAX_STEP_ANGLE = 0.5
UNWRAP_MAX_NODES = 4096


def _steps_for(s_max: float, step: float) -> int:
    if step <= 0.0:
        raise ValueError("step must be positive")
    return max(2, int(round(abs(s_max) / step)))


def _sample_indices(n_steps: int, n_samples: int) -> np.ndarray:
    """Interior node indices, where the stored Adot uses central stencils."""
    lo = 2 if n_steps >= 5 else 1
    return np.unique(
        np.linspace(lo, n_steps - lo, n_samples).round().astype(int)
    )


def _frame_angvel(frame: FrameField, line: WorldLine, s: float) -> np.ndarray:
    on_curve = getattr(frame, "angular_velocity_on_curve", None)
    if on_curve is not None and getattr(frame, "line", None) is line:
        return on_curve(s)
    return angular_velocity(frame, line.point(s))


@dataclass
class PrecessionReport:
    """Meaningfulness and sampled angular velocities of a gyroscope
    relative to a co-moving frame."""

    meaningful: bool
    antisymmetry_residual: float
    omega0_samples: list[tuple[float, np.ndarray]]
    omega_samples: list[tuple[float, np.ndarray]]
    frame_angvel_samples: list[tuple[float, np.ndarray]]


def foucault_precession(
    frame: FrameField,
    line: WorldLine,
    s_max: float,
    step: float,
    n_samples: int = 33,
) -> PrecessionReport:
    """Precession of a gyroscope relative to the frame along one of the
    frame's space points.

    The comoving rate Omega0 = -A^-1 Adot must be antisymmetric for the
    precession to mean a rotation; the report carries the worst
    antisymmetry residual over the samples and, when meaningful, the
    precession rate Omega = -Adot A^-1 at the same parameters.
    """
    grid = LieTransportGrid(frame, line, s_max, _steps_for(s_max, step))
    idx = _sample_indices(grid.n_steps, n_samples)
    omega0 = [(float(grid.s[i]), grid.comoving_rate(i)) for i in idx]
    residual = max(mk.antisymmetry_defect(w) for _, w in omega0)
    meaningful = residual < MEANINGFUL_TOL
    omega = []
    if meaningful:
        omega = [(float(grid.s[i]), grid.precession_rate(i)) for i in idx]
    angvel = [(float(grid.s[i]), _frame_angvel(frame, line, float(grid.s[i]))) for i in idx]
    return PrecessionReport(
        meaningful=meaningful,
        antisymmetry_residual=float(residual),
        omega0_samples=omega0,
        omega_samples=omega,
        frame_angvel_samples=angvel,
    )


def integrate_gyro_in_frame(
    frame: FrameField,
    line: WorldLine,
    z0: np.ndarray,
    s_max: float,
    step: float,
) -> list[tuple[float, np.ndarray]]:
    """Evolution of a gyroscopic vector in the comoving representation.

    Solves h0' = -(A^-1 Adot) h0 on the transport grid and cross-checks
    the result against A(s)^-1 z(s) with z from Fermi-Walker transport;
    disagreement beyond 1e-6 rejects the step size.
    """
    z0 = np.asarray(z0, dtype=float)
    u0 = line.velocity(0.0)
    if abs(mk.dot(z0, u0)) > 1e-10:
        raise PreconditionError("initial vector is not orthogonal to the velocity")
    n = _steps_for(s_max, step)
    n += n % 2
    grid = LieTransportGrid(frame, line, s_max, n)
    idx = _sample_indices(n, 33)
    residual = max(mk.antisymmetry_defect(grid.comoving_rate(i)) for i in idx)
    if residual >= MEANINGFUL_TOL:
        raise MeaningfulnessError(
            f"comoving rate is not a rotation (antisymmetry residual {residual:.3g})"
        )

    h2 = 2.0 * (grid.s[1] - grid.s[0])
    rates = [grid.comoving_rate(i) for i in range(n + 1)]
    out = [(0.0, z0.copy())]
    y = z0.copy()
    for j in range(0, n, 2):
        w0, wm, w1 = rates[j], rates[j + 1], rates[j + 2]
        k1 = w0 @ y
        k2 = wm @ (y + 0.5 * h2 * k1)
        k3 = wm @ (y + 0.5 * h2 * k2)
        k4 = w1 @ (y + h2 * k3)
        y = y + (h2 / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out.append((float(grid.s[j + 2]), y.copy()))

    fw = _fw_operator_grid(line, 0.0, s_max, n)
    worst = 0.0
    for (s_i, h0), j in zip(out, range(0, n + 1, 2)):
        check = grid.A_inv[j] @ (fw[j] @ z0)
        worst = max(worst, float(np.abs(h0 - check).max()))
    if worst > 1e-6:
        raise StepRejectedError(
            f"comoving gyro integration disagrees with transported vector by {worst:.3g}"
        )
    return out


# -- unwrapped angles -----------------------------------------------------


def _axial(m3: np.ndarray) -> np.ndarray:
    """3-vector of the antisymmetric part of a 3x3 matrix."""
    return 0.5 * np.array(
        [m3[2, 1] - m3[1, 2], m3[0, 2] - m3[2, 0], m3[1, 0] - m3[0, 1]]
    )


def accumulated_rotation_angle(
    maps: np.ndarray,
    u0: np.ndarray,
    reference_generator: np.ndarray | None = None,
) -> float:
    """Signed accumulated angle of a one-parameter family of rotations of E_u0.

    maps is an (n, 4, 4) family starting at the identity on E_u0.  Each
    consecutive pair contributes its rotation angle, signed against the
    orientation of reference_generator (positive = same sense); without a
    reference the contributions are summed unsigned.
    """
    triad = mk.orthonormal_triad(u0)
    e = np.column_stack(triad)
    left = e.T @ mk.METRIC
    m = np.einsum("ai,nij,jb->nab", left, np.asarray(maps, dtype=float), e)
    d = m[1:] @ np.transpose(m[:-1], (0, 2, 1))
    w = 0.5 * np.stack(
        [
            d[:, 2, 1] - d[:, 1, 2],
            d[:, 0, 2] - d[:, 2, 0],
            d[:, 1, 0] - d[:, 0, 1],
        ],
        axis=1,
    )
    sin_t = np.linalg.norm(w, axis=1)
    cos_t = 0.5 * (np.trace(d, axis1=1, axis2=2) - 1.0)
    theta = np.arctan2(sin_t, cos_t)
    if theta.size and float(theta.max()) > UNWRAP_MAX_STEP_ANGLE:
        raise StepRejectedError("sampling too coarse to unwrap the rotation angle")
    if reference_generator is None:
        return float(theta.sum())
    ref3 = _axial(left @ reference_generator @ e)
    nref = np.linalg.norm(ref3)
    if nref < 1e-14:
        return float(theta.sum())
    sign = np.where(w @ (ref3 / nref) < 0.0, -1.0, 1.0)
    return float((sign * theta).sum())


def _batched_boost(u0: np.ndarray, us: np.ndarray) -> np.ndarray:
    """Boosts from u0 to each row of us, stacked."""
    c = us @ mk.METRIC @ u0
    s = us + u0
    t1 = np.einsum("ni,j->nij", us, u0) @ mk.METRIC
    t2 = np.einsum("ni,nj->nij", s, s) @ mk.METRIC / (1.0 - c)[:, None, None]
    b = np.broadcast_to(np.eye(4), t1.shape).copy() - 2.0 * t1 + t2
    b[c > -1.0 + 1e-15] = np.eye(4)
    return b


def _tracking_indices(n_steps: int) -> np.ndarray:
    k = min(n_steps, UNWRAP_MAX_NODES)
    return np.unique(np.linspace(0, n_steps, k + 1).round().astype(int))


@dataclass
class ThomasResult:
    """Net gyroscopic rotation at a return time of the velocity."""

    s_T: float
    angle: float                      # principal value in [0, pi]
    axis: np.ndarray | None
    rotation: np.ndarray              # the full map on E_{rdot(0)}
    unwrapped_angle: float            # accumulated angle, always >= 0
    retrograde: bool | None           # sense vs the reference orientation


def thomas_rotation(
    line: WorldLine,
    s_T: float,
    step: float,
    reference_generator: np.ndarray | None = None,
) -> ThomasResult:
    """Rotation mapping a gyroscope's initial triad to its final triad.

    Defined only when the velocity at s_T has returned to its initial
    value; the rotation is the restriction to E_{rdot(0)} of the
    Fermi-Walker transport over [0, s_T].  The accumulated angle is
    tracked continuously through the boost-relative rotation family, so
    windings beyond pi are reported faithfully.
    """
    u0 = line.velocity(0.0)
    gap = float(np.linalg.norm(line.velocity(s_T) - u0))
    if gap > RETURN_TOL:
        raise ReturnConditionError(
            f"velocity has not returned at s_T (gap {gap:.3g}); rotation undefined"
        )
    if reference_generator is None and isinstance(line, CircularOrbit):
        reference_generator = line.generator
    n = _steps_for(s_T, step)
    fw = _fw_operator_grid(line, 0.0, s_T, n)
    rotation = fw[-1]
    angle, axis = mk.rotation_angle(rotation, u0)

    idx = _tracking_indices(n)
    us = np.array([line.velocity(s_T * i / n) for i in idx])
    rel = np.transpose(
        mk.METRIC @ _batched_boost(u0, us) @ mk.METRIC, (0, 2, 1)
    ) @ fw[idx]
    total = accumulated_rotation_angle(rel, u0, reference_generator)
    retrograde = None if reference_generator is None else bool(total < 0.0)
    return ThomasResult(
        s_T=float(s_T),
        angle=angle,
        axis=axis,
        rotation=rotation,
        unwrapped_angle=abs(total),
        retrograde=retrograde,
    )


@dataclass
class RotationComparison:
    """Foucault angle vs Thomas angle at a return time, with the residual
    of the transport-matches-identification condition."""

    s_T: float
    thomas_angle: float
    foucault_angle: float
    condition_e_residual: float
    natural_identification: np.ndarray = field(
        default_factory=lambda: np.eye(4)
    )
    thomas_angle_unwrapped: float = 0.0
    foucault_angle_unwrapped: float = 0.0
    thomas_retrograde: bool | None = None
    foucault_retrograde: bool | None = None

    @property
    def verdict(self) -> str:
        ok = (
            self.condition_e_residual < MATCH_CONDITION_TOL
            and abs(self.thomas_angle - self.foucault_angle) < MATCH_ANGLE_TOL
        )
        return "match" if ok else "mismatch"


def _default_gyro_vector(line: WorldLine, u0: np.ndarray) -> np.ndarray:
    if isinstance(line, CircularOrbit):
        d = line.start_point - line.center
        return d / mk.spatial_norm(d)
    return mk.orthonormal_triad(u0)[0]


def compare_foucault_vs_thomas(
    frame: FrameField,
    line: WorldLine,
    s_T: float,
    step: float,
    z0: np.ndarray | None = None,
) -> RotationComparison:
    """Compare the gyroscope's rotation seen in the frame with its rotation
    under the natural identification of the endpoint rest spaces.

    Requires a meaningful precession and a returned velocity at s_T.  The
    two principal angles come from the cosine formulas; the unwrapped
    angles track the continuous rotation families over the whole
    interval.
    """
    u0 = line.velocity(0.0)
    gap = float(np.linalg.norm(line.velocity(s_T) - u0))
    if gap > RETURN_TOL:
        raise ReturnConditionError(
            f"velocity has not returned at s_T (gap {gap:.3g})"
        )
    n = _steps_for(s_T, step)
    grid = LieTransportGrid(frame, line, s_T, n)
    idx = _sample_indices(n, 33)
    residual = max(mk.antisymmetry_defect(grid.comoving_rate(i)) for i in idx)
    if residual >= MEANINGFUL_TOL:
        raise MeaningfulnessError(
            "Foucault precession is not meaningful for this frame "
            f"(antisymmetry residual {residual:.3g})"
        )

    if z0 is None:
        z0 = _default_gyro_vector(line, u0)
    z0 = np.asarray(z0, dtype=float)
    if abs(mk.dot(z0, u0)) > 1e-10:
        raise PreconditionError("gyro vector is not orthogonal to the velocity")
    q = mk.dot(z0, z0)

    fw = _fw_operator_grid(line, 0.0, s_T, n)
    z_final = fw[-1] @ z0
    n_map = np.eye(4)
    theta_f = float(
        np.arccos(np.clip(mk.dot(z0, grid.A_inv[-1] @ z_final) / q, -1.0, 1.0))
    )
    theta_t = float(
        np.arccos(np.clip(mk.dot(z0, np.linalg.inv(n_map) @ z_final) / q, -1.0, 1.0))
    )
    cond_e = float(np.linalg.norm(grid.A[-1] - n_map @ grid.P[0]))

    ref = line.generator if isinstance(line, CircularOrbit) else None
    tidx = _tracking_indices(n)
    us = np.array([line.velocity(float(grid.s[i])) for i in tidx])
    rel = np.transpose(
        mk.METRIC @ _batched_boost(u0, us) @ mk.METRIC, (0, 2, 1)
    ) @ fw[tidx]
    total_t = accumulated_rotation_angle(rel, u0, ref)
    comoving = grid.A_inv[tidx] @ fw[tidx]
    total_f = accumulated_rotation_angle(comoving, u0, ref)

    return RotationComparison(
        s_T=float(s_T),
        thomas_angle=theta_t,
        foucault_angle=theta_f,
        condition_e_residual=cond_e,
        natural_identification=n_map,
        thomas_angle_unwrapped=abs(total_t),
        foucault_angle_unwrapped=abs(total_f),
        thomas_retrograde=None if ref is None else bool(total_t < 0.0),
        foucault_retrograde=None if ref is None else bool(total_f < 0.0),
    )


@dataclass
class WorldlineFrameDemo:
    """Angular velocities at r(s) of several frames sharing the space point r."""

    s_probe: float
    at_start: dict[str, np.ndarray]
    at_probe: dict[str, np.ndarray]
    pairwise_min_difference: float


def angular_velocity_of_worldline_is_undefined_demo(
    orbit: CircularOrbit, gamma_rate: float = 0.3
) -> WorldlineFrameDemo:
    """Build several frames having the same orbit as a space point and show
    their angular velocities there disagree.

    A world line alone does not determine an angular velocity: the
    transported-rest-space frames (boost family, Fermi-Walker family, and
    a boost family composed with a fixed spatial rotation) all contain
    the orbit, yet report different rotation at its points.
    """
    u0 = orbit.velocity(0.0)
    t1, t2, _ = mk.orthonormal_triad(u0)
    gamma = gamma_rate * mk.wedge(t2, t1)
    frames = {
        "boost": TransportFrame(orbit, "boost"),
        "fermi_walker": TransportFrame(orbit, "fermi_walker"),
        "boost_gamma": TransportFrame(orbit, "boost", gamma),
    }
    s_probe = 0.37 * orbit.proper_period()
    at_start = {k: f.angular_velocity_on_curve(0.0) for k, f in frames.items()}
    at_probe = {k: f.angular_velocity_on_curve(s_probe) for k, f in frames.items()}
    names = list(frames)
    worst = np.inf
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            worst = min(
                worst,
                float(np.linalg.norm(at_probe[names[i]] - at_probe[names[j]])),
            )
    if worst <= 1e-3:
        raise RelkinError(
            f"frames failed to separate (smallest pairwise gap {worst:.3g})"
        )
    return WorldlineFrameDemo(
        s_probe=float(s_probe),
        at_start=at_start,
        at_probe=at_probe,
        pairwise_min_difference=worst,
    )
