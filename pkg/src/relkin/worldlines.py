"""World lines parameterized by proper time, and orthogonal-time projection."""

from __future__ import annotations

import math

import numpy as np

from . import minkowski as mk
from .errors import DomainError, OrthogonalTimeError, ReturnConditionError


class WorldLine:
    """Twice differentiable curve r(s) with unit timelike velocity."""

    domain: tuple[float, float] = (-math.inf, math.inf)

    def point(self, s: float) -> np.ndarray:
        raise NotImplementedError

    def velocity(self, s: float) -> np.ndarray:
        raise NotImplementedError

    def acceleration(self, s: float) -> np.ndarray:
        raise NotImplementedError

    def validate(self, samples: np.ndarray) -> float:
        """Worst deviation from unit velocity and orthogonal acceleration."""
        worst = 0.0
        for s in samples:
            v = self.velocity(s)
            a = self.acceleration(s)
            worst = max(worst, abs(mk.dot(v, v) + 1.0), abs(mk.dot(v, a)))
        return worst


class GenericWorldLine(WorldLine):
    def __init__(self, point_fn, velocity_fn, acceleration_fn, domain=None):
        self._point = point_fn
        self._velocity = velocity_fn
        self._acceleration = acceleration_fn
        if domain is not None:
            self.domain = domain

    def point(self, s):
        return self._point(s)

    def velocity(self, s):
        return self._velocity(s)

    def acceleration(self, s):
        return self._acceleration(s)


def inertial_line(origin: np.ndarray, u: np.ndarray) -> GenericWorldLine:
    mk.check_four_velocity(u)
    zero = np.zeros(4)
    return GenericWorldLine(
        lambda s: origin + s * u, lambda s: u.copy(), lambda s: zero.copy()
    )


class CircularOrbit(WorldLine):
    """Helical world line r(s) = o + s*a*u + exp(s*b*G)(x0 - o).

    G is a spatial rotation generator of rate omega in a plane of E_u,
    a and b are constants with a^2 - b^2 |G(x0-o)|^2 = 1 so that s is
    proper time.  The conventional uniformly rotating point has a = b =
    gamma; other time and rotation coefficients describe the circular
    integral curves of the non-standard rotating frames.
    """

    def __init__(
        self,
        center: np.ndarray,
        axis_velocity: np.ndarray,
        generator: np.ndarray,
        start_point: np.ndarray,
        time_coef: float,
        rot_coef: float,
    ):
        mk.check_four_velocity(axis_velocity)
        if not mk.is_antisymmetric(generator):
            raise ValueError("generator is not g-antisymmetric")
        if np.linalg.norm(generator @ axis_velocity) > 1e-10:
            raise ValueError("generator does not annihilate the axis velocity")
        g2 = generator @ generator
        tr2 = float(np.trace(g2))
        if tr2 >= 0:
            raise ValueError("generator is not a spatial rotation")
        omega = np.sqrt(-tr2 / 2.0)
        if np.linalg.norm(g2 @ generator + omega**2 * generator) > 1e-10 * max(
            1.0, np.linalg.norm(generator) ** 3
        ):
            raise ValueError("generator is not a single-plane rotation")

        radial = start_point - center
        swing = generator @ radial
        v_rot = float(np.sqrt(max(mk.dot(swing, swing), 0.0)))
        norm_defect = abs(time_coef**2 - rot_coef**2 * v_rot**2 - 1.0)
        if norm_defect > 1e-10:
            raise ValueError(
                f"coefficients do not give unit speed (defect {norm_defect:.3g})"
            )

        self.center = np.asarray(center, dtype=float)
        self.axis_velocity = np.asarray(axis_velocity, dtype=float)
        self.generator = np.asarray(generator, dtype=float)
        self.start_point = np.asarray(start_point, dtype=float)
        self.time_coef = float(time_coef)
        self.rot_coef = float(rot_coef)
        self.omega = float(omega)
        self.rotation_speed = v_rot  # |G(x0 - o)|
        self._radial = radial
        self._g2 = g2

    @property
    def gamma(self) -> float:
        return self.time_coef

    def _rot(self, s: float) -> np.ndarray:
        # Rodrigues form of exp(s * rot_coef * G); G is a checked plane rotation
        phi = s * self.rot_coef * self.omega
        g = self.generator
        return (
            mk.IDENTITY
            + (np.sin(phi) / self.omega) * g
            + ((1.0 - np.cos(phi)) / self.omega**2) * self._g2
        )

    def point(self, s: float) -> np.ndarray:
        return (
            self.center
            + (s * self.time_coef) * self.axis_velocity
            + self._rot(s) @ self._radial
        )

    def velocity(self, s: float) -> np.ndarray:
        return self.time_coef * self.axis_velocity + self.rot_coef * (
            self._rot(s) @ (self.generator @ self._radial)
        )

    def acceleration(self, s: float) -> np.ndarray:
        return self.rot_coef**2 * (self._rot(s) @ (self._g2 @ self._radial))

    def proper_period(self) -> float:
        return 2.0 * np.pi / (self.rot_coef * self.omega)

    def time_guess(self, x: np.ndarray) -> float:
        """Proper time whose event shares x's level along the axis velocity."""
        return -mk.dot(self.axis_velocity, x - self.center) / self.time_coef


def make_circular_orbit(
    center: np.ndarray,
    axis_velocity: np.ndarray,
    rotation_plane: tuple[np.ndarray, np.ndarray],
    omega: float,
    radius: float,
) -> CircularOrbit:
    """Uniformly rotating point at the given radius, carried x toward y.

    rotation_plane is an ordered pair (e1, e2) of orthonormal spacelike
    vectors orthogonal to axis_velocity; the motion starts at
    center + radius*e1 and initially advances toward e2.
    """
    u = np.asarray(axis_velocity, dtype=float)
    mk.check_four_velocity(u)
    e1 = np.asarray(rotation_plane[0], dtype=float)
    e2 = np.asarray(rotation_plane[1], dtype=float)
    for name, e in (("e1", e1), ("e2", e2)):
        if abs(mk.dot(e, e) - 1.0) > 1e-10:
            raise ValueError(f"{name} is not a unit spacelike vector")
        if abs(mk.dot(e, u)) > 1e-10:
            raise ValueError(f"{name} is not orthogonal to the axis velocity")
    if abs(mk.dot(e1, e2)) > 1e-10:
        raise ValueError("rotation plane vectors are not orthogonal")
    if omega <= 0 or radius <= 0:
        raise ValueError("omega and radius must be positive")
    v = omega * radius
    if v >= 1.0:
        raise DomainError(f"superluminal orbit: omega*radius = {v:.6g} >= 1")
    gamma = mk.gamma_of_speed(v)
    generator = omega * mk.wedge(e2, e1)
    start = np.asarray(center, dtype=float) + radius * e1
    return CircularOrbit(center, u, generator, start, gamma, gamma)


def return_time(line: CircularOrbit) -> float:
    """Smallest s_T > 0 with velocity(s_T) = velocity(0)."""
    if not isinstance(line, CircularOrbit):
        raise TypeError("return_time is defined for circular orbits")
    s_t = line.proper_period()
    drift = np.linalg.norm(line.velocity(s_t) - line.velocity(0.0))
    if drift > 1e-10:
        raise ReturnConditionError(f"velocity drift {drift:.3g} at s_T")
    return s_t


NEWTON_RESIDUAL_TOL = 1e-13
NEWTON_MAX_ITER = 50
DENOMINATOR_GUARD = 0.1


def _scan_brackets(f, lo: float, hi: float, samples: int):
    ss = np.linspace(lo, hi, samples)
    vals = np.array([f(s) for s in ss])
    brackets = []
    for i in range(len(ss) - 1):
        if vals[i] == 0.0:
            brackets.append((ss[i], ss[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            brackets.append((ss[i], ss[i + 1]))
    if vals[-1] == 0.0:
        brackets.append((ss[-1], ss[-1]))
    return brackets


def orthogonal_time(
    line: WorldLine,
    x: np.ndarray,
    window: tuple[float, float] | None = None,
    samples: int = 160,
) -> float:
    """Proper time s with x - r(s) orthogonal to the velocity at r(s).

    The root of f(s) = dot(x - r(s), velocity(s)) is bracketed by a scan
    over the window and polished by Newton iteration with the analytic
    derivative 1 + dot(x - r(s), acceleration(s)).  Several brackets mean
    x is outside the tube where the projection is well defined.
    """
    if window is None:
        if isinstance(line, CircularOrbit):
            guess = line.time_guess(x)
            half = line.proper_period()
            window = (guess - half, guess + half)
        elif all(np.isfinite(line.domain)):
            window = line.domain
        else:
            raise OrthogonalTimeError("no window supplied for an unbounded line")

    def f(s):
        return mk.dot(x - line.point(s), line.velocity(s))

    brackets = _scan_brackets(f, window[0], window[1], samples)
    if len(brackets) == 0:
        raise OrthogonalTimeError("no orthogonality root inside the window")
    if len(brackets) > 1:
        raise OrthogonalTimeError(
            f"{len(brackets)} orthogonality roots inside the window; "
            "the point is outside the tube where projection is unique"
        )
    lo, hi = brackets[0]
    s = 0.5 * (lo + hi)
    f_lo = f(lo)
    for _ in range(NEWTON_MAX_ITER):
        fs = f(s)
        denom = 1.0 + mk.dot(x - line.point(s), line.acceleration(s))
        if denom < DENOMINATOR_GUARD:
            raise OrthogonalTimeError(
                f"Newton denominator {denom:.3g} below guard; the point is "
                "too far from the world line for a stable projection"
            )
        if abs(fs) < NEWTON_RESIDUAL_TOL:
            return float(s)
        step = fs / denom
        s_new = s - step
        if lo < hi and not (lo <= s_new <= hi):
            # bisect on the sub-interval that still brackets the root
            if f_lo * fs < 0:
                hi = s
            else:
                lo, f_lo = s, fs
            s_new = 0.5 * (lo + hi)
        s = s_new
    raise OrthogonalTimeError("Newton iteration did not converge")
