"""Reference frames as four-velocity fields, their Jacobians and rigidity.

A rotating frame around a center o with axis four-velocity u and rotation
generator G has velocity field

    U(x) = alpha(k) u + beta(k) G(x - o),      k = |G(x - o)|^2,

with alpha^2 - beta^2 k = 1 so U is unit timelike.  Different profile
functions (alpha, beta) give the conventional rigid family and the
historical non-rigid alternatives.  Transport frames extend a single
world line to a field by carrying its rest spaces with a family of
Lorentz maps (boost or Fermi-Walker, optionally composed with a fixed
spatial rotation exp(s*Gamma)).
"""

from __future__ import annotations

import math

import numpy as np

from . import minkowski as mk
from .errors import DomainError, PreconditionError
from .worldlines import CircularOrbit, WorldLine, orthogonal_time

FD_STEP = 1e-5


class RotatingProfile:
    """Coefficient pair (alpha, beta) as functions of k = |G(x-o)|^2."""

    def __init__(self, name: str, a: float = 1.0):
        if name not in ("conventional", "trocheris_takeno", "modified", "constant_a"):
            raise ValueError(f"unknown profile {name!r}")
        if name == "conventional" and a < 1.0:
            raise ValueError("conventional profile needs a >= 1")
        if name == "constant_a" and a <= 1.0:
            raise ValueError("constant_a profile needs a > 1")
        self.name = name
        self.a = float(a)
        if name == "conventional":
            self.k_max = 1.0 / (a * a)
        else:
            self.k_max = math.inf
        self.k_min_exclusive = name == "constant_a"

    def check_domain(self, k: float) -> None:
        if k < 0 or k >= self.k_max:
            raise DomainError(f"k = {k:.6g} outside profile domain [0, {self.k_max:.6g})")
        if self.k_min_exclusive and k == 0:
            raise DomainError("constant_a profile is singular on the axis")

    def alpha(self, k: float) -> float:
        self.check_domain(k)
        if self.name == "conventional":
            return 1.0 / math.sqrt(1.0 - self.a**2 * k)
        if self.name == "trocheris_takeno":
            return math.cosh(math.sqrt(k))
        if self.name == "modified":
            return math.sqrt(1.0 + k)
        return self.a

    def beta(self, k: float) -> float:
        self.check_domain(k)
        if self.name == "conventional":
            return self.a / math.sqrt(1.0 - self.a**2 * k)
        if self.name == "trocheris_takeno":
            return _sinhc(math.sqrt(k))
        if self.name == "modified":
            return 1.0
        return math.sqrt(self.a**2 - 1.0) / math.sqrt(k)

    def alpha_prime(self, k: float) -> float:
        self.check_domain(k)
        if self.name == "conventional":
            return (self.a**2 / 2.0) * (1.0 - self.a**2 * k) ** -1.5
        if self.name == "trocheris_takeno":
            return 0.5 * _sinhc(math.sqrt(k))
        if self.name == "modified":
            return 0.5 / math.sqrt(1.0 + k)
        return 0.0

    def beta_prime(self, k: float) -> float:
        self.check_domain(k)
        if self.name == "conventional":
            return (self.a**3 / 2.0) * (1.0 - self.a**2 * k) ** -1.5
        if self.name == "trocheris_takeno":
            w = math.sqrt(k)
            if w < 1e-3:
                return 1.0 / 6.0 + k / 60.0 + k * k / 2520.0
            return (w * math.cosh(w) - math.sinh(w)) / (2.0 * w**3)
        if self.name == "modified":
            return 0.0
        return -math.sqrt(self.a**2 - 1.0) / (2.0 * k**1.5)

    def speed(self, k: float) -> float:
        """Chart speed of the frame point at parameter k."""
        return self.beta(k) * math.sqrt(k) / self.alpha(k)


def _sinhc(w: float) -> float:
    if w < 1e-4:
        w2 = w * w
        return 1.0 + w2 / 6.0 + w2 * w2 / 120.0
    return math.sinh(w) / w


def make_rotating_profile(name: str, a: float = 1.0) -> RotatingProfile:
    return RotatingProfile(name, a)


def profile_ode_residual(profile: RotatingProfile, k: float) -> tuple[float, float]:
    """Residuals of the rigidity conditions 2 alpha' = alpha beta^2 and
    2 beta' = beta^3; both vanish exactly on the conventional family."""
    al, be = profile.alpha(k), profile.beta(k)
    return (
        2.0 * profile.alpha_prime(k) - al * be * be,
        2.0 * profile.beta_prime(k) - be**3,
    )


class FrameField:
    """Smooth four-velocity field with a Jacobian."""

    def velocity(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class InertialFrame(FrameField):
    def __init__(self, u: np.ndarray):
        mk.check_four_velocity(u)
        self.u = np.asarray(u, dtype=float)

    def velocity(self, x):
        return self.u.copy()

    def jacobian(self, x):
        return np.zeros((4, 4))


class RotatingFrame(FrameField):
    def __init__(
        self,
        profile: RotatingProfile,
        center: np.ndarray,
        axis_velocity: np.ndarray,
        generator: np.ndarray,
    ):
        mk.check_four_velocity(axis_velocity)
        if not mk.is_antisymmetric(generator):
            raise ValueError("generator is not g-antisymmetric")
        if np.linalg.norm(generator @ axis_velocity) > 1e-10:
            raise ValueError("generator does not annihilate the axis velocity")
        self.profile = profile
        self.center = np.asarray(center, dtype=float)
        self.axis_velocity = np.asarray(axis_velocity, dtype=float)
        self.generator = np.asarray(generator, dtype=float)

    def k(self, x: np.ndarray) -> float:
        swing = self.generator @ (x - self.center)
        return mk.dot(swing, swing)

    def velocity(self, x: np.ndarray) -> np.ndarray:
        swing = self.generator @ (x - self.center)
        kk = mk.dot(swing, swing)
        return self.profile.alpha(kk) * self.axis_velocity + self.profile.beta(kk) * swing

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        """Analytic derivative DU; h maps to the change of U along h."""
        d = x - self.center
        swing = self.generator @ d
        kk = mk.dot(swing, swing)
        p = self.profile
        radial2 = self.generator @ swing  # G^2 (x - o); dk along h = dot(-2 radial2, h)
        coeff = p.alpha_prime(kk) * self.axis_velocity + p.beta_prime(kk) * swing
        return -2.0 * mk.tensor(coeff, radial2) + p.beta(kk) * self.generator


def finite_difference_jacobian(velocity_fn, x: np.ndarray, step: float | None = None) -> np.ndarray:
    """Central differences with one Richardson level."""
    if step is None:
        step = FD_STEP * (1.0 + float(np.linalg.norm(x)))

    def central(h):
        cols = []
        for i in range(4):
            e = np.zeros(4)
            e[i] = h
            cols.append((velocity_fn(x + e) - velocity_fn(x - e)) / (2.0 * h))
        return np.column_stack(cols)

    d1 = central(step)
    d2 = central(step / 2.0)
    return (4.0 * d2 - d1) / 3.0


def angular_velocity(frame: FrameField, x: np.ndarray) -> np.ndarray:
    """Rotation part of the frame at x: the rest-space compression of the
    antisymmetrized velocity derivative.  Equals P DU P when the frame is
    rigid at x."""
    du = frame.jacobian(x)
    p = mk.projector(frame.velocity(x))
    return 0.5 * p @ (du - mk.adjoint(du)) @ p


def rigidity_residual(frame: FrameField, x: np.ndarray) -> float:
    """Relative size of the symmetric part of P DU P; zero iff rigid at x."""
    du = frame.jacobian(x)
    p = mk.projector(frame.velocity(x))
    b = p @ du @ p
    nb = float(np.linalg.norm(b))
    if nb == 0.0:
        return 0.0
    sym = 0.5 * (b + mk.adjoint(b))
    return float(np.linalg.norm(sym)) / nb


class TransportFrame(FrameField):
    """Frame field carrying the rest spaces of a world line outward.

    The field is U(x) = V(x)/|V(x)| with

        V(x) = rdot(s) + W(s) (x - r(s)),        s = orthogonal time of x,

    where W(s) is the logarithmic derivative of the transport family:
    the boost family from rdot(0) to rdot(s), or Fermi-Walker transport,
    optionally composed with exp(s*Gamma) for a fixed spatial rotation
    generator Gamma annihilating rdot(0).  The line itself is an
    integral curve and the frame is rigid along it.
    """

    def __init__(
        self,
        line: WorldLine,
        variant: str,
        gamma_generator: np.ndarray | None = None,
        fw_steps_per_unit: int = 2048,
    ):
        if variant not in ("boost", "fermi_walker"):
            raise ValueError(f"unknown transport variant {variant!r}")
        self.line = line
        self.variant = variant
        self.u0 = line.velocity(0.0)
        if gamma_generator is not None:
            gamma_generator = np.asarray(gamma_generator, dtype=float)
            if not mk.is_antisymmetric(gamma_generator):
                raise ValueError("Gamma is not g-antisymmetric")
            if np.linalg.norm(gamma_generator @ self.u0) > 1e-10:
                raise ValueError("Gamma does not annihilate the initial velocity")
            if not np.any(gamma_generator):
                gamma_generator = None
        self.gamma_generator = gamma_generator
        self._fw_steps_per_unit = fw_steps_per_unit
        self._fw_family = None

    # -- transport family ------------------------------------------------

    def base_rate(self, s: float) -> np.ndarray:
        """W(s) = Hdot(s) H(s)^-1 of the base family, in closed form."""
        rdot = self.line.velocity(s)
        rddot = self.line.acceleration(s)
        if self.variant == "fermi_walker":
            return mk.wedge(rdot, rddot)
        return mk.wedge(rdot + self.u0, rddot) / (1.0 - mk.dot(self.u0, rdot))

    def transport_rate(self, s: float) -> np.ndarray:
        w = self.base_rate(s)
        if self.gamma_generator is not None:
            h = self.base_operator(s)
            w = w + h @ self.gamma_generator @ np.linalg.inv(h)
        return w

    def base_operator(self, s: float) -> np.ndarray:
        """H(s) of the base family (no Gamma factor)."""
        if self.variant == "boost":
            return mk.boost(self.u0, self.line.velocity(s))
        return self._fermi_walker_family().at(s)

    def transport_operator(self, s: float) -> np.ndarray:
        h = self.base_operator(s)
        if self.gamma_generator is not None:
            h = h @ mk.exp_generator(self.gamma_generator, s)
        return h

    def _fermi_walker_family(self):
        if self._fw_family is None:
            from .transport import FermiWalkerFamily

            if isinstance(self.line, CircularOrbit):
                span = 1.5 * self.line.proper_period()
            else:
                span = 10.0
            n = max(256, int(self._fw_steps_per_unit * span))
            self._fw_family = FermiWalkerFamily(self.line, -0.25 * span, span, n)
        return self._fw_family

    # -- field interface -------------------------------------------------

    def _raw_velocity(self, x: np.ndarray) -> np.ndarray:
        s = orthogonal_time(self.line, x)
        v = self.line.velocity(s) + self.transport_rate(s) @ (x - self.line.point(s))
        return v

    def velocity(self, x: np.ndarray) -> np.ndarray:
        v = self._raw_velocity(x)
        q = -mk.dot(v, v)
        if q <= 0.0:
            raise DomainError("transport frame velocity is not timelike here")
        return v / np.sqrt(q)

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        return finite_difference_jacobian(self.velocity, x)

    def jacobian_on_curve(self, s: float) -> np.ndarray:
        """Analytic DU at r(s); the transport equation only needs these."""
        rdot = self.line.velocity(s)
        rddot = self.line.acceleration(s)
        w = self.transport_rate(s)
        dv = -mk.tensor(rddot, rdot) + w @ mk.projector(rdot)
        return dv + mk.tensor(rdot, mk.adjoint(dv) @ rdot)

    def angular_velocity_on_curve(self, s: float) -> np.ndarray:
        """Closed-form angular velocity at r(s): P W P plus the rotation
        carried by Gamma."""
        p = mk.projector(self.line.velocity(s))
        w = self.base_rate(s)
        out = p @ w @ p
        if self.gamma_generator is not None:
            h = self.base_operator(s)
            out = out + h @ self.gamma_generator @ np.linalg.inv(h)
        return out


def make_transport_frame(
    line: WorldLine, variant: str, gamma_generator: np.ndarray | None = None
) -> TransportFrame:
    return TransportFrame(line, variant, gamma_generator)


def orbit_of_rotating_frame(frame: RotatingFrame, start_point: np.ndarray) -> CircularOrbit:
    """Integral curve of a rotating frame through a point, as an orbit."""
    radial = np.asarray(start_point, dtype=float) - frame.center
    swing = frame.generator @ radial
    kk = mk.dot(swing, swing)
    if kk <= 0:
        raise PreconditionError("start point lies on the rotation axis")
    a = frame.profile.alpha(kk)
    b = frame.profile.beta(kk)
    return CircularOrbit(
        frame.center, frame.axis_velocity, frame.generator, start_point, a, b
    )
