"""Scenario files: flat key = value text describing one frame and orbit.

A scenario pins down a rotating or transported frame, the circular space
point it is probed on, and the integration/verdict parameters.  Example:

    frame.kind = conventional
    frame.a = 1.0
    orbit.omega = 1.0
    orbit.radius = 0.5
    integrator.step_count = 4096
    tolerances.rigid = 1e-8
    tolerances.nonrigid = 1e-3

Lines starting with # and blank lines are ignored; a trailing # starts a
comment.  gamma_generator takes three reals (an angular-velocity vector
in the chart; the part orthogonal to the start velocity is used).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import minkowski as mk
from .errors import ScenarioError
from .frames import (
    FrameField,
    RotatingFrame,
    TransportFrame,
    make_rotating_profile,
    orbit_of_rotating_frame,
)
from .worldlines import CircularOrbit, make_circular_orbit

FRAME_KINDS = (
    "conventional",
    "trocheris_takeno",
    "modified",
    "constant_a",
    "custom_boost",
    "custom_fw",
)
PROFILE_KINDS = ("conventional", "trocheris_takeno", "modified", "constant_a")
MIN_STEP_COUNT = 256


@dataclass
class Scenario:
    frame_kind: str
    omega: float
    radius: float
    frame_a: float = 1.0
    gamma_generator: np.ndarray | None = None
    step_count: int = 4096
    tol_rigid: float = 1e-8
    tol_nonrigid: float = 1e-3

    def validate(self) -> None:
        if self.frame_kind not in FRAME_KINDS:
            raise ScenarioError(
                f"frame.kind must be one of {', '.join(FRAME_KINDS)}; "
                f"got {self.frame_kind!r}"
            )
        if not self.omega > 0.0:
            raise ScenarioError("orbit.omega must be positive")
        if not self.radius > 0.0:
            raise ScenarioError("orbit.radius must be positive")
        if not self.omega * self.radius < 1.0:
            raise ScenarioError(
                f"omega * radius = {self.omega * self.radius:.6g} is not "
                "below 1 (the rim would not be slower than light)"
            )
        if self.step_count < MIN_STEP_COUNT:
            raise ScenarioError(
                f"integrator.step_count must be at least {MIN_STEP_COUNT}"
            )
        if not self.tol_rigid < self.tol_nonrigid:
            raise ScenarioError("tolerances.rigid must be below tolerances.nonrigid")
        if self.frame_kind == "conventional" and self.frame_a < 1.0:
            raise ScenarioError("frame.a must be >= 1 for the conventional frame")
        if self.frame_kind == "constant_a" and self.frame_a <= 1.0:
            raise ScenarioError("frame.a must be > 1 for the constant_a frame")
        if (
            self.gamma_generator is not None
            and self.frame_kind not in ("custom_boost", "custom_fw")
        ):
            raise ScenarioError(
                "gamma_generator applies only to the custom_boost/custom_fw frames"
            )


_SCALARS = {
    "frame.a": ("frame_a", float),
    "orbit.omega": ("omega", float),
    "orbit.radius": ("radius", float),
    "integrator.step_count": ("step_count", int),
    "tolerances.rigid": ("tol_rigid", float),
    "tolerances.nonrigid": ("tol_nonrigid", float),
}


def _parse_number(key: str, raw: str, cast) -> float | int:
    try:
        if cast is int:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ScenarioError(f"{key}: cannot parse {raw!r} as a number") from exc


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text; unknown or repeated keys are errors."""
    values: dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected 'key = value', got {raw_line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not value:
            raise ScenarioError(f"line {lineno}: no value for {key!r}")
        if key in values:
            raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value

    known = {"frame.kind", "gamma_generator", *_SCALARS}
    for key in values:
        if key not in known:
            raise ScenarioError(f"unknown scenario key {key!r}")
    for req in ("frame.kind", "orbit.omega", "orbit.radius"):
        if req not in values:
            raise ScenarioError(f"missing required scenario key {req!r}")

    sc = Scenario(
        frame_kind=values.pop("frame.kind"),
        omega=0.0,
        radius=0.0,
    )
    if "gamma_generator" in values:
        parts = values.pop("gamma_generator").replace(",", " ").split()
        if len(parts) != 3:
            raise ScenarioError("gamma_generator needs exactly three reals")
        sc.gamma_generator = np.array(
            [_parse_number("gamma_generator", p, float) for p in parts]
        )
    for key, value in values.items():
        attr, cast = _SCALARS[key]
        setattr(sc, attr, _parse_number(key, value, cast))
    sc.validate()
    return sc


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
    return parse_scenario(text)


def gamma_map_from_vector(w: np.ndarray, u0: np.ndarray) -> np.ndarray | None:
    """Spatial rotation generator on E_u0 from a chart angular-velocity vector."""
    w = np.asarray(w, dtype=float)
    if not np.any(w):
        return None
    g0 = (
        w[0] * mk.wedge(mk.E_Z, mk.E_Y)
        + w[1] * mk.wedge(mk.E_X, mk.E_Z)
        + w[2] * mk.wedge(mk.E_Y, mk.E_X)
    )
    p0 = mk.projector(u0)
    return p0 @ g0 @ p0


def scenario_frame(sc: Scenario) -> tuple[FrameField, CircularOrbit]:
    """The frame a scenario describes and its space point through the
    start position (radius along x from the center)."""
    sc.validate()
    center = mk.vec4(0.0, 0.0, 0.0, 0.0)
    start = center + sc.radius * mk.E_X
    generator = sc.omega * mk.wedge(mk.E_Y, mk.E_X)
    if sc.frame_kind in PROFILE_KINDS:
        profile = make_rotating_profile(sc.frame_kind, sc.frame_a)
        frame = RotatingFrame(profile, center, mk.E_T, generator)
        line = orbit_of_rotating_frame(frame, start)
        return frame, line
    line = make_circular_orbit(
        center=center,
        axis_velocity=mk.E_T,
        rotation_plane=(mk.E_X, mk.E_Y),
        omega=sc.omega,
        radius=sc.radius,
    )
    gamma = None
    if sc.gamma_generator is not None:
        gamma = gamma_map_from_vector(sc.gamma_generator, line.velocity(0.0))
    variant = "boost" if sc.frame_kind == "custom_boost" else "fermi_walker"
    frame = TransportFrame(line, variant, gamma)
    return frame, line
