"""Coordinate-free special-relativistic kinematics: reference frames on
Minkowski space, Lie and Fermi-Walker transport along world lines, and the
comparison of Foucault precession with Thomas rotation for circular orbits.
"""

from .errors import (
    DomainError,
    IntegralCurveError,
    MeaningfulnessError,
    OrthogonalTimeError,
    PreconditionError,
    RelkinError,
    ReturnConditionError,
    ScenarioError,
    StepRejectedError,
)
from .frames import (
    FrameField,
    InertialFrame,
    RotatingFrame,
    RotatingProfile,
    TransportFrame,
    angular_velocity,
    make_rotating_profile,
    make_transport_frame,
    orbit_of_rotating_frame,
    profile_ode_residual,
    rigidity_residual,
)
from .minkowski import (
    METRIC,
    adjoint,
    boost,
    dot,
    exp_generator,
    projector,
    rotation_angle,
    rotation_rate,
    tensor,
    vec4,
    wedge,
)
from .precession import (
    PrecessionReport,
    RotationComparison,
    ThomasResult,
    accumulated_rotation_angle,
    angular_velocity_of_worldline_is_undefined_demo,
    compare_foucault_vs_thomas,
    foucault_precession,
    integrate_gyro_in_frame,
    thomas_rotation,
)
from .scenario import Scenario, load_scenario, parse_scenario, scenario_frame
from .transport import (
    LieTransportGrid,
    fermi_walker_transport,
    integrate_flow,
    integrate_lie_transport,
    transport_operator,
)
from .worldlines import (
    CircularOrbit,
    GenericWorldLine,
    inertial_line,
    make_circular_orbit,
    orthogonal_time,
    return_time,
)

__version__ = "0.1.0"

__all__ = [
    "METRIC",
    "CircularOrbit",
    "DomainError",
    "FrameField",
    "GenericWorldLine",
    "InertialFrame",
    "IntegralCurveError",
    "LieTransportGrid",
    "MeaningfulnessError",
    "OrthogonalTimeError",
    "PrecessionReport",
    "PreconditionError",
    "RelkinError",
    "ReturnConditionError",
    "RotatingFrame",
    "RotatingProfile",
    "RotationComparison",
    "Scenario",
    "ScenarioError",
    "StepRejectedError",
    "ThomasResult",
    "TransportFrame",
    "accumulated_rotation_angle",
    "adjoint",
    "angular_velocity",
    "angular_velocity_of_worldline_is_undefined_demo",
    "boost",
    "compare_foucault_vs_thomas",
    "dot",
    "exp_generator",
    "fermi_walker_transport",
    "foucault_precession",
    "inertial_line",
    "integrate_flow",
    "integrate_gyro_in_frame",
    "integrate_lie_transport",
    "load_scenario",
    "make_circular_orbit",
    "make_rotating_profile",
    "make_transport_frame",
    "orbit_of_rotating_frame",
    "orthogonal_time",
    "parse_scenario",
    "profile_ode_residual",
    "projector",
    "return_time",
    "rigidity_residual",
    "rotation_angle",
    "rotation_rate",
    "scenario_frame",
    "tensor",
    "thomas_rotation",
    "transport_operator",
    "vec4",
    "wedge",
]
