import numpy as np
import pytest
from numpy.testing import assert_allclose

from relkin import minkowski as mk
from relkin.errors import ScenarioError
from relkin.frames import RotatingFrame, TransportFrame
from relkin.scenario import (
    Scenario,
    gamma_map_from_vector,
    load_scenario,
    parse_scenario,
    scenario_frame,
)

BASIC = """
# comments and blank lines are ignored
frame.kind = conventional
orbit.omega = 2.0
orbit.radius = 0.25  # trailing comments too
"""


def test_parse_basic_scenario():
    sc = parse_scenario(BASIC)
    assert sc.frame_kind == "conventional"
    assert sc.omega == 2.0
    assert sc.radius == 0.25
    assert sc.step_count == 4096


def test_parse_all_keys():
    sc = parse_scenario(
        """
        frame.kind = custom_boost
        orbit.omega = 1.0
        orbit.radius = 0.5
        gamma_generator = 0.1, 0.0, -0.2
        integrator.step_count = 512
        tolerances.rigid = 1e-9
        tolerances.nonrigid = 1e-2
        """
    )
    assert sc.step_count == 512
    assert_allclose(sc.gamma_generator, [0.1, 0.0, -0.2])
    assert sc.tol_rigid == 1e-9


def test_gamma_generator_accepts_space_separation():
    sc = parse_scenario(
        "frame.kind = custom_fw\norbit.omega = 1\norbit.radius = 0.5\n"
        "gamma_generator = 0 0 0.3\n"
    )
    assert_allclose(sc.gamma_generator, [0.0, 0.0, 0.3])


@pytest.mark.parametrize(
    "text",
    [
        "orbit.omega = 1\norbit.radius = 0.5\n",  # missing kind
        "frame.kind = conventional\norbit.omega = 1\n",  # missing radius
        "frame.kind = conventional\norbit.omega = 1\norbit.radius = 0.5\nfoo = 1\n",
        "frame.kind = conventional\norbit.omega = 1\norbit.omega = 2\norbit.radius = 0.5\n",
        "frame.kind = conventional\norbit.omega = fast\norbit.radius = 0.5\n",
        "frame.kind = conventional orbit.omega 1\n",  # not key = value
        "frame.kind = conventional\norbit.omega = 1\norbit.radius = 0.5\ngamma_generator = 1 2\n",
    ],
)
def test_parse_rejects_malformed_input(text):
    with pytest.raises(ScenarioError):
        parse_scenario(text)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(frame_kind="galilean", omega=1.0, radius=0.5),
        dict(frame_kind="conventional", omega=0.0, radius=0.5),
        dict(frame_kind="conventional", omega=1.0, radius=-0.5),
        dict(frame_kind="conventional", omega=2.0, radius=0.6),  # rim at 1.2
        dict(frame_kind="conventional", omega=1.0, radius=0.5, step_count=8),
        dict(frame_kind="conventional", omega=1.0, radius=0.5, tol_rigid=1e-2),
        dict(frame_kind="conventional", omega=1.0, radius=0.5, frame_a=0.5),
        dict(frame_kind="constant_a", omega=1.0, radius=0.5, frame_a=1.0),
        dict(
            frame_kind="conventional",
            omega=1.0,
            radius=0.5,
            gamma_generator=np.array([0.0, 0.0, 0.1]),
        ),
    ],
)
def test_validate_rejects_bad_scenarios(kwargs):
    with pytest.raises(ScenarioError):
        Scenario(**kwargs).validate()


def test_load_scenario_missing_file(tmp_path):
    with pytest.raises(ScenarioError):
        load_scenario(str(tmp_path / "none.scn"))


def test_load_scenario_round_trip(tmp_path):
    path = tmp_path / "case.scn"
    path.write_text(BASIC, encoding="utf-8")
    assert load_scenario(str(path)).omega == 2.0


def test_scenario_frame_rotating_kind():
    sc = Scenario(frame_kind="conventional", omega=1.0, radius=0.5)
    frame, line = scenario_frame(sc)
    assert isinstance(frame, RotatingFrame)
    assert_allclose(line.point(0.0), 0.5 * mk.E_X, atol=1e-14)
    assert_allclose(line.rotation_speed, 0.5, rtol=1e-12)


def test_scenario_frame_custom_kind_with_gamma():
    sc = Scenario(
        frame_kind="custom_fw",
        omega=1.0,
        radius=0.5,
        gamma_generator=np.array([0.0, 0.0, 0.2]),
    )
    frame, line = scenario_frame(sc)
    assert isinstance(frame, TransportFrame)
    assert frame.variant == "fermi_walker"
    assert frame.gamma_generator is not None
    u0 = line.velocity(0.0)
    g = frame.gamma_generator
    # the generator acts inside the rest space of the start velocity
    assert np.linalg.norm(g @ u0) < 1e-12
    assert mk.antisymmetry_defect(g) < 1e-12


def test_gamma_map_zero_vector_is_none():
    assert gamma_map_from_vector(np.zeros(3), mk.E_T) is None


def test_gamma_map_rate_for_axis_rest_frame():
    g = gamma_map_from_vector(np.array([0.0, 0.0, 0.7]), mk.E_T)
    assert_allclose(mk.rotation_rate(g), 0.7, rtol=1e-12)
