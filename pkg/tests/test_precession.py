"""Precession and rotation-comparison behavior, pinned against closed
forms and against values frozen from high-resolution runs."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from relkin import minkowski as mk
from relkin.errors import (
    MeaningfulnessError,
    PreconditionError,
    ReturnConditionError,
    StepRejectedError,
)
from relkin.frames import (
    RotatingFrame,
    TransportFrame,
    make_rotating_profile,
    orbit_of_rotating_frame,
)
from relkin.precession import (
    accumulated_rotation_angle,
    angular_velocity_of_worldline_is_undefined_demo,
    compare_foucault_vs_thomas,
    foucault_precession,
    integrate_gyro_in_frame,
    thomas_rotation,
)

from conftest import ORIGIN, circular_orbit

# net rotation angles per lab revolution at step count 4096, frozen from
# runs cross-checked against 2 pi (gamma - 1)
FROZEN_THOMAS = {
    0.3: 0.303382576650716,
    0.5: 0.972012149757233,
    0.8: 4.188790204784771,
}


def tt_frame():
    profile = make_rotating_profile("trocheris_takeno")
    return RotatingFrame(profile, ORIGIN, mk.E_T, mk.wedge(mk.E_Y, mk.E_X))


def radial_unit(orbit):
    d = orbit.start_point - orbit.center
    return d / mk.spatial_norm(d)


# -- Thomas rotation ------------------------------------------------------


@pytest.mark.parametrize("v", [0.3, 0.5, 0.8])
def test_thomas_angle_closed_form(v):
    orbit = circular_orbit(v)
    s_t = orbit.proper_period()
    res = thomas_rotation(orbit, s_t, s_t / 1024)
    gamma = 1.0 / np.sqrt(1.0 - v * v)
    assert_allclose(res.unwrapped_angle, 2.0 * np.pi * (gamma - 1.0), rtol=1e-6)
    assert res.retrograde


@pytest.mark.parametrize("v", [0.3, 0.5, 0.8])
def test_thomas_angle_frozen_values(v):
    orbit = circular_orbit(v)
    s_t = orbit.proper_period()
    res = thomas_rotation(orbit, s_t, s_t / 4096)
    assert_allclose(res.unwrapped_angle, FROZEN_THOMAS[v], rtol=1e-10)


def test_thomas_axis_is_the_orbit_normal():
    orbit = circular_orbit(0.5)
    s_t = orbit.proper_period()
    res = thomas_rotation(orbit, s_t, s_t / 1024)
    # retrograde rotation about -z; the axis is a rest-space vector
    assert res.axis is not None
    assert res.axis[3] < -0.99
    assert abs(mk.dot(res.axis, orbit.velocity(0.0))) < 1e-9


def test_thomas_unwrapping_past_the_principal_range():
    # at v = 0.8 the net angle is 4 pi / 3, beyond pi
    orbit = circular_orbit(0.8)
    s_t = orbit.proper_period()
    res = thomas_rotation(orbit, s_t, s_t / 2048)
    assert_allclose(res.unwrapped_angle, 4.0 * np.pi / 3.0, rtol=1e-8)
    assert_allclose(res.angle, 2.0 * np.pi / 3.0, rtol=1e-8)
    assert res.unwrapped_angle > np.pi > res.angle


def test_thomas_vanishes_in_the_slow_limit():
    orbit = circular_orbit(1e-4)
    s_t = orbit.proper_period()
    res = thomas_rotation(orbit, s_t, s_t / 512)
    assert res.unwrapped_angle < 1e-7


def test_thomas_needs_the_return_condition():
    orbit = circular_orbit(0.5)
    s_t = orbit.proper_period()
    with pytest.raises(ReturnConditionError):
        thomas_rotation(orbit, 1.01 * s_t, s_t / 512)


# -- unwrapped angle bookkeeping -----------------------------------------


def test_accumulated_angle_tracks_past_pi():
    gen = mk.wedge(mk.E_Y, mk.E_X)
    thetas = np.linspace(0.0, 3.0 * np.pi, 200)
    maps = np.array([mk.exp_generator(gen, t) for t in thetas])
    total = accumulated_rotation_angle(maps, mk.E_T, gen)
    assert_allclose(total, 3.0 * np.pi, rtol=1e-9)
    assert_allclose(accumulated_rotation_angle(maps, mk.E_T, -gen), -3.0 * np.pi, rtol=1e-9)


def test_accumulated_angle_rejects_coarse_families():
    gen = mk.wedge(mk.E_Y, mk.E_X)
    maps = np.array([mk.exp_generator(gen, t) for t in (0.0, 0.6, 1.2)])
    with pytest.raises(StepRejectedError):
        accumulated_rotation_angle(maps, mk.E_T, gen)


# -- Foucault precession --------------------------------------------------


def test_foucault_meaningful_for_the_rigid_frame(orbit_v05, conventional_frame):
    s_t = orbit_v05.proper_period()
    report = foucault_precession(conventional_frame, orbit_v05, s_t, s_t / 512)
    assert report.meaningful
    assert report.antisymmetry_residual < 1e-6
    # gyro turns at gamma^2 omega relative to the frame
    for _, w in report.omega0_samples:
        assert_allclose(mk.rotation_rate(w), 4.0 / 3.0, rtol=1e-6)
    # precession rate cancels the frame angular velocity
    for (_, om), (_, fw) in zip(report.omega_samples, report.frame_angvel_samples):
        assert np.linalg.norm(om + fw) < 1e-6


def test_foucault_not_meaningful_for_trocheris_takeno():
    frame = tt_frame()
    line = orbit_of_rotating_frame(frame, ORIGIN + 0.5 * mk.E_X)
    s_t = line.proper_period()
    report = foucault_precession(frame, line, s_t, s_t / 512)
    assert not report.meaningful
    assert report.antisymmetry_residual > 1.0
    assert report.omega_samples == []


def test_gyro_integration_matches_transport(orbit_v05, conventional_frame):
    s_t = orbit_v05.proper_period()
    history = integrate_gyro_in_frame(
        conventional_frame, orbit_v05, radial_unit(orbit_v05), s_t, s_t / 1024
    )
    norms = [np.sqrt(mk.dot(h, h)) for _, h in history]
    assert max(abs(n - 1.0) for n in norms) < 1e-8
    h_end = history[-1][1]
    angle = np.arccos(np.clip(mk.dot(radial_unit(orbit_v05), h_end), -1.0, 1.0))
    assert_allclose(angle, 0.972012149757233, rtol=1e-6)


def test_gyro_integration_requires_orthogonal_start(orbit_v05, conventional_frame):
    with pytest.raises(PreconditionError):
        integrate_gyro_in_frame(conventional_frame, orbit_v05, mk.E_T, 1.0, 0.01)


def test_gyro_integration_refuses_non_meaningful_frames():
    frame = tt_frame()
    line = orbit_of_rotating_frame(frame, ORIGIN + 0.5 * mk.E_X)
    s_t = line.proper_period()
    with pytest.raises(MeaningfulnessError):
        integrate_gyro_in_frame(frame, line, radial_unit(line), s_t, s_t / 512)


# -- Foucault vs Thomas ---------------------------------------------------


def test_conventional_frame_matches(orbit_v05, conventional_frame):
    s_t = orbit_v05.proper_period()
    res = compare_foucault_vs_thomas(conventional_frame, orbit_v05, s_t, s_t / 1024)
    assert res.verdict == "match"
    assert res.condition_e_residual < 1e-6
    assert abs(res.thomas_angle - res.foucault_angle) < 1e-5
    # per lab revolution the frame gains a full turn on the gyro
    assert_allclose(
        res.foucault_angle_unwrapped - res.thomas_angle_unwrapped,
        2.0 * np.pi,
        rtol=1e-9,
    )
    # both go against the frame's rotation sense
    assert res.thomas_retrograde and res.foucault_retrograde


def test_fermi_walker_frame_breaks_the_identification(orbit_v05):
    frame = TransportFrame(orbit_v05, "fermi_walker", fw_steps_per_unit=256)
    s_t = orbit_v05.proper_period()
    res = compare_foucault_vs_thomas(frame, orbit_v05, s_t, s_t / 1024)
    assert res.verdict == "mismatch"
    assert res.foucault_angle < 1e-3
    assert_allclose(res.thomas_angle, 0.972012149757233, rtol=1e-5)
    assert res.condition_e_residual > 1.0


def test_gamma_twist_shifts_the_foucault_angle(orbit_v05):
    s_t = orbit_v05.proper_period()
    u0 = orbit_v05.velocity(0.0)
    t1, t2, _ = mk.orthonormal_triad(u0)
    gamma = (0.5 / s_t) * mk.wedge(t2, t1)
    frame = TransportFrame(orbit_v05, "boost", gamma)
    res = compare_foucault_vs_thomas(frame, orbit_v05, s_t, s_t / 1024)
    assert res.verdict == "mismatch"
    assert_allclose(abs(res.foucault_angle - res.thomas_angle), 0.5, rtol=1e-6)


def test_compare_refuses_non_meaningful_frames():
    frame = tt_frame()
    line = orbit_of_rotating_frame(frame, ORIGIN + 0.5 * mk.E_X)
    s_t = line.proper_period()
    with pytest.raises(MeaningfulnessError):
        compare_foucault_vs_thomas(frame, line, s_t, s_t / 512)


# -- no angular velocity from a world line alone --------------------------


def test_worldline_does_not_fix_an_angular_velocity(orbit_v05):
    demo = angular_velocity_of_worldline_is_undefined_demo(orbit_v05)
    assert demo.pairwise_min_difference > 0.1
    assert np.linalg.norm(demo.at_start["boost"]) < 1e-9
    assert np.linalg.norm(demo.at_start["fermi_walker"]) < 1e-6
    assert np.linalg.norm(demo.at_start["boost_gamma"]) > 0.1
    assert set(demo.at_probe) == {"boost", "fermi_walker", "boost_gamma"}
