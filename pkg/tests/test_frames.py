import numpy as np
import pytest
from numpy.testing import assert_allclose

from relkin import minkowski as mk
from relkin.errors import DomainError
from relkin.frames import (
    InertialFrame,
    RotatingFrame,
    TransportFrame,
    angular_velocity,
    finite_difference_jacobian,
    make_rotating_profile,
    make_transport_frame,
    orbit_of_rotating_frame,
    profile_ode_residual,
    rigidity_residual,
)

from conftest import ORIGIN

GENERATOR = mk.wedge(mk.E_Y, mk.E_X)


def rotating(kind, a=1.0):
    return RotatingFrame(make_rotating_profile(kind, a), ORIGIN, mk.E_T, GENERATOR)


# -- velocity profiles ----------------------------------------------------


def test_conventional_profile_solves_the_rigidity_equations():
    for a in (1.0, 1.4):
        profile = make_rotating_profile("conventional", a)
        for k in (1e-4, 0.1, 0.4 / a**2):
            r1, r2 = profile_ode_residual(profile, k)
            assert abs(r1) < 1e-13 and abs(r2) < 1e-13


@pytest.mark.parametrize("kind,a", [("trocheris_takeno", 1.0), ("modified", 1.0), ("constant_a", 2.0)])
def test_alternative_profiles_do_not_solve_them(kind, a):
    profile = make_rotating_profile(kind, a)
    r1, r2 = profile_ode_residual(profile, 0.2)
    assert max(abs(r1), abs(r2)) > 1e-3


def test_conventional_profile_domain_ends_at_the_light_cylinder():
    profile = make_rotating_profile("conventional", 1.0)
    with pytest.raises(DomainError):
        profile.check_domain(1.0)


def test_trocheris_takeno_series_joins_the_closed_form():
    profile = make_rotating_profile("trocheris_takeno")
    # the series branch for tiny k must continue the closed form smoothly
    left = profile.beta_prime(9.9e-7)
    right = profile.beta_prime(1.1e-6)
    assert abs(left - right) < 1e-8


def test_unknown_profile_kind():
    with pytest.raises(Exception):
        make_rotating_profile("galilean")


# -- frame fields ---------------------------------------------------------


def test_rotating_frame_velocity_is_unit(conventional_frame):
    for rho in (0.1, 0.5, 0.9):
        x = ORIGIN + rho * mk.E_X
        u = conventional_frame.velocity(x)
        assert_allclose(mk.dot(u, u), -1.0, atol=1e-12)


@pytest.mark.parametrize("kind,a", [("conventional", 1.0), ("trocheris_takeno", 1.0), ("constant_a", 1.5)])
def test_analytic_jacobian_matches_finite_differences(kind, a):
    frame = rotating(kind, a)
    rng = np.random.default_rng(11)
    for _ in range(3):
        x = mk.vec4(rng.uniform(-1, 1), *(0.3 * rng.standard_normal(3)))
        assert_allclose(
            frame.jacobian(x),
            finite_difference_jacobian(frame.velocity, x),
            atol=5e-9,
        )


def test_inertial_frame_is_trivially_rigid():
    frame = InertialFrame(mk.E_T)
    x = mk.vec4(0.2, 0.3, 0.1, -0.4)
    assert rigidity_residual(frame, x) == 0.0
    assert_allclose(angular_velocity(frame, x), np.zeros((4, 4)), atol=1e-15)


def test_rigidity_dichotomy_at_half_light_speed(conventional_frame):
    x = ORIGIN + 0.5 * mk.E_X
    assert rigidity_residual(conventional_frame, x) < 1e-12
    assert rigidity_residual(rotating("trocheris_takeno"), x) > 1e-2


def test_angular_velocity_is_antisymmetric(conventional_frame):
    x = ORIGIN + 0.4 * mk.E_X
    w = angular_velocity(conventional_frame, x)
    assert mk.antisymmetry_defect(w) < 1e-10


def test_orbit_of_rotating_frame_is_an_integral_curve(conventional_frame):
    line = orbit_of_rotating_frame(conventional_frame, ORIGIN + 0.5 * mk.E_X)
    for s in (0.0, 0.9, 3.1):
        assert_allclose(
            line.velocity(s), conventional_frame.velocity(line.point(s)), atol=1e-12
        )


# -- transported rest spaces ---------------------------------------------


def test_transport_frame_velocity_on_the_curve(orbit_v05):
    frame = TransportFrame(orbit_v05, "boost")
    for s in (0.0, 1.2, 4.0):
        assert_allclose(frame.velocity(orbit_v05.point(s)), orbit_v05.velocity(s), atol=1e-9)


def test_boost_operator_carries_the_velocity(orbit_v05):
    frame = TransportFrame(orbit_v05, "boost")
    h = frame.transport_operator(2.0)
    assert_allclose(h @ orbit_v05.velocity(0.0), orbit_v05.velocity(2.0), atol=1e-12)


def test_fermi_walker_operator_is_isometric(orbit_v05):
    frame = TransportFrame(orbit_v05, "fermi_walker", fw_steps_per_unit=512)
    h = frame.transport_operator(1.5)
    assert mk.isometry_defect(h) < 1e-9
    assert_allclose(h @ orbit_v05.velocity(0.0), orbit_v05.velocity(1.5), atol=1e-8)


def test_gamma_factor_multiplies_the_base_family(orbit_v05):
    u0 = orbit_v05.velocity(0.0)
    t1, t2, _ = mk.orthonormal_triad(u0)
    gamma = 0.3 * mk.wedge(t2, t1)
    plain = TransportFrame(orbit_v05, "boost")
    twisted = TransportFrame(orbit_v05, "boost", gamma)
    s = 1.7
    assert_allclose(
        twisted.transport_operator(s),
        plain.transport_operator(s) @ mk.exp_generator(gamma, s),
        atol=1e-12,
    )


def test_jacobian_on_curve_matches_off_curve_jacobian(orbit_v05):
    frame = TransportFrame(orbit_v05, "boost")
    s = 0.8
    assert_allclose(
        frame.jacobian_on_curve(s),
        frame.jacobian(orbit_v05.point(s)),
        atol=1e-6,
    )


def test_make_transport_frame_dispatch(orbit_v05):
    assert make_transport_frame(orbit_v05, "boost").variant == "boost"
    with pytest.raises(Exception):
        make_transport_frame(orbit_v05, "parallel")
