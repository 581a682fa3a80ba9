import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from relkin import minkowski as mk


def unit_velocity(v3):
    """Four-velocity with chart 3-velocity v3."""
    v3 = np.asarray(v3, dtype=float)
    g = mk.gamma_of_speed(float(np.linalg.norm(v3)))
    return g * mk.vec4(1.0, *v3)


def velocities():
    """Strategy for future-pointing unit timelike vectors."""
    comp = st.floats(min_value=-0.55, max_value=0.55)
    return st.tuples(comp, comp, comp).map(
        lambda v: unit_velocity(v)
    )


def spatial_vectors():
    comp = st.floats(min_value=-2.0, max_value=2.0)
    return st.tuples(comp, comp, comp).map(lambda v: mk.vec4(0.0, *v))


def test_metric_signature():
    assert mk.dot(mk.E_T, mk.E_T) == -1.0
    for e in (mk.E_X, mk.E_Y, mk.E_Z):
        assert mk.dot(e, e) == 1.0
        assert mk.dot(mk.E_T, e) == 0.0


def test_vec4_layout():
    v = mk.vec4(1.0, 2.0, 3.0, 4.0)
    assert_allclose(v, [1.0, 2.0, 3.0, 4.0])


def test_adjoint_of_tensor_swaps_factors():
    rng = np.random.default_rng(3)
    a, b = rng.standard_normal(4), rng.standard_normal(4)
    assert_allclose(mk.adjoint(mk.tensor(a, b)), mk.tensor(b, a), atol=1e-14)


@given(spatial_vectors(), spatial_vectors())
def test_wedge_is_antisymmetric(x, y):
    w = mk.wedge(x, y)
    assert mk.antisymmetry_defect(w) < 1e-12
    assert_allclose(mk.wedge(y, x), -w, atol=1e-12)


def test_projector_annihilates_velocity():
    u = unit_velocity([0.3, -0.2, 0.1])
    p = mk.projector(u)
    assert_allclose(p @ u, np.zeros(4), atol=1e-14)
    assert_allclose(p @ p, p, atol=1e-14)


@given(velocities(), velocities())
@settings(max_examples=50)
def test_boost_carries_velocity_and_preserves_metric(u, u2):
    b = mk.boost(u, u2)
    assert_allclose(b @ u, u2, atol=1e-10)
    assert mk.isometry_defect(b) < 1e-10


def test_boost_of_velocity_to_itself_is_identity():
    u = unit_velocity([0.4, 0.1, 0.0])
    assert_allclose(mk.boost(u, u), np.eye(4), atol=1e-12)


def test_boost_fixes_orthogonal_complement_of_plane():
    u = mk.E_T
    u2 = unit_velocity([0.5, 0.0, 0.0])
    b = mk.boost(u, u2)
    # E_Y and E_Z are orthogonal to both velocities
    assert_allclose(b @ mk.E_Y, mk.E_Y, atol=1e-14)
    assert_allclose(b @ mk.E_Z, mk.E_Z, atol=1e-14)


def test_exp_generator_rotation_closed_form():
    theta = 0.7
    r = mk.exp_generator(mk.wedge(mk.E_Y, mk.E_X), theta)
    c, s = np.cos(theta), np.sin(theta)
    expected = np.eye(4)
    expected[1:3, 1:3] = [[c, -s], [s, c]]
    assert_allclose(r, expected, atol=1e-12)


def test_exp_generator_boost_closed_form():
    eta = 0.9
    b = mk.exp_generator(mk.wedge(mk.E_T, mk.E_X), -eta)
    assert_allclose(b[0, 0], np.cosh(eta), atol=1e-12)
    assert_allclose(abs(b[0, 1]), np.sinh(eta), atol=1e-12)
    assert mk.isometry_defect(b) < 1e-12


@given(spatial_vectors(), spatial_vectors())
@settings(max_examples=50)
def test_exp_of_wedge_is_isometry(x, y):
    assert mk.isometry_defect(mk.exp_generator(mk.wedge(x, y), 1.0)) < 1e-9


def test_rotation_rate_reads_off_the_coefficient():
    w = 1.7 * mk.wedge(mk.E_Y, mk.E_X)
    assert_allclose(mk.rotation_rate(w), 1.7, rtol=1e-12)


def test_rotation_rate_invariant_under_boost_conjugation():
    w = 0.8 * mk.wedge(mk.E_Y, mk.E_X)
    u2 = unit_velocity([0.0, 0.6, 0.0])
    b = mk.boost(mk.E_T, u2)
    conjugated = b @ w @ np.linalg.inv(b)
    assert_allclose(mk.rotation_rate(conjugated), 0.8, rtol=1e-10)
    # the Frobenius norm is not invariant, which is the point
    assert not np.isclose(np.linalg.norm(conjugated) / np.sqrt(2.0), 0.8)


def test_rotation_angle_round_trip():
    u = unit_velocity([0.0, 0.3, 0.0])
    t1, t2, _ = mk.orthonormal_triad(u)
    r = mk.exp_generator(mk.wedge(t2, t1), 0.9)
    angle, axis = mk.rotation_angle(r, u)
    assert_allclose(angle, 0.9, rtol=1e-10)
    assert axis is not None
    assert abs(mk.dot(axis, u)) < 1e-10


def test_rotation_angle_rejects_non_isometry():
    with pytest.raises(Exception):
        mk.rotation_angle(2.0 * np.eye(4), mk.E_T)


@given(velocities())
@settings(max_examples=50)
def test_orthonormal_triad_properties(u):
    triad = mk.orthonormal_triad(u)
    for i, ti in enumerate(triad):
        assert abs(mk.dot(ti, u)) < 1e-10
        for j, tj in enumerate(triad):
            expected = 1.0 if i == j else 0.0
            assert abs(mk.dot(ti, tj) - expected) < 1e-10


def test_restrict_to_rest_space_gives_rotation_matrix():
    u = unit_velocity([0.2, 0.0, 0.4])
    t1, t2, _ = mk.orthonormal_triad(u)
    r = mk.exp_generator(mk.wedge(t2, t1), 0.55)
    m = mk.restrict_to_rest_space(r, u)
    assert m.shape == (3, 3)
    assert_allclose(m @ m.T, np.eye(3), atol=1e-12)
    assert_allclose((np.trace(m) - 1.0) / 2.0, np.cos(0.55), atol=1e-12)


def test_velocity_of_reads_the_speed():
    v = np.array([0.3, -0.1, 0.2])
    u = unit_velocity(v)
    assert_allclose(mk.dot(u, u), -1.0, atol=1e-14)
    assert_allclose(mk.velocity_of(u), np.linalg.norm(v), rtol=1e-13)


def test_gamma_of_speed():
    assert_allclose(mk.gamma_of_speed(0.8), 5.0 / 3.0, rtol=1e-14)


def test_check_four_velocity_rejects_spacelike():
    with pytest.raises(Exception):
        mk.check_four_velocity(mk.vec4(0.5, 1.0, 0.0, 0.0))
