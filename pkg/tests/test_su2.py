"""Quaternion/Lie-algebra layer against the matrix-rotation oracles."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from repvar.su2 import (
    AlgebraVector,
    SpherePoint,
    UnitQuaternion,
    X_AXIS,
    ad,
    conjugate_by,
    inner,
    left_log,
    left_to_right,
    pure_quat,
    quat_inverse,
    quat_mul,
    reflect,
    right_log,
    right_to_left,
    rotate,
    tau_form,
)

RNG = np.random.default_rng(7)


def unit_quaternions():
    return (
        st.tuples(
            st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)
        )
        .filter(lambda t: sum(c * c for c in t) > 0.01)
        .map(lambda t: UnitQuaternion.normalized(*t))
    )


def sphere_points():
    return (
        st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
        .filter(lambda t: sum(c * c for c in t) > 0.01)
        .map(lambda t: SpherePoint.normalized(*t))
    )


def algebra_vectors():
    return st.tuples(
        st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2)
    ).map(lambda t: AlgebraVector(*t))


def test_unit_norm_is_enforced():
    with pytest.raises(ValueError):
        UnitQuaternion(1.0, 1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        SpherePoint(0.5, 0.0, 0.0)
    with pytest.raises(ValueError):
        UnitQuaternion.normalized(0.0, 0.0, 0.0, 0.0)


@given(unit_quaternions())
def test_inverse_roundtrip(q):
    prod = q * q.inverse()
    assert abs(prod.w - 1.0) < 1e-12
    assert np.linalg.norm(prod.vector_part()) < 1e-12


@given(unit_quaternions(), unit_quaternions())
@settings(max_examples=50)
def test_product_matches_matrix_representation(a, b):
    lhs = (a * b).as_matrix()
    rhs = a.as_matrix() @ b.as_matrix()
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@given(unit_quaternions(), unit_quaternions(), unit_quaternions())
@settings(max_examples=50)
def test_product_associates(a, b, c):
    lhs = ((a * b) * c).as_array()
    rhs = (a * (b * c)).as_array()
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@given(sphere_points())
def test_class_points_square_to_minus_one(p):
    q = p.as_quaternion()
    sq = quat_mul(q.as_array(), q.as_array())
    assert np.max(np.abs(sq - np.array([-1.0, 0.0, 0.0, 0.0]))) < 1e-12


def test_inner_is_minus_half_trace():
    for _ in range(20):
        x = AlgebraVector.from_array(RNG.normal(size=3))
        y = AlgebraVector.from_array(RNG.normal(size=3))
        tr = np.trace(x.as_matrix() @ y.as_matrix())
        assert abs(tr.imag) < 1e-12
        assert abs(inner(x, y) + 0.5 * tr.real) < 1e-12


def test_adjoint_matches_rotation_oracle():
    for _ in range(50):
        g = UnitQuaternion.normalized(*RNG.normal(size=4))
        v = RNG.normal(size=3)
        got = ad(g, AlgebraVector.from_array(v)).as_array()
        want = oracles.conjugation_as_rotation(g.as_array(), v)
        assert np.max(np.abs(got - want)) < 1e-10


def test_conjugate_by_matches_rotation_oracle():
    for _ in range(50):
        g = UnitQuaternion.normalized(*RNG.normal(size=4))
        p = SpherePoint.normalized(*RNG.normal(size=3))
        got = conjugate_by(g, p).as_array()
        want = oracles.conjugation_as_rotation(g.as_array(), p.as_array())
        assert np.max(np.abs(got - want)) < 1e-10


def test_reflect_is_the_axis_half_turn():
    # conjugation by a pure unit quaternion p sends v to 2(p.v)p - v
    for _ in range(50):
        p = RNG.normal(size=3)
        p = p / np.linalg.norm(p)
        v = RNG.normal(size=3)
        got = reflect(p, v)
        want = 2.0 * np.dot(p, v) * p - v
        assert np.max(np.abs(got - want)) < 1e-12
        # and it agrees with matrix conjugation by the pure quaternion
        assert np.max(np.abs(got - oracles.conjugation_as_rotation(
            oracles.pure(p), v))) < 1e-10


@given(sphere_points(), algebra_vectors())
def test_reflect_is_an_involution(p, v):
    pa, va = p.as_array(), v.as_array()
    assert np.max(np.abs(reflect(pa, reflect(pa, va)) - va)) < 1e-12
    assert np.max(np.abs(reflect(pa, pa) - pa)) < 1e-12


@given(sphere_points(), algebra_vectors(), algebra_vectors())
@settings(max_examples=100)
def test_tau_form_vanishes_on_the_class(p, x, y):
    assert abs(tau_form(p, x, y)) < 1e-12


def test_log_conventions_agree():
    for _ in range(20):
        g = UnitQuaternion.normalized(*RNG.normal(size=4))
        x = AlgebraVector.from_array(RNG.normal(size=3))
        vel = quat_mul(pure_quat(x.as_array()), g.as_array())
        back = right_log(vel, g)
        assert np.max(np.abs(back.as_array() - x.as_array())) < 1e-12
        y = left_log(vel, g)
        assert np.max(np.abs(y.as_array() - right_to_left(g, x).as_array())) < 1e-12
        assert np.max(
            np.abs(left_to_right(g, y).as_array() - x.as_array())
        ) < 1e-12


def test_log_rejects_non_tangent_velocity():
    g = UnitQuaternion.identity()
    with pytest.raises(ValueError):
        right_log(np.array([1.0, 0.0, 0.0, 0.0]), g)
    with pytest.raises(ValueError):
        left_log(np.array([1.0, 0.0, 0.0, 0.0]), g)


def test_batched_kernels_match_oracle():
    a = RNG.normal(size=(40, 4))
    a /= np.linalg.norm(a, axis=-1, keepdims=True)
    b = RNG.normal(size=(40, 4))
    b /= np.linalg.norm(b, axis=-1, keepdims=True)
    got = quat_mul(a, b)
    want = np.array([oracles.quat_mul(ra, rb) for ra, rb in zip(a, b)])
    assert np.max(np.abs(got - want)) < 1e-12
    assert np.max(np.abs(quat_mul(a, quat_inverse(a))
                         - np.array([1.0, 0, 0, 0]))) < 1e-12
    v = RNG.normal(size=(40, 3))
    got_rot = rotate(a, v)
    want_rot = np.array(
        [oracles.conjugation_as_rotation(ra, rv) for ra, rv in zip(a, v)]
    )
    assert np.max(np.abs(got_rot - want_rot)) < 1e-10


def test_axis_constants():
    assert X_AXIS.as_quaternion().is_trace_free()
    assert np.allclose(X_AXIS.antipode().as_array(), [-1.0, 0.0, 0.0])
    # the x-axis corresponds to the diagonal trace-free matrix diag(i, -i)
    m = X_AXIS.as_quaternion().as_matrix()
    assert np.max(np.abs(m - np.diag([1j, -1j]))) < 1e-15
