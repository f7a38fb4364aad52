import cmath
import math

import numpy as np
import pytest

from lagrangian_gamma.errors import InvariantError
from lagrangian_gamma.models import (
    AntiSympInvolution,
    LagrangianPlane,
    SymmetricUnitary,
    complex_structure,
    conjugation,
    first_slot_involution_check,
    involution_from_plane,
    involution_to_unitary,
    plane_from_involution,
    random_lagrangian,
    realify,
    theta_involution,
    theta_unitary,
    unitary_to_involution,
)

SIZES = [1, 2, 3, 5]


def test_symmetric_unitary_validation():
    SymmetricUnitary(np.diag([1j, -1]))
    with pytest.raises(InvariantError, match="unitary"):
        SymmetricUnitary(2 * np.eye(2))
    with pytest.raises(InvariantError, match="Lagrangian"):
        # unitary but not symmetric
        SymmetricUnitary(np.array([[0, 1], [-1, 0]], dtype=complex))


def test_points_are_immutable():
    a = SymmetricUnitary.identity(2)
    with pytest.raises(ValueError):
        a.a[0, 0] = 5


def test_theta_unitary_examples(rng):
    a = random_lagrangian(3, rng)
    b = random_lagrangian(3, rng)
    np.testing.assert_allclose(theta_unitary(a, a).a, a.a, atol=1e-14)
    np.testing.assert_allclose(theta_unitary(SymmetricUnitary.identity(3), b).a, b.a.conj(), atol=1e-15)
    # (i)(conj(-1))(i) = 1
    out = theta_unitary(SymmetricUnitary(np.array([[1j]])), SymmetricUnitary(np.array([[cmath.exp(1j * math.pi)]])))
    np.testing.assert_allclose(out.a, [[1]], atol=1e-15)


def test_theta_unitary_dimension_mismatch():
    with pytest.raises(InvariantError):
        theta_unitary(SymmetricUnitary.identity(2), SymmetricUnitary.identity(3))


@pytest.mark.parametrize("n", SIZES)
def test_theta_closure(n, rng):
    eye = np.eye(n)
    for _ in range(250):
        out = theta_unitary(random_lagrangian(n, rng), random_lagrangian(n, rng)).a
        assert np.linalg.norm(out.conj().T @ out - eye) < 1e-9
        assert np.linalg.norm(out @ out.conj() - eye) < 1e-9
        assert np.linalg.norm(out - out.T) < 1e-9


def test_conjugation_is_identity_point():
    for n in SIZES:
        tau = unitary_to_involution(SymmetricUnitary.identity(n))
        np.testing.assert_array_equal(tau.r, conjugation(n))
        np.testing.assert_allclose(involution_to_unitary(AntiSympInvolution(conjugation(n))).a, np.eye(n))


def test_hand_conversions_n1():
    # z -> i conj(z) is (x, y) -> (y, x)
    r = unitary_to_involution(SymmetricUnitary(np.array([[1j]])))
    np.testing.assert_allclose(r.r, [[0, 1], [1, 0]], atol=1e-15)
    # reflection across the imaginary axis is z -> -conj(z)
    a = involution_to_unitary(AntiSympInvolution(np.diag([-1.0, 1.0])))
    np.testing.assert_allclose(a.a, [[-1]])


def test_involution_validation():
    with pytest.raises(InvariantError, match="anti-symplectic"):
        AntiSympInvolution(np.eye(2))
    # A tau with A unitary but not symmetric: orthogonal, anti-symplectic, squares to -id
    a = np.array([[0.0, 1.0], [-1.0, 0.0]])
    with pytest.raises(InvariantError, match="involution"):
        AntiSympInvolution(realify(a) @ conjugation(2))
    with pytest.raises(InvariantError):
        AntiSympInvolution(np.eye(3))


@pytest.mark.parametrize("n", SIZES)
def test_round_trips(n, rng):
    for _ in range(100):
        a = random_lagrangian(n, rng)
        r = unitary_to_involution(a)
        assert np.linalg.norm(involution_to_unitary(r).a - a.a) < 1e-10
        j = complex_structure(n)
        assert np.linalg.norm(r.r.T @ j @ r.r + j) < 1e-10


@pytest.mark.parametrize("n", SIZES)
def test_model_equivalence(n, rng):
    for _ in range(100):
        a, b = random_lagrangian(n, rng), random_lagrangian(n, rng)
        lhs = unitary_to_involution(theta_unitary(a, b)).r
        rhs = theta_involution(unitary_to_involution(a), unitary_to_involution(b)).r
        assert np.linalg.norm(lhs - rhs) < 1e-9


def test_theta_involution_examples(rng):
    r = unitary_to_involution(random_lagrangian(2, rng))
    np.testing.assert_allclose(theta_involution(r, r).r, r.r, atol=1e-14)
    tau = AntiSympInvolution(conjugation(3))
    s = unitary_to_involution(random_lagrangian(3, rng))
    assert np.trace(theta_involution(tau, s).r) == pytest.approx(np.trace(s.r), abs=1e-12)


def test_plane_examples():
    plane = plane_from_involution(AntiSympInvolution(conjugation(2)))
    np.testing.assert_allclose(plane.projector(), np.diag([1, 1, 0, 0]), atol=1e-15)
    plane = plane_from_involution(AntiSympInvolution(np.array([[0.0, 1.0], [1.0, 0.0]])))
    np.testing.assert_allclose(plane.projector(), np.full((2, 2), 0.5), atol=1e-15)


def test_involution_from_plane_examples():
    frame = np.hstack([np.eye(3), np.zeros((3, 3))])
    np.testing.assert_allclose(involution_from_plane(LagrangianPlane(frame)).r, conjugation(3))
    frame = np.array([[1.0, 1.0]]) / math.sqrt(2)
    np.testing.assert_allclose(involution_from_plane(LagrangianPlane(frame)).r, [[0, 1], [1, 0]], atol=1e-15)


def test_plane_validation():
    with pytest.raises(InvariantError, match="symplectic"):
        # span of e_x and e_y in C^1 x C^1 ... the complex line C x 0 is symplectic, not Lagrangian
        LagrangianPlane(np.array([[1.0, 0, 0, 0], [0, 0, 1.0, 0]]))
    with pytest.raises(InvariantError, match="orthonormal"):
        LagrangianPlane(np.array([[2.0, 0]]))


@pytest.mark.parametrize("n", SIZES)
def test_planes_round_trip_and_fixed(n, rng):
    j = complex_structure(n)
    for _ in range(50):
        r = unitary_to_involution(random_lagrangian(n, rng))
        plane = plane_from_involution(r)
        assert np.linalg.norm(plane.frame @ j.T @ plane.frame.T) < 1e-10
        assert np.linalg.norm(r.r @ plane.frame.T - plane.frame.T) < 1e-9
        back = plane_from_involution(involution_from_plane(plane))
        assert np.linalg.norm(back.projector() - plane.projector()) < 1e-10
        assert np.linalg.norm(involution_from_plane(plane).r - r.r) < 1e-10


def test_random_lagrangian_contract():
    a = random_lagrangian(4, np.random.default_rng(11))
    b = random_lagrangian(4, np.random.default_rng(11))
    np.testing.assert_array_equal(a.a, b.a)
    one = random_lagrangian(1, np.random.default_rng(0))
    assert abs(abs(one.a[0, 0]) - 1) < 1e-14


def test_first_slot_involution(rng):
    b = random_lagrangian(3, rng)
    assert first_slot_involution_check(SymmetricUnitary.identity(3), b) < 1e-15
    assert first_slot_involution_check(b, b) < 1e-14
    for n in SIZES:
        for _ in range(50):
            assert first_slot_involution_check(random_lagrangian(n, rng), random_lagrangian(n, rng)) < 1e-10


def test_group_picture(rng):
    # on the fixed set conj(B) = B^{-1}, so the product is A B^{-1} A
    for _ in range(50):
        a, b = random_lagrangian(3, rng), random_lagrangian(3, rng)
        np.testing.assert_allclose(theta_unitary(a, b).a, a.a @ np.linalg.inv(b.a) @ a.a, atol=1e-10)
