import itertools
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from lagrangian_gamma.errors import InvariantError
from lagrangian_gamma.linalg import (
    adjoint,
    conj,
    det_sign_lu,
    expi_sym,
    frobenius_dist,
    mat_mul,
    random_symmetric,
    random_unitary,
    sym_eig,
    transpose,
)
from lagrangian_gamma.models import realify


def test_mat_mul_examples():
    m = np.array([[1 + 2j, 3], [4j, -1]])
    np.testing.assert_array_equal(mat_mul(np.eye(2), m), m)
    np.testing.assert_array_equal(mat_mul(np.diag([1j, 1j]), np.diag([1j, 1j])), -np.eye(2))
    swap = np.array([[0, 1], [1, 0]])
    np.testing.assert_array_equal(mat_mul(swap, swap), np.eye(2))
    with pytest.raises(InvariantError):
        mat_mul(np.eye(2), np.eye(3))


def test_conj_transpose_adjoint(rng):
    np.testing.assert_array_equal(conj(np.diag([1j])), np.diag([-1j]))
    u = random_unitary(4, rng)
    assert np.linalg.norm(adjoint(u) @ u - np.eye(4)) < 1e-12
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    np.testing.assert_array_equal(transpose(transpose(m)), m)


def test_frobenius_dist():
    m = np.array([[1, 2j], [3, 4]])
    assert frobenius_dist(m, m) == 0
    assert frobenius_dist(np.eye(2), np.zeros((2, 2))) == pytest.approx(math.sqrt(2))
    assert frobenius_dist(np.diag([1]), np.diag([-1])) == pytest.approx(2)
    with pytest.raises(InvariantError):
        frobenius_dist(np.eye(2), np.eye(3))


def test_rejects_nonfinite():
    with pytest.raises(InvariantError):
        mat_mul(np.array([[np.nan]]), np.eye(1))


@pytest.mark.parametrize("n", [1, 2, 5, 12, 25])
def test_random_unitary_contract(n):
    u = random_unitary(n, np.random.default_rng(n))
    assert np.linalg.norm(u.conj().T @ u - np.eye(n)) < 1e-12
    assert np.linalg.norm(u @ u.conj().T - np.eye(n)) < 1e-12
    sign, logabs = det_sign_lu(realify(u))
    assert sign == 1 and abs(logabs) < 1e-10
    if n == 1:
        assert abs(abs(u[0, 0]) - 1) < 1e-14


def test_random_unitary_deterministic():
    a = random_unitary(3, np.random.default_rng(5))
    b = random_unitary(3, np.random.default_rng(5))
    np.testing.assert_array_equal(a, b)


def test_sym_eig_examples():
    w, v = sym_eig(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(w, [1, 3])
    np.testing.assert_allclose(np.abs(v), [[0, 1], [1, 0]], atol=1e-15)
    w, _ = sym_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(w, [-1, 1], atol=1e-15)


def test_sym_eig_rejects_nonsymmetric():
    with pytest.raises(InvariantError):
        sym_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


@pytest.mark.parametrize("n", [1, 2, 3, 7, 15, 25])
def test_sym_eig_reconstruction(n, rng):
    q = random_symmetric(n, rng)
    w, v = sym_eig(q)
    assert np.linalg.norm(v @ np.diag(w) @ v.T - q) < 1e-10 * max(1, np.linalg.norm(q))
    assert np.linalg.norm(v.T @ v - np.eye(n)) < 1e-12
    off = v.T @ q @ v
    off -= np.diag(np.diag(off))
    assert np.linalg.norm(off) < 1e-11 * np.linalg.norm(q)


def test_sym_eig_batched_matches_single(rng):
    qs = np.stack([random_symmetric(4, rng) for _ in range(6)])
    ws, vs = sym_eig(qs)
    for q, w in zip(qs, ws):
        np.testing.assert_allclose(w, sym_eig(q)[0], atol=1e-13)
    np.testing.assert_allclose(vs @ (ws[..., None] * np.swapaxes(vs, -1, -2)), qs, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, (4, 4), elements=st.floats(-10, 10)))
def test_sym_eig_eigenvalues_match_lapack(g):
    q = (g + g.T) / 2
    w, _ = sym_eig(q)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(q), atol=1e-11 * max(1, np.abs(q).max()))


def test_expi_sym_examples():
    np.testing.assert_allclose(expi_sym(np.zeros((3, 3))), np.eye(3))
    np.testing.assert_allclose(expi_sym(np.array([[math.pi]])), [[-1]], atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_expi_sym_inverse_and_structure(n, rng):
    for _ in range(20):
        q = random_symmetric(n, rng)
        q *= math.pi / max(np.linalg.norm(q, 2), 1e-12) * rng.uniform()
        e = expi_sym(q)
        assert np.linalg.norm(e @ expi_sym(-q) - np.eye(n)) < 1e-10
        assert np.linalg.norm(e - e.T) < 1e-10
        assert np.linalg.norm(e.conj().T @ e - np.eye(n)) < 1e-10
        # independent oracle: Pade-based matrix exponential
        assert np.linalg.norm(e - scipy.linalg.expm(1j * q)) < 1e-10


def test_det_sign_lu_examples():
    assert det_sign_lu(np.eye(3)) == (1, 0.0)
    assert det_sign_lu(np.array([[0.0, 1.0], [1.0, 0.0]])) == (-1, 0.0)
    sign, logabs = det_sign_lu(np.diag([2.0, -3.0]))
    assert sign == -1 and logabs == pytest.approx(math.log(6))


def test_det_sign_lu_flags_singular():
    sign, logabs = det_sign_lu(np.array([[1.0, 2.0], [2.0, 4.0]]))
    assert sign == 0 and logabs == -math.inf
    assert det_sign_lu(np.zeros((2, 2)))[0] == 0
    assert det_sign_lu(np.diag([1.0, 1e-13]))[0] == 0


def _cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)))


def test_det_sign_lu_matches_cofactor_expansion():
    rng = np.random.default_rng(3)
    all_mats = list(itertools.product(range(-2, 3), repeat=9))
    picks = rng.choice(len(all_mats), size=500, replace=False)
    for i in picks:
        m = [list(all_mats[i][3 * r:3 * r + 3]) for r in range(3)]
        exact = _cofactor_det(m)
        sign, logabs = det_sign_lu(np.array(m, dtype=float))
        expected = (exact > 0) - (exact < 0)
        assert sign == expected, m
        if exact:
            assert logabs == pytest.approx(math.log(abs(exact)), abs=1e-12)
