"""Small dense real/complex linear algebra.

Matrices are plain numpy arrays: ``complex128`` for complex matrices and
``float64`` for real ones.  Everything here targets n <= ~25, where clarity
matters more than speed.  The symmetric eigensolver is a cyclic Jacobi
iteration that also accepts stacks of matrices, so that many small
exponentials can be evaluated in one call.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvariantError

#: pivots below this fraction of the largest entry are treated as zero
PIVOT_RTOL = 1e-12
#: Jacobi stops once the off-diagonal mass drops below this fraction of the norm
JACOBI_RTOL = 1e-15
SYMMETRY_TOL = 1e-10


def as_complex_matrix(a) -> np.ndarray:
    """Validate and convert `a` to a square, finite complex matrix."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InvariantError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvariantError("matrix has non-finite entries")
    return a


def as_real_matrix(a, square: bool = False) -> np.ndarray:
    a = np.asarray(a)
    if np.iscomplexobj(a):
        raise InvariantError("expected a real matrix")
    a = a.astype(float)
    if a.ndim != 2 or 0 in a.shape:
        raise InvariantError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    if square and a.shape[0] != a.shape[1]:
        raise InvariantError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvariantError("matrix has non-finite entries")
    return a


def _check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise InvariantError(f"dimension mismatch: {a.shape} vs {b.shape}")


def mat_mul(a, b) -> np.ndarray:
    a, b = as_complex_matrix(a), as_complex_matrix(b)
    _check_same_shape(a, b)
    return a @ b


def conj(a) -> np.ndarray:
    return np.conj(as_complex_matrix(a))


def transpose(a) -> np.ndarray:
    return as_complex_matrix(a).T.copy()


def adjoint(a) -> np.ndarray:
    return np.conj(as_complex_matrix(a)).T


def frobenius_dist(a, b) -> float:
    """Frobenius norm of ``a - b``."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    _check_same_shape(a, b)
    return float(np.linalg.norm(a - b))


def _phase_fix(q: np.ndarray, r: np.ndarray) -> np.ndarray:
    # scale columns so that diag(R) becomes positive real
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary matrix.

    Parameters
    ----------
    n : int
        Dimension, ``n >= 1``.
    rng : numpy.random.Generator
        Explicit random stream; no global state is touched.

    Returns
    -------
    ndarray of shape (n, n), complex
        QR factor of a complex Ginibre matrix, with the phases of the
        R-diagonal moved into Q so that the distribution is invariant.
    """
    if n < 1:
        raise InvariantError("dimension must be >= 1")
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    return _phase_fix(q, r)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed real orthogonal matrix (same recipe, real Gaussians)."""
    if n < 1:
        raise InvariantError("dimension must be >= 1")
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return _phase_fix(q, r)


def reorthonormalize(u: np.ndarray) -> np.ndarray:
    """Project a nearly unitary matrix back onto U(n) while keeping it close."""
    q, r = np.linalg.qr(u)
    return _phase_fix(q, r)


def random_symmetric(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    g = rng.standard_normal((n, n))
    return scale * (g + g.T) / 2


def sym_eig(q) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of real symmetric matrices by cyclic Jacobi sweeps.

    Parameters
    ----------
    q : array_like of shape (..., n, n)
        Real symmetric matrix, or a stack of them.

    Returns
    -------
    w : ndarray of shape (..., n)
        Eigenvalues in ascending order.
    v : ndarray of shape (..., n, n)
        Orthogonal matrices whose columns are the eigenvectors, so that
        ``q = v @ diag(w) @ v.T``.

    Raises
    ------
    InvariantError
        If the input is not symmetric within 1e-10 (relative to its size).
    """
    q = np.asarray(q)
    if np.iscomplexobj(q):
        raise InvariantError("sym_eig expects a real matrix")
    q = q.astype(float)
    if q.ndim < 2 or q.shape[-1] != q.shape[-2]:
        raise InvariantError(f"expected square matrices, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise InvariantError("matrix has non-finite entries")
    n = q.shape[-1]
    batch_shape = q.shape[:-2]
    a = q.reshape(-1, n, n).copy()
    asym = np.abs(a - np.swapaxes(a, -1, -2)).max(initial=0.0)
    if asym > SYMMETRY_TOL * max(1.0, np.abs(a).max(initial=0.0)):
        raise InvariantError(f"matrix is not symmetric (asymmetry {asym:.3e})")
    a = (a + np.swapaxes(a, -1, -2)) / 2
    v = np.broadcast_to(np.eye(n), a.shape).copy()

    norm = np.linalg.norm(a, axis=(-2, -1))
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(100):
        off = np.sqrt(np.sum(a[:, offdiag] ** 2, axis=-1))
        if np.all(off <= JACOBI_RTOL * norm):
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[:, p, r]
                active = np.abs(apr) > JACOBI_RTOL * norm / n
                if not np.any(active):
                    continue
                safe = np.where(active, apr, 1.0)
                theta = (a[:, r, r] - a[:, p, p]) / (2 * safe)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(theta == 0, 1.0, t)
                t = np.where(active, t, 0.0)
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                c_, s_ = c[:, None], s[:, None]
                # A <- P^T A P with P the (p, r) plane rotation
                cp, cr = a[:, :, p].copy(), a[:, :, r].copy()
                a[:, :, p] = c_ * cp - s_ * cr
                a[:, :, r] = s_ * cp + c_ * cr
                rp, rr = a[:, p, :].copy(), a[:, r, :].copy()
                a[:, p, :] = c_ * rp - s_ * rr
                a[:, r, :] = s_ * rp + c_ * rr
                a[:, p, r] = np.where(active, 0.0, a[:, p, r])
                a[:, r, p] = a[:, p, r]
                vp, vr = v[:, :, p].copy(), v[:, :, r].copy()
                v[:, :, p] = c_ * vp - s_ * vr
                v[:, :, r] = s_ * vp + c_ * vr

    w = np.diagonal(a, axis1=-2, axis2=-1).copy()
    order = np.argsort(w, axis=-1)
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return w.reshape(batch_shape + (n,)), v.reshape(batch_shape + (n, n))


def expi_sym(q) -> np.ndarray:
    """``exp(iQ)`` for real symmetric Q (or a stack of them).

    The result is unitary and complex-symmetric, since
    ``exp(iQ) = V diag(exp(i w)) V^T`` with V real orthogonal.
    """
    w, v = sym_eig(q)
    return (v * np.exp(1j * w)[..., None, :]) @ np.swapaxes(v, -1, -2)


def _lu_pivots(m: np.ndarray) -> tuple[int, np.ndarray]:
    """Gaussian elimination with partial pivoting.

    Returns the number of row swaps and the pivots.  Elimination stops at
    the first pivot below the singularity threshold, which is returned as is.
    """
    a = m.copy()
    n = a.shape[0]
    thresh = PIVOT_RTOL * np.abs(a).max(initial=0.0)
    swaps = 0
    pivots = []
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if p != k:
            a[[k, p]] = a[[p, k]]
            swaps += 1
        piv = a[k, k]
        pivots.append(piv)
        if abs(piv) <= thresh:
            break
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / piv, a[k, k:])
    return swaps, np.array(pivots)


def lu_min_pivot_ratio(m) -> float:
    """Smallest |pivot| of the LU factorization relative to max |entry|."""
    m = as_real_matrix(m, square=True)
    scale = np.abs(m).max()
    if scale == 0:
        return 0.0
    _, pivots = _lu_pivots(m)
    return float(np.abs(pivots).min() / scale)


def det_sign_lu(m) -> tuple[int, float]:
    """Sign and log-magnitude of a real determinant via LU.

    A pivot below ``1e-12 * max|m|`` makes the matrix count as singular and
    yields ``(0, -inf)``; callers use the zero sign to detect non-regular
    points rather than computing with a meaningless sign.
    """
    m = as_real_matrix(m, square=True)
    n = m.shape[0]
    if np.abs(m).max() == 0:
        return 0, -math.inf
    swaps, pivots = _lu_pivots(m)
    if len(pivots) < n or abs(pivots[-1]) <= PIVOT_RTOL * np.abs(m).max():
        return 0, -math.inf
    sign = (-1) ** swaps * int(np.prod(np.sign(pivots)))
    return sign, float(np.sum(np.log(np.abs(pivots))))
