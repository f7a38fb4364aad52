"""Points of the Lagrangian Grassmannian in three models, and the product on them.

* :class:`SymmetricUnitary` -- unitary ``A`` with ``A conj(A) = id``
  (equivalently ``A = A^T``).
* :class:`AntiSympInvolution` -- real orthogonal ``R`` on R^{2n} with
  ``R^2 = id`` and ``R^T J R = -J``.
* :class:`LagrangianPlane` -- orthonormal frame of the plane itself.

Realification convention: ``x + iy`` in C^n corresponds to ``(x, y)`` in
R^{2n}, ``J = [[0, -I], [I, 0]]`` and complex conjugation is
``tau = diag(I, -I)``.  An involution R corresponds to the unitary A with
``R = A o tau``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantError
from .linalg import as_complex_matrix, as_real_matrix, random_unitary, sym_eig

DEFAULT_TOL = 1e-10


def complex_structure(n: int) -> np.ndarray:
    """The matrix J of multiplication by i on R^{2n}."""
    z, i = np.zeros((n, n)), np.eye(n)
    return np.block([[z, -i], [i, z]])


def conjugation(n: int) -> np.ndarray:
    """The matrix tau of coordinatewise complex conjugation on R^{2n}."""
    return np.diag(np.r_[np.ones(n), -np.ones(n)])


def realify(a: np.ndarray) -> np.ndarray:
    """Real 2n x 2n matrix of the complex-linear map ``a``."""
    x, y = a.real, a.imag
    return np.block([[x, -y], [y, x]])


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SymmetricUnitary:
    """A point of the Grassmannian as a symmetric unitary matrix.

    Construction validates unitarity and ``A conj(A) = id`` within `tol`;
    invalid data is rejected, never projected back onto the manifold.
    """

    a: np.ndarray
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        a = as_complex_matrix(self.a)
        n = a.shape[0]
        eye = np.eye(n)
        dev = np.linalg.norm(a.conj().T @ a - eye)
        if dev >= self.tol:
            raise InvariantError(f"not unitary: ||A*A - id||_F = {dev:.3e}")
        dev = np.linalg.norm(a @ a.conj() - eye)
        if dev >= self.tol:
            raise InvariantError(f"not a Lagrangian point: ||A conj(A) - id||_F = {dev:.3e}")
        object.__setattr__(self, "a", _frozen(a))

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @classmethod
    def identity(cls, n: int) -> "SymmetricUnitary":
        return cls(np.eye(n, dtype=complex))


@dataclass(frozen=True)
class AntiSympInvolution:
    """A point of the Grassmannian as an orthogonal anti-symplectic involution."""

    r: np.ndarray
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        r = as_real_matrix(self.r, square=True)
        if r.shape[0] % 2:
            raise InvariantError(f"involution must act on an even-dimensional space, got {r.shape[0]}")
        n = r.shape[0] // 2
        eye, j = np.eye(2 * n), complex_structure(n)
        checks = {
            "orthogonality R^T R = id": r.T @ r - eye,
            "involution R^2 = id": r @ r - eye,
            "anti-symplectic R^T J R = -J": r.T @ j @ r + j,
        }
        for name, resid in checks.items():
            dev = np.linalg.norm(resid)
            if dev >= self.tol:
                raise InvariantError(f"{name} violated: deviation {dev:.3e}")
        object.__setattr__(self, "r", _frozen(r))

    @property
    def n(self) -> int:
        return self.r.shape[0] // 2


@dataclass(frozen=True)
class LagrangianPlane:
    """A Lagrangian plane given by an orthonormal row frame (n x 2n)."""

    frame: np.ndarray
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        f = as_real_matrix(self.frame)
        n = f.shape[0]
        if f.shape[1] != 2 * n:
            raise InvariantError(f"frame must have shape (n, 2n), got {f.shape}")
        dev = np.linalg.norm(f @ f.T - np.eye(n))
        if dev >= self.tol:
            raise InvariantError(f"frame is not orthonormal: deviation {dev:.3e}")
        dev = np.linalg.norm(f @ complex_structure(n).T @ f.T)
        if dev >= self.tol:
            raise InvariantError(f"symplectic form does not vanish on the plane: {dev:.3e}")
        object.__setattr__(self, "frame", _frozen(f))

    @property
    def n(self) -> int:
        return self.frame.shape[0]

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the plane; the frame-independent identity of the plane."""
        return self.frame.T @ self.frame


def _same_n(x, y) -> None:
    if x.n != y.n:
        raise InvariantError(f"dimension mismatch: n={x.n} vs n={y.n}")


def theta_unitary(a: SymmetricUnitary, b: SymmetricUnitary) -> SymmetricUnitary:
    """The product ``A conj(B) A``; closure is checked at 10x the input tolerance."""
    _same_n(a, b)
    out = a.a @ b.a.conj() @ a.a
    return SymmetricUnitary(out, tol=10 * max(a.tol, b.tol))


def theta_involution(r: AntiSympInvolution, s: AntiSympInvolution) -> AntiSympInvolution:
    """The product ``R S R`` of two involutions."""
    _same_n(r, s)
    return AntiSympInvolution(r.r @ s.r @ r.r, tol=10 * max(r.tol, s.tol))


def unitary_to_involution(a: SymmetricUnitary) -> AntiSympInvolution:
    return AntiSympInvolution(realify(a.a) @ conjugation(a.n), tol=a.tol)


def involution_to_unitary(r: AntiSympInvolution) -> SymmetricUnitary:
    """Read ``R o tau`` as a complex-linear map.

    Raises
    ------
    InvariantError
        If ``R o tau`` does not commute with J, i.e. is not complex linear.
    """
    n = r.n
    m = r.r @ conjugation(n)
    j = complex_structure(n)
    dev = np.linalg.norm(m @ j - j @ m)
    if dev >= r.tol:
        raise InvariantError(f"R o tau is not complex linear: ||[R tau, J]||_F = {dev:.3e}")
    a = m[:n, :n] + 1j * m[n:, :n]
    return SymmetricUnitary(a, tol=r.tol)


def plane_from_involution(r: AntiSympInvolution) -> LagrangianPlane:
    """Fixed-point plane of R, i.e. its +1 eigenspace."""
    return planes_from_involutions([r])[0]


def planes_from_involutions(rs) -> list[LagrangianPlane]:
    """:func:`plane_from_involution` for many involutions of equal size, in one eigensolve."""
    rs = list(rs)
    if not rs:
        return []
    if len({r.n for r in rs}) != 1:
        raise InvariantError("involutions must share the same dimension")
    ws, vs = sym_eig(np.stack([r.r for r in rs]))
    planes = []
    for r, w, v in zip(rs, ws, vs):
        keep = w > 0
        if keep.sum() != r.n:
            raise InvariantError(f"+1 eigenspace has dimension {keep.sum()}, expected {r.n}")
        planes.append(LagrangianPlane(v[:, keep].T, tol=r.tol))
    return planes


def involution_from_plane(plane: LagrangianPlane) -> AntiSympInvolution:
    """Reflection ``2P - id`` through the plane."""
    p = plane.projector()
    return AntiSympInvolution(2 * p - np.eye(2 * plane.n), tol=plane.tol)


def random_lagrangian_with_chart(n: int, rng: np.random.Generator) -> tuple[SymmetricUnitary, np.ndarray]:
    """Random point ``U U^T`` together with its Haar-unitary chart U."""
    u = random_unitary(n, rng)
    return SymmetricUnitary(u @ u.T, tol=1e-11), u


def random_lagrangian(n: int, rng: np.random.Generator) -> SymmetricUnitary:
    """Random point ``U U^T`` with U Haar-unitary (``U U^T = U conj(U)^{-1}``)."""
    return random_lagrangian_with_chart(n, rng)[0]


def first_slot_involution_check(r0: SymmetricUnitary, s: SymmetricUnitary) -> float:
    """Distance between ``Theta(R0, Theta(R0, S))`` and S; zero since the first-slot map squares to id."""
    twice = theta_unitary(r0, theta_unitary(r0, s))
    return float(np.linalg.norm(twice.a - s.a))
