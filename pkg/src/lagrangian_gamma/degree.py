"""Mapping degree of ``A -> A conj(B) A`` on the Grassmannian of C^n, n odd.

The basepoint B is diagonal with phases ``exp(i theta_j)`` for increasing
angles in (0, 2 pi).  The preimages of id are the diagonal matrices with
entries ``exp(i (theta_k/2 + eps_k pi))`` for binary sequences eps.  At such
a point, transporting tangent vectors from id by the chart unitary
``U = diag(exp(i (theta_k/4 + eps_k pi/2)))`` turns the differential into the
linear map ``Q -> 2 Re(U Q U^{-1})`` on real symmetric matrices, whose
determinant sign is the local degree.  Summing signs gives the degree.

Signs are taken from an LU determinant of the full N x N matrix
(N = n(n+1)/2) and, independently, from counting the negative cosine
factors; the two must agree.

Orientation convention: every tangent space is compared with the one at id
through its chart unitary, and that transport is taken to preserve
orientation.  The positive sign of the result depends on this choice; the
code relies on it and does not test it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .combinatorics import sigma
from .errors import DegeneracyError, InvariantError, ScopeError, VerificationError
from .linalg import det_sign_lu
from .models import SymmetricUnitary

MIN_GAP = 1e-9
RESIDUAL_TOL = 1e-11
ALPHA_DIRECT_TOL = 1e-10


@dataclass(frozen=True)
class AngleSpec:
    """Strictly increasing angles in the open interval (0, 2 pi)."""

    thetas: tuple[float, ...]

    def __post_init__(self):
        t = tuple(float(x) for x in self.thetas)
        if not t:
            raise InvariantError("need at least one angle")
        if not all(math.isfinite(x) for x in t):
            raise InvariantError("angles must be finite")
        if not (0 < t[0] and t[-1] < 2 * math.pi):
            raise InvariantError("angles must lie in the open interval (0, 2*pi)")
        if any(b - a <= MIN_GAP for a, b in zip(t, t[1:])):
            raise InvariantError(f"angles must increase with gaps > {MIN_GAP:g}")
        object.__setattr__(self, "thetas", t)

    @property
    def n(self) -> int:
        return len(self.thetas)

    def as_array(self) -> np.ndarray:
        return np.array(self.thetas)


def default_angles(n: int) -> AngleSpec:
    """Evenly spaced angles ``2 pi j / (n + 1)``, j = 1..n."""
    if n < 1:
        raise InvariantError("dimension must be >= 1")
    return AngleSpec(tuple(2 * math.pi * j / (n + 1) for j in range(1, n + 1)))


def random_angles(n: int, rng: np.random.Generator) -> AngleSpec:
    """Sorted uniform angles, resampled until all gaps are comfortably large."""
    while True:
        t = np.sort(rng.uniform(0, 2 * math.pi, size=n))
        if t[0] > 1e-6 and t[-1] < 2 * math.pi - 1e-6 and np.all(np.diff(t) > 1e-6):
            return AngleSpec(tuple(t))


def _check_eps(spec: AngleSpec, eps) -> tuple[int, ...]:
    eps = tuple(int(b) for b in eps)
    if len(eps) != spec.n or any(b not in (0, 1) for b in eps):
        raise InvariantError(f"eps must be a binary sequence of length {spec.n}, got {eps}")
    return eps


def all_eps(n: int):
    """All binary sequences of length n, eps[0] most significant."""
    return itertools.product((0, 1), repeat=n)


def basepoint(spec: AngleSpec) -> SymmetricUnitary:
    return SymmetricUnitary(np.diag(np.exp(1j * spec.as_array())))


def theta0(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``A conj(B) A`` on raw matrices."""
    return a @ b.conj() @ a


def preimage(spec: AngleSpec, eps) -> SymmetricUnitary:
    eps = _check_eps(spec, eps)
    phases = spec.as_array() / 2 + np.pi * np.array(eps)
    return SymmetricUnitary(np.diag(np.exp(1j * phases)))


def enumerate_preimages(spec: AngleSpec) -> list[tuple[tuple[int, ...], SymmetricUnitary]]:
    """All 2^n preimages of id, each checked to map to id within 1e-11."""
    b = basepoint(spec).a
    eye = np.eye(spec.n)
    out = []
    for eps in all_eps(spec.n):
        a = preimage(spec, eps)
        res = np.linalg.norm(theta0(a.a, b) - eye)
        if res >= RESIDUAL_TOL:
            raise VerificationError(f"preimage {eps} misses id: residual {res:.3e}")
        out.append((eps, a))
    return out


def chart_unitary(spec: AngleSpec, eps) -> np.ndarray:
    """Diagonal U with ``U conj(U)^{-1}`` equal to the preimage for `eps`."""
    eps = _check_eps(spec, eps)
    return np.diag(np.exp(1j * (spec.as_array() / 4 + np.pi / 2 * np.array(eps))))


def sym_basis(n: int) -> np.ndarray:
    """Orthonormal basis of real symmetric n x n matrices, shape (N, n, n).

    Order: E_jj for j = 1..n, then (E_jk + E_kj)/sqrt(2) for j < k in
    lexicographic order.
    """
    if n < 1:
        raise InvariantError("dimension must be >= 1")
    basis = []
    for j in range(n):
        e = np.zeros((n, n))
        e[j, j] = 1.0
        basis.append(e)
    for j in range(n):
        for k in range(j + 1, n):
            e = np.zeros((n, n))
            e[j, k] = e[k, j] = 1 / math.sqrt(2)
            basis.append(e)
    return np.array(basis)


def _check_symmetric(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise InvariantError(f"expected a square matrix, got shape {q.shape}")
    if np.abs(q - q.T).max() > 1e-12 * max(1.0, np.abs(q).max()):
        raise InvariantError("Q must be symmetric")
    return q


def alpha_factors(spec: AngleSpec, eps) -> np.ndarray:
    """Entrywise multipliers ``2 cos((theta_j - theta_k)/4 + (eps_j - eps_k) pi/2)``."""
    eps = np.array(_check_eps(spec, eps))
    t = spec.as_array()
    arg = (t[:, None] - t[None, :]) / 4 + (eps[:, None] - eps[None, :]) * np.pi / 2
    return 2 * np.cos(arg)


def alpha_apply(spec: AngleSpec, eps, q) -> np.ndarray:
    """Linearized map at the preimage `eps`, in chart coordinates (closed form)."""
    q = _check_symmetric(q)
    if q.shape[0] != spec.n:
        raise InvariantError("Q has the wrong dimension")
    return alpha_factors(spec, eps) * q


def alpha_apply_direct(spec: AngleSpec, eps, q) -> np.ndarray:
    """Same map as :func:`alpha_apply`, via the unsimplified chain.

    ``T = U (iQ) conj(U)^{-1}`` is pushed through the differential
    ``T -> T conj(B) A + A conj(B) T`` and the result, which lies in
    ``{iQ'}``, is read back as Q'.  Disagreement with the closed form
    beyond 1e-10 raises :class:`VerificationError`.
    """
    q = _check_symmetric(q)
    eps = _check_eps(spec, eps)
    u = chart_unitary(spec, eps)
    a = preimage(spec, eps).a
    bbar = basepoint(spec).a.conj()
    t = u @ (1j * q) @ np.linalg.inv(u.conj())
    d = t @ bbar @ a + a @ bbar @ t
    out = d.imag
    if np.linalg.norm(d.real) > ALPHA_DIRECT_TOL * max(1.0, np.linalg.norm(q)):
        raise VerificationError("differential left the tangent space at id")
    closed = alpha_apply(spec, eps, q)
    dev = np.linalg.norm(out - closed)
    if dev > ALPHA_DIRECT_TOL * max(1.0, np.linalg.norm(q)):
        raise VerificationError(f"direct and closed-form linearization differ by {dev:.3e}")
    return out


def alpha_matrix(spec: AngleSpec, eps) -> np.ndarray:
    """Matrix of the linearization in :func:`sym_basis` coordinates."""
    basis = sym_basis(spec.n)
    images = alpha_factors(spec, eps)[None, :, :] * basis
    return np.einsum("ajk,bjk->ab", basis, images)


def sign_analytic(spec: AngleSpec, eps) -> int:
    """``(-1)^sigma(eps)``: one negative factor per pair j < k with eps_j = 0, eps_k = 1."""
    f = alpha_factors(spec, eps)
    if np.abs(f[np.triu_indices(spec.n)]).min() <= 2 * MIN_GAP:
        raise DegeneracyError(f"cosine factor vanishes at eps={tuple(eps)}")
    _, parity = sigma(_check_eps(spec, eps))
    return -1 if parity else 1


@dataclass
class PreimagePoint:
    eps: tuple[int, ...]
    a_eps: SymmetricUnitary = field(repr=False)
    u_eps: np.ndarray = field(repr=False)
    sign_numeric: int
    sign_analytic: int
    log_abs_det: float
    residual: float


@dataclass
class DegreeReport:
    n: int
    m: int
    degree_signed_sum: int
    degree_closed_form: int
    points: list[PreimagePoint] = field(repr=False)
    all_regular: bool

    @property
    def signs_agree(self) -> bool:
        return all(p.sign_numeric == p.sign_analytic for p in self.points)

    @property
    def max_residual(self) -> float:
        return max(p.residual for p in self.points)

    @property
    def ok(self) -> bool:
        return (
            self.all_regular
            and self.signs_agree
            and self.degree_signed_sum == self.degree_closed_form
            and len(self.points) == 2**self.n
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "degree": self.degree_signed_sum,
            "closed_form": self.degree_closed_form,
            "all_regular": self.all_regular,
            "points": [
                {"eps": list(p.eps), "sign": p.sign_numeric, "residual": p.residual,
                 "log_abs_det": p.log_abs_det}
                for p in self.points
            ],
        }


def preimage_point(spec: AngleSpec, eps, b: np.ndarray | None = None) -> PreimagePoint:
    eps = _check_eps(spec, eps)
    if b is None:
        b = basepoint(spec).a
    a = preimage(spec, eps)
    sign, logdet = det_sign_lu(alpha_matrix(spec, eps))
    return PreimagePoint(
        eps=eps,
        a_eps=a,
        u_eps=chart_unitary(spec, eps),
        sign_numeric=sign,
        sign_analytic=sign_analytic(spec, eps),
        log_abs_det=logdet,
        residual=float(np.linalg.norm(theta0(a.a, b) - np.eye(spec.n))),
    )


def degree(spec: AngleSpec, strict: bool = True) -> DegreeReport:
    """Signed count of the preimages of id.

    Parameters
    ----------
    spec : AngleSpec
        Basepoint angles; n = len(spec.thetas) must be odd.
    strict : bool, default=True
        Raise when a point is degenerate or the verification fails.  With
        ``strict=False`` the report is returned and ``report.ok`` tells.

    Raises
    ------
    ScopeError
        For even n (the Grassmannian is not orientable there).
    DegeneracyError, VerificationError
        In strict mode only.
    """
    n = spec.n
    if n % 2 == 0:
        raise ScopeError(f"degree undefined for n={n}: the Lagrangian Grassmannian is non-orientable for even n")
    b = basepoint(spec).a
    points = [preimage_point(spec, eps, b) for eps in all_eps(n)]
    m = (n - 1) // 2
    report = DegreeReport(
        n=n,
        m=m,
        degree_signed_sum=sum(p.sign_numeric for p in points),
        degree_closed_form=2 ** (m + 1),
        points=points,
        all_regular=all(p.sign_numeric != 0 for p in points),
    )
    if strict:
        if not report.all_regular:
            raise DegeneracyError("id is not a regular value for this basepoint")
        if max(p.residual for p in points) >= RESIDUAL_TOL:
            raise VerificationError("a closed-form preimage does not map to id")
        if not report.signs_agree:
            raise VerificationError("numeric and analytic signs disagree")
        if report.degree_signed_sum != report.degree_closed_form:
            raise VerificationError(
                f"signed sum {report.degree_signed_sum} != closed form {report.degree_closed_form}"
            )
    return report
