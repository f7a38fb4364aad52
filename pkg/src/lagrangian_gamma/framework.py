"""The product ``(g, h) -> g h^{-1} g`` on matrix groups and on fixed sets.

For an involutive anti-isomorphism I of a group G (``I(gh) = I(h) I(g)``,
``I(I(g)) = g``) the fixed set Fix(I) is closed under this product.  Two
anti-isomorphisms are modelled: transposition, whose fixed set in U(n) is
the Lagrangian Grassmannian, and inversion, whose fixed set in O(n) is the
disjoint union of the real Grassmannians G(k, n).  Fix(transpose) in SU(2)
is a 2-sphere, parametrized by :func:`su2_fix_point`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvariantError, VerificationError
from .linalg import as_complex_matrix, random_orthogonal, random_unitary

GROUP_TOL = 1e-10


class AntiIso(enum.Enum):
    TRANSPOSE = "transpose"
    INVERSE = "inverse"

    def __call__(self, g) -> np.ndarray:
        g = np.asarray(g)
        if self is AntiIso.TRANSPOSE:
            return g.T.copy()
        return np.linalg.inv(g)


class Group(enum.Enum):
    U = "U"
    O = "O"
    SU = "SU"

    def contains(self, g: np.ndarray, tol: float = GROUP_TOL) -> bool:
        n = g.shape[0]
        if np.linalg.norm(g.conj().T @ g - np.eye(n)) >= tol:
            return False
        if self is Group.O:
            return bool(np.abs(g.imag).max() < tol)
        if self is Group.SU:
            return bool(abs(np.linalg.det(g) - 1) < tol)
        return True


@dataclass(frozen=True)
class FixSample:
    """A group element fixed by an anti-isomorphism."""

    g: np.ndarray
    group: Group
    anti_iso: AntiIso

    def __post_init__(self):
        g = as_complex_matrix(self.g)
        if not self.group.contains(g):
            raise InvariantError(f"element is not in {self.group.value}(n)")
        dev = np.linalg.norm(self.anti_iso(g) - g)
        if dev >= GROUP_TOL:
            raise InvariantError(f"element is not fixed by {self.anti_iso.value}: {dev:.3e}")
        object.__setattr__(self, "g", g)


def gamma_product(g, h) -> np.ndarray:
    """``g h^{-1} g``."""
    g, h = as_complex_matrix(g), as_complex_matrix(h)
    if g.shape != h.shape:
        raise InvariantError(f"dimension mismatch: {g.shape} vs {h.shape}")
    if np.linalg.cond(h) > 1e12:
        raise InvariantError("h is not invertible")
    return g @ np.linalg.solve(h, g)


def fix_closure_check(pairs) -> float:
    """Largest ``||I(g h^{-1} g) - g h^{-1} g||_F`` over pairs of fixed samples."""
    worst = 0.0
    for x, y in pairs:
        if x.group is not y.group or x.anti_iso is not y.anti_iso:
            raise InvariantError("pair mixes groups or anti-isomorphisms")
        p = gamma_product(x.g, y.g)
        worst = max(worst, float(np.linalg.norm(x.anti_iso(p) - p)))
    return worst


def random_fix_sample(group: Group, anti_iso: AntiIso, n: int, rng: np.random.Generator) -> FixSample:
    """Random element of Fix(I) for the supported (group, I) combinations.

    * (U, transpose): ``U U^T``;
    * (O, inverse): ``V diag(+-1) V^T`` with V Haar-orthogonal and random signs;
    * (SU, transpose), n = 2: :func:`su2_fix_point` of a random unit vector.
    """
    if group is Group.U and anti_iso is AntiIso.TRANSPOSE:
        u = random_unitary(n, rng)
        g = u @ u.T
    elif group is Group.O and anti_iso is AntiIso.INVERSE:
        v = random_orthogonal(n, rng)
        signs = rng.choice([-1.0, 1.0], size=n)
        g = (v * signs) @ v.T
    elif group is Group.SU and anti_iso is AntiIso.TRANSPOSE and n == 2:
        p = rng.standard_normal(3)
        g = su2_fix_point(p / np.linalg.norm(p))
    else:
        raise InvariantError(f"no sampler for Fix({anti_iso.value}) in {group.value}({n})")
    return FixSample(g, group, anti_iso)


def grassmannian_component(g) -> int:
    """Dimension k of the +1 eigenspace of a symmetric orthogonal involution.

    Read off from the trace: ``trace g = k - (n - k)``.
    """
    g = np.asarray(g)
    if np.iscomplexobj(g):
        if np.abs(g.imag).max() > 1e-9:
            raise InvariantError("expected a real matrix")
        g = g.real
    n = g.shape[0]
    eye = np.eye(n)
    for name, resid in (("orthogonal", g.T @ g - eye), ("symmetric", g - g.T), ("involution", g @ g - eye)):
        if np.linalg.norm(resid) > 1e-9:
            raise InvariantError(f"matrix is not {name}")
    twice_k = n + np.trace(g)
    k = int(round(twice_k / 2))
    if abs(twice_k - 2 * k) > 1e-6 or not 0 <= k <= n:
        raise InvariantError(f"trace {np.trace(g):.6g} is inconsistent with an involution")
    return k


def component_spectrum(n: int, samples: int, rng: np.random.Generator) -> list[int]:
    """Component indices k of random symmetric orthogonal involutions.

    Each sample is also multiplied with a second sample, ``h g h`` (which is
    ``h g^{-1} h`` for involutions); conjugation must leave k unchanged.
    """
    ks = []
    for _ in range(samples):
        g = random_fix_sample(Group.O, AntiIso.INVERSE, n, rng).g.real
        h = random_fix_sample(Group.O, AntiIso.INVERSE, n, rng).g.real
        k = grassmannian_component(g)
        k_conj = grassmannian_component(gamma_product(h, g).real)
        if k != k_conj:
            raise VerificationError(f"component changed under conjugation: {k} -> {k_conj}")
        ks.append(k)
    return ks


def su2_fix_point(p) -> np.ndarray:
    """Symmetric SU(2) matrix ``[[p1 + i p2, i p3], [i p3, p1 - i p2]]`` of a unit vector."""
    p = np.asarray(p, dtype=float)
    if p.shape != (3,) or abs(np.linalg.norm(p) - 1) > 1e-10:
        raise InvariantError("p must be a unit vector in R^3")
    p1, p2, p3 = p
    return np.array([[p1 + 1j * p2, 1j * p3], [1j * p3, p1 - 1j * p2]])
