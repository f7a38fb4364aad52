"""Multistart Gauss-Newton search for all solutions of ``A conj(B) A = id``.

Points are parametrized around a chart unitary U by
``Q -> U exp(iQ) conj(U)^{-1} = U exp(iQ) U^T`` with Q real symmetric, so
every iterate stays on the manifold.  After each accepted step the chart is
re-centred (``U <- U exp(iQ/2)``), hence the Jacobian is always taken at
Q = 0, by central differences.  Converged points are deduplicated and matched
against the closed-form preimages.

This module deliberately does not reuse the analytic linearization from
:mod:`lagrangian_gamma.degree`; it is an independent check.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .degree import AngleSpec, default_angles, enumerate_preimages, sym_basis
from .errors import InvariantError
from .io import matrix_to_json
from .linalg import expi_sym, reorthonormalize
from .models import SymmetricUnitary, random_lagrangian_with_chart

THREADS_ENV = "LAGRANGIAN_GAMMA_THREADS"
RETRACT_TOL = 1e-10
REORTHO_EVERY = 10
MAX_HALVINGS = 40


@dataclass
class SearchConfig:
    n: int
    spec: AngleSpec | None = None
    starts: int = 500
    max_iter: int = 50
    step_tol: float = 1e-12
    residual_tol: float = 1e-10
    dedup_tol: float = 1e-6
    seed: int = 7
    fd_step: float = 1e-6

    def __post_init__(self):
        if self.n < 1:
            raise InvariantError("dimension must be >= 1")
        if self.spec is None:
            self.spec = default_angles(self.n)
        if self.spec.n != self.n:
            raise InvariantError(f"angle spec has {self.spec.n} angles, expected {self.n}")
        if self.starts < 0 or self.max_iter < 1:
            raise InvariantError("starts must be >= 0 and max_iter >= 1")
        if min(self.step_tol, self.residual_tol, self.dedup_tol, self.fd_step) <= 0:
            raise InvariantError("tolerances must be positive")
        if self.dedup_tol <= self.residual_tol:
            raise InvariantError("dedup_tol must exceed residual_tol")
        if not 0 <= self.seed < 2**64:
            raise InvariantError("seed must be a 64-bit unsigned integer")


@dataclass
class LocalResult:
    converged: bool
    a: SymmetricUnitary
    u: np.ndarray = field(repr=False)
    iterations: int
    residual: float


@dataclass
class SearchOutcome:
    solutions: list[SymmetricUnitary] = field(repr=False)
    matched: list[tuple[int, ...] | None]
    coverage: float
    strays: int
    converged: int = 0
    failed: int = 0

    def to_dict(self) -> dict:
        return {
            "solutions": [matrix_to_json(s.a) for s in self.solutions],
            "coverage": self.coverage,
            "strays": self.strays,
            "matched": [list(e) if e is not None else None for e in self.matched],
            "converged": self.converged,
            "failed": self.failed,
        }


def retract(u: np.ndarray, q) -> tuple[SymmetricUnitary, np.ndarray]:
    """Move along ``Q`` in the chart centred at ``U conj(U)^{-1}``.

    Returns the new point ``U exp(iQ) conj(U)^{-1}`` and the re-centred chart
    unitary ``U exp(iQ/2)``.  If the result drifts off the manifold, U is
    re-orthonormalized and the step retried once.
    """
    q = np.asarray(q, dtype=float)
    for attempt in range(2):
        half = expi_sym(q / 2)
        u_new = u @ half
        a = u_new @ u_new.T
        try:
            point = SymmetricUnitary(a, tol=RETRACT_TOL)
            fact = np.linalg.norm(u_new @ np.linalg.inv(u_new.conj()) - a)
            if fact >= RETRACT_TOL:
                raise InvariantError(f"chart factorization drifted by {fact:.3e}")
            return point, u_new
        except InvariantError:
            if attempt:
                raise
            u = reorthonormalize(u)
    raise AssertionError("unreachable")


def residual_vector(a: SymmetricUnitary | np.ndarray, b: SymmetricUnitary | np.ndarray) -> np.ndarray:
    """Real and imaginary parts of ``A conj(B) A - id``, flattened row-major."""
    a = a.a if isinstance(a, SymmetricUnitary) else np.asarray(a)
    b = b.a if isinstance(b, SymmetricUnitary) else np.asarray(b)
    r = a @ b.conj() @ a - np.eye(a.shape[-1])
    return np.concatenate([r.real.reshape(r.shape[:-2] + (-1,)), r.imag.reshape(r.shape[:-2] + (-1,))], axis=-1)


def _fd_jacobian(u: np.ndarray, b: np.ndarray, basis: np.ndarray, h: float) -> np.ndarray:
    # columns: central differences along each chart coordinate, evaluated as one batch
    steps = np.concatenate([h * basis, -h * basis])
    pts = u @ expi_sym(steps) @ u.T
    res = residual_vector(pts, b)
    k = len(basis)
    return ((res[:k] - res[k:]) / (2 * h)).T


def local_solve(start: SymmetricUnitary, u: np.ndarray, config: SearchConfig) -> LocalResult:
    """Damped Gauss-Newton from `start`, whose chart unitary is `u`.

    Converges when the residual is below ``residual_tol`` and the
    Gauss-Newton step is below ``step_tol``, or the residual is below
    ``residual_tol`` and no damped step reduces it further (round-off floor).
    """
    b = np.diag(np.exp(1j * config.spec.as_array()))
    basis = sym_basis(config.n)
    a = start
    res = np.linalg.norm(residual_vector(a, b))
    for it in range(config.max_iter):
        jac = _fd_jacobian(u, b, basis, config.fd_step)
        delta = np.linalg.lstsq(jac, -residual_vector(a, b), rcond=None)[0]
        step = float(np.linalg.norm(delta))
        if res < config.residual_tol and step < config.step_tol:
            return LocalResult(True, a, u, it, res)
        q = np.tensordot(delta, basis, axes=1)
        lam = 1.0
        for _ in range(MAX_HALVINGS):
            cand, u_cand = retract(u, lam * q)
            cand_res = np.linalg.norm(residual_vector(cand, b))
            if cand_res < res:
                break
            lam /= 2
        else:
            return LocalResult(res < config.residual_tol, a, u, it, res)
        a, u, res = cand, u_cand, cand_res
        if (it + 1) % REORTHO_EVERY == 0:
            u = reorthonormalize(u)
            a = SymmetricUnitary(u @ u.T, tol=RETRACT_TOL)
            res = np.linalg.norm(residual_vector(a, b))
    return LocalResult(False, a, u, config.max_iter, res)


def _start_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _run_start(config: SearchConfig, index: int) -> LocalResult:
    start, u = random_lagrangian_with_chart(config.n, _start_rng(config.seed, index))
    return local_solve(start, u, config)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def multistart(config: SearchConfig) -> SearchOutcome:
    """Run `config.starts` local solves and collect distinct solutions.

    Each start draws from its own stream derived from ``(seed, index)``, so
    the outcome does not depend on scheduling.  Set the environment variable
    ``LAGRANGIAN_GAMMA_THREADS`` to run starts concurrently.
    """
    indices = range(config.starts)
    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda i: _run_start(config, i), indices))
    else:
        results = [_run_start(config, i) for i in indices]

    solutions: list[SymmetricUnitary] = []
    for r in results:
        if not r.converged:
            continue
        if all(np.linalg.norm(r.a.a - s.a) > config.dedup_tol for s in solutions):
            solutions.append(r.a)

    targets = enumerate_preimages(config.spec)
    hit = set()
    matched = []
    for s in solutions:
        dists = [np.linalg.norm(s.a - t.a) for _, t in targets]
        best = int(np.argmin(dists))
        if dists[best] < config.dedup_tol:
            matched.append(targets[best][0])
            hit.add(best)
        else:
            matched.append(None)
    n_conv = sum(r.converged for r in results)
    return SearchOutcome(
        solutions=solutions,
        matched=matched,
        coverage=len(hit) / len(targets),
        strays=sum(m is None for m in matched),
        converged=n_conv,
        failed=len(results) - n_conv,
    )
