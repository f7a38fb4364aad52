"""Signed counts over binary sequences.

For a binary sequence ``eps`` let sigma(eps) be the number of index pairs
``j < k`` with ``eps[j] == 0`` and ``eps[k] == 1``, and pa(eps) its number
of ones, both taken mod 2 where a parity is needed.  With M_n the number of
length-n sequences with even sigma and P_n the number with sigma + pa even,

    M_n = M_{n-1} + P_{n-1},    P_n = (2^{n-1} - P_{n-1}) + M_{n-1},

and the signed sum ``d_n = sum (-1)^sigma = 2 M_n - 2^n`` equals
``2^{(n+1)/2}`` for odd n.  Everything here is exact integer arithmetic.

Sequences are enumerated with ``eps[0]`` as the most significant bit, so
the integer 0b001 is the sequence (0, 0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ScopeError, VerificationError

BRUTE_MAX_N = 25
RECURSION_MAX_N = 62
_CHUNK = 1 << 20


def _check_bits(eps: Sequence[int]) -> None:
    if any(b not in (0, 1) for b in eps):
        raise ValueError(f"not a binary sequence: {tuple(eps)}")


def sigma(eps: Sequence[int]) -> tuple[int, int]:
    """Number of pairs ``j < k`` with ``eps[j] = 0, eps[k] = 1``, and its parity.

    Single pass: every 1 pairs with all the zeros seen before it.
    """
    _check_bits(eps)
    zeros = count = 0
    for b in eps:
        if b:
            count += zeros
        else:
            zeros += 1
    return count, count & 1


def sigma_pairs(eps: Sequence[int]) -> int:
    """Quadratic pair-loop count; kept as an independent check of :func:`sigma`."""
    _check_bits(eps)
    n = len(eps)
    return sum(1 for j in range(n) for k in range(j + 1, n) if eps[j] == 0 and eps[k] == 1)


def pa(eps: Sequence[int]) -> int:
    _check_bits(eps)
    return sum(eps) & 1


def _sigma_pa_block(n: int, start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
    """sigma and pa parities for the sequences encoded by integers in [start, stop)."""
    codes = np.arange(start, stop, dtype=np.int64)
    zeros = np.zeros(len(codes), dtype=np.uint8)  # parity of zeros seen so far
    sig = np.zeros_like(zeros)
    ones = np.zeros_like(zeros)
    for pos in range(n - 1, -1, -1):  # most significant bit is eps[0]
        bit = ((codes >> pos) & 1).astype(np.uint8)
        sig ^= bit & zeros
        zeros ^= bit ^ 1
        ones ^= bit
    return sig, ones


def brute_counts(n: int) -> tuple[int, int]:
    """(M_n, P_n) by enumerating all 2^n sequences."""
    if not 1 <= n <= BRUTE_MAX_N:
        raise ScopeError(f"brute force enumeration limited to 1 <= n <= {BRUTE_MAX_N}, got n={n}")
    m = p = 0
    total = 1 << n
    for start in range(0, total, _CHUNK):
        sig, par = _sigma_pa_block(n, start, min(start + _CHUNK, total))
        m += int(np.count_nonzero(sig == 0))
        p += int(np.count_nonzero(sig == par))
    return m, p


def d_brute(n: int) -> int:
    """Exact signed sum of ``(-1)^sigma`` over all 2^n sequences."""
    m, _ = brute_counts(n)
    return 2 * m - (1 << n)


def mp_recursion(n: int) -> tuple[list[int], list[int]]:
    """Lists ``[M_1..M_n]`` and ``[P_1..P_n]`` from the one-step recursion.

    Seeds are M_1 = 2 and P_1 = 1 (only the sequence (0) has sigma + pa even).
    The two-step form ``M_k = 2 M_{k-2} + 2^{k-2}`` is checked at every k >= 3.
    """
    if not 1 <= n <= RECURSION_MAX_N:
        raise ScopeError(f"recursion limited to 1 <= n <= {RECURSION_MAX_N}, got n={n}")
    m, p = [2], [1]
    for k in range(2, n + 1):
        m_prev, p_prev = m[-1], p[-1]
        m.append(m_prev + p_prev)
        p.append((1 << (k - 1)) - p_prev + m_prev)
    for k in range(3, n + 1):
        if m[k - 1] != 2 * m[k - 3] + (1 << (k - 2)):
            raise VerificationError(f"two-step recursion fails at k={k}")
    return m, p


def d_recursion(n: int) -> int:
    m, _ = mp_recursion(n)
    return 2 * m[-1] - (1 << n)


def d_closed(n: int) -> int:
    """``2^{(n+1)/2}`` for odd n."""
    if n < 1 or n % 2 == 0:
        raise ScopeError(f"closed form holds for odd n >= 1 only, got n={n}")
    return 1 << ((n + 1) // 2)


@dataclass
class LemmaReport:
    n: int
    d_brute: int | None
    d_rec: int
    d_closed: int
    M: list[int] = field(repr=False)
    P: list[int] = field(repr=False)

    @property
    def agree(self) -> bool:
        vals = {self.d_rec, self.d_closed}
        if self.d_brute is not None:
            vals.add(self.d_brute)
        return len(vals) == 1

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d_brute": self.d_brute,
            "d_rec": self.d_rec,
            "d_closed": self.d_closed,
            "agree": self.agree,
            "M": self.M,
            "P": self.P,
        }


def lemma_report(n: int, brute: bool = True) -> LemmaReport:
    """Compute d_n three ways and replay the doubling chain ``d_k = 2 d_{k-2}``.

    Parameters
    ----------
    n : int
        Odd sequence length.
    brute : bool, default=True
        Include the enumeration route; it is skipped automatically above the
        enumeration budget.

    Raises
    ------
    ScopeError
        For even or non-positive n.
    VerificationError
        If the routes disagree or the doubling chain breaks.
    """
    closed = d_closed(n)
    m, p = mp_recursion(n)
    rec = 2 * m[-1] - (1 << n)
    for k in range(3, n + 1, 2):
        d_k, d_km2 = 2 * m[k - 1] - (1 << k), 2 * m[k - 3] - (1 << (k - 2))
        if d_k != 2 * d_km2:
            raise VerificationError(f"doubling chain fails at k={k}")
    bf = d_brute(n) if brute and n <= BRUTE_MAX_N else None
    report = LemmaReport(n=n, d_brute=bf, d_rec=rec, d_closed=closed, M=m, P=p)
    if not report.agree:
        raise VerificationError(f"routes disagree for n={n}: {report}")
    return report
