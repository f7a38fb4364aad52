import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lagrangian_gamma.combinatorics import (
    brute_counts,
    d_brute,
    d_closed,
    d_recursion,
    lemma_report,
    mp_recursion,
    pa,
    sigma,
    sigma_pairs,
)
from lagrangian_gamma.errors import ScopeError


def _counts_by_listing(n):
    """M_n, P_n by listing sequences with the quadratic pair count."""
    m = p = 0
    for eps in itertools.product((0, 1), repeat=n):
        s = sigma_pairs(eps)
        m += s % 2 == 0
        p += (s + sum(eps)) % 2 == 0
    return m, p


def test_sigma_examples():
    assert sigma((0, 1)) == (1, 1)
    assert sigma((1, 0)) == (0, 0)
    assert sigma((0, 1, 1)) == (2, 0)
    assert sigma(()) == (0, 0)


def test_sigma_rejects_nonbinary():
    with pytest.raises(ValueError):
        sigma((0, 2))


def test_pa_examples():
    assert pa((0, 0, 0, 0)) == 0
    assert pa((1, 0, 1)) == 0
    assert pa((1, 1, 1)) == 1


def test_sigma_linear_matches_pair_loop():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        n = int(rng.integers(0, 65))
        eps = tuple(int(b) for b in rng.integers(0, 2, size=n))
        assert sigma(eps)[0] == sigma_pairs(eps)


@given(st.lists(st.integers(0, 1), max_size=64))
def test_sigma_complements_reverse_order_pairs(eps):
    # every (zero, one) pair is ordered one way or the other
    reversed_pairs = sigma(tuple(reversed(eps)))[0]
    zeros, ones = eps.count(0), eps.count(1)
    assert sigma(eps)[0] + reversed_pairs == zeros * ones


def test_d_brute_small():
    assert d_brute(1) == 2
    assert d_brute(2) == 2
    assert d_brute(3) == 4
    signs = [(-1) ** sigma(e)[1] for e in itertools.product((0, 1), repeat=3)]
    assert signs == [1, 1, -1, 1, 1, -1, 1, 1]


def test_d_brute_budget():
    with pytest.raises(ScopeError):
        d_brute(26)
    with pytest.raises(ScopeError):
        d_brute(0)


def test_mp_recursion_seeds():
    m, p = mp_recursion(3)
    assert (m[0], p[0]) == (2, 1)
    assert (m[1], p[1]) == (3, 3)
    assert m[2] == 2 * m[0] + 2 == 6


def test_mp_recursion_budget():
    mp_recursion(62)
    with pytest.raises(ScopeError):
        mp_recursion(63)


def test_recursions_match_listing():
    m, p = mp_recursion(15)
    for k in range(1, 16):
        assert (m[k - 1], p[k - 1]) == brute_counts(k)
        if k <= 12:
            assert (m[k - 1], p[k - 1]) == _counts_by_listing(k)
    for k in range(3, 16):
        assert m[k - 1] == 2 * m[k - 3] + 2 ** (k - 2)


def test_signed_sum_from_even_count():
    m, _ = mp_recursion(25)
    for n in range(1, 26):
        m_n, _ = brute_counts(n)
        assert m_n == m[n - 1]
        assert d_brute(n) == 2 * m_n - 2**n


def test_d_closed():
    assert d_closed(1) == 2
    assert d_closed(3) == 4
    assert d_closed(21) == 2048
    with pytest.raises(ScopeError):
        d_closed(4)


@pytest.mark.parametrize("n", range(1, 22, 2))
def test_brute_equals_closed(n):
    assert d_brute(n) == d_recursion(n) == d_closed(n)


def test_lemma_report():
    rep = lemma_report(1)
    assert (rep.d_brute, rep.d_rec, rep.d_closed) == (2, 2, 2)
    rep = lemma_report(9)
    assert (rep.d_brute, rep.d_rec, rep.d_closed) == (32, 32, 32)
    assert rep.agree
    rep = lemma_report(41)
    assert rep.d_brute is None and rep.d_rec == rep.d_closed == 2**21
    with pytest.raises(ScopeError):
        lemma_report(10)
