import pytest
from hypothesis import given, strategies as st

import oracle
from lerch.errors import BadModulus, NotUnitError
from lerch.modarith import PrimeContext, legendre
from lerch.sequences import FIBONACCI, LUCAS_4_1, PELL, LucasParams, lucas_quotient, lucas_u

PRIMES = oracle.primes_between(5, 600)


def test_lucas_u_examples():
    assert lucas_u(PELL, 6, 49) == 21
    assert lucas_u(LUCAS_4_1, 8, 49) == 35
    assert [lucas_u(FIBONACCI, n, 1000) for n in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    assert [lucas_u(LUCAS_4_1, n, 10**6) for n in range(5)] == [0, 1, 4, 15, 56]
    with pytest.raises(BadModulus):
        lucas_u(PELL, 3, 1)


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(0, 300), st.integers(2, 10**7))
def test_lucas_u_recurrence(P, Q, n, m):
    assert lucas_u(LucasParams(P, Q), n, m) == oracle.lucas_seq(P, Q, n) % m


@pytest.mark.parametrize("params, p, w", [(PELL, 7, 3), (LUCAS_4_1, 7, 2), (FIBONACCI, 11, 5)])
def test_lucas_quotient_examples(params, p, w):
    assert lucas_quotient(params, PrimeContext(p)).w == w


@pytest.mark.parametrize("params", [PELL, LUCAS_4_1, FIBONACCI, LucasParams(3, 1), LucasParams(5, -2)])
def test_lucas_quotient_oracle(params):
    for p in PRIMES:
        if (2 * params.D) % p == 0:
            with pytest.raises(NotUnitError):
                lucas_quotient(params, PrimeContext(p))
            continue
        ctx = PrimeContext(p)
        eps = oracle.legendre_naive(params.D, p)
        n = p - eps
        u = oracle.lucas_seq(params.P, params.Q, n)
        assert u % p == 0
        lq = lucas_quotient(params, ctx)
        assert lq.n == n and lq.quotient == u // p % p
        assert lq.w == eps * (u // p) % p
        assert legendre(params.D, ctx) == eps
