import pytest
from hypothesis import given, settings, strategies as st

import oracle
from lerch.errors import BadModulus, InternalError, NonInvertible, NotUnitError
from lerch.modarith import (
    PrimeContext,
    batch_inverse,
    fermat_quotient,
    inverse_table,
    is_prime,
    legendre,
    mod_inv,
    mod_pow,
    primitive_root,
    quotient_mod,
)

SMALL_PRIMES = oracle.primes_between(5, 400)
primes = st.sampled_from(SMALL_PRIMES)


def test_is_prime_matches_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == oracle.primes_between(0, 2999)


@pytest.mark.parametrize("n, expected", [
    (1093, True), (3511, True), (1006003, True), (2**31 - 1, True),
    (561, False), (3215031751, False), (2**61 - 1, True), (2**64 - 59, True),
    (3825123056546413051, False),
])
def test_is_prime_large(n, expected):
    assert is_prime(n) is expected


def test_mod_inv_examples():
    assert mod_inv(3, 7) == 5
    assert mod_inv(2, 49) == 25
    with pytest.raises(NonInvertible):
        mod_inv(7, 49)
    with pytest.raises(NonInvertible):
        mod_inv(0, 7)
    with pytest.raises(BadModulus):
        mod_inv(1, 1)


@given(st.integers(2, 10**6), st.integers(-10**9, 10**9))
def test_mod_inv_property(m, a):
    try:
        x = mod_inv(a, m)
    except NonInvertible:
        with pytest.raises(ValueError):
            oracle.egcd_inv(a, m)
        return
    assert 0 <= x < m and a * x % m == 1 % m
    assert x == oracle.egcd_inv(a, m)


def test_batch_inverse_examples():
    assert batch_inverse([2, 3, 4, 5, 6], 7) == [4, 5, 2, 3, 6]
    assert batch_inverse([2, 2], 13) == [7, 7]
    assert batch_inverse([], 13) == []
    with pytest.raises(NonInvertible) as err:
        batch_inverse([1, 2, 14, 3], 7)
    assert err.value.index == 2


@given(st.integers(2, 5000).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.integers(-10**6, 10**6), max_size=40))))
def test_batch_inverse_matches_single(args):
    m, values = args
    units = [v for v in values if _coprime(v, m)]
    assert batch_inverse(units, m) == [mod_inv(v, m) for v in units]


def _coprime(a, m):
    try:
        oracle.egcd_inv(a, m)
        return True
    except ValueError:
        return False


def test_mod_pow():
    assert mod_pow(2, 10, 1000) == 24
    assert mod_pow(3, 0, 7) == 1
    with pytest.raises(ValueError):
        mod_pow(2, -1, 7)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 101, 1093, 65537])
def test_inverse_table(p):
    inv = inverse_table(p)
    assert inv[0] == 0
    j = list(range(1, p))
    assert all(int(inv[x]) * x % p == 1 for x in j)
    assert sorted(int(v) for v in inv[1:]) == j


def test_primitive_root():
    for p in SMALL_PRIMES:
        g = primitive_root(p)
        assert len({pow(g, i, p) for i in range(p - 1)}) == p - 1


def test_context_validation():
    for bad in (2, 3, 4, 9, 1, 0, -7, 2**31 + 11):
        with pytest.raises(BadModulus):
            PrimeContext(bad)
    with pytest.raises(TypeError):
        PrimeContext(7.0)
    ctx = PrimeContext(7)
    assert ctx.p_squared == 49
    assert ctx.frac(1, 2) == 4


@pytest.mark.parametrize("p, b, q", [(1093, 2, 0), (3511, 2, 0), (11, 3, 0), (1006003, 3, 0), (7, 2, 2)])
def test_fermat_quotient_examples(p, b, q):
    assert fermat_quotient(b, PrimeContext(p)) == q


def test_quotient_small_primes():
    assert quotient_mod(3, 2) == oracle.fermat_q(3, 2)
    assert quotient_mod(2, 3) == oracle.fermat_q(2, 3)
    with pytest.raises(NotUnitError):
        quotient_mod(14, 7)
    with pytest.raises(InternalError):
        quotient_mod(2, 9)


@settings(max_examples=200)
@given(primes, st.integers(-10**6, 10**6))
def test_fermat_quotient_oracle(p, b):
    ctx = PrimeContext(p)
    if b % p == 0:
        with pytest.raises(NotUnitError):
            fermat_quotient(b, ctx)
    else:
        assert fermat_quotient(b, ctx) == oracle.fermat_q(b, p)


@settings(max_examples=200)
@given(primes, st.integers(1, 10**5), st.integers(1, 10**5))
def test_fermat_quotient_log_property(p, a, b):
    if a % p == 0 or b % p == 0:
        return
    ctx = PrimeContext(p)
    assert ctx.q(a * b) == (ctx.q(a) + ctx.q(b)) % p


@given(primes)
def test_fermat_quotient_fixed_values(p):
    ctx = PrimeContext(p)
    assert fermat_quotient(1, ctx) == 0
    assert fermat_quotient(-1, ctx) == 0
    # (p-1)^(p-1) = 1 + p (mod p^2), so the quotient is 1, not 0
    assert fermat_quotient(p - 1, ctx) == 1


@given(primes, st.integers(1, 10**4))
def test_fermat_quotient_shift(p, b):
    # q(b + p) = q(b) - 1/b
    if b % p == 0:
        return
    ctx = PrimeContext(p)
    assert ctx.q(b + p) == (ctx.q(b) - ctx.inv(b)) % p


@given(primes, st.integers(-1000, 1000))
def test_legendre(p, a):
    assert legendre(a, PrimeContext(p)) == oracle.legendre_naive(a, p)
