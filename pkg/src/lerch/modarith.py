"""Exact arithmetic modulo p and p**2 for a single odd prime.

Everything downstream (sums, Lucas quotients, identity checks) is built on
:class:`PrimeContext`, which also carries the lazily computed table of
inverses of ``1..p-1`` and its running prefix sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BadModulus, InternalError, NonInvertible, NotUnitError

PRIME_LIMIT = 1 << 31

# First twelve primes: a complete Miller-Rabin witness set for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 2**64."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def mod_inv(a: int, m: int) -> int:
    if m < 2:
        raise BadModulus(f"modulus must be >= 2, got {m}")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NonInvertible(a, m) from None


def batch_inverse(values, m: int) -> list[int]:
    """Invert every element of ``values`` modulo ``m`` with a single inversion.

    Montgomery's trick: accumulate prefix products, invert the total once,
    then peel the inverses off from the back (three multiplications each).
    """
    if m < 2:
        raise BadModulus(f"modulus must be >= 2, got {m}")
    n = len(values)
    if n == 0:
        return []
    prefix = [0] * n
    acc = 1
    for i, v in enumerate(values):
        v %= m
        if math.gcd(v, m) != 1:
            raise NonInvertible(values[i], m, index=i)
        prefix[i] = acc
        acc = acc * v % m
    inv_acc = pow(acc, -1, m)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = inv_acc * prefix[i] % m
        inv_acc = inv_acc * values[i] % m
    return out


def mod_pow(b: int, e: int, m: int) -> int:
    if m < 2:
        raise BadModulus(f"modulus must be >= 2, got {m}")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return pow(b, e, m)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group modulo the prime p."""
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise InternalError(f"no primitive root found modulo {p}")


def inverse_table(p: int) -> np.ndarray:
    """Array ``inv`` of length p with ``inv[j] * j == 1 (mod p)``; ``inv[0] = 0``.

    The powers g**0 .. g**(p-2) of a primitive root are built by repeated
    doubling of a numpy block, and g**i is paired with g**(-i).
    """
    n = p - 1
    g = primitive_root(p)
    powers = np.empty(n, dtype=np.int64)
    powers[0] = 1
    filled = 1
    while filled < n:
        take = min(filled, n - filled)
        powers[filled:filled + take] = powers[:take] * pow(g, filled, p) % p
        filled += take
    inv = np.zeros(p, dtype=np.int64)
    inv[powers] = powers[(-np.arange(n)) % n]
    return inv


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime 5 <= p < 2**31 together with its cached inverse tables.

    Immutable apart from the private memo dict; sharing one context between
    threads is safe (a race only recomputes a cache entry).
    """

    p: int
    p_squared: int = field(init=False)
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        p = self.p
        if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
            raise TypeError(f"p must be an integer, got {type(p).__name__}")
        p = int(p)
        if p < 5 or p >= PRIME_LIMIT:
            raise BadModulus(f"p must satisfy 5 <= p < 2**31, got {p}")
        if not is_prime(p):
            raise BadModulus(f"{p} is not prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "p_squared", p * p)

    @cached_property
    def inverses(self) -> np.ndarray:
        return inverse_table(self.p)

    @cached_property
    def harmonic(self) -> np.ndarray:
        """``harmonic[m]`` is the sum of 1/j for 1 <= j <= m, reduced mod p."""
        return np.cumsum(self.inverses) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise NonInvertible(a, self.p)
        return pow(a, -1, self.p)

    def frac(self, num: int, den: int = 1) -> int:
        """The rational num/den as a residue mod p."""
        return num * self.inv(den) % self.p

    def q(self, b: int) -> int:
        """Memoised Fermat quotient of ``b``."""
        key = ("q", b)
        if key not in self._memo:
            self._memo[key] = fermat_quotient(b, self)
        return self._memo[key]


def fermat_quotient(b: int, ctx: PrimeContext) -> int:
    """(b**(p-1) - 1)/p reduced mod p, computed directly from the definition."""
    return quotient_mod(b, ctx.p)


def quotient_mod(b: int, p: int) -> int:
    """Fermat quotient for a bare prime p (also accepts p = 2, 3)."""
    p2 = p * p
    if b % p == 0:
        raise NotUnitError(f"{p} divides {b}")
    x = pow(b % p2, p - 1, p2)
    if x % p != 1:
        raise InternalError(f"{b}^({p}-1) is not 1 mod {p}; is {p} prime?")
    return (x - 1) // p % p


def legendre(a: int, ctx: PrimeContext) -> int:
    r = pow(a % ctx.p, (ctx.p - 1) // 2, ctx.p)
    if r == ctx.p - 1:
        return -1
    return r
