"""Lerch-type harmonic sums modulo p.

``s(k, N)`` is the sum of 1/j over the k-th of N near-equal slices of
``[1, p-1]``: ``floor(k p / N) < j <= floor((k + 1) p / N)``, with the term
``j = p`` of the last slice dropped.  All sums are read off the prefix sums
held by the :class:`~lerch.modarith.PrimeContext`, so a whole table costs
O(N) once the O(p) inverse table exists.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadModulus, ConsistencyError, NotUnitError
from .modarith import PrimeContext

# Number of sum tables actually computed (cache misses), keyed by N.
evaluations: Counter = Counter()

FAMILIES = ("s", "s_prime", "s_dprime", "s_tprime", "s_star", "K", "B")


@dataclass(frozen=True)
class SumTable:
    p: int
    N: int
    values: tuple

    def __getitem__(self, k: int) -> int:
        return self.values[k % self.N]

    def __len__(self) -> int:
        return self.N


@dataclass(frozen=True)
class SumSpec:
    family: str
    N: int
    k: int = 0
    b: Fraction = Fraction(1)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown sum family {self.family!r}")
        if self.N < 1:
            raise ValueError("N must be positive")
        object.__setattr__(self, "k", self.k % self.N)
        object.__setattr__(self, "b", Fraction(self.b))


def _check_modulus(ctx: PrimeContext, N: int) -> None:
    if N < 1:
        raise BadModulus(f"N must be positive, got {N}")
    if N % ctx.p == 0:
        raise BadModulus(f"p = {ctx.p} divides N = {N}")


def slice_bounds(p: int, N: int, k: int) -> tuple[int, int]:
    """Half-open bounds (lo, hi] of the k-th slice, hi truncated at p - 1."""
    k %= N
    return k * p // N, min((k + 1) * p // N, p - 1)


def range_sum(ctx: PrimeContext, lo: int, hi: int) -> int:
    """Sum of 1/j for lo < j <= hi (empty when hi <= lo)."""
    if hi <= lo:
        return 0
    h = ctx.harmonic
    return int(h[hi] - h[lo]) % ctx.p


def filtered_sum(ctx: PrimeContext, lo: int, hi: int, modulus: int, residue: int) -> int:
    """Sum of 1/j for lo < j <= hi with j == residue (mod modulus), term by term."""
    first = lo + 1 + (residue - lo - 1) % modulus
    if first > hi:
        return 0
    terms = ctx.inverses[first:hi + 1:modulus]
    return int(terms.sum() % ctx.p)


def sum_table(ctx: PrimeContext, N: int) -> SumTable:
    _check_modulus(ctx, N)
    key = ("table", N)
    table = ctx._memo.get(key)
    if table is None:
        p = ctx.p
        bounds = [k * p // N for k in range(N)] + [p - 1]
        h = ctx.harmonic[bounds]
        values = tuple(int(v) for v in (h[1:] - h[:-1]) % p)
        table = SumTable(p, N, values)
        ctx._memo[key] = table
        evaluations[N] += 1
    return table


def s(ctx: PrimeContext, N: int, k: int) -> int:
    return sum_table(ctx, N)[k]


def is_empty(p: int, N: int, k: int) -> bool:
    lo, hi = slice_bounds(p, N, k)
    return hi <= lo


def _agree(name: str, direct: int, closed: int, args) -> int:
    if direct != closed:
        raise ConsistencyError(f"{name}{args}: direct sum {direct} != closed form {closed}")
    return direct


def s_prime(ctx: PrimeContext, N: int, k: int) -> int:
    """Odd-denominator part of s(k, N); closed form s(N + k, 2N) / 2."""
    _check_modulus(ctx, N)
    lo, hi = slice_bounds(ctx.p, N, k)
    direct = filtered_sum(ctx, lo, hi, 2, 1)
    closed = ctx.frac(s(ctx, 2 * N, N + k), 2)
    return _agree("s_prime", direct, closed, (ctx.p, N, k))


def s_dprime(ctx: PrimeContext, N: int, k: int) -> int:
    """Even-denominator part of s(k, N); closed form s(k, 2N) / 2."""
    _check_modulus(ctx, N)
    lo, hi = slice_bounds(ctx.p, N, k)
    direct = filtered_sum(ctx, lo, hi, 2, 0)
    closed = ctx.frac(s(ctx, 2 * N, k % N), 2)
    return _agree("s_dprime", direct, closed, (ctx.p, N, k))


def s_tprime(ctx: PrimeContext, N: int, k: int) -> int:
    """Part of s(k, N) with denominators divisible by 3; closed form s(k, 3N) / 3."""
    _check_modulus(ctx, N)
    lo, hi = slice_bounds(ctx.p, N, k)
    direct = filtered_sum(ctx, lo, hi, 3, 0)
    closed = ctx.frac(s(ctx, 3 * N, k % N), 3)
    return _agree("s_tprime", direct, closed, (ctx.p, N, k))


def s_star(ctx: PrimeContext, N: int, k: int) -> int:
    return (s_dprime(ctx, N, k) - s_prime(ctx, N, k)) % ctx.p


def k_sum(ctx: PrimeContext, N: int, r: int) -> int:
    """Sum of 1/j over 1 <= j < p with j == r p (mod N).

    Cross-checked against the closed form -s(r - 1, N) / N.
    """
    _check_modulus(ctx, N)
    p = ctx.p
    r %= N
    direct = filtered_sum(ctx, 0, p - 1, N, r * p % N)
    closed = -ctx.frac(s(ctx, N, r - 1), N) % p
    return _agree("k_sum", direct, closed, (p, N, r))


def _powers(b: int, start: int, count: int, p: int) -> np.ndarray:
    """b**start, ..., b**(start + count - 1) mod p."""
    out = np.empty(count, dtype=np.int64)
    if count == 0:
        return out
    out[0] = pow(b, start, p)
    filled = 1
    while filled < count:
        take = min(filled, count - filled)
        out[filled:filled + take] = out[:take] * pow(b, filled, p) % p
        filled += take
    return out


def b_sum(ctx: PrimeContext, b_num: int, b_den: int, k: int, N: int) -> int:
    """Sum of b**j / j over the s(k, N) slice, with b = b_num / b_den."""
    _check_modulus(ctx, N)
    p = ctx.p
    if b_num % p == 0 or b_den % p == 0:
        raise NotUnitError(f"{p} divides the weight {b_num}/{b_den}")
    b = ctx.frac(b_num, b_den)
    lo, hi = slice_bounds(p, N, k)
    if hi <= lo:
        return 0
    weights = _powers(b, lo + 1, hi - lo, p)
    return int((weights * ctx.inverses[lo + 1:hi + 1] % p).sum() % p)


def alternating_harmonic(ctx: PrimeContext) -> int:
    """1 - 1/2 + 1/3 - ... - 1/(p-1) mod p."""
    inv = ctx.inverses
    return int((inv[1::2].sum() - inv[2::2].sum()) % ctx.p)


def evaluate(ctx: PrimeContext, spec: SumSpec) -> int:
    if spec.family == "s":
        return s(ctx, spec.N, spec.k)
    if spec.family == "s_prime":
        return s_prime(ctx, spec.N, spec.k)
    if spec.family == "s_dprime":
        return s_dprime(ctx, spec.N, spec.k)
    if spec.family == "s_tprime":
        return s_tprime(ctx, spec.N, spec.k)
    if spec.family == "s_star":
        return s_star(ctx, spec.N, spec.k)
    if spec.family == "K":
        return k_sum(ctx, spec.N, spec.k)
    return b_sum(ctx, spec.b.numerator, spec.b.denominator, spec.k, spec.N)
