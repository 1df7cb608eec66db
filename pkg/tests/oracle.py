"""Slow reference implementations, deliberately independent of the library.

Nothing here imports ``lerch``: inverses come from a hand-written extended
Euclid, quotients from exact big-integer division, Lucas terms from the plain
recurrence and primes from trial division.
"""


def egcd_inv(a, m):
    a %= m
    r0, r1, s0, s1 = m, a, 0, 1
    while r1:
        t = r0 // r1
        r0, r1 = r1, r0 - t * r1
        s0, s1 = s1, s0 - t * s1
    if r0 != 1:
        raise ValueError(f"{a} not invertible mod {m}")
    return s0 % m


def trial_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def primes_between(lo, hi):
    return [n for n in range(lo, hi + 1) if trial_prime(n)]


def fermat_q(b, p):
    # exact integer (b^(p-1) - 1) / p, then reduced
    b %= p * p
    num = b ** (p - 1) - 1
    assert num % p == 0
    return num // p % p


def s_naive(p, N, k):
    lo = k * p // N
    hi = min((k + 1) * p // N, p - 1)
    return sum(egcd_inv(j, p) for j in range(lo + 1, hi + 1)) % p


def table_naive(p, N):
    return [s_naive(p, N, k) for k in range(N)]


def filtered_naive(p, N, k, modulus, residue):
    lo = k * p // N
    hi = min((k + 1) * p // N, p - 1)
    return sum(egcd_inv(j, p) for j in range(lo + 1, hi + 1) if j % modulus == residue) % p


def k_naive(p, N, r):
    return sum(egcd_inv(j, p) for j in range(1, p) if (j - r * p) % N == 0) % p


def b_naive(p, b_num, b_den, k, N):
    b = b_num * egcd_inv(b_den, p) % p
    lo = k * p // N
    hi = min((k + 1) * p // N, p - 1)
    return sum(pow(b, j, p) * egcd_inv(j, p) for j in range(lo + 1, hi + 1)) % p


def lucas_seq(P, Q, n):
    u0, u1 = 0, 1
    for _ in range(n):
        u0, u1 = u1, P * u1 - Q * u0
    return u0


def legendre_naive(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1
