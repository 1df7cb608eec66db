"""Lucas sequences U_n(P, Q) and their quotients U_n/p modulo p."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadModulus, DivisibilityError, NotUnitError
from .modarith import PrimeContext, legendre


@dataclass(frozen=True)
class LucasParams:
    P: int
    Q: int

    @property
    def D(self) -> int:
        return self.P * self.P - 4 * self.Q


FIBONACCI = LucasParams(1, -1)
PELL = LucasParams(2, -1)
# 0, 1, 4, 15, 56, ...; discriminant 12, so the twist is (3/p).
LUCAS_4_1 = LucasParams(4, 1)


@dataclass(frozen=True)
class LucasQuotient:
    params: LucasParams
    p: int
    n: int
    w: int
    quotient: int  # U_n / p mod p, without the Legendre factor


def lucas_u(params: LucasParams, n: int, m: int) -> int:
    """U_n(P, Q) mod m by fast doubling on the pair (U_k, U_{k+1}).

    U_2k = U_k (2 U_{k+1} - P U_k) and U_{2k+1} = U_{k+1}^2 - Q U_k^2.
    """
    if m < 2:
        raise BadModulus(f"modulus must be >= 2, got {m}")
    if n < 0:
        raise ValueError("index must be non-negative")
    P, Q = params.P % m, params.Q % m
    u, u1 = 0, 1 % m
    for bit in bin(n)[2:]:
        u, u1 = u * (2 * u1 - P * u) % m, (u1 * u1 - Q * u * u) % m
        if bit == "1":
            u, u1 = u1, (P * u1 - Q * u) % m
    return u


def lucas_quotient(params: LucasParams, ctx: PrimeContext) -> LucasQuotient:
    """The twisted quotient w = (D/p) * U_{p-(D/p)} / p mod p."""
    p = ctx.p
    D = params.D
    if (2 * D) % p == 0:
        raise NotUnitError(f"{p} divides 2*D = {2 * D}")
    eps = legendre(D, ctx)
    n = p - eps
    u = lucas_u(params, n, ctx.p_squared)
    if u % p:
        raise DivisibilityError(f"U_{n}({params.P},{params.Q}) is not divisible by {p}")
    quo = u // p % p
    return LucasQuotient(params, p, n, eps * quo % p, quo)
