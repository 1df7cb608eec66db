"""Registry of named congruences between Lerch sums and Fermat quotients.

Each entry turns one family of congruences into residuals ``lhs - rhs mod p``;
a report passes when every residual is zero.  Conditional statements ("if
q_2 == 0 then ...") are implications: the premise is evaluated first and the
conclusion rows only exist when it holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import sums
from .errors import NotApplicable, UnknownCheck
from .modarith import PrimeContext
from .sequences import LUCAS_4_1, PELL, lucas_quotient


@dataclass(frozen=True)
class Limits:
    """Parameter ranges explored by :func:`run_all`."""

    max_n: int = 24
    max_n_theorem: int = 48
    max_base: int = 12


@dataclass(frozen=True)
class CheckReport:
    p: int
    id: str
    params: tuple
    labels: tuple
    residuals: tuple
    premises: tuple = ()
    degenerate: bool = False

    @property
    def passed(self) -> bool:
        return not any(self.residuals)

    @property
    def vacuous(self) -> bool:
        """True when nothing substantive was tested.

        Either a premise failed and no row was evaluated, or p is smaller than
        some N involved so that at least one slice is empty.
        """
        return not self.residuals or self.degenerate

    @property
    def fired(self) -> bool:
        return all(v for _, v in self.premises)

    def failures(self) -> list[tuple[str, int]]:
        return [(lab, r) for lab, r in zip(self.labels, self.residuals) if r]

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "id": self.id,
            "params": dict(self.params),
            "pass": self.passed,
            "vacuous": self.vacuous,
            "premises": dict(self.premises),
            "rows": [{"label": lab, "residual": r} for lab, r in zip(self.labels, self.residuals)],
        }


class _Rows:
    """Collects residual rows for one evaluation."""

    def __init__(self, ctx: PrimeContext):
        self.ctx = ctx
        self.p = ctx.p
        self.labels: list[str] = []
        self.residuals: list[int] = []
        self.premises: list[tuple[str, bool]] = []
        self.max_n = 1

    def s(self, N: int, k: int) -> int:
        self.max_n = max(self.max_n, N)
        return sums.s(self.ctx, N, k)

    def ssum(self, N: int, ks: Iterable[int]) -> int:
        return sum(self.s(N, k) for k in ks)

    def star(self, N: int, k: int) -> int:
        self.max_n = max(self.max_n, 2 * N)
        return sums.s_star(self.ctx, N, k)

    def q(self, b: int) -> int:
        return self.ctx.q(b)

    def c(self, num: int, den: int = 1) -> int:
        return self.ctx.frac(num, den)

    def eq(self, label: str, *sides: int) -> None:
        """Record that all ``sides`` are congruent (one residual per link)."""
        for i in range(len(sides) - 1):
            tag = label if len(sides) == 2 else f"{label} [{i + 1}]"
            self.labels.append(tag)
            self.residuals.append((sides[i] - sides[i + 1]) % self.p)

    def given(self, name: str, holds: bool) -> bool:
        self.premises.append((name, bool(holds)))
        return holds


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    citation: str
    body: Callable[[_Rows, dict], None]
    params: Callable[[Limits], Iterable[dict]] = lambda lim: [{}]
    valid: Callable[[dict], bool] = lambda prm: True
    coprime: Callable[[dict], Iterable[int]] = lambda prm: ()
    conditional: bool = False
    doc: str = field(default="", compare=False)

    def applicable(self, p: int, params: dict) -> bool:
        try:
            if not self.valid(params):
                return False
            return all(n % p for n in self.coprime(params))
        except (KeyError, TypeError):
            return False

    def evaluate(self, ctx: PrimeContext, params: dict) -> CheckReport:
        rows = _Rows(ctx)
        self.body(rows, params)
        return CheckReport(
            p=ctx.p,
            id=self.id,
            params=tuple(sorted(params.items())),
            labels=tuple(rows.labels),
            residuals=tuple(rows.residuals),
            premises=tuple(rows.premises),
            degenerate=rows.max_n > ctx.p,
        )


REGISTRY: dict[str, IdentityCheck] = {}


def _register(id, citation, *, params=None, valid=None, coprime=None, conditional=False):
    def deco(body):
        kw = {}
        if params is not None:
            kw["params"] = params
        if valid is not None:
            kw["valid"] = valid
        if coprime is not None:
            kw["coprime"] = coprime
        REGISTRY[id] = IdentityCheck(id, citation, body, conditional=conditional,
                                     doc=(body.__doc__ or "").strip(), **kw)
        return body
    return deco


def _over_n(lo: int, *, step: int = 1, big: bool = False, pred=lambda n: True):
    def gen(lim: Limits):
        top = lim.max_n_theorem if big else lim.max_n
        return [{"N": n} for n in range(lo, top + 1, step) if pred(n)]
    return gen


def _over_x(lo: int, mult: int, *, step: int = 1):
    def gen(lim: Limits):
        return [{"x": x} for x in range(lo, lim.max_n // mult + 1, step)]
    return gen


def _n(prm):
    return (prm["N"],)


def _proper_divisors(n: int) -> list[int]:
    return [m for m in range(2, n) if n % m == 0]


# --- Lerch's formula and its direct consequences -----------------------------

@_register("lerch_main", "Lerch 1905, N q_p(N) = sum k s(k,N)",
           params=_over_n(2), valid=lambda prm: prm["N"] >= 2, coprime=_n)
def _lerch_main(e: _Rows, prm):
    N = prm["N"]
    e.eq("N q_N = sum k s(k,N)", N * e.q(N), sum(k * e.s(N, k) for k in range(1, N)))


@_register("lerch_split", "Lerch's formula folded by the mirror rule",
           params=_over_n(2), valid=lambda prm: prm["N"] >= 2, coprime=_n)
def _lerch_split(e: _Rows, prm):
    N = prm["N"]
    folded = -sum((N - 1 - 2 * i) * e.s(N, i) for i in range(N // 2))
    e.eq("N q_N = -sum (N-1-2i) s(i,N)", N * e.q(N), folded)
    if N % 2:
        e.eq("s((N-1)/2,N) = 0", e.s(N, (N - 1) // 2), 0)


@_register("mirror", "s(k,N) = -s(N-1-k,N); full range sums to 0",
           params=_over_n(1), coprime=_n)
def _mirror(e: _Rows, prm):
    N = prm["N"]
    for k in range(N):
        e.eq(f"s({k},{N}) + s({N - 1 - k},{N}) = 0", e.s(N, k) + e.s(N, N - 1 - k), 0)
    e.eq(f"sum_k s(k,{N}) = 0", e.ssum(N, range(N)), 0)


def _base_pairs(lim: Limits):
    return [{"a": a, "b": b} for a in range(2, lim.max_base + 1)
            for b in range(a, lim.max_base + 1)]


@_register("log_property", "Eisenstein: q(ab) = q(a) + q(b)",
           params=_base_pairs, coprime=lambda prm: (prm["a"], prm["b"]))
def _log_property(e: _Rows, prm):
    a, b = prm["a"], prm["b"]
    e.eq(f"q({a * b}) = q({a}) + q({b})", e.q(a * b), e.q(a) + e.q(b))


@_register("table1", "sums evaluable by Fermat quotients alone")
def _table1(e: _Rows, prm):
    q2, q3, c = e.q(2), e.q(3), e.c
    e.eq("s(0,1) = 0", e.s(1, 0), 0)
    e.eq("s(0,2) = -2 q2", e.s(2, 0), -2 * q2)
    e.eq("s(0,3) = -3/2 q3", e.s(3, 0), -c(3, 2) * q3)
    e.eq("s(1,3) = 0", e.s(3, 1), 0)
    e.eq("s(0,4) = -3 q2", e.s(4, 0), -3 * q2)
    e.eq("s(1,4) = q2", e.s(4, 1), q2)
    e.eq("s(0,6) = -2 q2 - 3/2 q3", e.s(6, 0), -2 * q2 - c(3, 2) * q3)
    e.eq("s(1,6) = 2 q2", e.s(6, 1), 2 * q2)
    e.eq("s(2,6) = -2 q2 + 3/2 q3", e.s(6, 2), -2 * q2 + c(3, 2) * q3)
    e.eq("s(2,12) = -q2 + 3/2 q3", e.s(12, 2), -q2 + c(3, 2) * q3)
    e.eq("s(3,12) = 3 q2 - 3/2 q3", e.s(12, 3), 3 * q2 - c(3, 2) * q3)


# --- sum families -------------------------------------------------------------

@_register("family_relations", "closed forms of s', s'', s*, K in terms of s",
           params=_over_n(1), coprime=_n)
def _family_relations(e: _Rows, prm):
    N, ctx = prm["N"], e.ctx
    half, nth = e.c(1, 2), e.c(1, N)
    for k in range(N):
        sp = sums.s_prime(ctx, N, k)
        e.eq(f"s'({k},{N}) = -1/2 s({N - 1 - k},{2 * N})", sp, -half * e.s(2 * N, N - 1 - k))
        e.eq(f"s({k},{N}) + s*({k},{N}) = s({k},{2 * N})",
             e.s(N, k) + e.star(N, k), e.s(2 * N, k))
        e.eq(f"K({k},{N}) = 1/N s({N - k},{N})", sums.k_sum(ctx, N, k), nth * e.s(N, N - k))
    e.eq(f"s*(0,{N}) = -s(1,{2 * N})", e.star(N, 0), -e.s(2 * N, 1))


@_register("classical_families", "Eisenstein, Stern and the s''' evaluations")
def _classical_families(e: _Rows, prm):
    ctx, q2, q3, c = e.ctx, e.q(2), e.q(3), e.c
    e.eq("1 - 1/2 + 1/3 - ... = 2 q2", sums.alternating_harmonic(ctx), 2 * q2)
    e.eq("s'(0,1) = -1/2 s(0,2) = q2", sums.s_prime(ctx, 1, 0), -c(1, 2) * e.s(2, 0), q2)
    e.eq("s''(0,1) = -1/2 s(1,2) = 1/2 s(0,2) = -q2",
         sums.s_dprime(ctx, 1, 0), -c(1, 2) * e.s(2, 1), c(1, 2) * e.s(2, 0), -q2)
    e.eq("s*(0,1) = -s(1,2) = -2 q2", e.star(1, 0), -e.s(2, 1), -2 * q2)
    e.eq("s*(0,2) = -s(1,4) = -q2", e.star(2, 0), -e.s(4, 1), -q2)
    e.eq("K(0,2) = s''(0,1)", sums.k_sum(ctx, 2, 0), sums.s_dprime(ctx, 1, 0))
    e.eq("K(1,2) = s'(0,1)", sums.k_sum(ctx, 2, 1), sums.s_prime(ctx, 1, 0))
    e.eq("s'''(0,1) = 1/3 s(0,3) = -1/2 q3",
         sums.s_tprime(ctx, 1, 0), c(1, 3) * e.s(3, 0), -c(1, 2) * q3)
    e.eq("s'''(0,2) = 1/3 s(0,6) = -2/3 q2 - 1/2 q3",
         sums.s_tprime(ctx, 2, 0), c(1, 3) * e.s(6, 0), -c(2, 3) * q2 - c(1, 2) * q3)
    e.eq("s'''(1,2) = 1/3 s(1,6) = 2/3 q2",
         sums.s_tprime(ctx, 2, 1), c(1, 3) * e.s(6, 1), c(2, 3) * q2)


# --- the M j (mod p) array and its consequences ------------------------------

@_register("theorem1", "two ways of collecting the M j (mod p) array",
           params=_over_n(4, big=True, pred=lambda n: bool(_proper_divisors(n))),
           valid=lambda prm: bool(_proper_divisors(prm["N"])), coprime=_n)
def _theorem1(e: _Rows, prm):
    N = prm["N"]
    for M in _proper_divisors(N):
        x = N // M
        for r in range(x):
            spread = e.ssum(N, (t * x + r for t in range(M)))
            block = M * e.ssum(N, range(r * M, r * M + M))
            e.eq(f"M={M} r={r}", spread, block, M * e.s(x, r))


@_register("corollary1", "s(0,2x) + 2 s(1,2x) + s(x-1,2x) = 0",
           params=_over_x(1, 2), valid=lambda prm: prm["x"] >= 1,
           coprime=lambda prm: (2 * prm["x"],))
def _corollary1(e: _Rows, prm):
    x = prm["x"]
    n = 2 * x
    e.eq("s(0,2x) + s(x,2x) = 2{s(0,2x) + s(1,2x)}",
         e.s(n, 0) + e.s(n, x), 2 * (e.s(n, 0) + e.s(n, 1)))
    e.eq("s(0,2x) + 2 s(1,2x) - s(x,2x) = 0", e.s(n, 0) + 2 * e.s(n, 1) - e.s(n, x), 0)
    e.eq("s(0,2x) + 2 s(1,2x) + s(x-1,2x) = 0", e.s(n, 0) + 2 * e.s(n, 1) + e.s(n, x - 1), 0)


@_register("cor1_even_x", "s(0,2x) + s(x-2,2x) = 2 s(0,x) + s(x/2-1,x), x even",
           params=_over_x(2, 2, step=2), valid=lambda prm: prm["x"] >= 2 and prm["x"] % 2 == 0,
           coprime=lambda prm: (2 * prm["x"],))
def _cor1_even_x(e: _Rows, prm):
    x = prm["x"]
    e.eq("s(0,2x) + s(x-2,2x) = 2 s(0,x) + s(x/2-1,x)",
         e.s(2 * x, 0) + e.s(2 * x, x - 2), 2 * e.s(x, 0) + e.s(x, x // 2 - 1))


@_register("cor1_sub", "s(1,2x) + s(x-1,2x) = -s(0,x)",
           params=_over_x(1, 2), valid=lambda prm: prm["x"] >= 1,
           coprime=lambda prm: (2 * prm["x"],))
def _cor1_sub(e: _Rows, prm):
    x = prm["x"]
    e.eq("s(1,2x) + s(x-1,2x) = -s(0,x)", e.s(2 * x, 1) + e.s(2 * x, x - 1), -e.s(x, 0))


@_register("sstar_rule", "s*(0,x) = -s(1,2x)",
           params=_over_x(1, 2), valid=lambda prm: prm["x"] >= 1,
           coprime=lambda prm: (2 * prm["x"],))
def _sstar_rule(e: _Rows, prm):
    x = prm["x"]
    e.eq("s*(0,x) = -s(1,2x)", e.star(x, 0), -e.s(2 * x, 1))


@_register("corollary2", "s*(0,x) + s*(1,x) = -s(1,x)",
           params=_over_x(2, 2), valid=lambda prm: prm["x"] >= 2,
           coprime=lambda prm: (2 * prm["x"],))
def _corollary2(e: _Rows, prm):
    x = prm["x"]
    e.eq("s*(0,x) + s*(1,x) = -s(1,x)", e.star(x, 0) + e.star(x, 1), -e.s(x, 1))


@_register("corollary3", "M = N/2: even and odd halves of s(k,N)",
           params=_over_n(2, step=2), valid=lambda prm: prm["N"] % 2 == 0, coprime=_n)
def _corollary3(e: _Rows, prm):
    N = prm["N"]
    h, q2 = N // 2, e.q(2)
    e.eq("sum_{k even} s(k,N) = N/2 sum_{k<N/2} s(k,N) = N/2 s(0,2) = -N q2",
         e.ssum(N, range(0, N, 2)), h * e.ssum(N, range(h)), h * e.s(2, 0), -N * q2)
    e.eq("sum_{k odd} s(k,N) = N/2 sum_{k>=N/2} s(k,N) = N/2 s(1,2) = N q2",
         e.ssum(N, range(1, N, 2)), h * e.ssum(N, range(h, N)), h * e.s(2, 1), N * q2)


@_register("m3_rows", "M = 3 rows of the M j (mod p) array",
           params=_over_x(1, 3), valid=lambda prm: prm["x"] >= 1,
           coprime=lambda prm: (3 * prm["x"],))
def _m3_rows(e: _Rows, prm):
    x = prm["x"]
    n = 3 * x
    e.eq("s(0,3x) + s(x,3x) + s(2x,3x) = 3{s(0..2,3x)} = 3 s(0,x)",
         e.ssum(n, (0, x, 2 * x)), 3 * e.ssum(n, (0, 1, 2)), 3 * e.s(x, 0))
    if x >= 2:
        e.eq("s(1,3x) + s(x+1,3x) + s(2x+1,3x) = 3{s(3..5,3x)} = 3 s(1,x)",
             e.ssum(n, (1, x + 1, 2 * x + 1)), 3 * e.ssum(n, (3, 4, 5)), 3 * e.s(x, 1))


@_register("corollary4", "M = N/3: the three residue classes of k mod 3",
           params=_over_n(3, step=3), valid=lambda prm: prm["N"] % 3 == 0, coprime=_n)
def _corollary4(e: _Rows, prm):
    N = prm["N"]
    t, q3 = N // 3, e.q(3)
    values = (-e.c(N, 2) * q3, 0, e.c(N, 2) * q3)
    for cls in range(3):
        e.eq(f"sum_(k={cls} mod 3) s(k,N)",
             e.ssum(N, range(cls, N, 3)), t * e.ssum(N, range(cls * t, cls * t + t)),
             t * e.s(3, cls), values[cls])


# --- residue-class sums K(r,N) -------------------------------------------------

# Value of the sum of 1/j over j == c (mod m), keyed by p mod m, as
# coefficients (of q2, of q3) for classes c = 0..m-1.
_F = lambda a, b=1: (a, b)  # noqa: E731
_CLASS_TABLES = {
    3: {
        1: [((0, 1), _F(-1, 2)), ((0, 1), _F(1, 2)), ((0, 1), _F(0))],
        2: [((0, 1), _F(-1, 2)), ((0, 1), _F(0)), ((0, 1), _F(1, 2))],
    },
    4: {
        1: [(_F(-3, 4), _F(0)), (_F(3, 4), _F(0)), (_F(-1, 4), _F(0)), (_F(1, 4), _F(0))],
        3: [(_F(-3, 4), _F(0)), (_F(1, 4), _F(0)), (_F(-1, 4), _F(0)), (_F(3, 4), _F(0))],
    },
    6: {
        1: [(_F(-1, 3), _F(-1, 4)), (_F(1, 3), _F(1, 4)), (_F(-1, 3), _F(0)),
            (_F(1, 3), _F(-1, 4)), (_F(-1, 3), _F(1, 4)), (_F(1, 3), _F(0))],
        5: [(_F(-1, 3), _F(-1, 4)), (_F(1, 3), _F(0)), (_F(-1, 3), _F(1, 4)),
            (_F(1, 3), _F(-1, 4)), (_F(-1, 3), _F(0)), (_F(1, 3), _F(1, 4))],
    },
}


def _class_check(m: int):
    def body(e: _Rows, prm):
        ctx, p = e.ctx, e.p
        table = _CLASS_TABLES[m][p % m]
        minv = e.c(1, m)
        for cls in range(m):
            (a2, d2), (a3, d3) = table[cls]
            direct = sums.filtered_sum(ctx, 0, p - 1, m, cls)
            r = cls * pow(p, -1, m) % m
            value = e.c(a2, d2) * e.q(2) + e.c(a3, d3) * e.q(3)
            e.max_n = max(e.max_n, m)
            e.eq(f"sum_(j={cls} mod {m}) 1/j = K({r},{m}) = 1/{m} s({(m - r) % m},{m})",
                 direct, sums.k_sum(ctx, m, r), minv * e.s(m, m - r), value)
    return body


for _m in (3, 4, 6):
    _register(f"k_mod{_m}", f"residue-class sums modulo {_m}, branching on p mod {_m}")(
        _class_check(_m))


@_register("half_range_mod3", "first-half sums over j mod 3, p = 1 or 5 mod 6")
def _half_range_mod3(e: _Rows, prm):
    ctx, p, c = e.ctx, e.p, e.c
    q2, q3 = e.q(2), e.q(3)
    half = (p - 1) // 2
    third = c(1, 3)
    a = (third * e.s(6, 4), -c(2, 3) * q2)
    b = (third * e.s(6, 2), -c(2, 3) * q2 + c(1, 2) * q3)
    z = (third * e.s(6, 0), -c(2, 3) * q2 - c(1, 2) * q3)
    # rows for j == 1, 2, 0 (mod 3)
    rhs = (a, b, z) if p % 6 == 1 else (b, a, z)
    for cls, (mid, val) in zip((1, 2, 0), rhs):
        e.eq(f"sum_(j<=(p-1)/2, j={cls} mod 3) 1/j",
             sums.filtered_sum(ctx, 0, half, 3, cls), mid, val)


# --- half-range sums for even N ----------------------------------------------

def _thm2_even(N):
    return range(0, 2 * ((N - 1) // 4) + 1, 2)


def _thm2_odd(N):
    return range(1, 2 * ((N - 3) // 4) + 2, 2)


@_register("theorem2", "even-index and odd-index sums below N/2, N even",
           params=_over_n(2, step=2, big=True), valid=lambda prm: prm["N"] % 2 == 0,
           coprime=_n)
def _theorem2(e: _Rows, prm):
    N = prm["N"]
    q2, s02 = e.q(2), e.s(2, 0)
    e.eq("sum_{k even < N/2} s(k,N) = (N+2)/4 s(0,2) = -(N+2)/2 q2",
         e.ssum(N, _thm2_even(N)), e.c(N + 2, 4) * s02, -e.c(N + 2, 2) * q2)
    e.eq("sum_{k odd < N/2} s(k,N) = -(N-2)/4 s(0,2) = (N-2)/2 q2",
         e.ssum(N, _thm2_odd(N)), -e.c(N - 2, 4) * s02, e.c(N - 2, 2) * q2)


def _skula_rows(lim: Limits):
    return [{"row": n} for n in range(1, (lim.max_n_theorem - 2) // 2 + 1)]


@_register("skula_tree", "dovetailed half-range rows, all indices written even",
           params=_skula_rows, valid=lambda prm: prm["row"] >= 1,
           coprime=lambda prm: (2 * prm["row"] - 2 or 1, 2 * prm["row"] + 2))
def _skula_tree(e: _Rows, prm):
    n = prm["row"]
    target = -n * e.q(2)
    big = 2 * n + 2
    right = e.ssum(big, (big - 1 - k for k in _thm2_odd(big)))
    if n >= 2:
        small = 2 * n - 2
        left = e.ssum(small, _thm2_even(small))
        e.eq(f"row {n}: left = right = -{n} q2", left, right, target)
    else:
        e.eq(f"row {n}: right = -{n} q2", right, target)


@_register("glaisher_half", "first-quarter odd/even sums (half-range rows with N = p - 1)")
def _glaisher_half(e: _Rows, prm):
    ctx, p, q2, c = e.ctx, e.p, e.q(2), e.c
    s02 = e.s(2, 0)
    odd_top = 2 * ((p - 2) // 4) + 1
    even_top = 2 * ((p - 4) // 4) + 2
    e.eq("1 + 1/3 + ... = s'(0,2) = 1/4 s(0,2) = -1/2 q2",
         sums.filtered_sum(ctx, 0, odd_top, 2, 1), sums.s_prime(ctx, 2, 0),
         c(1, 4) * s02, -c(1, 2) * q2)
    e.eq("1/2 + 1/4 + ... = s''(0,2) = 3/4 s(0,2) = -3/2 q2",
         sums.filtered_sum(ctx, 0, even_top, 2, 0), sums.s_dprime(ctx, 2, 0),
         c(3, 4) * s02, -c(3, 2) * q2)


@_register("dilcher_skula_sum", "half-range rows add up to s(0,2)",
           params=_over_n(2, step=2, big=True), valid=lambda prm: prm["N"] % 2 == 0,
           coprime=_n)
def _dilcher_skula_sum(e: _Rows, prm):
    N = prm["N"]
    e.eq("(2a) + (2b) = s(0,2) = -2 q2",
         e.ssum(N, _thm2_even(N)) + e.ssum(N, _thm2_odd(N)), e.s(2, 0), -2 * e.q(2))


@_register("lerch_diff", "N q_N - 2 (N/2) q_(N/2) = N q2 = -sum_{k even} s(k,N)",
           params=_over_n(2, step=2), valid=lambda prm: prm["N"] % 2 == 0, coprime=_n)
def _lerch_diff(e: _Rows, prm):
    N = prm["N"]
    e.eq("N q_N - 2 (N/2) q_(N/2) = N q2 = -sum_{k even} s(k,N)",
         N * e.q(N) - N * e.q(N // 2), N * e.q(2), -e.ssum(N, range(0, N, 2)))


# --- Lucas-sequence tables ------------------------------------------------------

@_register("table2_pell", "s(k,8) through the Pell quotient")
def _table2_pell(e: _Rows, prm):
    """Uses the bare quotient U_n/p: a (2/p) factor breaks every p = 3, 5 mod 8."""
    q2 = e.q(2)
    w = lucas_quotient(PELL, e.ctx).quotient
    s8 = [e.s(8, k) for k in range(4)]
    e.eq("s(0,8) = -4 q2 - 2w", s8[0], -4 * q2 - 2 * w)
    e.eq("s(1,8) = q2 + 2w", s8[1], q2 + 2 * w)
    e.eq("s(2,8) = -q2 + 2w", s8[2], -q2 + 2 * w)
    e.eq("s(3,8) = 2 q2 - 2w", s8[3], 2 * q2 - 2 * w)
    e.eq("s(1,8) + s(2,8) = s(0,2) - s(0,8) - s(3,8) = -2 q2 + 2 s(1,8) = 4w",
         s8[1] + s8[2], e.s(2, 0) - s8[0] - s8[3], -2 * q2 + 2 * s8[1], 4 * w)


@_register("table3_lucas", "s(k,12) through U(4,1)")
def _table3_lucas(e: _Rows, prm):
    q2, q3, c = e.q(2), e.q(3), e.c
    v = lucas_quotient(LUCAS_4_1, e.ctx).w
    s12 = [e.s(12, k) for k in range(6)]
    h = c(3, 2) * q3
    e.eq("s(0,12) = -3 q2 - 3/2 q3 - 3v", s12[0], -3 * q2 - h - 3 * v)
    e.eq("s(1,12) = q2 + 3v", s12[1], q2 + 3 * v)
    e.eq("s(2,12) = -q2 + 3/2 q3", s12[2], -q2 + h)
    e.eq("s(3,12) = 3 q2 - 3/2 q3", s12[3], 3 * q2 - h)
    e.eq("s(4,12) = -3 q2 + 3v", s12[4], -3 * q2 + 3 * v)
    e.eq("s(5,12) = q2 + 3/2 q3 - 3v", s12[5], q2 + h - 3 * v)
    e.eq("s(1..4,12) = s(0,2) - s(0,12) - s(5,12) = -2 q2 + 2 s(1,12) = 6v",
         sum(s12[1:5]), e.s(2, 0) - s12[0] - s12[5], -2 * q2 + 2 * s12[1], 6 * v)


# --- particular N ----------------------------------------------------------------

@_register("n8_conditional", "N = 8: criteria for q2 = 0", conditional=True)
def _n8(e: _Rows, prm):
    q2 = e.q(2)
    s = [e.s(8, k) for k in range(8)]
    e.eq("s(0,8) + s(4,8) = 2{s(0,8) + s(1,8)} = 2 s(0,4) = -6 q2",
         s[0] + s[4], 2 * (s[0] + s[1]), 2 * e.s(4, 0), -6 * q2)
    e.eq("s(0,8) + 2 s(1,8) + s(3,8) = 0", s[0] + 2 * s[1] + s[3], 0)
    e.eq("s(0,8) + s(2,8) + s(4,8) + s(6,8) = 4 s(0,2)", s[0] + s[2] + s[4] + s[6], 4 * e.s(2, 0))
    e.eq("s(0,8) + s(1,8) = -3 q2", s[0] + s[1], -3 * q2)
    e.eq("s(0,8) + s(2,8) = -5 q2", s[0] + s[2], -5 * q2)
    e.eq("s(0,8) - s(3,8) = -6 q2", s[0] - s[3], -6 * q2)
    if e.given("q2 = 0", q2 == 0):
        e.eq("q2 = 0 => s(0,8) = -s(1,8) = -s(2,8) = s(3,8)", s[0], -s[1], -s[2], s[3])


@_register("n16_relations", "N = 16 relations and the 3/16 criterion for q2 = 0",
           conditional=True)
def _n16(e: _Rows, prm):
    q2 = e.q(2)
    s = [e.s(16, k) for k in range(16)]
    e.eq("s(0,16) + s(4,16) + s(8,16) + s(12,16) = 4 s(0,4)",
         s[0] + s[4] + s[8] + s[12], 4 * e.s(4, 0))
    e.eq("s(0,16) + s(8,16) = 2{s(0,16) + s(1,16)} = 2 s(0,8)",
         s[0] + s[8], 2 * (s[0] + s[1]), 2 * e.s(8, 0))
    e.eq("s(1,16) + s(9,16) = 2{s(2,16) + s(3,16)} = 2 s(1,8)",
         s[1] + s[9], 2 * (s[2] + s[3]), 2 * e.s(8, 1))
    e.eq("s(0,16) + 2 s(1,16) - s(8,16) = 0", s[0] + 2 * s[1] - s[8], 0)
    e.eq("2 s(0,16) + 3 s(1,16) + s(9,16) = -6 q2", 2 * s[0] + 3 * s[1] + s[9], -6 * q2)
    if e.given("q2 = 0", q2 == 0):
        e.eq("q2 = 0 => 2 s(0,8) + 2 s(1,8) = 0", 2 * e.s(8, 0) + 2 * e.s(8, 1), 0)
        e.eq("q2 = 0 => s(0,16) + s(8,16) + s(1,16) + s(9,16) = 0", s[0] + s[8] + s[1] + s[9], 0)
        e.eq("q2 = 0 => 2 s(0,16) + 3 s(1,16) + s(9,16) = 0", 2 * s[0] + 3 * s[1] + s[9], 0)


@_register("n12_rows", "N = 12: M = 2 rows and the s(1,12) = s(4,12) criterion",
           conditional=True)
def _n12(e: _Rows, prm):
    q2, q3, c = e.q(2), e.q(3), e.c
    s = [e.s(12, k) for k in range(12)]
    e.eq("s(0,12) + s(6,12) = 2{s(0,12) + s(1,12)} = 2 s(0,6) = -4 q2 - 3 q3",
         s[0] + s[6], 2 * (s[0] + s[1]), 2 * e.s(6, 0), -4 * q2 - 3 * q3)
    e.eq("s(1,12) + s(7,12) = 2{s(2,12) + s(3,12)} = 2 s(1,6) = 4 q2",
         s[1] + s[7], 2 * (s[2] + s[3]), 2 * e.s(6, 1), 4 * q2)
    e.eq("s(1,12) - s(4,12) = 4 q2", s[1] - s[4], 4 * q2)
    e.eq("s(2,12) + s(3,12) = 2 q2", s[2] + s[3], 2 * q2)
    e.eq("s(4,12) + s(6,12) = -2 s(0,12) - 10 q2 - 9/2 q3",
         s[4] + s[6], -2 * s[0] - 10 * q2 - c(9, 2) * q3)
    if e.given("q2 = 0", q2 == 0):
        e.eq("q2 = 0 => s(1,12) = s(4,12)", s[1], s[4])


@_register("frobenius_chain", "q2 = q3 = 0 => s(0,12) = -s(1,12) = -s(4,12) = s(5,12)",
           conditional=True)
def _frobenius(e: _Rows, prm):
    both = e.given("q2 = 0", e.q(2) == 0) & e.given("q3 = 0", e.q(3) == 0)
    if both:
        s = [e.s(12, k) for k in range(6)]
        e.eq("s(0,12) = -s(1,12) = -s(4,12) = s(5,12)", s[0], -s[1], -s[4], s[5])


@_register("n24_subtractions", "s(k,24) for k = 2, 3, 8, 9 by subtraction")
def _n24_sub(e: _Rows, prm):
    s = e.s
    e.eq("s(2,24) = s(0,8) - s(0,12) = s(1,12) + s(2,12) - s(1,8)",
         s(24, 2), s(8, 0) - s(12, 0), s(12, 1) + s(12, 2) - s(8, 1))
    e.eq("s(3,24) = s(0,6) - s(0,8) = s(1,8) - s(2,12)",
         s(24, 3), s(6, 0) - s(8, 0), s(8, 1) - s(12, 2))
    e.eq("s(8,24) = s(2,6) - s(3,8) = s(2,8) - s(3,12)",
         s(24, 8), s(6, 2) - s(8, 3), s(8, 2) - s(12, 3))
    e.eq("s(9,24) = s(3,8) - s(5,12) = s(3,12) + s(4,12) - s(2,8)",
         s(24, 9), s(8, 3) - s(12, 5), s(12, 3) + s(12, 4) - s(8, 2))


@_register("n24_m2_rows", "N = 24, M = 2: third and fourth rows")
def _n24_m2(e: _Rows, prm):
    s, q2, q3 = e.s, e.q(2), e.q(3)
    e.eq("s(2,24) + s(14,24) = 2{s(4,24) + s(5,24)} = 2 s(2,12) = -2 q2 + 3 q3",
         s(24, 2) + s(24, 14), 2 * (s(24, 4) + s(24, 5)), 2 * s(12, 2), -2 * q2 + 3 * q3)
    e.eq("s(3,24) + s(15,24) = 2{s(6,24) + s(7,24)} = 2 s(3,12) = 6 q2 - 3 q3",
         s(24, 3) + s(24, 15), 2 * (s(24, 6) + s(24, 7)), 2 * s(12, 3), 6 * q2 - 3 * q3)


@_register("n9_relation", "N = 9: 2 s(0,9) + 3 s(1,9) + 4 s(2,9) - s(3,9) = 0")
def _n9(e: _Rows, prm):
    s = [e.s(9, k) for k in range(9)]
    e.eq("s(0,9) + s(3,9) + s(6,9) = 3{s(0,9) + s(1,9) + s(2,9)} = 3 s(0,3) = -9/2 q3",
         s[0] + s[3] + s[6], 3 * (s[0] + s[1] + s[2]), 3 * e.s(3, 0), -e.c(9, 2) * e.q(3))
    e.eq("2 s(0,9) + 3 s(1,9) + 4 s(2,9) - s(3,9) = 0", 2 * s[0] + 3 * s[1] + 4 * s[2] - s[3], 0)
    e.eq("s(4,9) = 0", s[4], 0)


@_register("n18_relations", "N = 18 relations")
def _n18(e: _Rows, prm):
    q2 = e.q(2)
    s = [e.s(18, k) for k in range(18)]
    e.eq("s(0,18) + 2 s(1,18) + s(8,18) = 0", s[0] + 2 * s[1] + s[8], 0)
    e.eq("s(1,18) + s(7,18) + s(13,18) = 3 s(1,6) = 6 q2", s[1] + s[7] + s[13], 3 * e.s(6, 1), 6 * q2)
    e.eq("s(0,18) + s(2,18) + s(4,18) + s(6,18) + s(8,18) = -10 q2",
         s[0] + s[2] + s[4] + s[6] + s[8], -10 * q2)
    e.eq("s(1,18) + s(3,18) + s(5,18) + s(7,18) = 8 q2", s[1] + s[3] + s[5] + s[7], 8 * q2)


@_register("n5_conditional", "N = 5: consequences of q5 = 0", coprime=lambda prm: (5,),
           conditional=True)
def _n5(e: _Rows, prm):
    """The two equalities with s(k,10) also need q2 = 0; under q5 = 0 alone they
    are off by 2 q2 (witnessed at p = 20771 and 40487)."""
    q2 = e.q(2)
    if e.given("q5 = 0", e.q(5) == 0):
        s5 = [e.s(5, k) for k in range(5)]
        s10 = [e.s(10, k) for k in range(10)]
        e.eq("q5 = 0 => -2 s(0,5) - s(1,5) = 0", -2 * s5[0] - s5[1], 0)
        e.eq("q5 = 0 => s(0,5) = s(4,10) + 2 q2", s5[0], s10[4] + 2 * q2)
        e.eq("q5 = 0 => s(1,5) = s(1,10) - 2 q2 = -s(3,10) + 2 q2",
             s5[1], s10[1] - 2 * q2, -s10[3] + 2 * q2)
        if e.given("q2 = 0", q2 == 0):
            e.eq("q2 = q5 = 0 => s(0,5) = s(4,10)", s5[0], s10[4])
            e.eq("q2 = q5 = 0 => s(1,5) = s(1,10) = -s(3,10)", s5[1], s10[1], -s10[3])


@_register("n10_relations", "N = 10 relations and criteria for q2 = 0",
           coprime=lambda prm: (5,), conditional=True)
def _n10(e: _Rows, prm):
    q2 = e.q(2)
    s = [e.s(10, k) for k in range(10)]
    e.eq("s(0,10) + 2 s(1,10) + s(4,10) = 0", s[0] + 2 * s[1] + s[4], 0)
    e.eq("2 s(0,10) + 3 s(1,10) + 2 s(2,10) + 3 s(3,10) + 2 s(4,10) = 0",
         2 * s[0] + 3 * s[1] + 2 * s[2] + 3 * s[3] + 2 * s[4], 0)
    e.eq("s(1,10) + s(3,10) = -(s(0,6) + s(2,6)) = 4 q2",
         s[1] + s[3], -(e.s(6, 0) + e.s(6, 2)), 4 * q2)
    e.eq("s*(1,5) = -s*(0,3)", e.star(5, 1), -e.star(3, 0))
    e.eq("s(0,10) + s(2,10) + s(4,10) = -6 q2", s[0] + s[2] + s[4], -6 * q2)
    if e.given("q2 = 0", q2 == 0):
        e.eq("q2 = 0 => s(1,10) + s(3,10) = 0", s[1] + s[3], 0)
        e.eq("q2 = 0 => s(0,10) + s(2,10) + s(4,10) = 0", s[0] + s[2] + s[4], 0)
        if e.given("q5 = 0", e.q(5) == 0):
            s05, s15 = e.s(5, 0), e.s(5, 1)
            e.eq("s(0,10) = 3 s(0,5)", s[0], 3 * s05)
            e.eq("s(1,10) = s(1,5)", s[1], s15)
            e.eq("s(2,10) = -4 s(0,5)", s[2], -4 * s05)
            e.eq("s(3,10) = -s(1,5)", s[3], -s15)
            e.eq("s(4,10) = s(0,5)", s[4], s05)
            e.eq("4 s(0,10) = -6 s(1,10) = -3 s(2,10) = 6 s(3,10) = 12 s(4,10)",
                 4 * s[0], -6 * s[1], -3 * s[2], 6 * s[3], 12 * s[4])
            e.eq("s(0,5) = 0 <=> s(1,5) = 0", int(s05 == 0), int(s15 == 0))


@_register("b_sum_checks", "exponentially weighted sums B(b,k,N)")
def _b_sums(e: _Rows, prm):
    ctx, q2 = e.ctx, e.q(2)
    b_half = sums.b_sum(ctx, 1, 2, 0, 1)
    b_half2 = sums.b_sum(ctx, 1, 2, 0, 2)
    e.eq("B(1/2,0,1) = s(1,4) = q2", b_half, e.s(4, 1), q2)
    e.eq("B(2,0,1) = -2 s(1,4) = -2 q2", sums.b_sum(ctx, 2, 1, 0, 1), -2 * e.s(4, 1), -2 * q2)
    e.eq("B(1/2,0,2) = -s(2,8)", b_half2, -e.s(8, 2))
    e.eq("B(1/2,0,2) = -s*(0,2) - s*(2,4)", b_half2, -e.star(2, 0) - e.star(4, 2))
    e.eq("B(1/2,0,1) = 4 K(-1,4)", b_half, 4 * sums.k_sum(ctx, 4, -1))
    e.eq("B(-1,0,1) = -2 q2", sums.b_sum(ctx, -1, 1, 0, 1), -2 * q2)
    e.eq("B(1,1,3) = s(1,3)", sums.b_sum(ctx, 1, 1, 1, 3), e.s(3, 1))


# --- public API ----------------------------------------------------------------

def check_ids() -> list[str]:
    return sorted(REGISTRY)


def get(id: str) -> IdentityCheck:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownCheck(id) from None


def run_check(id: str, ctx: PrimeContext, params: dict | None = None) -> CheckReport:
    check = get(id)
    params = dict(params or {})
    if not check.applicable(ctx.p, params):
        raise NotApplicable(f"{id} does not apply to p = {ctx.p} with {params}")
    return check.evaluate(ctx, params)


@dataclass
class RunSummary:
    reports: list
    skipped: dict

    @property
    def failures(self) -> list:
        return [r for r in self.reports if not r.passed]


def run_all(ctx: PrimeContext, ids: Iterable[str] | None = None,
            limits: Limits = Limits()) -> RunSummary:
    """Every applicable (id, params) combination at one prime, ordered by id then params."""
    selected = sorted(set(ids)) if ids else check_ids()
    reports, skipped = [], {}
    for cid in selected:
        check = get(cid)
        for prm in check.params(limits):
            if check.applicable(ctx.p, prm):
                reports.append(check.evaluate(ctx, prm))
            else:
                skipped[cid] = skipped.get(cid, 0) + 1
    return RunSummary(reports, skipped)
