"""Prime-range scans for vanishing quotients and sums, with checkpoint/resume.

Work is split into fixed segments of consecutive integers.  Segments are
evaluated independently (optionally in a process pool) and merged strictly in
segment order by the caller, which is the only writer of hits and
checkpoints.  Output therefore does not depend on the worker count.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from . import identities, sums
from .errors import CheckpointMismatch, RangeError
from .modarith import PRIME_LIMIT, PrimeContext, quotient_mod

log = logging.getLogger(__name__)

DEFAULT_SEGMENT = 1 << 16
DEFAULT_FLOOR = 5


def _check_range(lo: int, hi: int) -> None:
    if not (2 <= lo <= hi < PRIME_LIMIT):
        raise RangeError(f"need 2 <= lo <= hi < 2**31, got [{lo}, {hi}]")


def _small_primes(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return np.flatnonzero(sieve)


def primes_in(lo: int, hi: int, segment: int = DEFAULT_SEGMENT) -> Iterator[int]:
    """Primes in [lo, hi] in ascending order, by a segmented sieve."""
    _check_range(lo, hi)
    base = _small_primes(math.isqrt(hi))
    start = lo
    while start <= hi:
        stop = min(start + segment - 1, hi)
        mark = np.ones(stop - start + 1, dtype=bool)
        for q in base:
            q = int(q)
            if q * q > stop:
                break
            first = max(q * q, (start + q - 1) // q * q)
            mark[first - start::q] = False
        if start < 2:
            mark[:2 - start] = False
        for off in np.flatnonzero(mark):
            yield start + int(off)
        start = stop + 1


@dataclass(frozen=True)
class ScanTarget:
    """One condition tested at every prime: ``q<b>``, ``s:<N>:<k>`` or ``check:<id>``."""

    kind: str
    base: int = 0
    N: int = 0
    k: int = 0
    check: str = ""

    def __post_init__(self):
        if self.kind == "quotient_zero":
            ok = self.base >= 2
        elif self.kind == "sum_zero":
            ok = self.N >= 1 and 0 <= self.k < self.N
        else:
            ok = self.kind == "check_failure" and bool(self.check)
        if not ok:
            raise ValueError(f"invalid scan target {self!r}")

    @classmethod
    def parse(cls, text: str) -> "ScanTarget":
        text = text.strip()
        if text.startswith("check:"):
            cid = text.split(":", 1)[1]
            if cid not in identities.check_ids():
                raise ValueError(f"unknown check in target {text!r}")
            return cls("check_failure", check=cid)
        try:
            if text.startswith("s:"):
                _, n, k = text.split(":")
                N, k = int(n), int(k)
                if N >= 1 and 0 <= k < N:
                    return cls("sum_zero", N=N, k=k)
            elif text.startswith("q") and int(text[1:]) >= 2:
                return cls("quotient_zero", base=int(text[1:]))
        except ValueError:
            pass
        raise ValueError(f"bad target {text!r}; expected q<b>, s:<N>:<k> or check:<id>")

    def __str__(self) -> str:
        if self.kind == "quotient_zero":
            return f"q{self.base}"
        if self.kind == "sum_zero":
            return f"s:{self.N}:{self.k}"
        return f"check:{self.check}"


@dataclass(frozen=True)
class ScanHit:
    p: int
    target: ScanTarget
    value: int = 0
    q2: int | None = None
    q3: int | None = None

    def as_dict(self) -> dict:
        return {"p": self.p, "target": str(self.target), "value": self.value,
                "q2": self.q2, "q3": self.q3}

    @classmethod
    def from_dict(cls, d: dict) -> "ScanHit":
        return cls(d["p"], ScanTarget.parse(d["target"]), d["value"], d["q2"], d["q3"])


@dataclass
class ScanOptions:
    threads: int = 1
    segment_size: int = DEFAULT_SEGMENT
    floor: int = DEFAULT_FLOOR
    checkpoint: str | None = None
    checkpoint_every: int = 1
    resume: bool = False
    limits: identities.Limits = field(default_factory=identities.Limits)


@dataclass
class ScanResult:
    hits: list
    stats: Counter
    completed: bool = True


def _context_quotients(p: int) -> tuple:
    q2 = quotient_mod(2, p) if p != 2 else None
    q3 = quotient_mod(3, p) if p != 3 else None
    return q2, q3


def evaluate_target(target: ScanTarget, p: int, limits=identities.Limits(),
                    ctx: PrimeContext | None = None):
    """Value of ``target`` at a single prime, or None when it does not apply.

    A zero return for quotient/sum targets means a hit; for check targets the
    return is the first nonzero residual (None if every report passed).
    """
    if target.kind == "quotient_zero":
        if p % target.base == 0:
            return None
        return quotient_mod(target.base, p)
    if p < 5:
        return None
    ctx = ctx or PrimeContext(p)
    if target.kind == "sum_zero":
        if target.N % p == 0 or sums.is_empty(p, target.N, target.k):
            return None
        return sums.s(ctx, target.N, target.k)
    run = identities.run_all(ctx, [target.check], limits)
    for rep in run.reports:
        for _, r in rep.failures():
            return r
    return None


def _scan_segment(job):
    """Evaluate every target at every prime of one segment (worker entry point)."""
    lo, hi, floor, targets, limits = job
    hits, stats = [], Counter()
    before = Counter(sums.evaluations)
    by_n: dict[int, list] = {}
    for t in targets:
        if t.kind == "sum_zero":
            by_n.setdefault(t.N, []).append(t)
    for p in primes_in(max(lo, floor, 2), hi) if max(lo, floor, 2) <= hi else ():
        stats["primes"] += 1
        ctx = PrimeContext(p) if p >= 5 and any(t.kind != "quotient_zero" for t in targets) else None
        tables = {}
        if ctx is not None:
            for N in by_n:
                if N % p:
                    tables[N] = sums.sum_table(ctx, N)
        found = []
        for t in targets:
            if t.kind == "quotient_zero":
                if p % t.base == 0:
                    stats[f"skipped:{t}"] += 1
                    continue
                if quotient_mod(t.base, p) == 0:
                    found.append((t, 0))
            elif t.kind == "sum_zero":
                if t.N not in tables or sums.is_empty(p, t.N, t.k):
                    stats[f"skipped:{t}"] += 1
                    continue
                if tables[t.N][t.k] == 0:
                    found.append((t, 0))
            else:
                if ctx is None:
                    stats[f"skipped:{t}"] += 1
                    continue
                value = evaluate_target(t, p, limits, ctx)
                if value is not None:
                    found.append((t, value))
        if found:
            q2, q3 = _context_quotients(p)
            hits.extend(ScanHit(p, t, v, q2, q3) for t, v in found)
    for N, n in (Counter(sums.evaluations) - before).items():
        stats[f"tables:{N}"] += n
    return lo, hi, hits, stats


def config_digest(targets, lo: int, hi: int, options: ScanOptions) -> str:
    cfg = {
        "targets": [str(t) for t in targets],
        "range": [lo, hi],
        "floor": options.floor,
        "segment_size": options.segment_size,
        "limits": [options.limits.max_n, options.limits.max_n_theorem, options.limits.max_base],
    }
    blob = json.dumps(cfg, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def _write_json_atomic(path: str, payload: dict) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def load_checkpoint(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _segments(start: int, hi: int, size: int) -> list[tuple[int, int]]:
    out = []
    while start <= hi:
        out.append((start, min(start + size - 1, hi)))
        start += size
    return out


def scan(targets: Iterable, lo: int, hi: int, options: ScanOptions | None = None,
         on_checkpoint: Callable[[dict], None] | None = None) -> ScanResult:
    """Run ``targets`` over every prime in [lo, hi] (primes below ``options.floor`` skipped).

    With ``options.checkpoint`` set, the scan state is written after every
    ``checkpoint_every`` segments; ``resume`` continues from a prior file.
    ``on_checkpoint`` is invoked with each checkpoint record after it is on
    disk, and may raise to stop the scan.
    """
    options = options or ScanOptions()
    targets = [t if isinstance(t, ScanTarget) else ScanTarget.parse(t) for t in targets]
    if not targets:
        raise ValueError("at least one target is required")
    _check_range(lo, hi)
    digest = config_digest(targets, lo, hi, options)

    hits: list[ScanHit] = []
    stats: Counter = Counter()
    cursor = lo - 1
    if options.resume and options.checkpoint and os.path.exists(options.checkpoint):
        state = load_checkpoint(options.checkpoint)
        if state.get("config_digest") != digest:
            raise CheckpointMismatch(f"{options.checkpoint} was written for a different scan")
        cursor = state["cursor"]
        hits = [ScanHit.from_dict(h) for h in state["hits"] if h["p"] <= cursor]
        stats = Counter(state.get("stats", {}))
        log.info("resuming %s at %d with %d hits", options.checkpoint, cursor + 1, len(hits))

    def checkpoint(done_to: int) -> None:
        record = {
            "version": 1,
            "range": [lo, hi],
            "cursor": done_to,
            "targets": [str(t) for t in targets],
            "hits": [h.as_dict() for h in hits],
            "config_digest": digest,
            "stats": dict(sorted(stats.items())),
        }
        if options.checkpoint:
            _write_json_atomic(options.checkpoint, record)
        if on_checkpoint is not None:
            on_checkpoint(record)

    jobs = [(a, b, options.floor, targets, options.limits)
            for a, b in _segments(cursor + 1, hi, options.segment_size)]
    if options.threads > 1 and len(jobs) > 1:
        pool = ProcessPoolExecutor(max_workers=options.threads)
        results = pool.map(_scan_segment, jobs)
    else:
        pool = None
        results = map(_scan_segment, jobs)
    try:
        for i, (_, seg_hi, seg_hits, seg_stats) in enumerate(results, 1):
            hits.extend(seg_hits)
            stats.update(seg_stats)
            cursor = seg_hi
            if i % options.checkpoint_every == 0 or seg_hi == hi:
                checkpoint(cursor)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return ScanResult(hits, stats, completed=cursor >= hi)


def format_hits(hits: Iterable[ScanHit], fmt: str = "csv") -> str:
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "target", "value", "q2", "q3"])
        for h in hits:
            w.writerow([h.p, str(h.target), h.value,
                        "" if h.q2 is None else h.q2, "" if h.q3 is None else h.q3])
    elif fmt == "json":
        for h in hits:
            buf.write(json.dumps(h.as_dict(), sort_keys=True) + "\n")
    elif fmt == "text":
        for h in hits:
            buf.write(f"{h.p:>10}  {str(h.target):<16} value={h.value} q2={h.q2} q3={h.q3}\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return buf.getvalue()


def hits_by_target(hits: Iterable[ScanHit]) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for h in hits:
        out.setdefault(str(h.target), []).append(h.p)
    return out


# --- identity verification over a range --------------------------------------

@dataclass
class VerifySummary:
    lo: int
    hi: int
    counts: dict = field(default_factory=dict)  # id -> Counter(pass, vacuous, fail, skipped)
    failures: list = field(default_factory=list)
    primes: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "VerifySummary") -> None:
        self.primes += other.primes
        for cid, c in other.counts.items():
            self.counts.setdefault(cid, Counter()).update(c)
        self.failures.extend(other.failures)

    def as_dict(self) -> dict:
        return {
            "range": [self.lo, self.hi],
            "primes": self.primes,
            "ok": self.ok,
            "counts": {cid: dict(sorted(c.items())) for cid, c in sorted(self.counts.items())},
            "failures": [r.as_dict() for r in self.failures],
        }

    def to_text(self) -> str:
        lines = [f"verified {self.primes} primes in [{self.lo}, {self.hi}]"]
        lines.append(f"{'check':<22}{'pass':>8}{'vacuous':>9}{'fail':>6}{'skipped':>9}")
        for cid, c in sorted(self.counts.items()):
            lines.append(f"{cid:<22}{c['pass']:>8}{c['vacuous']:>9}{c['fail']:>6}{c['skipped']:>9}")
        for r in self.failures:
            for lab, res in r.failures():
                lines.append(f"FAIL p={r.p} {r.id} {dict(r.params)} {lab}: residual {res}")
        lines.append("OK" if self.ok else f"{len(self.failures)} failing reports")
        return "\n".join(lines) + "\n"


def _verify_segment(job):
    lo, hi, floor, ids, limits = job
    out = VerifySummary(lo, hi)
    start = max(lo, floor, 5)
    if start > hi:
        return out
    for p in primes_in(start, hi):
        out.primes += 1
        run = identities.run_all(PrimeContext(p), ids, limits)
        for rep in run.reports:
            c = out.counts.setdefault(rep.id, Counter())
            if not rep.passed:
                c["fail"] += 1
                out.failures.append(rep)
            elif rep.vacuous:
                c["vacuous"] += 1
            else:
                c["pass"] += 1
        for cid, n in run.skipped.items():
            out.counts.setdefault(cid, Counter())["skipped"] += n
    return out


def verify_range(ids, lo: int, hi: int, options: ScanOptions | None = None) -> VerifySummary:
    """Run identity checks at every prime in [lo, hi]; ``ids`` None means all."""
    options = options or ScanOptions()
    _check_range(lo, hi)
    ids = sorted(ids) if ids else identities.check_ids()
    for cid in ids:
        identities.get(cid)
    size = max(1, min(options.segment_size, 4096))
    jobs = [(a, b, options.floor, ids, options.limits) for a, b in _segments(lo, hi, size)]
    total = VerifySummary(lo, hi)
    if options.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=options.threads) as pool:
            parts = list(pool.map(_verify_segment, jobs))
    else:
        parts = [_verify_segment(j) for j in jobs]
    for part in parts:
        total.merge(part)
    return total


def zero_census(lo: int, hi: int, ns: Iterable[int], options: ScanOptions | None = None):
    """Zeros of s(k, N) for every N in ``ns`` and every k, as {(N, k): [p, ...]}."""
    ns = sorted(set(ns))
    targets = [ScanTarget("sum_zero", N=N, k=k) for N in ns for k in range(N)]
    result = scan(targets, lo, hi, options)
    census = {(t.N, t.k): [] for t in targets}
    for h in result.hits:
        census[(h.target.N, h.target.k)].append(h.p)
    return census, result.stats
