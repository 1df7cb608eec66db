"""Command-line front end: ``lerch eval | verify | scan | report``.

Exit status is 0 on success, 1 when a verification finds a failing
congruence and 2 on any usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction

from . import identities, scanner, sums
from .errors import ConsistencyError, InternalError, LerchError, RangeError, UnknownCheck
from .modarith import PrimeContext, fermat_quotient
from .sequences import FIBONACCI, LUCAS_4_1, PELL, lucas_quotient

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
THREADS_ENV = "LERCH_THREADS"
DEFAULT_REPORT_N = "2..46"


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    text = text.strip().replace("_", "")
    try:
        return int(text)
    except ValueError:
        pass
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not x.is_integer():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(x)


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like lo..hi, got {text!r}")
    lo, hi = _int(lo), _int(hi)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_int_list(text: str) -> list[int]:
    """Comma list of integers or lo..hi spans, e.g. ``3,8,10..12``."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = parse_range(part)
            out.extend(range(lo, hi + 1))
        elif part.strip():
            out.append(_int(part))
    return out


def _names(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        if n < 1:
            raise UsageError(f"{THREADS_ENV} must be positive")
        return n
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lerch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, default_format="csv"):
        sp.add_argument("--format", choices=("csv", "json", "text"), default=default_format)
        sp.add_argument("--output", "-o", help="write data here instead of stdout")

    def parallel(sp):
        sp.add_argument("--threads", type=int, help=f"worker processes (default ${THREADS_ENV} or CPU count)")
        sp.add_argument("--floor", type=_int, default=scanner.DEFAULT_FLOOR,
                        help="skip primes below this (default 5)")

    ev = sub.add_parser("eval", help="quotients and sum tables at one prime")
    ev.add_argument("--p", type=_int, required=True)
    ev.add_argument("--N", type=parse_int_list, default=[], help="e.g. 3,8 or 2..12")
    ev.add_argument("--bases", type=parse_int_list, default=[])
    ev.add_argument("--families", type=_names, default=[],
                    help=f"derived families per N: {', '.join(sums.FAMILIES[1:-1])}, B:<num>/<den>")
    ev.add_argument("--lucas", action="store_true", help="also print Pell, Lucas(4,1) and Fibonacci quotients")
    common(ev)

    vf = sub.add_parser("verify", help="run identity checks over a prime range")
    where = vf.add_mutually_exclusive_group(required=True)
    where.add_argument("--range", type=parse_range)
    where.add_argument("--p", type=_int, help="a single prime")
    vf.add_argument("--checks", type=_names, default=None, help="comma list of check ids (default all)")
    vf.add_argument("--max-n", type=int, default=identities.Limits.max_n)
    vf.add_argument("--max-n-theorem", type=int, default=identities.Limits.max_n_theorem)
    vf.add_argument("--list", action="store_true", help="list check ids and exit")
    parallel(vf)
    common(vf, "text")

    sc = sub.add_parser("scan", help="search a prime range for vanishing quotients or sums")
    sc.add_argument("--target", action="append", required=True,
                    help="q<b>, s:<N>:<k> or check:<id>; repeatable or comma separated")
    sc.add_argument("--range", type=parse_range, required=True)
    sc.add_argument("--checkpoint", help="checkpoint file (JSON)")
    sc.add_argument("--checkpoint-every", type=int, default=1, help="segments between checkpoints")
    sc.add_argument("--segment-size", type=_int, default=scanner.DEFAULT_SEGMENT)
    sc.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    parallel(sc)
    common(sc)

    rp = sub.add_parser("report", help="zero census of s(k, N) over a range")
    rp.add_argument("--range", type=parse_range, required=True)
    rp.add_argument("--N", type=parse_int_list, default=parse_int_list(DEFAULT_REPORT_N))
    rp.add_argument("--nonzero-only", action="store_true", help="omit (N, k) with no zeros")
    parallel(rp)
    common(rp)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _options(args) -> scanner.ScanOptions:
    threads = args.threads if args.threads is not None else default_threads()
    if threads < 1:
        raise UsageError("--threads must be positive")
    return scanner.ScanOptions(threads=threads, floor=args.floor)


# --- eval ----------------------------------------------------------------------

def _family_value(ctx, fam: str, N: int, k: int) -> int:
    if fam.startswith("B:"):
        b = Fraction(fam[2:])
        return sums.b_sum(ctx, b.numerator, b.denominator, k, N)
    return sums.evaluate(ctx, sums.SumSpec(fam, N, k))


def cmd_eval(args) -> int:
    ctx = PrimeContext(args.p)
    for fam in args.families:
        if fam not in sums.FAMILIES[1:-1] and not fam.startswith("B:"):
            raise UsageError(f"unknown family {fam!r}")
    data = {"p": ctx.p, "quotients": {}, "tables": {}, "families": {}, "lucas": {}}
    for b in args.bases:
        data["quotients"][f"q{b}"] = fermat_quotient(b, ctx)
    for N in args.N:
        data["tables"][str(N)] = list(sums.sum_table(ctx, N).values)
        for fam in args.families:
            data["families"][f"{fam}:{N}"] = [_family_value(ctx, fam, N, k) for k in range(N)]
    if args.lucas:
        for name, prm in (("pell", PELL), ("lucas_4_1", LUCAS_4_1), ("fibonacci", FIBONACCI)):
            try:
                lq = lucas_quotient(prm, ctx)
            except LerchError:
                continue
            data["lucas"][name] = {"n": lq.n, "w": lq.w, "quotient": lq.quotient}

    if args.format == "json":
        out = json.dumps(data, sort_keys=True) + "\n"
    elif args.format == "csv":
        rows = [("kind", "name", "values")]
        rows += [("quotient", k, v) for k, v in data["quotients"].items()]
        rows += [("s", N, " ".join(map(str, v))) for N, v in data["tables"].items()]
        rows += [("family", k, " ".join(map(str, v))) for k, v in data["families"].items()]
        rows += [("lucas", k, f"{v['w']} {v['quotient']}") for k, v in data["lucas"].items()]
        out = _csv(rows)
    else:
        lines = [f"p = {ctx.p}"]
        lines += [f"{k} = {v}" for k, v in data["quotients"].items()]
        lines += [f"s(k,{N}) = {v}" for N, v in data["tables"].items()]
        lines += [f"{k} = {v}" for k, v in data["families"].items()]
        lines += [f"{k}: U_{v['n']}/p = {v['quotient']}, w = {v['w']}" for k, v in data["lucas"].items()]
        out = "\n".join(lines) + "\n"
    _emit(out, args.output)
    return EXIT_OK


# --- verify --------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.list:
        _emit("\n".join(identities.check_ids()) + "\n", args.output)
        return EXIT_OK
    lo, hi = args.range if args.range else (args.p, args.p)
    opts = _options(args)
    opts.limits = identities.Limits(args.max_n, args.max_n_theorem)
    summary = scanner.verify_range(args.checks, lo, hi, opts)
    if args.format == "json":
        out = json.dumps(summary.as_dict(), sort_keys=True) + "\n"
    elif args.format == "csv":
        rows = [("check", "pass", "vacuous", "fail", "skipped")]
        for cid, c in sorted(summary.counts.items()):
            rows.append((cid, c["pass"], c["vacuous"], c["fail"], c["skipped"]))
        out = _csv(rows)
    else:
        out = summary.to_text()
    _emit(out, args.output)
    return EXIT_OK if summary.ok else EXIT_FAIL


# --- scan ----------------------------------------------------------------------

def cmd_scan(args) -> int:
    targets = [scanner.ScanTarget.parse(t) for spec in args.target for t in _names(spec)]
    if args.resume and not args.checkpoint:
        raise UsageError("--resume needs --checkpoint")
    opts = _options(args)
    opts.checkpoint = args.checkpoint
    opts.checkpoint_every = max(1, args.checkpoint_every)
    opts.segment_size = args.segment_size
    opts.resume = args.resume
    if opts.segment_size < 1:
        raise UsageError("--segment-size must be positive")
    lo, hi = args.range
    result = scanner.scan(targets, lo, hi, opts)
    logging.getLogger(__name__).info("scan stats: %s", dict(result.stats))
    _emit(scanner.format_hits(result.hits, args.format), args.output)
    return EXIT_OK


# --- report --------------------------------------------------------------------

def cmd_report(args) -> int:
    lo, hi = args.range
    ns = [n for n in args.N if n >= 1]
    if not ns:
        raise UsageError("--N must name at least one positive modulus")
    census, _ = scanner.zero_census(lo, hi, ns, _options(args))
    rows = [(N, k, zeros) for (N, k), zeros in sorted(census.items())
            if zeros or not args.nonzero_only]
    if args.format == "json":
        out = "".join(json.dumps({"N": N, "k": k, "zeros": z}) + "\n" for N, k, z in rows)
    elif args.format == "csv":
        out = _csv([("N", "k", "count", "zeros")]
                   + [(N, k, len(z), " ".join(map(str, z))) for N, k, z in rows])
    else:
        out = f"zeros of s(k,N) for primes in [{max(lo, args.floor)}, {hi}]\n"
        out += "".join(f"s({k},{N}): {', '.join(map(str, z)) or '-'}\n" for N, k, z in rows)
    _emit(out, args.output)
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "scan": cmd_scan, "report": cmd_report}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (ConsistencyError, InternalError) as exc:
        print(f"lerch {args.command}: internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, UnknownCheck, RangeError, LerchError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"lerch {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
