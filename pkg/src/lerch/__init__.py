"""Fermat quotients, Lerch-type harmonic sums and their congruences modulo a prime."""

from .errors import (
    BadModulus,
    CheckpointMismatch,
    ConsistencyError,
    DivisibilityError,
    InternalError,
    LerchError,
    NonInvertible,
    NotApplicable,
    NotUnitError,
    RangeError,
    UnknownCheck,
)
from .identities import Limits, check_ids, run_all, run_check
from .modarith import (
    PrimeContext,
    batch_inverse,
    fermat_quotient,
    is_prime,
    legendre,
    mod_inv,
    mod_pow,
)
from .scanner import ScanHit, ScanOptions, ScanTarget, primes_in, scan, verify_range
from .sequences import FIBONACCI, LUCAS_4_1, PELL, LucasParams, lucas_quotient, lucas_u
from .sums import SumSpec, SumTable, evaluate, sum_table

__version__ = "0.1.0"

__all__ = [
    "BadModulus", "CheckpointMismatch", "ConsistencyError", "DivisibilityError",
    "InternalError", "LerchError", "NonInvertible", "NotApplicable", "NotUnitError",
    "RangeError", "UnknownCheck",
    "Limits", "check_ids", "run_all", "run_check",
    "PrimeContext", "batch_inverse", "fermat_quotient", "is_prime", "legendre",
    "mod_inv", "mod_pow",
    "ScanHit", "ScanOptions", "ScanTarget", "primes_in", "scan", "verify_range",
    "FIBONACCI", "LUCAS_4_1", "PELL", "LucasParams", "lucas_quotient", "lucas_u",
    "SumSpec", "SumTable", "evaluate", "sum_table",
]
