"""Longer zero scans, run only when LERCH_EXTENDED=1."""

import os

import pytest

from lerch import scanner
from lerch.scanner import ScanOptions, scan

pytestmark = pytest.mark.skipif(os.environ.get("LERCH_EXTENDED") != "1",
                                reason="set LERCH_EXTENDED=1 for long scans")


def zeros(targets, lo, hi):
    opts = ScanOptions(threads=os.cpu_count() or 1)
    return scanner.hits_by_target(scan(targets, lo, hi, opts).hits)


def test_s38_to_60000():
    assert zeros(["s:8:3"], 5, 60000) == {"s:8:3": [23, 56993]}


def test_s212_to_18000():
    assert zeros(["s:12:2"], 5, 18000) == {"s:12:2": [179, 619, 17807]}


def test_s08_to_1310000():
    assert zeros(["s:8:0"], 1_300_000, 1_310_000) == {"s:8:0": [1300709]}
