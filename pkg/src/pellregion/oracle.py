"""Brute-force lattice scan used as ground truth for every count.

Nothing here uses the fundamental solution or any recurrence: each lattice
point of |x| + |y| <= lambda is tested against (x-a)^2 - D*(y-b)^2 = 1
directly, in integers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .core import Solution, make_instance
from .errors import InvalidLambda, ScanTooLarge

__all__ = ["OracleResult", "brute_force", "scan_cap", "DEFAULT_SCAN_CAP"]

DEFAULT_SCAN_CAP = 20000


@dataclass(frozen=True)
class OracleResult:
    solutions: list[Solution]
    count: int
    # lattice points tested; with the square-root shortcut, one per x column
    points_scanned: int


def scan_cap() -> int:
    env = os.environ.get("PELL_SCAN_CAP")
    return int(env) if env else DEFAULT_SCAN_CAP


def _stripe_full(D, a, b, R, xs):
    found, scanned = [], 0
    for x in xs:
        w = R - abs(x)
        lhs = (x - a) ** 2 - 1
        for y in range(-w, w + 1):
            scanned += 1
            if lhs == D * (y - b) ** 2:
                found.append(Solution(x, y))
    return found, scanned


def _stripe_sqrt(D, a, b, R, xs):
    # D*(y-b)^2 = (x-a)^2 - 1 has at most the two roots y = b +- s
    found, scanned = [], 0
    for x in xs:
        scanned += 1
        t = (x - a) ** 2 - 1
        if t < 0 or t % D:
            continue
        q = t // D
        s = isqrt(q)
        if s * s != q:
            continue
        w = R - abs(x)
        for y in sorted({b - s, b + s}):
            if abs(y) <= w:
                found.append(Solution(x, y))
    return found, scanned


def _run_stripe(args):
    fast, D, a, b, R, lo, hi = args
    scan = _stripe_sqrt if fast else _stripe_full
    return scan(D, a, b, R, range(lo, hi))


def brute_force(D: int, a: int, b: int, lam, *, cap: int | None = None,
                fast: bool = True, workers: int | None = None) -> OracleResult:
    """Every (x, y) with |x| + |y| <= lam and (x-a)^2 - D*(y-b)^2 = 1.

    ``fast`` replaces the inner y loop by an exact integer square-root test.
    ``workers > 1`` splits the x range into stripes across processes.
    """
    make_instance(D)
    lam = Fraction(lam) if not isinstance(lam, Fraction) else lam
    if lam <= 0:
        raise InvalidLambda(f"lambda must be > 0, got {lam}")
    # |x| + |y| is an integer, so the exact test against lam is a test against floor(lam)
    R = math.floor(lam)
    if cap is None:
        cap = scan_cap()
    if R > cap:
        raise ScanTooLarge(f"floor(lambda) = {R} exceeds the scan cap {cap} (PELL_SCAN_CAP)")
    if R < 0:
        return OracleResult([], 0, 0)

    if workers and workers > 1:
        edges = [-R + (2 * R + 1) * k // workers for k in range(workers + 1)]
        jobs = [(fast, D, a, b, R, edges[k], edges[k + 1]) for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_stripe, jobs))
    else:
        parts = [_run_stripe((fast, D, a, b, R, -R, R + 1))]

    solutions = sorted(p for found, _ in parts for p in found)
    scanned = sum(n for _, n in parts)
    return OracleResult(solutions, len(solutions), scanned)
