"""Pell equation x^2 - D*y^2 = 1: instances, fundamental solutions and the
integer sequences (u_n, v_n) generated by powers of the fundamental unit.

Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import count, islice
from math import isqrt
from typing import Iterator, NamedTuple

from .errors import DIsOne, NonPositive, PerfectSquare

__all__ = [
    "PellInstance",
    "FundamentalSolution",
    "SolutionTerm",
    "Solution",
    "make_instance",
    "sqrt_continued_fraction",
    "fundamental_solution",
    "term",
    "unit_power",
    "solution_stream",
    "expand_signs",
    "signed_points",
    "first_terms",
    "is_square",
]

SIGN_ORDER = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class PellInstance:
    D: int

    def __post_init__(self):
        D = self.D
        if D <= 0:
            raise NonPositive(f"D must be positive, got {D}")
        if D == 1:
            raise DIsOne("D = 1 gives only the trivial solutions (+-1, 0)")
        if is_square(D):
            raise PerfectSquare(f"D = {D} is a perfect square ({isqrt(D)}^2)")


@dataclass(frozen=True)
class FundamentalSolution:
    D: int
    alpha: int
    beta: int

    @property
    def unit(self) -> float:
        """Decimal approximation of alpha + beta*sqrt(D)."""
        return self.alpha + self.beta * self.D ** 0.5

    def is_solution(self) -> bool:
        return self.alpha * self.alpha - self.D * self.beta * self.beta == 1


class SolutionTerm(NamedTuple):
    n: int
    u: int
    v: int


class Solution(NamedTuple):
    x: int
    y: int


def make_instance(D: int) -> PellInstance:
    if isinstance(D, bool) or not isinstance(D, int):
        raise TypeError(f"D must be an int, got {type(D).__name__}")
    return PellInstance(D)


def sqrt_continued_fraction(D: int) -> tuple[int, list[int]]:
    """Return ``(a0, period)`` for the continued fraction of sqrt(D).

    >>> sqrt_continued_fraction(7)
    (2, [1, 1, 1, 4])
    """
    a0 = isqrt(D)
    if a0 * a0 == D:
        raise PerfectSquare(f"D = {D} is a perfect square")
    period = []
    m, d, a = 0, 1, a0
    while a != 2 * a0:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return a0, period


@lru_cache(maxsize=None)
def fundamental_solution(inst: PellInstance) -> FundamentalSolution:
    """Minimal positive solution of x^2 - D*y^2 = 1 from the convergents of sqrt(D).

    The convergent p/q just before the end of the first period solves
    p^2 - D*q^2 = (-1)^r for period length r; an odd period is squared.
    """
    D = inst.D
    a0, period = sqrt_continued_fraction(D)
    r = len(period)
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    for a in period[:-1]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    if r % 2:
        p, q = p * p + D * q * q, 2 * p * q
    return FundamentalSolution(D, p, q)


def _step(fund: FundamentalSolution, u: int, v: int) -> tuple[int, int]:
    a, b, D = fund.alpha, fund.beta, fund.D
    return a * u + D * b * v, b * u + a * v


def term(fund: FundamentalSolution, n: int) -> SolutionTerm:
    """(u_n, v_n) by walking the recurrence n times from (1, 0)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    u, v = 1, 0
    for _ in range(n):
        u, v = _step(fund, u, v)
    return SolutionTerm(n, u, v)


def unit_power(fund: FundamentalSolution, n: int) -> SolutionTerm:
    """(u_n, v_n) as coefficients of (alpha + beta*sqrt(D))^n, by repeated squaring."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    D = fund.D
    ru, rv = 1, 0
    bu, bv = fund.alpha, fund.beta
    k = n
    while k:
        if k & 1:
            ru, rv = ru * bu + D * rv * bv, ru * bv + rv * bu
        bu, bv = bu * bu + D * bv * bv, 2 * bu * bv
        k >>= 1
    return SolutionTerm(n, ru, rv)


def solution_stream(fund: FundamentalSolution) -> Iterator[SolutionTerm]:
    """Yield (u_n, v_n) for n = 0, 1, 2, ... forever."""
    u, v = 1, 0
    for n in count():
        yield SolutionTerm(n, u, v)
        u, v = _step(fund, u, v)


def first_terms(fund: FundamentalSolution, k: int) -> list[SolutionTerm]:
    return list(islice(solution_stream(fund), k))


def signed_points(t: SolutionTerm) -> list[Solution]:
    """The sign orbit of ``t`` in (+,+), (+,-), (-,+), (-,-) order, duplicates dropped."""
    out = []
    for i, j in SIGN_ORDER:
        p = Solution(i * t.u, j * t.v)
        if p not in out:
            out.append(p)
    return out


def expand_signs(t: SolutionTerm) -> set[Solution]:
    return set(signed_points(t))
