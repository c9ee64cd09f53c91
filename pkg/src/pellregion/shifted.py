"""Shifted Pell equation (x-a)^2 - D*(y-b)^2 = 1 in the L1 ball.

The solution set is F_D translated by (a, b).  For radii at or above the
threshold K = |a| + max(|b| + 1, sqrt(1 + D*b^2)) the count has a closed
form in terms of floor(g); below K only direct enumeration is offered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import NamedTuple

from .analytic import AnalyticContext, floor_g_formula
from .core import SIGN_ORDER, PellInstance, Solution, fundamental_solution, solution_stream, term
from .counting import CountReport, Method, RegionQuery, floor_g_exact
from .errors import BelowThreshold, ZeroA

__all__ = [
    "ShiftedInstance",
    "SignedBranch",
    "branch",
    "BRANCHES",
    "ThresholdK",
    "shifted_solution",
    "threshold_K",
    "count_shifted",
    "enumerate_shifted",
    "eventual_quadrant",
    "intercept_norms",
    "intercept_max_l1",
]


@dataclass(frozen=True)
class ShiftedInstance:
    base: PellInstance
    a: int
    b: int

    @property
    def D(self) -> int:
        return self.base.D


class SignedBranch(NamedTuple):
    i: int
    j: int


def branch(i: int, j: int) -> SignedBranch:
    if i not in (1, -1) or j not in (1, -1):
        raise ValueError(f"branch signs must be +-1, got ({i}, {j})")
    return SignedBranch(i, j)


BRANCHES = tuple(SignedBranch(i, j) for i, j in SIGN_ORDER)

# Quadrant a branch eventually occupies: the signs of (i*u_n + a, j*v_n + b)
# become (i, j) once u_n and v_n dominate the shift.
_QUADRANT = {(1, 1): 1, (-1, 1): 2, (-1, -1): 3, (1, -1): 4}


@dataclass(frozen=True)
class ThresholdK:
    """K = abs_a + max(b_plus_one, sqrt(radicand)), kept exact."""

    abs_a: int
    b_plus_one: int
    radicand: int

    @property
    def root_dominates(self) -> bool:
        return self.b_plus_one ** 2 < self.radicand

    @property
    def exact(self) -> Fraction | None:
        """K as a rational, or None when it is irrational."""
        if not self.root_dominates:
            return Fraction(self.abs_a + self.b_plus_one)
        r = isqrt(self.radicand)
        if r * r == self.radicand:
            return Fraction(self.abs_a + r)
        return None

    @property
    def approx(self) -> float:
        return self.abs_a + max(self.b_plus_one, math.sqrt(self.radicand))

    @property
    def ceil(self) -> int:
        if not self.root_dominates:
            return self.abs_a + self.b_plus_one
        r = isqrt(self.radicand)
        return self.abs_a + (r if r * r == self.radicand else r + 1)

    def lambda_at_least(self, lam) -> bool:
        lam = Fraction(lam)
        rest = lam - self.abs_a
        return rest >= self.b_plus_one and rest >= 0 and rest * rest >= self.radicand

    def __str__(self) -> str:
        k = self.exact
        if k is not None:
            return str(k)
        return f"{self.abs_a} + sqrt({self.radicand})" if self.abs_a else f"sqrt({self.radicand})"


def shifted_solution(s: ShiftedInstance, br: SignedBranch, n: int) -> Solution:
    t = term(fundamental_solution(s.base), n)
    return Solution(br.i * t.u + s.a, br.j * t.v + s.b)


def threshold_K(s: ShiftedInstance) -> ThresholdK:
    return ThresholdK(abs(s.a), abs(s.b) + 1, 1 + s.D * s.b * s.b)


def count_shifted(s: ShiftedInstance, q: RegionQuery, method: Method | str = Method.EXACT,
                  *, ctx: AnalyticContext | None = None) -> CountReport:
    """2 + sum over branches of floor(g(floor(lambda) - i*a - j*b)), valid for lambda >= K."""
    method = Method.parse(method)
    if method is Method.BRUTE:
        from .oracle import brute_force

        res = brute_force(s.D, s.a, s.b, q.lam)
        # the oracle has no notion of branch indices
        return CountReport(method, res.count, -1, branch_indices=())

    K = threshold_K(s)
    if not K.lambda_at_least(q.lam):
        raise BelowThreshold(f"lambda = {q.lam} is below K = {K} (~{K.approx:.6g})", K)
    fund = fundamental_solution(s.base)
    if method is Method.FORMULA and ctx is None:
        ctx = AnalyticContext.from_fundamental(fund)
    Lambda = q.floor
    indices, corrections = [], []
    for i, j in BRANCHES:
        arg = Lambda - i * s.a - j * s.b
        if method is Method.EXACT:
            indices.append(floor_g_exact(fund, arg))
        else:
            fg = floor_g_formula(ctx, arg)
            indices.append(fg.n)
            corrections.append(fg.correction)
    return CountReport(
        method,
        2 + sum(indices),
        max(indices),
        sum(1 for c in corrections if c),
        tuple(corrections),
        tuple(indices),
    )


def enumerate_shifted(s: ShiftedInstance, q: RegionQuery) -> list[Solution]:
    """All solutions of the shifted equation in the region, for any lambda > 0.

    A branch stops once u_n + v_n - |a| - |b| > lambda; by the triangle
    inequality no later term can return to the region.
    """
    fund = fundamental_solution(s.base)
    lam, a, b = q.lam, s.a, s.b
    slack = abs(a) + abs(b)
    out: list[Solution] = []
    seen: set[Solution] = set()
    for t in solution_stream(fund):
        if t.u + t.v - slack > lam:
            break
        for i, j in BRANCHES:
            p = Solution(i * t.u + a, j * t.v + b)
            if abs(p.x) + abs(p.y) <= lam and p not in seen:
                seen.add(p)
                out.append(p)
    return out


def eventual_quadrant(s: ShiftedInstance, br: SignedBranch) -> tuple[int, int]:
    """(k, n*) with the branch inside closed quadrant H_k for every n >= n*.

    Membership means i*x >= 0 and j*y >= 0, i.e. u_n >= -i*a and
    v_n >= -j*b; both sequences increase, so the first n meeting both is n*.
    """
    k = _QUADRANT[(br.i, br.j)]
    for t in solution_stream(fundamental_solution(s.base)):
        if t.u >= -br.i * s.a and t.v >= -br.j * s.b:
            return k, t.n


def intercept_norms(s: ShiftedInstance) -> list[float]:
    """L1 norms of the axis intercepts of the real curve (y-intercepts only when a != 0)."""
    D, a, b = s.D, s.a, s.b
    rx = math.sqrt(1 + D * b * b)
    norms = [abs(a + rx), abs(a - rx)]
    if a != 0:
        ry = math.sqrt((a * a - 1) / D)
        norms += [abs(b + ry), abs(b - ry)]
    return norms


def intercept_max_l1(s: ShiftedInstance) -> float:
    """|a| + sqrt(1 + D*b^2), the largest L1 norm among the axis intercepts."""
    if s.a == 0:
        raise ZeroA("the intercept bound needs a != 0")
    return abs(s.a) + math.sqrt(1 + s.D * s.b * s.b)
