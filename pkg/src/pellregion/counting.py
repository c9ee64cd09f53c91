"""Solutions of x^2 - D*y^2 = 1 inside the L1 ball |x| + |y| <= lambda."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .analytic import AnalyticContext, floor_g_formula
from .core import FundamentalSolution, PellInstance, Solution, fundamental_solution, signed_points, solution_stream
from .errors import InvalidLambda, LambdaTooSmall

__all__ = [
    "Method",
    "RegionQuery",
    "CountReport",
    "floor_g_exact",
    "count_region",
    "enumerate_region",
]


class Method(str, enum.Enum):
    EXACT = "exact_recurrence"
    FORMULA = "closed_form"
    BRUTE = "brute_force"

    @classmethod
    def parse(cls, name: "str | Method") -> "Method":
        if isinstance(name, Method):
            return name
        aliases = {"exact": cls.EXACT, "formula": cls.FORMULA, "brute": cls.BRUTE}
        if name in aliases:
            return aliases[name]
        return cls(name)


@dataclass(frozen=True)
class RegionQuery:
    """An exact, strictly positive L1 radius."""

    lam: Fraction

    def __post_init__(self):
        if not isinstance(self.lam, Fraction):
            object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam <= 0:
            raise InvalidLambda(f"lambda must be > 0, got {self.lam}")

    @classmethod
    def parse(cls, text: str) -> "RegionQuery":
        """Parse ``"5"``, ``"4.999999999999"``, ``"1e3"`` or ``"7/2"`` without touching floats."""
        try:
            lam = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidLambda(f"cannot parse lambda {text!r}") from exc
        return cls(lam)

    @property
    def floor(self) -> int:
        return math.floor(self.lam)


@dataclass(frozen=True)
class CountReport:
    method: Method
    count: int
    max_index: int
    corrections_applied: int = 0
    # Signed float-candidate corrections, one per branch, closed form only.
    corrections: tuple[int, ...] = ()
    # Per-branch floor(g) values for the shifted count, in SIGN_ORDER.
    branch_indices: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.branch_indices is None:
            if self.max_index == -1:
                assert self.count == 0, self
            else:
                assert self.count == 2 + 4 * self.max_index, self


def floor_g_exact(fund: FundamentalSolution, Lambda: int) -> int:
    """Largest n with u_n + v_n <= Lambda, by walking the recurrence."""
    if Lambda < 1:
        raise LambdaTooSmall(f"Lambda must be >= 1, got {Lambda}")
    last = 0
    for t in solution_stream(fund):
        if t.u + t.v > Lambda:
            return last
        last = t.n


def count_region(inst: PellInstance, q: RegionQuery, method: Method | str = Method.EXACT,
                 *, ctx: AnalyticContext | None = None) -> CountReport:
    method = Method.parse(method)
    if method is Method.BRUTE:
        from .oracle import brute_force

        res = brute_force(inst.D, 0, 0, q.lam)
        # every solution with |x|+|y| <= lambda is (+-u_n, +-v_n); recover n from the count
        n = (res.count - 2) // 4 if res.count else -1
        return CountReport(method, res.count, n)
    if q.lam < 1:
        return CountReport(method, 0, -1)
    fund = fundamental_solution(inst)
    if method is Method.EXACT:
        n = floor_g_exact(fund, q.floor)
        return CountReport(method, 2 + 4 * n, n)
    if ctx is None:
        ctx = AnalyticContext.from_fundamental(fund)
    fg = floor_g_formula(ctx, q.floor)
    return CountReport(method, 2 + 4 * fg.n, fg.n, int(fg.corrected), (fg.correction,))


def enumerate_region(inst: PellInstance, q: RegionQuery) -> list[Solution]:
    """All solutions in the region, ordered by n and then by sign pattern."""
    if q.lam < 1:
        return []
    fund = fundamental_solution(inst)
    Lambda = q.floor
    out: list[Solution] = []
    for t in solution_stream(fund):
        if t.u + t.v > Lambda:
            break
        out.extend(signed_points(t))
    return out
