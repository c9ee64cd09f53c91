"""Real-valued u, v, f = u + v and its inverse g, with the floor-log shortcut.

The default backend is IEEE double (``math``).  Passing ``precision`` (bits of
significand) to :meth:`AnalyticContext.from_fundamental` switches every
function to an mpmath context of that precision.

``floor_g_formula`` is the only function here whose result is exact: the
floating-point floor is used as a candidate and then corrected against the
integer sequence u_n + v_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Any, NamedTuple, Optional

from mpmath.ctx_mp import MPContext

from .core import FundamentalSolution, unit_power
from .errors import DomainError, NegativeArgument, PrecisionFailure

__all__ = [
    "AnalyticContext",
    "FloorG",
    "u_real",
    "v_real",
    "f_real",
    "g_real_arccosh",
    "g_real_log",
    "floor_g_formula",
    "mu",
    "sandwich",
    "exact_floor",
]

# Beyond this, D*x^2 is no longer safe in a double and g switches to log space.
_DIRECT_LIMIT = 1e150
# Rounding noise allowed when folding mu back into [0, 1).
_MU_SLACK = 1e-9


@dataclass(frozen=True)
class AnalyticContext:
    D: int
    alpha: int
    beta: int
    unit_log: Any
    C: Any
    precision: Optional[int] = None
    mp: Optional[MPContext] = field(default=None, repr=False, compare=False)

    @classmethod
    def from_fundamental(cls, fund: FundamentalSolution, precision: int | None = None):
        D, a, b = fund.D, fund.alpha, fund.beta
        if precision is None:
            rd = math.sqrt(D)
            # unit = 2*alpha - 1/unit; past 2**500 the second term is invisible and
            # alpha alone may not fit in a double
            unit_log = math.log(a + b * rd) if a < 2**500 else math.log(2 * a)
            C = math.log(2 * rd / (1 + rd))
            return cls(D, a, b, unit_log, C)
        if precision < 53:
            raise ValueError("precision must be at least 53 bits")
        mp = MPContext()
        mp.prec = precision
        rd = mp.sqrt(D)
        unit_log = mp.log(a + b * rd)
        C = mp.log(2 * rd / (1 + rd))
        return cls(D, a, b, unit_log, C, precision, mp)

    @property
    def fundamental(self) -> FundamentalSolution:
        return FundamentalSolution(self.D, self.alpha, self.beta)

    @property
    def extended(self) -> bool:
        return self.mp is not None

    def real(self, x):
        """Convert an int, Fraction, Decimal, str or float into the backend's real type."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.mp is None:
            return float(x)
        mp = self.mp
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / x.denominator
        if isinstance(x, Decimal):
            return mp.mpf(str(x))
        return mp.mpf(x)


class FloorG(NamedTuple):
    """Exact floor of g with the floating-point candidate it was derived from."""

    n: int
    candidate: int
    correction: int

    @property
    def corrected(self) -> bool:
        return self.correction != 0


def exact_floor(x) -> int:
    """Floor of an int, Fraction, Decimal, float, numeric string or mpf, without rounding."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return math.floor(Fraction(x))
    if isinstance(x, (Fraction, Decimal, float)):
        return math.floor(x)
    # mpf and friends
    return int(x.__floor__()) if hasattr(x, "__floor__") else math.floor(Fraction(str(x)))


def _log(x) -> float:
    """Natural log of a positive int/Fraction/float that may exceed the double range."""
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    if isinstance(x, str):
        return _log(Fraction(x))
    return math.log(x)


def _check_nonneg(x):
    if x < 0:
        raise NegativeArgument(f"argument must be >= 0, got {x}")


def _coerce(x):
    return Fraction(x) if isinstance(x, str) else x


def _check_domain(x):
    if x < 1:
        raise DomainError(f"g is defined for x >= 1, got {x}")


def u_real(ctx: AnalyticContext, x) -> Any:
    """cosh(x * log(alpha + beta*sqrt(D)))."""
    x = ctx.real(x)
    _check_nonneg(x)
    if ctx.mp is not None:
        return ctx.mp.cosh(ctx.unit_log * x)
    return math.cosh(ctx.unit_log * x)


def v_real(ctx: AnalyticContext, x) -> Any:
    x = ctx.real(x)
    _check_nonneg(x)
    if ctx.mp is not None:
        mp = ctx.mp
        return mp.sinh(ctx.unit_log * x) / mp.sqrt(ctx.D)
    return math.sinh(ctx.unit_log * x) / math.sqrt(ctx.D)


def f_real(ctx: AnalyticContext, x) -> Any:
    return u_real(ctx, x) + v_real(ctx, x)


def g_real_arccosh(ctx: AnalyticContext, x) -> Any:
    """Inverse of ``f_real`` through arccosh.

    The arccosh argument (D*x - sqrt(D*x^2 - D + 1)) / (D - 1) is evaluated
    in the equivalent form (D*x^2 + 1) / (D*x + sqrt(D*x^2 - D + 1)), which
    has no subtraction of nearly equal terms.
    """
    x = _coerce(x)
    _check_domain(x)
    D = ctx.D
    if ctx.mp is not None:
        mp = ctx.mp
        X = ctx.real(x)
        s = mp.sqrt(D * X * X - D + 1)
        A = (D * X * X + 1) / (D * X + s)
        return mp.acosh(max(A, mp.mpf(1))) / ctx.unit_log

    if x <= _DIRECT_LIMIT:
        X = float(x)
        s = math.sqrt(D * X * X - D + 1)
        A = (D * X * X + 1) / (D * X + s)
        return math.acosh(max(A, 1.0)) / ctx.unit_log

    lx = _log(x)
    inv_x2 = math.exp(-2 * lx)
    ratio = (D + inv_x2) / (D + math.sqrt(D - (D - 1) * inv_x2))
    log_a = lx + math.log(ratio)
    inv_a2 = math.exp(-2 * log_a)
    return (log_a + math.log1p(math.sqrt(1 - inv_a2))) / ctx.unit_log


def g_real_log(ctx: AnalyticContext, x) -> Any:
    """Inverse of ``f_real`` via the explicit logarithm expression, evaluated term by term."""
    x = _coerce(x)
    _check_domain(x)
    D = ctx.D
    if ctx.mp is not None:
        mp = ctx.mp
        X = ctx.real(x)
        r = mp.sqrt(D * X * X - D + 1)
        inner = max((D + 1) * X * X - D + 1 - 2 * X * r, mp.mpf(0))
        num = mp.log(D * X - r + mp.sqrt(D) * mp.sqrt(inner)) - mp.log(D - 1)
        return num / ctx.unit_log

    X = float(x)
    r = math.sqrt(D * X * X - D + 1)
    inner = max((D + 1) * X * X - D + 1 - 2 * X * r, 0.0)
    if not math.isfinite(inner):
        raise OverflowError("x too large for the double-precision log form; use extended precision")
    num = math.log(D * X - r + math.sqrt(D) * math.sqrt(inner)) - math.log(D - 1)
    return num / ctx.unit_log


def _f_int(fund: FundamentalSolution, n: int) -> int:
    t = unit_power(fund, n)
    return t.u + t.v


def floor_g_formula(ctx: AnalyticContext, x) -> FloorG:
    """floor(g(x)) from floor((log(floor(x)) + C) / log(unit)), corrected exactly.

    The returned ``n`` always satisfies f(n) <= floor(x) < f(n + 1) in
    integers.  ``correction`` is ``n - candidate``; anything outside
    {-1, 0, 1} means the floating-point evaluation is broken and raises
    :class:`PrecisionFailure`.
    """
    x = _coerce(x)
    _check_domain(x)
    fx = exact_floor(x)
    if ctx.mp is not None:
        mp = ctx.mp
        candidate = int(mp.floor((mp.log(fx) + ctx.C) / ctx.unit_log))
    else:
        candidate = math.floor((_log(fx) + ctx.C) / ctx.unit_log)
    candidate = max(candidate, 0)

    fund = ctx.fundamental
    n = candidate
    while n > 0 and _f_int(fund, n) > fx:
        n -= 1
    while _f_int(fund, n + 1) <= fx:
        n += 1
    correction = n - candidate
    if abs(correction) > 1:
        raise PrecisionFailure(
            f"floor-log candidate {candidate} is {correction:+d} away from the exact floor {n} at x={x}"
        )
    return FloorG(n, candidate, correction)


def mu(ctx: AnalyticContext, x) -> Any:
    """Fractional residual g(x) - floor(g(x)).

    Rounding in g can push the raw difference a hair outside [0, 1) at the
    zeros f(n) and just below them; such values are folded back in.
    """
    g = g_real_arccosh(ctx, x)
    n = floor_g_formula(ctx, x).n
    val = g - n
    if val < 0:
        if val < -_MU_SLACK:
            raise PrecisionFailure(f"g(x) = {g} fell below the exact floor {n}")
        return val * 0
    if val >= 1:
        if val - 1 > _MU_SLACK:
            raise PrecisionFailure(f"g(x) = {g} exceeds the exact floor {n} by more than 1")
        if ctx.mp is not None:
            return 1 - ctx.mp.ldexp(1, -ctx.precision)
        return math.nextafter(1.0, 0.0)
    return val


def sandwich(fund: FundamentalSolution, n: int, precision: int | None = None):
    """Return ``(lower, unit**n, upper)`` with lower = k*(f(n) - 1), upper = k*f(n),
    k = 2*sqrt(D)/(1 + sqrt(D)), evaluated in mpmath.

    The gap on the upper side shrinks like unit**(-n), so the default
    precision scales with the size of f(n).
    """
    t = unit_power(fund, n)
    fn = t.u + t.v
    if precision is None:
        precision = 2 * fn.bit_length() + 128
    mp = MPContext()
    mp.prec = precision
    rd = mp.sqrt(fund.D)
    k = 2 * rd / (1 + rd)
    power = (fund.alpha + fund.beta * rd) ** n
    return k * (fn - 1), power, k * fn
