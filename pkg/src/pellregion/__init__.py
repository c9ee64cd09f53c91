"""Exact counting and enumeration of Pell equation solutions in L1 balls."""

__version__ = "0.1.0"

from .analytic import (
    AnalyticContext,
    FloorG,
    f_real,
    floor_g_formula,
    g_real_arccosh,
    g_real_log,
    mu,
    sandwich,
    u_real,
    v_real,
)
from .core import (
    FundamentalSolution,
    PellInstance,
    Solution,
    SolutionTerm,
    expand_signs,
    fundamental_solution,
    make_instance,
    solution_stream,
    term,
    unit_power,
)
from .counting import CountReport, Method, RegionQuery, count_region, enumerate_region, floor_g_exact
from .errors import *  # noqa: F401,F403
from .oracle import OracleResult, brute_force
from .shifted import (
    BRANCHES,
    ShiftedInstance,
    SignedBranch,
    ThresholdK,
    count_shifted,
    enumerate_shifted,
    eventual_quadrant,
    intercept_max_l1,
    shifted_solution,
    threshold_K,
)
