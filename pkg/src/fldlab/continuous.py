"""Continuous-limit constants for the family P(1,d;n) as n grows.

Notation: r(x) is the scaled reversal count of the balanced ple at x, R(x) is
(d+1) r(x), q(x) = x^2 - r(x), and g(x) = (R - x) / (R - x^2). Every power is
taken through log1p/expm1 so that large d (where all points of interest crowd
near zero) keeps full relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .lp import LpModel, lp_solve

SCAN_POINTS = 1024
UPPER_GUARD = 1e-9


class DomainError(ValueError):
    pass


class BracketError(RuntimeError):
    pass


def _check_d(d: int) -> None:
    if int(d) != d or d < 2:
        raise DomainError(f"d must be an integer >= 2, got {d}")


def _one_minus_root(d: int, x):
    """1 - x**(1/d)."""
    return -np.expm1(np.log(x) / d)


def _pow_one_minus(x, p):
    """(1 - x)**p for 0 <= x <= 1."""
    with np.errstate(divide="ignore"):
        return np.exp(p * np.log1p(-x))


def _R(d: int, x):
    return x * (1.0 + d * _one_minus_root(d, x)) - _pow_one_minus(x, d + 1)


def _R_prime(d: int, x):
    return (d + 1) * (_one_minus_root(d, x) + _pow_one_minus(x, d))


def beta(d: int) -> float:
    """The fixed point of (1 - x)^d in (0, 1)."""
    _check_d(d)
    return brentq(lambda b: d * math.log1p(-b) - math.log(b), 1e-300, 0.5,
                  xtol=1e-300, rtol=1e-15, maxiter=500)


def r_cont(d: int, x: float) -> float:
    _check_d(d)
    if not 0 < x <= 1:
        raise DomainError(f"x={x} outside (0, 1]")
    return float(_R(d, x)) / (d + 1)


def r_xy(d: int, x: float, y: float) -> float:
    _check_d(d)
    if not (0 < x <= 1 and 0 <= y <= 1):
        raise DomainError(f"(x, y)=({x}, {y}) outside (0, 1] x [0, 1]")
    omr = float(_one_minus_root(d, x))
    if y < omr * (1 - 1e-12):
        raise DomainError(f"infeasible pair: y={y} < 1 - x^(1/d) = {omr}")
    return float(x * (1.0 + d * omr) - _pow_one_minus(y, d + 1)) / (d + 1)


def q_cont(d: int, x: float) -> float:
    return x * x - r_cont(d, x)


def g_fn(d: int, x: float) -> float:
    _check_d(d)
    b = beta(d)
    if not b * (1 - 1e-12) <= x < 1:
        raise DomainError(f"x={x} outside [beta, 1) = [{b}, 1)")
    R = float(_R(d, x))
    return (R - x) / (R - x * x)


def construction_cost(d: int, x: float) -> float:
    """Cost w1 x + w2 of the two-ple weighting on M(x) and the saturated ple."""
    R = float(_R(d, x))
    return 2.0 + (d - 1) * (x - x * x) / (R - x * x)


def bstsat_weights(d: int, x: float) -> tuple[float, float]:
    """Solve the R and Q rows for weights (w1, w2) on M(x) and the saturated ple."""
    R = float(_R(d, x))
    w1 = (d - 1) / (R - x * x)
    w2 = (d + 1) * (1.0 - w1 * R / (d + 1))
    return w1, w2


def _g_stationarity(d: int, x: float) -> float:
    # numerator of g'(x), sign-equivalent to g'
    R, Rp = _R(d, x), _R_prime(d, x)
    return float(Rp * x * (1 - x) - R * (1 - 2 * x) - x * x)


def _delta_equation(d: int, x: float) -> float:
    # stationarity of r(x)/x, in logarithmic form
    return d * math.log1p(-x) + math.log1p(d * x) - (1 + 1 / d) * math.log(x)


def _scan(lo: float, hi: float) -> np.ndarray:
    return np.exp(np.linspace(math.log(lo), math.log(hi), SCAN_POINTS))


def _unique_peak(values: np.ndarray, what: str) -> int:
    i = int(np.argmax(values))
    diffs = np.sign(np.diff(values))
    diffs = diffs[diffs != 0]
    if np.count_nonzero(np.diff(diffs) < 0) > 1:
        raise BracketError(f"{what} has more than one peak on the scan")
    return i


def _root(f, lo: float, hi: float, what: str, tol: float) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change for {what} on [{lo}, {hi}]")
    return brentq(f, lo, hi, xtol=1e-300, rtol=max(tol, 1e-15), maxiter=500)


def _peak_on(d: int, lo: float, hi: float, tol: float) -> float:
    """argmax of g on [lo, hi]; an endpoint when g is monotone there."""
    grid = _scan(lo, hi)
    R = _R(d, grid)
    i = _unique_peak((R - grid) / (R - grid * grid), "g")
    if i == len(grid) - 1 and _g_stationarity(d, hi) >= 0:
        return hi
    if i == 0 and _g_stationarity(d, lo) <= 0:
        return lo
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    return _root(lambda x: _g_stationarity(d, x), a, b, "g'", tol)


@dataclass(frozen=True)
class ContinuousProfile:
    d: int
    beta: float
    delta: float
    x_bst: float
    x_bal: float
    c_bal: float
    c_bst: float
    fld: float
    regime: Literal["Bal", "Bst"]
    x_peak: float = field(default=float("nan"), compare=False)
    bst_interior: bool = field(default=True, compare=False)

    def as_row(self) -> dict:
        return {k: getattr(self, k) for k in CSV_FIELDS}


CSV_FIELDS = ("d", "beta", "delta", "x_bst", "x_bal", "c_bal", "c_bst", "fld", "regime")


def solve_profile(d: int, tol: float = 1e-13) -> ContinuousProfile:
    """All constants for one d.

    x_bst maximizes g over [beta, x_bal]. On that range the weights on
    M(x_bst) and the saturated ple are nonnegative; beyond x_bal the saturated
    weight turns negative, so the unconstrained peak of g (kept as ``x_peak``)
    does not give a weighting. When the peak lies past x_bal the optimum sits
    at x_bal and c_bst equals c_bal.
    """
    _check_d(d)
    if not tol > 0:
        raise ValueError("tol must be positive")
    b = beta(d)
    hi = 1.0 - UPPER_GUARD
    x_bal = _root(lambda x: float(_R(d, x)) / (d + 1) - 0.5 * x * x, b, hi, "r - x^2/2", tol)
    c_bal = 2.0 / x_bal
    x_peak = _peak_on(d, b, hi, tol)
    interior = x_peak < x_bal
    if interior:
        x_bst = x_peak
        # independent check: golden-section on the construction cost
        res = minimize_scalar(lambda x: construction_cost(d, x),
                              bounds=(b, x_bal), method="bounded",
                              options={"xatol": max(1e-12, 1e-9 * x_bst)})
        if abs(res.x - x_bst) > 1e-6 * max(1.0, x_bst) and construction_cost(d, res.x) < construction_cost(d, x_bst) - 1e-12:
            raise BracketError(f"cost minimum {res.x} disagrees with the g peak {x_bst}")
        c_bst = construction_cost(d, x_bst)
    else:
        x_bst, c_bst = x_bal, c_bal
    delta = _root(lambda x: _delta_equation(d, x), b, hi, "delta equation", tol)
    fld = min(c_bal, c_bst)
    regime = "Bal" if c_bal <= c_bst else "Bst"
    return ContinuousProfile(d, b, delta, x_bst, x_bal, c_bal, c_bst, fld, regime, x_peak, interior)


def continuous_reduced_lp(d: int, profile: ContinuousProfile | None = None) -> float:
    """Exact optimum of the three-column LP on M_bst, M_bal and M_sat.

    The coefficients are binary64 values taken as exact rationals.
    """
    p = profile or solve_profile(d)
    F = Fraction
    cols = []
    for x in (p.x_bst, p.x_bal):
        r = r_cont(d, x)
        cols.append((F(x), F(r), F(x * x - r)))
    cols.append((F(1), F(1, d + 1), F(d, d + 1)))
    model = LpModel(4, [0, 0, 0, 1])
    model.add_row({0: cols[0][0], 1: cols[1][0], 2: cols[2][0], 3: -1}, "<=", 0)
    model.add_row({j: c[1] for j, c in enumerate(cols)}, ">=", 1)
    model.add_row({j: c[2] for j, c in enumerate(cols)}, ">=", 1)
    sol = lp_solve(model, "rational")
    if sol.status != "optimal":
        raise RuntimeError(f"terminal LP reported {sol.status}")
    return float(sol.value)


@dataclass
class ConstructionReport:
    d: int
    option: str
    passed: bool
    quantities: dict[str, float]
    failures: list[str]


COVERAGE_TOL = 1e-9
WEIGHT_MARGIN = 1e-12


def check_construction(d: int, option: Literal["Bal", "BstSat"], profile: ContinuousProfile | None = None) -> ConstructionReport:
    """Evaluate one of the two upper-bound weightings and test every coverage
    quantity and the comparable-pair inequality."""
    p = profile or solve_profile(d)
    q: dict[str, float] = {}
    fails: list[str] = []

    def need(name: str, ok: bool, detail: str) -> None:
        if not ok:
            fails.append(f"{name}: {detail}")

    if option == "Bal":
        x0 = p.x_bal
        r0 = r_cont(d, x0)
        w0 = 2.0 / (x0 * x0)
        omr = float(_one_minus_root(d, x0))
        q.update(x0=x0, r0=r0, w0=w0, c0=w0 * x0, max_max=w0 * x0 * x0 / 2, min_min=w0 * x0 * x0 / 2,
                 min_above_max=w0 * r0, min_below_max=w0 * (x0 * x0 - r0),
                 comparable=w0 * x0 * (x0 - omr), comparable_rhs=x0 * omr)
        need("balance", abs(r0 - x0 * x0 / 2) <= 1e-10 * r0, f"r0={r0} vs x0^2/2={x0 * x0 / 2}")
        need("comparable", r0 >= x0 * omr, f"r0={r0} < x0(1-x0^(1/d))={x0 * omr}")
    elif option == "BstSat":
        x1 = p.x_bst
        r1 = r_cont(d, x1)
        w1, w2 = bstsat_weights(d, x1)
        omr = float(_one_minus_root(d, x1))
        q.update(x1=x1, r1=r1, w1=w1, w2=w2, c0=w1 * x1 + w2,
                 max_max=w1 * x1 * x1 / 2 + w2 / 2, min_min=w1 * x1 * x1 / 2 + w2 / 2,
                 min_above_max=w1 * r1 + w2 / (d + 1), min_below_max=w1 * (x1 * x1 - r1) + w2 * d / (d + 1),
                 comparable=w1 * x1 * (x1 - omr) + w2)
        need("w1 > 0", w1 > WEIGHT_MARGIN, f"w1={w1}")
        need("w2 > 0", w2 > WEIGHT_MARGIN, f"w2={w2}")
    else:
        raise ValueError(f"unknown option {option!r}")
    for key in ("max_max", "min_min", "min_above_max", "min_below_max"):
        need(key, q[key] >= 1 - COVERAGE_TOL, f"coverage {q[key]} < 1")
    need("comparable coverage", q["comparable"] >= 1 - COVERAGE_TOL, f"{q['comparable']} < 1")
    return ConstructionReport(d, option, not fails, q, fails)


def asymptotic_ratio(d: int, profile: ContinuousProfile | None = None) -> float:
    """fld(d) (log d - log log d) / d."""
    if int(d) != d or d < 4:
        raise DomainError("the asymptotic ratio needs d >= 4")
    p = profile or solve_profile(d)
    return p.fld * (math.log(d) - math.log(math.log(d))) / d
