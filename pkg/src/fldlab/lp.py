"""Linear programs in inequality form, solved exactly over the rationals or
in binary64.

Rational mode is a two-phase revised simplex. Rows are scaled to integer
coefficients and the basis inverse is kept fraction-free, so every step runs
on Python integers; results come back as ``fractions.Fraction``. Entering columns follow Dantzig's rule until a run
of degenerate pivots appears, after which Bland's rule takes over for the rest
of the solve, which rules out cycling. Float mode hands the same model to
HiGHS through :func:`scipy.optimize.linprog`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Literal, Mapping

import numpy as np

log = logging.getLogger(__name__)

Sense = Literal[">=", "<=", "="]
SENSES = (">=", "<=", "=")
INT64_SAFE = 1 << 62
DEGENERATE_RUN = 50


class LpModelError(ValueError):
    pass


@dataclass
class Row:
    coeffs: dict[int, object]
    sense: Sense
    rhs: object


@dataclass
class LpModel:
    """Minimize ``objective . x`` subject to ``rows`` with ``0 <= x_j <= upper[j]``."""

    ncols: int
    objective: list = field(default_factory=list)
    rows: list[Row] = field(default_factory=list)
    upper: dict[int, object] = field(default_factory=dict)

    def __post_init__(self):
        if not self.objective:
            self.objective = [0] * self.ncols

    def add_row(self, coeffs: Mapping[int, object], sense: Sense, rhs) -> int:
        row = Row(dict(coeffs), sense, rhs)
        self._check_row(row)
        self.rows.append(row)
        return len(self.rows) - 1

    def _check_row(self, row: Row) -> None:
        if row.sense not in SENSES:
            raise LpModelError(f"bad sense {row.sense!r}")
        for j in row.coeffs:
            if not 0 <= j < self.ncols:
                raise LpModelError(f"column {j} out of range for {self.ncols} columns")

    def validate(self) -> None:
        if len(self.objective) != self.ncols:
            raise LpModelError("objective length differs from column count")
        for row in self.rows:
            self._check_row(row)
        for j, u in self.upper.items():
            if not 0 <= j < self.ncols:
                raise LpModelError(f"upper bound on missing column {j}")
            if u < 0:
                raise LpModelError(f"negative upper bound on column {j}")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols


@dataclass
class LpSolution:
    status: Literal["optimal", "infeasible", "unbounded"]
    value: object = None
    assignment: list | None = None
    duals: list | None = None
    bound_duals: dict[int, object] = field(default_factory=dict)
    iterations: int = 0


def lp_solve(model: LpModel, arithmetic: Literal["rational", "float"] = "rational") -> LpSolution:
    """Solve ``model``. The arithmetic mode is always explicit in the call path."""
    model.validate()
    if arithmetic == "rational":
        return _solve_rational(model)
    if arithmetic == "float":
        return _solve_float(model)
    raise ValueError(f"unknown arithmetic mode {arithmetic!r}")


# ------------------------------------------------------------------ rational

def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, (float, np.floating)):
        return Fraction(float(x))
    raise LpModelError(f"cannot convert {x!r} to an exact rational")


class _Simplex:
    """Revised simplex over integer columns.

    The basis inverse is held fraction-free as ``adj / den`` with an integer
    matrix ``adj`` and a positive integer ``den``; pivots update it with exact
    integer division (the Edmonds/Bareiss identity).
    """

    def __init__(self, m: int, columns: list[list[tuple[int, int]]], rhs: list[int], basis: list[int]):
        self.m = m
        self.columns = columns
        self.basis = basis
        self.adj = [[int(i == k) for k in range(m)] for i in range(m)]
        self.den = 1
        self.xbi = list(rhs)
        self.iterations = 0
        self.bland = False
        self._matrix = None

    @property
    def xb(self) -> list[Fraction]:
        return [Fraction(v, self.den) for v in self.xbi]

    def _csc(self):
        if self._matrix is None:
            from scipy.sparse import csc_matrix
            data, rows, ptr = [], [], [0]
            for col in self.columns:
                for i, a in col:
                    rows.append(i)
                    data.append(a)
                ptr.append(len(rows))
            self._colsum = max((sum(abs(a) for _, a in col) for col in self.columns), default=0)
            fits = all(abs(a) < INT64_SAFE for a in data)
            self._matrix = csc_matrix((np.array(data, dtype=np.int64), np.array(rows, dtype=np.intp),
                                       np.array(ptr, dtype=np.intp)),
                                      shape=(self.m, len(self.columns))) if fits else False
        return self._matrix

    def duals_int(self, cost: list[int]) -> list[int]:
        """Numerators of the simplex multipliers over ``den``."""
        y = [0] * self.m
        for k, var in enumerate(self.basis):
            ck = cost[var]
            if ck:
                for i, v in enumerate(self.adj[k]):
                    if v:
                        y[i] += ck * v
        return y

    def duals(self, cost: list[int]) -> list[Fraction]:
        return [Fraction(v, self.den) for v in self.duals_int(cost)]

    def reduced_costs(self, cost: list[int]) -> list[int]:
        """Reduced costs times ``den`` (same signs as the true values)."""
        yint = self.duals_int(cost)
        den = self.den
        mat = self._csc()
        ymax = max((abs(v) for v in yint), default=0)
        cmax = max((abs(c) for c in cost), default=0)
        if mat is not False and ymax * max(self._colsum, 1) < INT64_SAFE and cmax * den < INT64_SAFE:
            dots = mat.T @ np.array(yint, dtype=np.int64)
            return (np.array(cost, dtype=np.int64) * den - dots).tolist()
        return [c * den - sum(yint[i] * a for i, a in col) for c, col in zip(cost, self.columns)]

    def run(self, cost: list[int], banned: set[int], max_iter: int = 200_000) -> str:
        degenerate = 0
        while True:
            if self.iterations >= max_iter:
                raise RuntimeError("simplex iteration limit reached")
            red = self.reduced_costs(cost)
            in_basis = set(self.basis)
            entering = None
            best = 0
            for j, dj in enumerate(red):
                if dj < 0 and j not in in_basis and j not in banned:
                    if self.bland:
                        entering = j
                        break
                    if dj < best:
                        best, entering = dj, j
            if entering is None:
                return "optimal"
            alpha = self.column_in_basis(entering)
            leave = None
            for r in range(self.m):
                if alpha[r] > 0:
                    if leave is None:
                        leave = r
                        continue
                    # compare xb[r]/alpha[r] with the incumbent ratio
                    lhs = self.xbi[r] * alpha[leave]
                    rhs = self.xbi[leave] * alpha[r]
                    if lhs < rhs or (lhs == rhs and self.basis[r] < self.basis[leave]):
                        leave = r
            if leave is None:
                return "unbounded"
            if self.xbi[leave] == 0:
                degenerate += 1
                if degenerate > DEGENERATE_RUN and not self.bland:
                    log.debug("switching to Bland's rule after %d degenerate pivots", degenerate)
                    self.bland = True
            else:
                degenerate = 0
            self.pivot(leave, entering, alpha)

    def column_in_basis(self, j: int) -> list[int]:
        """Numerators of B^-1 A_j over ``den``."""
        col = self.columns[j]
        return [sum(row[i] * a for i, a in col) for row in self.adj]

    def pivot(self, r: int, j: int, alpha: list[int]) -> None:
        p = alpha[r]
        den = self.den
        sign = 1 if p > 0 else -1
        prow = self.adj[r]
        xr = self.xbi[r]
        for i in range(self.m):
            if i == r:
                continue
            ai = alpha[i]
            row = self.adj[i]
            if ai:
                self.adj[i] = [sign * ((p * a - ai * b) // den) for a, b in zip(row, prow)]
                self.xbi[i] = sign * ((p * self.xbi[i] - ai * xr) // den)
            elif p != den:
                self.adj[i] = [sign * (p * a // den) for a in row]
                self.xbi[i] = sign * (p * self.xbi[i] // den)
        if sign < 0:
            self.adj[r] = [-b for b in prow]
            self.xbi[r] = -xr
        self.den = abs(p)
        self.basis[r] = j
        self.iterations += 1


def _solve_rational(model: LpModel) -> LpSolution:
    # standard rows: (coeffs, sense, rhs, origin) with origin ("row", i) or ("ub", j)
    std = []
    for i, row in enumerate(model.rows):
        coeffs = {j: _frac(a) for j, a in row.coeffs.items() if a}
        rhs = _frac(row.rhs)
        senses = ("<=", ">=") if row.sense == "=" else (row.sense,)
        for sense in senses:
            std.append((coeffs, sense, rhs, ("row", i)))
    for j, u in sorted(model.upper.items()):
        std.append(({j: Fraction(1)}, "<=", _frac(u), ("ub", j)))

    m = len(std)
    n = model.ncols
    columns: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    rhs: list[int] = []
    mult: list[Fraction] = []
    needs_art: list[bool] = []
    for k, (coeffs, sense, b, _) in enumerate(std):
        scale = lcm(b.denominator, *(a.denominator for a in coeffs.values()))
        sign = 1
        # rows with a nonnegative-identity slack after normalization need no artificial
        if b < 0 or (b == 0 and sense == ">="):
            sign = -1
            sense = "<=" if sense == ">=" else ">="
        f = sign * scale
        for j, a in coeffs.items():
            columns[j].append((k, int(a * f)))
        rhs.append(int(b * f))
        mult.append(Fraction(f))
        needs_art.append(sense == ">=")
        std[k] = (coeffs, sense, b, std[k][3])
    slack0 = n
    for k, (_, sense, _, _) in enumerate(std):
        columns.append([(k, 1 if sense == "<=" else -1)])
    art_index = {}
    for k in range(m):
        if needs_art[k]:
            art_index[k] = len(columns)
            columns.append([(k, 1)])
    basis = [art_index.get(k, slack0 + k) for k in range(m)]
    total = len(columns)
    obj = [_frac(c) for c in model.objective]
    cscale = lcm(*(c.denominator for c in obj)) if obj else 1
    cost2 = [int(c * cscale) for c in obj] + [0] * (total - n)

    sx = _Simplex(m, columns, rhs, basis)
    arts = set(art_index.values())
    if arts:
        cost1 = [0] * total
        for j in arts:
            cost1[j] = 1
        sx.run(cost1, banned=set())
        if any(sx.xb[r] != 0 for r in range(m) if sx.basis[r] in arts):
            return LpSolution("infeasible", iterations=sx.iterations)
        _drive_out_artificials(sx, arts, total)
    status = sx.run(cost2, banned=arts)
    if status == "unbounded":
        return LpSolution("unbounded", iterations=sx.iterations)

    x = [Fraction(0)] * total
    for r, var in enumerate(sx.basis):
        x[var] = sx.xb[r]
    assignment = x[:n]
    value = sum((c * v for c, v in zip(obj, assignment)), Fraction(0))
    ystd = [v / cscale for v in sx.duals(cost2)]
    duals = [Fraction(0)] * len(model.rows)
    bound_duals: dict[int, Fraction] = {}
    for k, (_, _, _, origin) in enumerate(std):
        val = ystd[k] * mult[k]
        if origin[0] == "row":
            duals[origin[1]] += val
        else:
            bound_duals[origin[1]] = bound_duals.get(origin[1], Fraction(0)) + val
    return LpSolution("optimal", value, assignment, duals, bound_duals, sx.iterations)


def _drive_out_artificials(sx: _Simplex, arts: set[int], total: int) -> None:
    for r in range(sx.m):
        if sx.basis[r] not in arts:
            continue
        in_basis = set(sx.basis)
        for j in range(total):
            if j in arts or j in in_basis:
                continue
            # row r of B^-1 A_j, times den
            a = sum(sx.adj[r][i] * v for i, v in sx.columns[j])
            if a:
                sx.pivot(r, j, sx.column_in_basis(j))
                break
        # otherwise the row is redundant and its artificial stays basic at zero


# --------------------------------------------------------------------- float

def _solve_float(model: LpModel) -> LpSolution:
    from scipy.optimize import linprog
    from scipy.sparse import coo_matrix

    ub_rows, eq_rows = [], []
    for i, row in enumerate(model.rows):
        (eq_rows if row.sense == "=" else ub_rows).append(i)

    def assemble(indices, flip):
        data, ri, ci, b = [], [], [], []
        for k, i in enumerate(indices):
            row = model.rows[i]
            s = -1.0 if flip and row.sense == ">=" else 1.0
            for j, a in row.coeffs.items():
                data.append(s * float(a))
                ri.append(k)
                ci.append(j)
            b.append(s * float(row.rhs))
        if not indices:
            return None, None
        return coo_matrix((data, (ri, ci)), shape=(len(indices), model.ncols)).tocsr(), np.array(b)

    A_ub, b_ub = assemble(ub_rows, True)
    A_eq, b_eq = assemble(eq_rows, False)
    bounds = [(0.0, float(model.upper[j]) if j in model.upper else None) for j in range(model.ncols)]
    res = linprog(np.array([float(c) for c in model.objective]), A_ub=A_ub, b_ub=b_ub,
                  A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    if res.status == 2:
        return LpSolution("infeasible")
    if res.status == 3:
        return LpSolution("unbounded")
    if res.status != 0:
        raise RuntimeError(f"HiGHS failed: {res.message}")
    duals = [0.0] * len(model.rows)
    for k, i in enumerate(ub_rows):
        mval = float(res.ineqlin.marginals[k])
        duals[i] = -mval if model.rows[i].sense == ">=" else mval
    for k, i in enumerate(eq_rows):
        duals[i] = float(res.eqlin.marginals[k])
    bound_duals = {j: float(res.upper.marginals[j]) for j in model.upper}
    return LpSolution("optimal", float(res.fun), [float(v) for v in res.x], duals, bound_duals,
                      int(getattr(res, "nit", 0)))


# ------------------------------------------------------------- certification

def certify(model: LpModel, sol: LpSolution) -> None:
    """Check an exact optimum in rational arithmetic: both solutions feasible
    and their objective values equal. Raises AssertionError."""
    if sol.status != "optimal":
        raise AssertionError(f"solution status is {sol.status}")
    x = [_frac(v) for v in sol.assignment]
    y = [_frac(v) for v in sol.duals]
    z = {j: _frac(v) for j, v in sol.bound_duals.items()}
    for i, row in enumerate(model.rows):
        lhs = sum((_frac(a) * x[j] for j, a in row.coeffs.items()), Fraction(0))
        rhs = _frac(row.rhs)
        ok = {">=": lhs >= rhs, "<=": lhs <= rhs, "=": lhs == rhs}[row.sense]
        if not ok:
            raise AssertionError(f"row {i} violated: {lhs} {row.sense} {rhs}")
        if row.sense == ">=" and y[i] < 0 or row.sense == "<=" and y[i] > 0:
            raise AssertionError(f"dual of row {i} has the wrong sign: {y[i]}")
    for j, v in enumerate(x):
        if v < 0 or (j in model.upper and v > _frac(model.upper[j])):
            raise AssertionError(f"column {j} out of bounds: {v}")
    for j, zj in z.items():
        if zj > 0:
            raise AssertionError(f"upper-bound dual of column {j} is positive")
    reduced = [_frac(c) for c in model.objective]
    for i, row in enumerate(model.rows):
        if y[i]:
            for j, a in row.coeffs.items():
                reduced[j] -= y[i] * _frac(a)
    for j, zj in z.items():
        reduced[j] -= zj
    for j, dj in enumerate(reduced):
        if dj < 0:
            raise AssertionError(f"reduced cost of column {j} is negative: {dj}")
    primal = sum((_frac(c) * v for c, v in zip(model.objective, x)), Fraction(0))
    dual = sum((y[i] * _frac(row.rhs) for i, row in enumerate(model.rows)), Fraction(0))
    dual += sum((zj * _frac(model.upper[j]) for j, zj in z.items()), Fraction(0))
    if primal != dual or primal != _frac(sol.value):
        raise AssertionError(f"duality gap: primal {primal}, dual {dual}, reported {sol.value}")


def model_from_dense(objective: Iterable, rows: Iterable[tuple[Iterable, Sense, object]]) -> LpModel:
    """Convenience builder from dense coefficient lists."""
    obj = list(objective)
    model = LpModel(len(obj), obj)
    for coeffs, sense, rhs in rows:
        model.add_row({j: a for j, a in enumerate(coeffs) if a}, sense, rhs)
    return model
