"""Block templates of maximal-reversing ples on P(1,d;n) and the reduced
four-row LP over them.

A template is the block-size profile [A_0 < B_1 < A_1 < ... < A_s < B_{s+1}]
where the A blocks hold minimal elements (singletons) and the B blocks hold
maximal elements (d-subsets). Block sizes are big integers, so statistics are
exact for any n.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Literal, Union

import numpy as np

from .lp import LpModel, certify, lp_solve
from .ple import Ple
from .poset import Poset, subset_family

log = logging.getLogger(__name__)

BSpec = Union[int, Literal["saturated"]]
FULL_GRID_LIMIT = 2000
SUBSAMPLE_POINTS = 400


class TemplateError(ValueError):
    pass


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return comb(n, k)


@dataclass(frozen=True)
class BlockTemplate:
    n: int
    d: int
    a0: int
    minimal_blocks: tuple[int, ...]
    maximal_blocks: tuple[int, ...]
    kind: Literal["top_gap", "saturated", "preserving"]
    m: int = 0

    @property
    def s(self) -> int:
        return len(self.minimal_blocks)

    @property
    def a(self) -> int:
        return self.a0 + sum(self.minimal_blocks)

    @property
    def b(self) -> int:
        return sum(self.maximal_blocks)

    @property
    def r(self) -> int:
        total, cum = 0, 0
        for ai, bi in zip(self.minimal_blocks, self.maximal_blocks):
            cum += bi
            total += ai * cum
        return total

    @property
    def q(self) -> int:
        return self.a * self.b - self.r

    @property
    def label(self) -> str:
        """The ``m_or_sat`` column of family output."""
        return {"top_gap": str(self.m), "saturated": "sat", "preserving": "pres"}[self.kind]


def _check_family(n: int, d: int) -> None:
    if not 2 <= d < n:
        raise TemplateError(f"need 2 <= d < n, got d={d}, n={n}")


def max_reversing_template(n: int, d: int, a: int, b_spec: BSpec) -> BlockTemplate:
    """Block profile of the maximal-reversing ple with ``a`` minimal elements.

    ``b_spec`` is either an integer m >= 1, the size of the top minimal block
    (so b = C(n-m, d)), or ``"saturated"`` for b = C(n, d).
    """
    _check_family(n, d)
    if not 1 <= a <= n:
        raise TemplateError(f"a={a} outside [1, {n}]")
    a0 = max(0, a - (n - d))
    k = a - a0
    if b_spec == "saturated":
        minimal = (1,) * k
        maximal = (binomial(n - k, d),) + tuple(binomial(n - k + i - 2, d - 1) for i in range(2, k + 1))
        maximal += (binomial(n - 1, d - 1),)
        return BlockTemplate(n, d, a0, minimal, maximal, "saturated")
    if isinstance(b_spec, bool) or not isinstance(b_spec, int):
        raise TemplateError(f"bad b_spec {b_spec!r}")
    m = b_spec
    if not 1 <= m <= k:
        raise TemplateError(f"top block size m={m} outside [1, {k}] for n={n}, d={d}, a={a}")
    s = k - m + 1
    minimal = (1,) * (s - 1) + (m,)
    maximal = (binomial(n - k, d),) + tuple(binomial(n - k + i - 2, d - 1) for i in range(2, s + 1))
    # B_{s+1} is empty: every d-set avoiding A_s already sits lower
    maximal += (0,)
    return BlockTemplate(n, d, a0, minimal, maximal, "top_gap", m)


def max_preserving_template(n: int, d: int) -> BlockTemplate:
    """The full linear extension with every minimal below every maximal."""
    _check_family(n, d)
    return BlockTemplate(n, d, n, (), (binomial(n, d),), "preserving")


def realize_template(T: BlockTemplate) -> tuple[Poset, Ple]:
    """An explicit ple of P(1,d;n) with the block profile of ``T``.

    Minimal elements are placed in index order: A_0 first, then A_1, ....
    Each d-set goes to the block just above the highest placed minimal it
    contains; top_gap templates drop the sets meeting A_s.
    """
    P = subset_family(T.d, T.n)
    order = list(range(T.a))
    level = {}
    for u in order[:T.a0]:
        level[u] = 0
    pos = T.a0
    for i, size in enumerate(T.minimal_blocks, start=1):
        for u in order[pos:pos + size]:
            level[u] = i
        pos += size
    s = T.s
    blocks: list[list[int]] = [[] for _ in range(s + 2)]
    for idx, S in enumerate(itertools.combinations(range(T.n), T.d)):
        top = max((level[u] for u in S if u in level), default=0)
        if T.kind == "top_gap" and top == s:
            continue
        blocks[top + 1].append(T.n + idx)
    seq: list[int] = [u for u in order if level[u] == 0]
    for i in range(1, s + 1):
        seq += blocks[i]
        seq += [u for u in order if level[u] == i]
    seq += blocks[s + 1]
    return P, tuple(seq)


def r_summation(n: int, d: int, a: int, m: int) -> int:
    """C(n-a,d) + ... + C(n-m-1,d) + m C(n-m,d), with C(j,d) = 0 for j < d."""
    return sum(binomial(j, d) for j in range(max(n - a, 0), n - m)) + m * binomial(n - m, d)


def r_closed_form(n: int, d: int, a: int, m: int) -> int:
    if not (0 <= m <= a <= n and m <= n - d):
        raise TemplateError(f"invalid (n, d, a, m) = {(n, d, a, m)}")
    num = (n + m * d - d) * binomial(n - m, d) - (n - a - d) * binomial(n - a, d)
    r, rem = divmod(num, d + 1)
    if rem:
        raise ArithmeticError(f"closed form not divisible by d+1 at {(n, d, a, m)}")
    return r


# ------------------------------------------------------------ reduced LP

@dataclass
class FamilyBound:
    n: int
    d: int
    c0: object
    support: list[tuple[BlockTemplate, object]] = field(default_factory=list)
    diagnostic: bool = False
    columns: int = 0


def _geometric(lo: int, hi: int, points: int) -> list[int]:
    if hi - lo + 1 <= points:
        return list(range(lo, hi + 1))
    vals = np.unique(np.rint(np.geomspace(lo, hi, points)).astype(np.int64))
    return sorted(set(int(v) for v in vals) | {lo, hi})


def template_grid(n: int, d: int, subsample: bool = False) -> list[tuple[int, BSpec]]:
    """Column parameters (a, m) plus (a, "saturated"); the preserving column is separate."""
    out: list[tuple[int, BSpec]] = []
    a_values = _geometric(1, n, SUBSAMPLE_POINTS) if subsample else range(1, n + 1)
    for a in a_values:
        k = min(a, n - d)
        ms = _geometric(1, k, SUBSAMPLE_POINTS) if subsample else range(1, k + 1)
        out.extend((a, m) for m in ms)
        out.append((a, "saturated"))
    return out


def _template_for(n: int, d: int, spec) -> BlockTemplate:
    if spec == "pres":
        return max_preserving_template(n, d)
    a, b_spec = spec
    return max_reversing_template(n, d, a, b_spec)


def _stats_exact(n: int, d: int, a: int, b_spec: BSpec) -> tuple[int, int, int]:
    k = min(a, n - d)
    if b_spec == "saturated":
        b, r = binomial(n, d), binomial(n, d + 1) - binomial(n - k, d + 1)
    else:
        b = binomial(n - b_spec, d)
        r = b_spec * b + binomial(n - b_spec, d + 1) - binomial(n - k, d + 1)
    return a, b, r


def reduced_lp_bound(n: int, d: int, arithmetic: Literal["rational", "float"] = "float",
                     subsample: bool | None = None) -> FamilyBound:
    """Optimum c0 of the scaled four-row LP over block-template columns.

    Rows, each divided by its natural scale: A(w) <= c n, B(w) <= c C(n,d),
    R(w) >= n C(n-1,d), Q(w) >= n C(n,d). With ``subsample`` (default: n above
    the full-grid limit) a geometric grid of (a, m) is used and the result is
    flagged as diagnostic.
    """
    _check_family(n, d)
    if subsample is None:
        subsample = n > FULL_GRID_LIMIT
    if subsample and arithmetic == "rational":
        raise ValueError("a subsampled grid gives diagnostics only; use float arithmetic")
    N, N1 = binomial(n, d), binomial(n - 1, d)
    if arithmetic == "rational":
        return _reduced_rational(n, d, template_grid(n, d), N, N1)
    if arithmetic != "float":
        raise ValueError(f"unknown arithmetic mode {arithmetic!r}")
    return _reduced_float(n, d, N, N1, subsample)


def _reduced_rational(n, d, specs, N, N1) -> FamilyBound:
    stats = [_stats_exact(n, d, a, b) for a, b in specs] + [(n, N, 0)]
    cols = len(stats)
    model = LpModel(cols + 1, [0] * cols + [1])
    arow = {j: Fraction(a, n) for j, (a, _, _) in enumerate(stats)}
    brow = {j: Fraction(b, N) for j, (_, b, _) in enumerate(stats)}
    arow[cols] = brow[cols] = -1
    model.add_row(arow, "<=", 0)
    model.add_row(brow, "<=", 0)
    model.add_row({j: Fraction(r, n * N1) for j, (_, _, r) in enumerate(stats) if r}, ">=", 1)
    model.add_row({j: Fraction(a * b - r, n * N) for j, (a, b, r) in enumerate(stats) if a * b - r}, ">=", 1)
    sol = lp_solve(model, "rational")
    certify(model, sol)
    allspecs = specs + ["pres"]
    support = [(_template_for(n, d, allspecs[j]), w) for j, w in enumerate(sol.assignment[:cols]) if w]
    return FamilyBound(n, d, sol.value, support, False, cols)


def _grid_arrays(n: int, d: int, subsample: bool) -> tuple[np.ndarray, np.ndarray]:
    """(a, m) for every reversing column; m = 0 marks the saturated column."""
    if subsample:
        specs = template_grid(n, d, True)
        return (np.array([s[0] for s in specs], dtype=np.int64),
                np.array([0 if s[1] == "saturated" else s[1] for s in specs], dtype=np.int64))
    a_vals = np.arange(1, n + 1, dtype=np.int64)
    k = np.minimum(a_vals, n - d)
    a = np.repeat(a_vals, k + 1)
    starts = np.cumsum(k + 1) - (k + 1)
    m = np.arange(a.size, dtype=np.int64) - np.repeat(starts, k + 1) + 1
    m[m == np.repeat(k + 1, k + 1)] = 0
    return a, m


def _reduced_float(n, d, N, N1, diagnostic) -> FamilyBound:
    from scipy.optimize import linprog

    a, m = _grid_arrays(n, d, diagnostic)
    # C(j, d) / N and C(j, d+1) / (n N1) for j = 0..n, from exact integers
    cd = np.array([binomial(j, d) / N for j in range(n + 1)])
    cd1 = np.array([binomial(j, d + 1) / (n * N1) for j in range(n + 1)])
    sat = m == 0
    k = np.minimum(a, n - d)
    x = np.where(sat, 1.0, cd[n - m])
    r = np.where(sat, cd1[n] - cd1[n - k], m * cd[n - m] * (N / (n * N1)) + cd1[n - m] - cd1[n - k])
    y = a / n
    # q / (n N) = y x - r N1 / N
    q = y * x - r * (N1 / N)
    # the preserving column goes last
    cols = np.vstack([np.append(y, 1.0), np.append(x, 1.0), np.append(r, 0.0), np.append(q, 1.0)])
    total = cols.shape[1]

    # column generation: four rows, so a small active set carries the optimum
    active = np.unique(np.concatenate([np.linspace(0, total - 1, min(total, 256)).astype(np.int64),
                                       np.flatnonzero(sat), [total - 1]]))
    sign = np.array([1.0, 1.0, -1.0, -1.0])
    for _ in range(1000):
        sub = cols[:, active] * sign[:, None]
        A_ub = np.hstack([sub, np.array([[-1.0], [-1.0], [0.0], [0.0]])])
        cost = np.zeros(active.size + 1)
        cost[-1] = 1.0
        res = linprog(cost, A_ub=A_ub, b_ub=[0, 0, -1, -1], method="highs")
        if res.status != 0:
            raise RuntimeError(f"HiGHS failed on the reduced LP: {res.message}")
        duals = res.ineqlin.marginals * sign
        reduced = -(duals @ cols)
        tol = 1e-12 * max(1.0, float(np.abs(duals).sum()))
        fresh = np.setdiff1d(np.flatnonzero(reduced < -tol), active)
        if fresh.size == 0:
            break
        fresh = fresh[np.argsort(reduced[fresh])[:200]]
        active = np.union1d(active, fresh)
    else:
        raise RuntimeError("column generation did not converge")

    def spec(j):
        if j == total - 1:
            return "pres"
        return int(a[j]), ("saturated" if m[j] == 0 else int(m[j]))

    support = [(_template_for(n, d, spec(int(j))), float(w)) for j, w in zip(active, res.x[:-1]) if w > 1e-12]
    log.info("reduced LP n=%d d=%d: %d columns (%d active), c0=%.12g", n, d, total, active.size, res.fun)
    return FamilyBound(n, d, float(res.fun), support, diagnostic, total)
