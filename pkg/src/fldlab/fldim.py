"""Exact fractional local dimension and fractional dimension of small posets."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping, Sequence

from .lp import LpModel, LpSolution, certify, lp_solve
from .ple import Ple, PleError, coverage_signature, enumerate_ples, is_ple
from .poset import Poset, SizeLimitError, incomparable_ordered_pairs

log = logging.getLogger(__name__)

Mode = Literal["local", "linear_only"]


@dataclass
class WeightFunction:
    """Weights on ples of ``poset``; absent ples weigh zero."""

    poset: Poset
    weights: dict[Ple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for M, w in self.weights.items():
            if not 0 <= w <= 1:
                raise ValueError(f"weight {w} on {M} outside [0, 1]")

    def measure(self, u: int) -> Fraction:
        return sum((w for M, w in self.weights.items() if u in M), Fraction(0))

    def total_measure(self) -> Fraction:
        return max((self.measure(u) for u in range(self.poset.n)), default=Fraction(0))

    @property
    def support(self) -> list[Ple]:
        return [M for M, w in self.weights.items() if w]


@dataclass
class FldimModel:
    model: LpModel
    ples: list[Ple]
    row_kinds: list[tuple[str, tuple[int, int] | int]]

    @property
    def c_column(self) -> int:
        return len(self.ples)


def build_fldim_model(P: Poset, ples: Sequence[Ple], mode: Mode = "local") -> FldimModel:
    """Covering LP over ``ples``: one weight per ple plus the cost column c.

    Rows come in three groups, in this order: kept pairs u <= v (reflexive
    included), reversed incomparable pairs, and per-element measure rows.
    """
    if mode not in ("local", "linear_only"):
        raise ValueError(f"unknown mode {mode!r}")
    cols = [tuple(M) for M in ples if mode == "local" or len(M) == P.n]
    sigs = []
    for M in cols:
        if not M or not is_ple(P, M):
            raise PleError(f"{M} is not a ple of the poset")
        sigs.append(coverage_signature(P, M))

    kept_pairs = [(u, u) for u in range(P.n)] + P.strict_pairs()
    rev_pairs = incomparable_ordered_pairs(P)
    kept_cols = {p: [] for p in kept_pairs}
    rev_cols = {p: [] for p in rev_pairs}
    member = [[] for _ in range(P.n)]
    for j, (M, sig) in enumerate(zip(cols, sigs)):
        for p in sig.kept:
            kept_cols[p].append(j)
        for p in sig.reversed:
            rev_cols[p].append(j)
        for u in M:
            member[u].append(j)

    c = len(cols)
    model = LpModel(c + 1, [0] * c + [1])
    kinds = []
    for p in kept_pairs:
        model.add_row({j: 1 for j in kept_cols[p]}, ">=", 1)
        kinds.append(("kept", p))
    for p in rev_pairs:
        model.add_row({j: 1 for j in rev_cols[p]}, ">=", 1)
        kinds.append(("reversed", p))
    for u in range(P.n):
        row = {j: 1 for j in member[u]}
        row[c] = -1
        model.add_row(row, "<=", 0)
        kinds.append(("measure", u))
    log.info("fldim model (%s): %d rows, %d columns", mode, len(model.rows), model.ncols)
    return FldimModel(model, cols, kinds)


def _solve(P: Poset, mode: Mode, cap: int) -> tuple[Fraction, WeightFunction, LpSolution, FldimModel]:
    if P.n > cap:
        raise SizeLimitError(f"exact solve limited to {cap} elements, poset has {P.n}")
    if P.n == 0:
        return Fraction(0), WeightFunction(P), LpSolution("optimal", Fraction(0), [], []), None
    fm = build_fldim_model(P, enumerate_ples(P, cap=cap), mode)
    sol = lp_solve(fm.model, "rational")
    if sol.status != "optimal":
        raise RuntimeError(f"covering LP reported {sol.status}")
    certify(fm.model, sol)
    # weights above 1 are never needed: clamping keeps every row satisfied
    # because each coverage row needs only total weight 1 and measure can only drop
    weights = {M: min(w, Fraction(1)) for M, w in zip(fm.ples, sol.assignment) if w}
    return sol.value, WeightFunction(P, weights), sol, fm


def fldim_exact(P: Poset, cap: int = 8) -> tuple[Fraction, WeightFunction]:
    value, witness, _, _ = _solve(P, "local", cap)
    return value, witness


def fdim_exact(P: Poset, cap: int = 8) -> Fraction:
    return fdim_with_witness(P, cap)[0]


def fdim_with_witness(P: Poset, cap: int = 8) -> tuple[Fraction, WeightFunction]:
    value, witness, _, _ = _solve(P, "linear_only", cap)
    return value, witness


def verify_realizer(P: Poset, w: WeightFunction | Mapping[Sequence[int], object]) -> tuple[bool, Fraction]:
    """Check every kept and reversed pair row in exact arithmetic.

    Returns (valid, measure) where measure is the largest element measure.
    """
    weights = w.weights if isinstance(w, WeightFunction) else {tuple(M): Fraction(v) for M, v in w.items()}
    kept_cov: dict[tuple[int, int], Fraction] = {}
    rev_cov: dict[tuple[int, int], Fraction] = {}
    meas = [Fraction(0)] * P.n
    for M, wt in weights.items():
        wt = Fraction(wt)
        if not wt:
            continue
        sig = coverage_signature(P, M)
        for p in sig.kept:
            kept_cov[p] = kept_cov.get(p, 0) + wt
        for p in sig.reversed:
            rev_cov[p] = rev_cov.get(p, 0) + wt
        for u in M:
            meas[u] += wt
    valid = all(kept_cov.get((u, u), 0) >= 1 for u in range(P.n))
    valid = valid and all(kept_cov.get(p, 0) >= 1 for p in P.strict_pairs())
    valid = valid and all(rev_cov.get(p, 0) >= 1 for p in incomparable_ordered_pairs(P))
    return valid, max(meas, default=Fraction(0))
