"""Verification suites. Each check returns a :class:`Check`; a suite is a list of them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable

import numpy as np

from . import continuous as cont
from .family import (max_reversing_template, r_closed_form, r_summation, realize_template,
                     reduced_lp_bound)
from .fldim import fdim_with_witness, fldim_exact, verify_realizer
from .ple import bipartite_stats, is_ple
from .poset import (Poset, all_posets, antichain, canonical_key, chain, dimension_brute, dual,
                    read_poset, standard_example, subset_family)
from .reference import PUBLISHED_TABLE, TABLE_COLUMNS, TABLE_DS, within_slack

SUITES = ("continuous", "exact", "family", "construction", "all")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  [{self.detail}]" if self.detail else "")


def _collect(name: str, failures: list[str], ok_detail: str = "") -> Check:
    shown = "; ".join(failures[:6]) + (f"; ... {len(failures) - 6} more" if len(failures) > 6 else "")
    return Check(name, not failures, shown if failures else ok_detail)


def corpus_path(name: str):
    return resources.files("fldlab") / "data" / "posets" / f"{name}.txt"


def load_corpus(name: str) -> Poset:
    with resources.as_file(corpus_path(name)) as p:
        return read_poset(p)


# ------------------------------------------------------------- continuous

def table_cells(skip_slow: bool = False) -> list[tuple[int, str, float, str, bool]]:
    """(d, column, computed, published, matches) for every table cell."""
    out = []
    for d in TABLE_DS:
        if skip_slow and d == 1_000_000:
            continue
        p = cont.solve_profile(d)
        for col, pub in zip(TABLE_COLUMNS, PUBLISHED_TABLE[d]):
            v = getattr(p, col)
            out.append((d, col, v, pub, within_slack(v, pub)))
    return out


def check_table(skip_slow: bool = False) -> Check:
    cells = table_cells(skip_slow)
    fails = [f"d={d} {c}: computed {v:.9f}, published {pub}" for d, c, v, pub, ok in cells if not ok]
    return _collect(f"table reproduction ({len(cells)} cells)", fails)


def check_beta(ds: Iterable[int] = tuple(range(2, 101)) + TABLE_DS[6:]) -> Check:
    fails = []
    b2 = cont.beta(2)
    if abs(b2 - (3 - math.sqrt(5)) / 2) > 1e-12:
        fails.append(f"beta(2)={b2!r}")
    for d in ds:
        b = cont.beta(d)
        res = abs((1 - b) ** d - b)
        if res > 1e-12:
            fails.append(f"d={d}: residual {res:.3g}")
    return _collect("beta closed form and fixed-point residual", fails)


def check_ordering(ds: Iterable[int] = range(2, 101)) -> Check:
    fails = []
    for d in ds:
        p = cont.solve_profile(d)
        if not p.beta < p.delta < p.x_bst < p.x_bal < 1:
            fails.append(f"d={d}: {p.beta:.6g} {p.delta:.6g} {p.x_bst:.6g} {p.x_bal:.6g}")
    return _collect("ordering beta < delta < x_bst < x_bal < 1", fails)


def check_regime(max_d: int = 1000) -> Check:
    bal = [d for d in range(2, max_d + 1) if cont.solve_profile(d).regime == "Bal"]
    return Check(f"regime Bal exactly for d in {{2,3}} (d <= {max_d})", bal == [2, 3], f"Bal at {bal[:10]}")


def check_regime_strict(max_d: int = 1000) -> Check:
    fails = []
    for d in range(2, max_d + 1):
        p = cont.solve_profile(d)
        ok = p.c_bal < p.c_bst if d <= 3 else p.c_bst < p.c_bal
        if not ok:
            fails.append(f"d={d}: c_bal={p.c_bal:.12g} c_bst={p.c_bst:.12g}")
    return _collect(f"strict separation of c_bal and c_bst (d <= {max_d})", fails)


def check_shape(ds: Iterable[int] = range(2, 21)) -> Check:
    fails = []
    for d in ds:
        b = cont.beta(d)
        grid = np.linspace(b, 1.0, 1000)
        r = np.array([cont.r_cont(d, x) for x in grid])
        if not (r > 0).all():
            fails.append(f"d={d}: r not positive")
        q = grid ** 2 - r
        if not (np.diff(q / grid) > 0).all():
            fails.append(f"d={d}: q/x not increasing")
        ratio = q / r
        if (ratio[:-1] > d + 1e-8).any() or abs(ratio[-1] - d) > 1e-8:
            fails.append(f"d={d}: q/r bound")
        if d <= 10:
            # r/x turns convex shortly below 1; its concave part covers (0, x_bal]
            xs = np.linspace(1e-3, cont.solve_profile(d).x_bal, 1000)
            f = np.array([cont.r_cont(d, x) / x for x in xs])
            if (f[:-2] - 2 * f[1:-1] + f[2:] > 1e-9).any():
                fails.append(f"d={d}: r/x not concave")
        if abs(cont.r_cont(d, 1.0) - 1 / (d + 1)) > 1e-15 or abs(1 - cont.r_cont(d, 1.0) - d / (d + 1)) > 1e-15:
            fails.append(f"d={d}: saturated values")
        p = cont.solve_profile(d)
        rb = cont.r_cont(d, p.x_bal)
        if abs(rb - (p.x_bal ** 2 - rb)) > 1e-10:
            fails.append(f"d={d}: balance identity")
    return _collect("shape of r, q/x, q/r, r/x on (0, x_bal] and saturated values", fails)


def check_cross_solver(ds: Iterable[int] = range(2, 101)) -> Check:
    fails = []
    for d in ds:
        p = cont.solve_profile(d)
        v = cont.continuous_reduced_lp(d, p)
        if abs(v - p.fld) > 1e-9 * p.fld:
            fails.append(f"d={d}: LP {v!r} vs {p.fld!r}")
    return _collect("terminal LP equals min(c_bal, c_bst)", fails)


def check_asymptotics(skip_slow: bool = False) -> Check:
    ds = [10_000, 100_000] + ([] if skip_slow else [1_000_000])
    ratios = [cont.asymptotic_ratio(d) for d in ds]
    ok = all(0.85 < t < 1.0 for t in ratios) and all(a < b for a, b in zip(ratios, ratios[1:]))
    return Check("asymptotic ratio increasing within (0.85, 1)", ok, ", ".join(f"{t:.6f}" for t in ratios))


def suite_continuous(skip_slow: bool = False) -> list[Check]:
    return [check_table(skip_slow), check_beta(), check_ordering(), check_regime(),
            check_regime_strict(), check_shape(), check_cross_solver(), check_asymptotics(skip_slow)]


def suite_construction(ds: Iterable[int] = range(2, 51)) -> list[Check]:
    out = []
    for option in ("Bal", "BstSat"):
        fails = []
        for d in ds:
            rep = cont.check_construction(d, option)
            fails += [f"d={d} {f}" for f in rep.failures]
        out.append(_collect(f"construction {option}", fails))
    return out


# ------------------------------------------------------------------ exact

class ExactCache:
    """fldim, fdim and dim values keyed by isomorphism class."""

    def __init__(self):
        self._fl: dict[bytes, Fraction] = {}
        self._fd: dict[bytes, Fraction] = {}
        self._dim: dict[bytes, int] = {}

    def _get(self, table, P, compute):
        key = canonical_key(P)
        if key not in table:
            table[key] = compute(P)
        return table[key]

    def fldim(self, P: Poset) -> Fraction:
        def compute(Q):
            value, witness = fldim_exact(Q)
            valid, measure = verify_realizer(Q, witness)
            if not valid or measure != value:
                raise AssertionError("witness failed verification")
            return value
        return self._get(self._fl, P, compute)

    def fdim(self, P: Poset) -> Fraction:
        return self._get(self._fd, P, lambda Q: fdim_with_witness(Q)[0])

    def dim(self, P: Poset) -> int:
        return self._get(self._dim, P, dimension_brute)


def exact_oracles() -> list[Check]:
    """Named exact values, each with its witness re-verified."""
    out = []

    def case(name: str, P: Poset, param: str, want: Callable[[Fraction], bool]):
        if param == "fldim":
            value, witness = fldim_exact(P)
        else:
            value, witness = fdim_with_witness(P)
        valid, measure = verify_realizer(P, witness)
        ok = want(value) and valid and measure == value
        out.append(Check(f"{param}({name}) = {value}", ok, f"witness valid={valid}, measure={measure}"))

    for k in (1, 2, 3, 4):
        case(f"chain{k}", chain(k), "fldim", lambda v: v == 1)
    case("antichain2", antichain(2), "fldim", lambda v: v == 2)
    case("S2", standard_example(2), "fldim", lambda v: v == 2)
    case("S3", standard_example(3), "fldim", lambda v: isinstance(v, Fraction) and 2 < v < 3)
    case("S3", standard_example(3), "fdim", lambda v: v == 3)
    case("S4", standard_example(4), "fdim", lambda v: v == 4)
    case("P(1,2;3)", subset_family(2, 3), "fdim", lambda v: v == 3)
    return out


def property_corpus(max_n: int = 6) -> list[Poset]:
    """Every poset on at most ``max_n`` elements up to isomorphism (closed under duals)."""
    out = []
    for n in range(1, max_n + 1):
        out.extend(all_posets(n))
    return out


def small_poset_properties(max_n: int = 6, cache: ExactCache | None = None) -> list[Check]:
    """fldim <= fdim, duality, monotonicity, one-point removal, dim-2 equivalence.

    Monotonicity is checked on one-point deletions; since the corpus holds
    every smaller poset, this covers all induced subposets by induction.
    """
    cache = cache or ExactCache()
    corpus = property_corpus(max_n)
    f_le, f_dual, f_mono, f_rem, f_dim2 = [], [], [], [], []
    for idx, P in enumerate(corpus):
        tag = f"#{idx} n={P.n}"
        v = cache.fldim(P)
        if v > cache.fdim(P):
            f_le.append(tag)
        if cache.fldim(dual(P)) != v:
            f_dual.append(tag)
        for x in range(P.n):
            if P.n == 1:
                break
            w = cache.fldim(P.without(x))
            if w > v:
                f_mono.append(f"{tag} x={x}")
            if v > 1 + w:
                f_rem.append(f"{tag} x={x}")
        if (v == 2) != (cache.dim(P) == 2):
            f_dim2.append(f"{tag}: fldim={v}, dim={cache.dim(P)}")
    k = len(corpus)
    return [_collect(f"fldim <= fdim ({k} posets)", f_le),
            _collect(f"fldim(P*) = fldim(P) ({k} posets)", f_dual),
            _collect(f"induced-subposet monotonicity ({k} posets)", f_mono),
            _collect(f"fldim(P) <= 1 + fldim(P - x) ({k} posets)", f_rem),
            _collect(f"fldim = 2 iff dim = 2 ({k} posets)", f_dim2)]


def suite_exact(skip_slow: bool = False) -> list[Check]:
    return exact_oracles() + small_poset_properties(5 if skip_slow else 6)


# ----------------------------------------------------------------- family

def check_closed_form(max_n: int = 30, max_d: int = 5) -> Check:
    fails, count = [], 0
    for d in range(2, max_d + 1):
        for n in range(d + 1, max_n + 1):
            for a in range(0, n + 1):
                for m in range(0, min(a, n - d) + 1):
                    count += 1
                    if r_closed_form(n, d, a, m) != r_summation(n, d, a, m):
                        fails.append(str((n, d, a, m)))
    return _collect(f"closed form equals summation ({count} cases)", fails)


def template_cases(max_n: int = 9, ds: Iterable[int] = (2, 3)):
    for d in ds:
        for n in range(d + 1, max_n + 1):
            for a in range(1, n + 1):
                k = min(a, n - d)
                for spec in list(range(1, k + 1)) + ["saturated"]:
                    yield n, d, a, spec


def check_templates(max_n: int = 9, ds: Iterable[int] = (2, 3)) -> Check:
    fails, count = [], 0
    for n, d, a, spec in template_cases(max_n, ds):
        count += 1
        T = max_reversing_template(n, d, a, spec)
        P, M = realize_template(T)
        st = bipartite_stats(P, M)
        if not is_ple(P, M) or (st.a, st.b, st.r, st.q) != (T.a, T.b, T.r, T.q) or T.r + T.q != T.a * T.b:
            fails.append(f"{(n, d, a, spec)}: template {(T.a, T.b, T.r)} vs explicit {(st.a, st.b, st.r)}")
        elif spec != "saturated" and T.r != r_closed_form(n, d, a, spec):
            fails.append(f"{(n, d, a, spec)}: closed form disagrees")
    return _collect(f"templates match explicit ples ({count} cases)", fails)


FAMILY_NS = (5, 10, 20, 50, 200, 1000)


def check_family_lp(bound_ns: Iterable[int] = (5, 10, 20, 50, 200, 1000, 2000)) -> list[Check]:
    out = []
    c0 = reduced_lp_bound(3, 2, "rational").c0
    fl = fldim_exact(subset_family(2, 3))[0]
    out.append(Check("c0(2,3) <= fldim(P(1,2;3))", c0 <= fl, f"{c0} <= {fl}"))
    seq = [reduced_lp_bound(n, 2).c0 for n in FAMILY_NS]
    out.append(Check("c0(2,n) non-decreasing", all(a <= b for a, b in zip(seq, seq[1:])),
                     ", ".join(f"{v:.9f}" for v in seq)))
    fails = []
    for d in (2, 3, 4):
        fld = cont.solve_profile(d).fld
        for n in bound_ns:
            if n > d:
                v = reduced_lp_bound(n, d).c0
                if v > fld + 1e-9:
                    fails.append(f"d={d} n={n}: {v!r} > {fld!r}")
    out.append(_collect("c0(d,n) <= FLD(d) + 1e-9", fails))
    return out


def check_scaled_convergence(ns=(50, 100, 200, 400), points=((0.5, 0.8), (0.25, 0.5), (0.1, 0.3))) -> Check:
    """|r / (n C(n,d)) - r(x,y)| shrinks with n at fixed m/n and a/n (d = 2)."""
    d = 2
    fails = []
    for mf, af in points:
        errs = []
        for n in ns:
            m, a = round(mf * n), round(af * n)
            T = max_reversing_template(n, d, a, m)
            x, y = (1 - m / n) ** d, a / n
            errs.append(abs(T.r / (n * math.comb(n, d)) - cont.r_xy(d, x, y)))
        if not all(e1 > e2 for e1, e2 in zip(errs, errs[1:])):
            fails.append(f"m/n={mf}, a/n={af}: {errs}")
    return _collect("scaled reversal counts converge to r(x,y)", fails)


def suite_family() -> list[Check]:
    return [check_closed_form(), check_templates(), *check_family_lp(), check_scaled_convergence()]


def run_suite(name: str, skip_slow: bool = False) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    out: list[Check] = []
    if name in ("continuous", "all"):
        out += suite_continuous(skip_slow)
    if name in ("construction", "all"):
        out += suite_construction()
    if name in ("exact", "all"):
        out += suite_exact(skip_slow)
    if name in ("family", "all"):
        out += suite_family()
    return out
