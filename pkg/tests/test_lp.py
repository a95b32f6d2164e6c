import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fldlab.lp import LpModel, LpModelError, certify, lp_solve, model_from_dense


def test_single_bound():
    sol = lp_solve(model_from_dense([1], [([1], ">=", 3)]))
    assert sol.status == "optimal" and sol.value == 3


def test_symmetric_vertex():
    m = model_from_dense([1, 1], [([1, 2], ">=", 4), ([2, 1], ">=", 4)])
    sol = lp_solve(m)
    assert sol.value == Fraction(8, 3)
    assert sol.assignment == [Fraction(4, 3), Fraction(4, 3)]
    assert all(isinstance(v, Fraction) for v in sol.assignment)
    certify(m, sol)


def test_infeasible():
    assert lp_solve(model_from_dense([1], [([1], ">=", 1), ([1], "<=", 0)])).status == "infeasible"


def test_unbounded():
    assert lp_solve(model_from_dense([-1, 0], [([1, -1], "<=", 1)])).status == "unbounded"


def test_equality_rows():
    m = model_from_dense([1, 2], [([1, 1], "=", Fraction(5, 2)), ([1, -1], "<=", Fraction(1, 2))])
    sol = lp_solve(m)
    assert sol.value == Fraction(7, 2)  # x = 3/2, y = 1
    certify(m, sol)


def test_upper_bounds_and_their_duals():
    m = LpModel(2, [-2, -1])
    m.add_row({0: 1, 1: 1}, "<=", 4)
    m.upper = {0: 1}
    sol = lp_solve(m)
    assert sol.value == -5
    assert sol.bound_duals[0] == -1
    certify(m, sol)


def test_malformed_model():
    m = LpModel(2)
    with pytest.raises(LpModelError):
        m.add_row({3: 1}, ">=", 1)
    with pytest.raises(LpModelError):
        m.add_row({0: 1}, ">", 1)
    m.upper = {0: -1}
    with pytest.raises(LpModelError):
        lp_solve(m)
    with pytest.raises(ValueError):
        lp_solve(LpModel(1, [1]), "decimal")


def test_beale_cycling_example():
    # cycles under textbook Dantzig pricing without an anti-cycling rule
    q = Fraction
    m = model_from_dense([q(-3, 4), 20, q(-1, 2), 6],
                         [([q(1, 4), -8, -1, 9], "<=", 0),
                          ([q(1, 2), -12, q(-1, 2), 3], "<=", 0),
                          ([0, 0, 1, 0], "<=", 1)])
    sol = lp_solve(m)
    assert sol.value == q(-5, 4)
    certify(m, sol)


def test_degenerate_covering():
    # cover all pairs of a 6-set by triples; many ties and zero-step pivots
    items = list(itertools.combinations(range(6), 2))
    sets = list(itertools.combinations(range(6), 3))
    rows = [([1 if set(p) <= set(s) else 0 for s in sets], ">=", 1) for p in items]
    m = model_from_dense([1] * len(sets), rows)
    sol = lp_solve(m)
    # each triple covers 3 of 15 pairs and each pair lies in 4 triples: value 15/3
    assert sol.value == 5
    certify(m, sol)


def test_certify_rejects_bad_solution():
    m = model_from_dense([1, 1], [([1, 2], ">=", 4), ([2, 1], ">=", 4)])
    sol = lp_solve(m)
    sol.value = Fraction(3)
    with pytest.raises(AssertionError):
        certify(m, sol)
    sol = lp_solve(m)
    sol.assignment = [Fraction(0), Fraction(0)]
    with pytest.raises(AssertionError):
        certify(m, sol)


def test_float_mode_matches():
    m = model_from_dense([1, 1], [([1, 2], ">=", 4), ([2, 1], ">=", 4)])
    sol = lp_solve(m, "float")
    assert sol.status == "optimal"
    assert sol.value == pytest.approx(8 / 3, abs=1e-9)
    assert sum(y * r.rhs for y, r in zip(sol.duals, m.rows)) == pytest.approx(8 / 3, abs=1e-9)


coef = st.integers(-4, 6)


@st.composite
def random_lps(draw):
    ncols = draw(st.integers(1, 4))
    nrows = draw(st.integers(1, 4))
    obj = [draw(st.integers(0, 5)) for _ in range(ncols)]
    rows = []
    for _ in range(nrows):
        rows.append(([draw(coef) for _ in range(ncols)], draw(st.sampled_from([">=", "<=", "="])),
                     Fraction(draw(st.integers(-3, 8)), draw(st.integers(1, 3)))))
    m = model_from_dense(obj, rows)
    if draw(st.booleans()):
        m.upper = {0: draw(st.integers(0, 4))}
    return m


@settings(max_examples=150)
@given(random_lps())
def test_rational_agrees_with_float(m):
    exact = lp_solve(m, "rational")
    approx = lp_solve(m, "float")
    assert exact.status == approx.status
    if exact.status == "optimal":
        certify(m, exact)
        assert float(exact.value) == pytest.approx(approx.value, abs=1e-7)
