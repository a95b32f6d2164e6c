from fractions import Fraction

import pytest

from fldlab.fldim import (WeightFunction, build_fldim_model, fdim_exact, fdim_with_witness,
                          fldim_exact, verify_realizer)
from fldlab.ple import PleError, enumerate_ples
from fldlab.poset import (SizeLimitError, all_posets, antichain, chain, dimension_brute, dual,
                          standard_example, subset_family)
from fldlab.reference import FLDIM_S3


@pytest.mark.parametrize("P,cols,rows", [(antichain(2), 5, 6), (chain(2), 4, 5),
                                         (standard_example(2), None, 18)],
                         ids=["antichain2", "chain2", "S2"])
def test_model_shape(P, cols, rows):
    fm = build_fldim_model(P, enumerate_ples(P))
    nrows, ncols = fm.model.shape
    assert nrows == rows
    if cols is not None:
        assert ncols == cols


def test_row_groups_in_order():
    fm = build_fldim_model(standard_example(2), enumerate_ples(standard_example(2)))
    kinds = [k for k, _ in fm.row_kinds]
    assert kinds == ["kept"] * 6 + ["reversed"] * 8 + ["measure"] * 4


def test_linear_only_filters_columns():
    P = antichain(3)
    fm = build_fldim_model(P, enumerate_ples(P), "linear_only")
    assert len(fm.ples) == 6 and all(len(M) == 3 for M in fm.ples)


def test_model_rejects_foreign_ple():
    with pytest.raises(PleError):
        build_fldim_model(chain(2), [(1, 0)])


def test_small_values():
    assert fldim_exact(chain(3))[0] == 1
    assert fldim_exact(antichain(2))[0] == 2
    assert fldim_exact(standard_example(2))[0] == 2


def test_s3_strictly_between_two_and_three():
    value, witness = fldim_exact(standard_example(3))
    assert 2 < value < 3
    assert value == FLDIM_S3 == Fraction(7, 3)
    assert verify_realizer(standard_example(3), witness) == (True, value)


def test_s4_value():
    assert fldim_exact(standard_example(4))[0] == Fraction(5, 2)


def test_fdim_values():
    assert fdim_exact(standard_example(3)) == 3
    assert fdim_exact(subset_family(2, 3)) == 3
    assert fdim_exact(chain(2)) == 1


def test_fdim_witness_uses_linear_extensions():
    P = standard_example(3)
    value, w = fdim_with_witness(P)
    assert all(len(M) == P.n for M in w.support)
    assert verify_realizer(P, w) == (True, value)


def test_cap():
    with pytest.raises(SizeLimitError):
        fldim_exact(antichain(9))
    with pytest.raises(SizeLimitError):
        fdim_exact(antichain(4), cap=3)


def test_verify_realizer_examples():
    assert verify_realizer(chain(2), {(0, 1): 1}) == (True, 1)
    assert verify_realizer(antichain(2), {(0, 1): 1, (1, 0): 1}) == (True, 2)
    valid, measure = verify_realizer(antichain(2), {(0, 1): Fraction(1, 2), (1, 0): Fraction(1, 2)})
    assert not valid and measure == 1
    with pytest.raises(PleError):
        verify_realizer(chain(2), {(1, 0): 1})


def test_weight_function_range():
    with pytest.raises(ValueError):
        WeightFunction(chain(1), {(0,): Fraction(3, 2)})
    w = WeightFunction(antichain(2), {(0, 1): Fraction(1), (1,): Fraction(0)})
    assert w.support == [(0, 1)]
    assert w.measure(1) == 1


# A sweep over every poset with at most 5 points; the n = 6 sweep runs in the
# acceptance gate.
SMALL = [P for n in range(1, 6) for P in all_posets(n)]


@pytest.fixture(scope="module")
def values():
    return {i: fldim_exact(P) for i, P in enumerate(SMALL)}


def test_witnesses_valid(values):
    for i, P in enumerate(SMALL):
        value, w = values[i]
        assert verify_realizer(P, w) == (True, value)


def test_fldim_at_most_fdim(values):
    for i, P in enumerate(SMALL):
        assert values[i][0] <= fdim_exact(P)


def test_dual_and_dimension_two(values):
    for i, P in enumerate(SMALL):
        v = values[i][0]
        assert fldim_exact(dual(P))[0] == v
        assert (v == 2) == (dimension_brute(P) == 2)


def test_one_point_removal(values):
    for i, P in enumerate(SMALL):
        for x in range(P.n):
            Q = P.without(x)
            vq = fldim_exact(Q)[0]
            assert vq <= values[i][0] <= 1 + vq
