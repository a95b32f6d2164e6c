import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fldlab.poset import (Poset, PosetError, PosetFormatError, SizeLimitError, all_posets,
                          antichain, build_named, canonical_key, chain, count_strict_pairs,
                          dimension_brute, dual, format_poset, incomparable_ordered_pairs,
                          linear_extensions, parse_poset, poset_from_relations, standard_example,
                          subset_family)

from strategies import posets


def test_single_cover():
    P = poset_from_relations(2, [(0, 1)])
    assert P.lt.tolist() == [[False, True], [False, False]]


def test_closure_adds_transitive_pair():
    P = poset_from_relations(3, [(0, 1), (1, 2)])
    assert P.less(0, 2)


def test_cycle_rejected():
    with pytest.raises(PosetError):
        poset_from_relations(2, [(0, 1), (1, 0)])


def test_index_out_of_range():
    with pytest.raises(PosetError):
        poset_from_relations(2, [(0, 2)])


def test_constructor_validates():
    with pytest.raises(PosetError):
        Poset(np.array([[True]]))
    with pytest.raises(PosetError):
        Poset(np.array([[False, True, False], [False, False, True], [False, False, False]]))


def test_standard_example_pairs():
    assert standard_example(2).n == 4
    assert count_strict_pairs(standard_example(2)) == 2
    assert count_strict_pairs(standard_example(3)) == 6
    S = standard_example(4)
    a, b = range(4), range(4, 8)
    assert set(S.strict_pairs()) == {(i, 4 + j) for i in a for j in range(4) if i != j}


def test_family_structure():
    P = subset_family(2, 3)
    assert P.n == 6
    assert count_strict_pairs(P) == 6
    for S in P.maximal_elements():
        assert int(P.lt[:, S].sum()) == 2
    assert P.minimal_elements() == [0, 1, 2]


@pytest.mark.parametrize("kind,params", [("chain", (0,)), ("antichain", (0,)),
                                         ("standard_example", (1,)), ("family", (3, 3)),
                                         ("family", (1, 4)), ("nonsense", (2,))])
def test_build_named_bounds(kind, params):
    with pytest.raises(ValueError):
        build_named(kind, *params)


def test_build_named_matches_constructors():
    assert build_named("chain", 3) == chain(3)
    assert build_named("family", 2, 4) == subset_family(2, 4)


def test_dual_examples():
    assert dual(chain(2)).less(1, 0)
    assert dual(antichain(3)) == antichain(3)
    S3 = standard_example(3)
    assert dual(dual(S3)) == S3


def test_incomparable_pairs_examples():
    assert incomparable_ordered_pairs(chain(2)) == []
    assert sorted(incomparable_ordered_pairs(antichain(2))) == [(0, 1), (1, 0)]
    # brute force from the i != j definition: a_i || b_i, and a's, b's among themselves
    pairs = incomparable_ordered_pairs(standard_example(2))
    assert len(pairs) == 8
    assert {(0, 2), (2, 0), (1, 3), (3, 1), (0, 1), (1, 0), (2, 3), (3, 2)} == set(pairs)


def test_dimension_examples():
    assert dimension_brute(chain(4)) == 1
    assert dimension_brute(antichain(3)) == 2
    assert dimension_brute(standard_example(3)) == 3


def test_dimension_cap():
    with pytest.raises(SizeLimitError):
        dimension_brute(standard_example(4))
    assert dimension_brute(standard_example(4), cap=8) == 4


def test_isomorphism_class_counts():
    # number of unlabeled posets on n points: 1, 2, 5, 16, 63, 318
    assert [len(all_posets(n)) for n in range(1, 7)] == [1, 2, 5, 16, 63, 318]


def test_linear_extension_counts():
    assert len(linear_extensions(antichain(4))) == 24
    assert len(linear_extensions(chain(5))) == 1
    # S_2 is two disjoint 2-chains: choose the positions of one chain
    assert len(linear_extensions(standard_example(2))) == 6


def test_parse_and_format_roundtrip():
    text = "# comment\nelements: 4\nlabels: a b c d\n0 < 1\n1 < 2\n0 < 3\n"
    P = parse_poset(text)
    assert P.labels == ("a", "b", "c", "d")
    assert P.less(0, 2)
    assert parse_poset(format_poset(P)) == P


@pytest.mark.parametrize("text", ["", "labels: a\n", "elements: x\n", "elements: 2\n0 - 1\n",
                                  "elements: 2\n0 < 5\n", "elements: 2\n0 < 1\n1 < 0\n",
                                  "elements: 0\n"])
def test_parse_errors(text):
    with pytest.raises(PosetFormatError):
        parse_poset(text)


@given(posets())
def test_closure_idempotent(P):
    assert poset_from_relations(P.n, P.strict_pairs()) == P


@given(posets())
def test_pair_census(P):
    assert len(incomparable_ordered_pairs(P)) + 2 * count_strict_pairs(P) + P.n == P.n ** 2


@given(posets())
def test_dual_preserves_counts(P):
    D = dual(P)
    assert count_strict_pairs(D) == count_strict_pairs(P)
    assert len(incomparable_ordered_pairs(D)) == len(incomparable_ordered_pairs(P))


@given(posets(max_n=5), st.randoms(use_true_random=False))
def test_canonical_key_invariant_under_relabeling(P, rnd):
    perm = list(range(P.n))
    rnd.shuffle(perm)
    Q = poset_from_relations(P.n, [(perm[u], perm[v]) for u, v in P.strict_pairs()])
    assert canonical_key(Q) == canonical_key(P)


@given(posets(max_n=6))
def test_linear_extensions_respect_order(P):
    for L in linear_extensions(P):
        pos = {u: i for i, u in enumerate(L)}
        assert all(pos[u] < pos[v] for u, v in P.strict_pairs())


def _dim_by_tuples(P):
    """Independent oracle: smallest t with t extensions intersecting to P."""
    exts = linear_extensions(P)
    target = {(u, v) for u, v in P.strict_pairs()}
    for t in itertools.count(1):
        for combo in itertools.combinations(exts, t):
            common = None
            for L in combo:
                pos = {u: i for i, u in enumerate(L)}
                rel = {(u, v) for u in range(P.n) for v in range(P.n) if pos[u] < pos[v]}
                common = rel if common is None else common & rel
            if common == target:
                return t


def test_dimension_matches_naive_oracle():
    for n in range(1, 5):
        for P in all_posets(n):
            assert dimension_brute(P) == _dim_by_tuples(P)


def test_dimension_dual_invariant():
    for n in range(1, 7):
        for P in all_posets(n):
            assert dimension_brute(P) == dimension_brute(dual(P))
