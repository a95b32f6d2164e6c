"""Hypothesis strategies for small posets."""

from hypothesis import strategies as st

from fldlab.poset import poset_from_relations


@st.composite
def posets(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = [p for p in pairs if draw(st.booleans())] if pairs else []
    perm = draw(st.permutations(range(n)))
    return poset_from_relations(n, [(perm[i], perm[j]) for i, j in chosen])
