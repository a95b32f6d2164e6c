"""Partial linear extensions (ples): validation, enumeration, coverage
signatures and bipartite block statistics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .poset import Poset, SizeLimitError, linear_extensions

Ple = tuple[int, ...]
Pair = tuple[int, int]


class PleError(ValueError):
    """A sequence with repeated or out-of-range entries."""


@dataclass(frozen=True)
class CoverageSignature:
    kept: frozenset[Pair]
    reversed: frozenset[Pair]


@dataclass(frozen=True)
class PleStats:
    a: int
    b: int
    r: int
    q: int
    s: int


def _check_entries(P: Poset, seq: Sequence[int]) -> None:
    if len(set(seq)) != len(seq):
        raise PleError(f"repeated entry in {tuple(seq)}")
    for u in seq:
        if not 0 <= u < P.n:
            raise PleError(f"element {u} out of range for poset of size {P.n}")


def is_ple(P: Poset, seq: Sequence[int]) -> bool:
    """True iff ``seq`` lists distinct elements in an order compatible with P.

    Raises PleError for repeated or invalid entries; returns False only for an
    order violation.
    """
    _check_entries(P, seq)
    lt = P.lt
    return not any(lt[seq[j], seq[i]] for i in range(len(seq)) for j in range(i + 1, len(seq)))


def enumerate_ples(P: Poset, cap: int = 8) -> list[Ple]:
    """Every nonempty ple of P.

    Subsets come in ascending size then lexicographic order; within a subset
    the linear extensions follow :func:`linear_extensions`.
    """
    if P.n > cap:
        raise SizeLimitError(f"ple enumeration limited to {cap} elements, poset has {P.n}")
    out: list[Ple] = []
    for size in range(1, P.n + 1):
        for subset in itertools.combinations(range(P.n), size):
            out.extend(linear_extensions(P, subset))
    return out


def coverage_signature(P: Poset, M: Sequence[int]) -> CoverageSignature:
    """Pairs a ple satisfies in each family of realizer constraints.

    ``kept`` holds (u, u) for every u in M and (u, v) for u < v in P with both
    present; ``reversed`` holds incomparable (u, v) with u placed above v.
    """
    if not is_ple(P, M):
        raise PleError(f"{tuple(M)} is not a ple of the poset")
    lt = P.lt
    kept = {(u, u) for u in M}
    rev = set()
    for i, v in enumerate(M):
        for u in M[i + 1:]:
            # v precedes u
            if lt[v, u]:
                kept.add((v, u))
            else:
                rev.add((u, v))
    return CoverageSignature(frozenset(kept), frozenset(rev))


def bottom_level(P: Poset) -> list[bool]:
    """Level assignment for a height <= 2 poset: True for elements with no
    strict predecessor. Isolated elements count as bottom only, which keeps the
    two levels disjoint."""
    if P.height() > 2:
        raise ValueError("bipartite statistics need a poset of height at most 2")
    return [not P.lt[:, v].any() for v in range(P.n)]


def bipartite_stats(P: Poset, M: Sequence[int]) -> PleStats:
    """Counts (a, b, r, q, s) of a sequence over bottom x top pairs.

    Positional only: the order is not checked against P, so any sequence of
    distinct elements is accepted.
    """
    _check_entries(P, M)
    bottom = bottom_level(P)
    a = b = r = q = 0
    s = 0
    prev_top = False
    for u in M:
        if bottom[u]:
            # every top element already placed sits below u
            r += b
            a += 1
            if prev_top:
                s += 1
            prev_top = False
        else:
            q += a
            b += 1
            prev_top = True
    return PleStats(a=a, b=b, r=r, q=q, s=s)
