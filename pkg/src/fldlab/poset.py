"""Finite posets: representation, canonical constructors, text format and a
brute-force Dushnik-Miller dimension oracle for small instances."""

from __future__ import annotations

import itertools
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class PosetError(ValueError):
    """Raised for relations that are not strict partial orders."""


class PosetFormatError(ValueError):
    """Raised when a poset text file cannot be parsed."""


class SizeLimitError(ValueError):
    """Raised when an exhaustive routine is asked to exceed its size cap."""


class Poset:
    """A finite strict partial order on ``range(n)``.

    ``lt[u, v]`` is true iff ``u < v``. Instances are immutable; the matrix is
    exposed read-only.
    """

    def __init__(self, lt, labels: Sequence[str] | None = None, *, check: bool = True):
        mat = np.array(lt, dtype=bool)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise PosetError("relation matrix must be square")
        n = mat.shape[0]
        if check:
            if mat.diagonal().any():
                raise PosetError("relation is not irreflexive")
            if (mat & mat.T).any():
                raise PosetError("relation is not antisymmetric")
            if n and ((mat.astype(np.int64) @ mat.astype(np.int64) > 0) & ~mat).any():
                raise PosetError("relation is not transitive")
        mat.flags.writeable = False
        self._lt = mat
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise PosetError(f"expected {n} labels, got {len(labels)}")
        self._labels = labels

    @property
    def n(self) -> int:
        return self._lt.shape[0]

    @property
    def lt(self) -> np.ndarray:
        return self._lt

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    def label(self, u: int) -> str:
        return self._labels[u] if self._labels else str(u)

    def less(self, u: int, v: int) -> bool:
        return bool(self._lt[u, v])

    def leq(self, u: int, v: int) -> bool:
        return u == v or bool(self._lt[u, v])

    def comparable(self, u: int, v: int) -> bool:
        return u == v or bool(self._lt[u, v] or self._lt[v, u])

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        """Bitmask of strict predecessors of each element."""
        return tuple(sum(1 << u for u in range(self.n) if self._lt[u, v]) for v in range(self.n))

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in range(self.n) if self._lt[u, v]) for u in range(self.n))

    def minimal_elements(self) -> list[int]:
        return [v for v in range(self.n) if not self._lt[:, v].any()]

    def maximal_elements(self) -> list[int]:
        return [u for u in range(self.n) if not self._lt[u, :].any()]

    def strict_pairs(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(self._lt))]

    def height(self) -> int:
        """Size of a longest chain (0 for the empty poset)."""
        if self.n == 0:
            return 0
        longest = [1] * self.n
        for v in self.linear_order():
            for u in range(self.n):
                if self._lt[u, v]:
                    longest[v] = max(longest[v], longest[u] + 1)
        return max(longest)

    def linear_order(self) -> list[int]:
        """One linear extension (smallest available index first)."""
        order, placed = [], 0
        down = self.down_masks
        while len(order) < self.n:
            v = next(v for v in range(self.n) if not placed >> v & 1 and down[v] & ~placed == 0)
            order.append(v)
            placed |= 1 << v
        return order

    def induced(self, elements: Iterable[int]) -> Poset:
        idx = list(elements)
        labels = [self.label(u) for u in idx] if self._labels else None
        return Poset(self._lt[np.ix_(idx, idx)], labels, check=False)

    def without(self, x: int) -> Poset:
        return self.induced(u for u in range(self.n) if u != x)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self._lt.shape == other._lt.shape and bool((self._lt == other._lt).all())

    def __hash__(self):
        return hash((self.n, self._lt.tobytes()))

    def __repr__(self):
        return f"Poset(n={self.n}, pairs={self.strict_pairs()})"


def _transitive_closure(mat: np.ndarray) -> np.ndarray:
    closure = mat.copy()
    for k in range(closure.shape[0]):
        closure |= np.outer(closure[:, k], closure[k, :])
    return closure


def poset_from_relations(n: int, pairs: Iterable[tuple[int, int]],
                         labels: Sequence[str] | None = None) -> Poset:
    """Close an acyclic relation transitively and return the resulting poset."""
    if n < 0:
        raise PosetError("element count must be nonnegative")
    mat = np.zeros((n, n), dtype=bool)
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise PosetError(f"pair ({u}, {v}) out of range for {n} elements")
        if u == v:
            raise PosetError(f"cycle: {u} < {u}")
        mat[u, v] = True
    closure = _transitive_closure(mat)
    if closure.diagonal().any():
        u = int(np.flatnonzero(closure.diagonal())[0])
        raise PosetError(f"cycle through element {u}")
    return Poset(closure, labels, check=False)


def chain(k: int) -> Poset:
    if k < 1:
        raise PosetError("chain needs k >= 1")
    return Poset(np.triu(np.ones((k, k), dtype=bool), 1), check=False)


def antichain(k: int) -> Poset:
    if k < 1:
        raise PosetError("antichain needs k >= 1")
    return Poset(np.zeros((k, k), dtype=bool), check=False)


def standard_example(n: int) -> Poset:
    """S_n: elements a_1..a_n (indices 0..n-1) and b_1..b_n (n..2n-1), a_i < b_j iff i != j."""
    if n < 2:
        raise PosetError("standard example needs n >= 2")
    mat = np.zeros((2 * n, 2 * n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j:
                mat[i, n + j] = True
    labels = [f"a{i + 1}" for i in range(n)] + [f"b{j + 1}" for j in range(n)]
    return Poset(mat, labels, check=False)


def family_subsets(d: int, n: int) -> list[tuple[int, ...]]:
    """The d-subsets of {0..n-1} in the order used to index maximal elements of P(1,d;n)."""
    return list(itertools.combinations(range(n), d))


def subset_family(d: int, n: int) -> Poset:
    """P(1,d;n): singletons 0..n-1 below the d-subsets containing them.

    Maximal element ``n + i`` is the i-th d-subset in lexicographic order.
    """
    if not 2 <= d < n:
        raise PosetError("family requires 2 <= d < n")
    sets = family_subsets(d, n)
    size = n + len(sets)
    mat = np.zeros((size, size), dtype=bool)
    for i, s in enumerate(sets):
        for u in s:
            mat[u, n + i] = True
    labels = [str(u + 1) for u in range(n)] + ["{" + ",".join(str(u + 1) for u in s) + "}" for s in sets]
    return Poset(mat, labels, check=False)


def build_named(kind: str, *params: int) -> Poset:
    """Construct ``chain``/``antichain`` (k), ``standard_example`` (n) or ``family`` (d, n)."""
    builders = {"chain": (chain, 1), "antichain": (antichain, 1),
                "standard_example": (standard_example, 1), "family": (subset_family, 2)}
    if kind not in builders:
        raise ValueError(f"unknown poset kind {kind!r}")
    fn, arity = builders[kind]
    if len(params) != arity:
        raise ValueError(f"{kind} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


def dual(P: Poset) -> Poset:
    return Poset(P.lt.T, P.labels, check=False)


def incomparable_ordered_pairs(P: Poset) -> list[tuple[int, int]]:
    return [(u, v) for u in range(P.n) for v in range(P.n)
            if u != v and not P.lt[u, v] and not P.lt[v, u]]


def linear_extensions(P: Poset, elements: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """All linear extensions of the subposet induced on ``elements``.

    Built by recursively choosing a minimal remaining element, smallest index
    first, so the output order is deterministic.
    """
    elems = sorted(range(P.n) if elements is None else elements)
    down = P.down_masks
    full = sum(1 << u for u in elems)
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def extend(placed: int) -> None:
        if placed == full:
            out.append(tuple(prefix))
            return
        for v in elems:
            if not placed >> v & 1 and (down[v] & full) & ~placed == 0:
                prefix.append(v)
                extend(placed | 1 << v)
                prefix.pop()

    extend(0)
    return out


def dimension_brute(P: Poset, cap: int = 7) -> int:
    """Dushnik-Miller dimension by exhaustive search over linear extensions.

    A family of linear extensions realizes P iff every incomparable ordered
    pair (u, v) has u above v in some member. Each extension is reduced to the
    bitmask of pairs it reverses, and the search branches only on extensions
    that cover the first still-uncovered pair.
    """
    if P.n > cap:
        raise SizeLimitError(f"dimension_brute limited to {cap} elements, poset has {P.n}")
    if P.n == 0:
        raise PosetError("dimension of the empty poset is undefined")
    inc = incomparable_ordered_pairs(P)
    if not inc:
        return 1
    bit = {pair: 1 << i for i, pair in enumerate(inc)}
    masks = set()
    for ext in linear_extensions(P):
        pos = {u: i for i, u in enumerate(ext)}
        masks.add(sum(b for (u, v), b in bit.items() if pos[u] > pos[v]))
    masks = sorted(masks, reverse=True)
    full = (1 << len(inc)) - 1
    covering = [[m for m in masks if m >> i & 1] for i in range(len(inc))]

    def search(t: int, covered: int) -> bool:
        if covered == full:
            return True
        if t == 0:
            return False
        missing = full & ~covered
        first = (missing & -missing).bit_length() - 1
        return any(search(t - 1, covered | m) for m in covering[first])

    t = 2
    while not search(t, 0):
        t += 1
    return t


# ---------------------------------------------------------------- text format

def parse_poset(text: str) -> Poset:
    """Parse the line format: ``elements: n``, optional ``labels: ...``, then ``i < j`` lines."""
    n = None
    labels = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            key, _, value = line.partition(":")
            if key.strip() != "elements" or not _:
                raise PosetFormatError(f"line {lineno}: expected 'elements: n'")
            try:
                n = int(value)
            except ValueError:
                raise PosetFormatError(f"line {lineno}: bad element count {value.strip()!r}") from None
            if n < 1:
                raise PosetFormatError(f"line {lineno}: element count must be positive")
            continue
        if line.startswith("labels:"):
            if labels is not None or pairs:
                raise PosetFormatError(f"line {lineno}: labels must directly follow the element count")
            labels = line[len("labels:"):].split()
            continue
        left, sep, right = line.partition("<")
        try:
            if not sep:
                raise ValueError
            pairs.append((int(left), int(right)))
        except ValueError:
            raise PosetFormatError(f"line {lineno}: expected 'i < j', got {line!r}") from None
    if n is None:
        raise PosetFormatError("missing 'elements: n' line")
    try:
        return poset_from_relations(n, pairs, labels)
    except PosetError as exc:
        raise PosetFormatError(str(exc)) from exc


def read_poset(path: str | Path) -> Poset:
    return parse_poset(Path(path).read_text())


def format_poset(P: Poset, comment: str | None = None) -> str:
    """Serialize using cover relations only."""
    lines = [f"# {comment}"] if comment else []
    lines.append(f"elements: {P.n}")
    if P.labels:
        lines.append("labels: " + " ".join(P.labels))
    for u, v in cover_pairs(P):
        lines.append(f"{u} < {v}")
    return "\n".join(lines) + "\n"


def cover_pairs(P: Poset) -> list[tuple[int, int]]:
    lt = P.lt
    return [(u, v) for u, v in P.strict_pairs()
            if not any(lt[u, w] and lt[w, v] for w in range(P.n))]


# ------------------------------------------------------------- isomorphism

def canonical_key(P: Poset) -> bytes:
    """Isomorphism-invariant key: the lexicographically least packed relation
    matrix over all relabelings. Exhaustive, intended for n <= 7."""
    n = P.n
    if n == 0:
        return b""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    mats = P.lt[perms[:, :, None], perms[:, None, :]].reshape(len(perms), n * n)
    packed = np.packbits(mats, axis=1)
    best = min(range(len(packed)), key=lambda i: packed[i].tobytes())
    return bytes([n]) + packed[best].tobytes()


def all_posets(n: int) -> list[Poset]:
    """One representative per isomorphism class of n-element posets.

    Every poset has a natural labeling (u < v only if u < v as integers), so
    enumerating transitive upper-triangular relations reaches every class.
    """
    if n < 1:
        return []
    slots = list(itertools.combinations(range(n), 2))
    seen: dict[bytes, Poset] = {}
    for bits in range(1 << len(slots)):
        mat = np.zeros((n, n), dtype=bool)
        for i, (u, v) in enumerate(slots):
            if bits >> i & 1:
                mat[u, v] = True
        if ((mat.astype(np.int64) @ mat.astype(np.int64) > 0) & ~mat).any():
            continue
        P = Poset(mat, check=False)
        seen.setdefault(canonical_key(P), P)
    return [seen[k] for k in sorted(seen)]


def count_strict_pairs(P: Poset) -> int:
    return int(P.lt.sum())

