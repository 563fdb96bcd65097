"""Finite posets: construction, validation and elementary topology.

A :class:`Poset` keeps its elements in input order and stores the order
relation as two tuples of bitmasks: ``up[i]`` has bit ``j`` set iff
element i <= element j, and ``down[i]`` is the transpose.  All operations
address elements by index; labels are only for humans and file formats.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property

from .errors import (
    BadProbability,
    CycleDetected,
    DuplicateLabel,
    EmptyPoset,
    UnknownLabel,
)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _transitive_closure(up):
    """Close a list of successor bitmasks (reflexive bits included) in place."""
    n = len(up)
    for k in range(n):
        bk = 1 << k
        uk = up[k]
        for i in range(n):
            if up[i] & bk:
                up[i] |= uk
    return up


class Poset:
    """Immutable finite partially ordered set."""

    def __init__(self, labels, up, *, _validated=False):
        labels = tuple(str(x) for x in labels)
        up = tuple(up)
        if not labels:
            raise EmptyPoset("posets must have at least one element")
        if len(set(labels)) != len(labels):
            seen = set()
            dup = next(x for x in labels if x in seen or seen.add(x))
            raise DuplicateLabel(f"duplicate label {dup!r}")
        n = len(labels)
        if len(up) != n:
            raise ValueError("relation size does not match label count")
        if not _validated:
            _check_order(up)
        down = [0] * n
        for i in range(n):
            for j in _bits(up[i]):
                down[j] |= 1 << i
        self.labels = labels
        self.up = up
        self.down = tuple(down)
        self._index = {x: i for i, x in enumerate(labels)}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_leq(cls, labels, leq) -> Poset:
        """Build from a boolean matrix ``leq[i][j]`` (must already be an order)."""
        up = [sum(1 << j for j, v in enumerate(row) if v) for row in leq]
        return cls(labels, up)

    # -- basic access -----------------------------------------------------

    def __len__(self):
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownLabel(f"unknown element {label!r}") from None

    def le(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.up[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.le(i, j) or self.le(j, i)

    @cached_property
    def leq(self) -> tuple:
        """Boolean relation matrix in input order."""
        n = self.n
        return tuple(tuple(bool(self.up[i] >> j & 1) for j in range(n)) for i in range(n))

    def up_set(self, i: int) -> list[int]:
        return list(_bits(self.up[i]))

    def down_set(self, i: int) -> list[int]:
        return list(_bits(self.down[i]))

    def strict_pairs(self):
        """All (i, j) with i < j in the order, lexicographic by index."""
        return [(i, j) for i in range(self.n) for j in _bits(self.up[i]) if j != i]

    def relabel(self, labels) -> Poset:
        return Poset(labels, self.up, _validated=True)

    def restrict(self, indices) -> Poset:
        """Induced subposet on ``indices`` (kept in the given order)."""
        indices = list(indices)
        pos = {v: k for k, v in enumerate(indices)}
        up = []
        for i in indices:
            m = 0
            for j in _bits(self.up[i]):
                if j in pos:
                    m |= 1 << pos[j]
            up.append(m)
        return Poset([self.labels[i] for i in indices], up, _validated=True)

    def same_order(self, other: Poset) -> bool:
        """Equal as labelled posets, ignoring the internal element order."""
        if set(self.labels) != set(other.labels) or self.n != other.n:
            return False
        perm = [other.index(x) for x in self.labels]
        return all(self.le(i, j) == other.le(perm[i], perm[j])
                   for i in range(self.n) for j in range(self.n))

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.labels == other.labels and self.up == other.up

    def __hash__(self):
        return hash((self.labels, self.up))

    def __repr__(self):
        rels = ", ".join(f"{self.labels[i]}<{self.labels[j]}" for i, j in covers(self))
        return f"Poset([{' '.join(self.labels)}]; {rels})"


def _check_order(up):
    n = len(up)
    for i in range(n):
        if not up[i] >> i & 1:
            raise ValueError(f"relation not reflexive at index {i}")
    for i in range(n):
        for j in _bits(up[i]):
            if j != i and up[j] >> i & 1:
                raise CycleDetected(f"elements {i} and {j} are mutually below each other")
            if up[j] & ~up[i]:
                raise ValueError("relation not transitive")


def poset_from_relations(labels, relations) -> Poset:
    """Reflexive-transitive closure of the pairs ``a < b`` over ``labels``."""
    labels = [str(x) for x in labels]
    if not labels:
        raise EmptyPoset("posets must have at least one element")
    index = {}
    for k, x in enumerate(labels):
        if x in index:
            raise DuplicateLabel(f"duplicate label {x!r}")
        index[x] = k
    up = [1 << i for i in range(len(labels))]
    for a, b in relations:
        a, b = str(a), str(b)
        for x in (a, b):
            if x not in index:
                raise UnknownLabel(f"unknown element {x!r}")
        if a == b:
            raise CycleDetected(f"{a} < {a}")
        up[index[a]] |= 1 << index[b]
    _transitive_closure(up)
    n = len(labels)
    for i in range(n):
        for j in _bits(up[i]):
            if j != i and up[j] >> i & 1:
                raise CycleDetected(f"{labels[i]} and {labels[j]} lie on a cycle")
    return Poset(labels, up, _validated=True)


def covers(X: Poset) -> list[tuple[int, int]]:
    """Hasse diagram: pairs (i, j) with i < j and nothing strictly between."""
    out = []
    for i in range(X.n):
        for j in _bits(X.up[i]):
            if j != i and X.up[i] & X.down[j] == (1 << i) | (1 << j):
                out.append((i, j))
    return out


def linear_extension(X: Poset) -> list[int]:
    """Topological order; ties go to the smallest input index."""
    remaining = (1 << X.n) - 1
    order = []
    while remaining:
        for i in _bits(remaining):
            # minimal among remaining: nothing else remaining below it
            if not (X.down[i] & remaining) & ~(1 << i):
                order.append(i)
                remaining ^= 1 << i
                break
    return order


def opposite(X: Poset) -> Poset:
    return Poset(X.labels, X.down, _validated=True)


def product(X: Poset, Y: Poset) -> Poset:
    """Componentwise order on pairs; element (i, j) sits at index i*|Y| + j."""
    m = Y.n
    labels = [f"({x},{y})" for x in X.labels for y in Y.labels]
    up = []
    for i in range(X.n):
        for j in range(Y.n):
            mask = 0
            for a in _bits(X.up[i]):
                for b in _bits(Y.up[j]):
                    mask |= 1 << (a * m + b)
            up.append(mask)
    return Poset(labels, up, _validated=True)


def disjoint_union(X: Poset, Y: Poset) -> Poset:
    """Side-by-side union; labels are prefixed ``0.``/``1.`` only on a clash."""
    if set(X.labels) & set(Y.labels):
        labels = [f"0.{x}" for x in X.labels] + [f"1.{y}" for y in Y.labels]
    else:
        labels = list(X.labels) + list(Y.labels)
    shift = X.n
    up = list(X.up) + [m << shift for m in Y.up]
    return Poset(labels, up, _validated=True)


def connected_components(X: Poset) -> list[list[int]]:
    """Classes of the comparability graph, ordered by smallest member."""
    seen = 0
    comps = []
    for start in range(X.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for i in _bits(frontier):
                nxt |= X.up[i] | X.down[i]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def heights(X: Poset) -> list[int]:
    """Length of the longest chain ending at each element."""
    h = [0] * X.n
    for i in linear_extension(X):
        below = [h[j] + 1 for j in _bits(X.down[i]) if j != i]
        h[i] = max(below, default=0)
    return h


def longest_chain(X: Poset) -> int:
    """Number of strict steps in a longest chain (the dimension of X)."""
    return max(heights(X))


def is_closed(X: Poset, subset) -> bool:
    """True iff ``subset`` (indices) is downward closed."""
    mask = 0
    for i in subset:
        mask |= 1 << i
    return all(X.down[i] & ~mask == 0 for i in _bits(mask))


def principal_sets(X: Poset, x: int):
    """(U_x, {x}^-): the up-set and the down-set of element ``x``."""
    return X.up_set(x), X.down_set(x)


def _signatures(X: Poset):
    h = heights(X)
    dual = heights(opposite(X))
    return [(bin(X.up[i]).count("1"), bin(X.down[i]).count("1"), h[i], dual[i])
            for i in range(X.n)]


def is_isomorphic(X: Poset, Y: Poset) -> dict[int, int] | None:
    """An order isomorphism X -> Y as an index map, or None.

    Backtracking over a linear extension of X; candidates are restricted to
    elements of Y with the same (up-set size, down-set size, height, depth)
    signature and checked against every element already mapped.
    """
    if X.n != Y.n:
        return None
    sx, sy = _signatures(X), _signatures(Y)
    if sorted(sx) != sorted(sy):
        return None
    if len(covers(X)) != len(covers(Y)):
        return None
    order = linear_extension(X)
    candidates = {i: [j for j in range(Y.n) if sy[j] == sx[i]] for i in range(X.n)}
    mapping: dict[int, int] = {}
    used = [False] * Y.n

    def extend(k):
        if k == len(order):
            return True
        i = order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            if all(X.le(a, i) == Y.le(b, j) and X.le(i, a) == Y.le(j, b)
                   for a, b in mapping.items()):
                mapping[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                del mapping[i]
                used[j] = False
        return False

    return dict(mapping) if extend(0) else None


def random_poset(n: int, edge_prob, seed: int) -> Poset:
    """Random DAG along 0..n-1 with independent edges, transitively closed."""
    if n < 1:
        raise EmptyPoset("n must be at least 1")
    prob = Fraction(edge_prob)
    if not 0 <= prob <= 1:
        raise BadProbability(f"edge probability {edge_prob} outside [0, 1]")
    rng = random.Random(seed)
    up = [1 << i for i in range(n)]
    scale = prob.denominator
    for i in range(n):
        for j in range(i + 1, n):
            if rng.randrange(scale) < prob.numerator:
                up[i] |= 1 << j
    # indices increase along edges, so closing from the top down suffices
    for i in range(n - 1, -1, -1):
        for j in _bits(up[i] & ~(1 << i)):
            up[i] |= up[j]
    return Poset([str(i) for i in range(n)], up, _validated=True)


# ---------------------------------------------------------------------------
# canonical fixtures


def chain(n: int) -> Poset:
    return poset_from_relations([str(i) for i in range(n)],
                                [(str(i), str(i + 1)) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return poset_from_relations([str(i) for i in range(n)], [])


def point() -> Poset:
    return antichain(1)


def v3() -> Poset:
    return poset_from_relations(["1", "2", "3"], [("1", "3"), ("2", "3")])


def diamond() -> Poset:
    return poset_from_relations(["t", "l", "r", "b"],
                                [("t", "l"), ("t", "r"), ("l", "b"), ("r", "b")])


def apr_r() -> Poset:
    return poset_from_relations(["l", "r", "m", "b"], [("l", "m"), ("r", "m"), ("m", "b")])


def crown4() -> Poset:
    return poset_from_relations(["a", "b", "c", "d"],
                                [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def yp() -> Poset:
    return poset_from_relations(["p", "q", "r"], [("p", "q")])


def exs() -> Poset:
    return poset_from_relations(["1", "2", "3", "4", "5"],
                                [("1", "3"), ("1", "4"), ("2", "4"), ("2", "5")])


def exx() -> dict[str, Poset]:
    """Components for the bipartite example, keyed by the labels of :func:`exs`."""
    return {
        "1": poset_from_relations(["m", "a", "b"], [("m", "a"), ("m", "b")]),
        "2": chain(2),
        "3": point(),
        "4": poset_from_relations(["a", "b", "M"], [("a", "M"), ("b", "M")]),
        "5": crown4(),
    }


def fig1_left() -> Poset:
    from .constructions import ordinal_sum
    z = ordinal_sum([antichain(3), yp()])
    return ordinal_sum([antichain(3), yp(), z])


def fig1_right() -> Poset:
    from .constructions import ordinal_sum
    z = ordinal_sum([antichain(3), yp()])
    return ordinal_sum([yp(), antichain(3), z])


FIXTURES = {
    "point": point,
    "V3": v3,
    "DIAMOND": diamond,
    "APR_R": apr_r,
    "CROWN4": crown4,
    "YP": yp,
    "EXS": exs,
    "FIG1L": fig1_left,
    "FIG1R": fig1_right,
}
