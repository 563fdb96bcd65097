"""Poset-building operations that preserve derived equivalence.

Ordinal and lexicographic sums, the bipartite flip, and the poset/algebra
obtained by regluing a closed subset Y below its open complement U.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    EmptyComponent,
    EmptyList,
    MissingComponent,
    NotBipartite,
    NotClosed,
)
from .poset import Poset, _bits, chain, is_closed, opposite


def lex_sum(S: Poset, components) -> Poset:
    """Replace every element s of S by the poset ``components[label(s)]``.

    Elements are labelled ``"s.x"`` and listed component by component in
    the order of S.  x <= y iff their components satisfy s < t in S, or
    they share a component and x <= y there.
    """
    parts = []
    for s in S.labels:
        if s not in components:
            raise MissingComponent(f"no component for {s!r}")
        X = components[s]
        if X is None or len(X) == 0:
            raise EmptyComponent(f"component for {s!r} is empty")
        parts.append(X)
    offsets = []
    total = 0
    for X in parts:
        offsets.append(total)
        total += len(X)
    block = [((1 << len(X)) - 1) << off for X, off in zip(parts, offsets)]
    labels = []
    up = []
    for si, (s, X, off) in enumerate(zip(S.labels, parts, offsets)):
        above = 0
        for t in _bits(S.up[si]):
            if t != si:
                above |= block[t]
        for i, x in enumerate(X.labels):
            labels.append(f"{s}.{x}")
            up.append((X.up[i] << off) | above)
    return Poset(labels, up, _validated=True)


def ordinal_sum(parts) -> Poset:
    """Stack the parts bottom to top; part k's elements are labelled ``"k.x"``."""
    parts = list(parts)
    if not parts:
        raise EmptyList("ordinal sum of no posets")
    S = chain(len(parts))
    return lex_sum(S, {str(k): X for k, X in enumerate(parts)})


@dataclass(frozen=True)
class BipartitePartition:
    lower: tuple  # S0: indices of the bottom level
    upper: tuple  # S1


def bipartite_partition(S: Poset) -> BipartitePartition | None:
    """Split S into a bottom antichain S0 and a top antichain S1.

    S0 is the set of minimal elements that lie below something; everything
    else goes to S1.  Returns None when the split is not a valid bipartite
    structure, including for antichains (no strict relation at all).
    """
    n = S.n
    lower = [i for i in range(n)
             if S.down[i] == 1 << i and S.up[i] != 1 << i]
    lower_set = set(lower)
    upper = [i for i in range(n) if i not in lower_set]
    if not lower or not upper:
        return None
    for i, j in S.strict_pairs():
        if i not in lower_set or j in lower_set:
            return None
    return BipartitePartition(tuple(lower), tuple(upper))


def bipartite_flip(S: Poset, components):
    """(lex_sum along S, lex_sum along S^op) for a bipartite S."""
    if bipartite_partition(S) is None:
        raise NotBipartite("index poset is not bipartite")
    return lex_sum(S, components), lex_sum(opposite(S), components)


@dataclass(frozen=True)
class StarViolation:
    """Witness y <= y' in Y, u' <= u in U, y < u, yet not y' < u'."""

    y: int
    y_prime: int
    u_prime: int
    u: int
    labels: tuple = ()

    def describe(self) -> str:
        y, yp, up, u = self.labels or (self.y, self.y_prime, self.u_prime, self.u)
        return (f"y={y} <= y'={yp} in Y, u'={up} <= u={u} in U and {y} < {u}, "
                f"but not {yp} < {up}")


def _closed_mask(X: Poset, Y) -> int:
    Y = sorted(set(Y))
    if not is_closed(X, Y):
        raise NotClosed(f"subset {[X.labels[i] for i in Y]} is not downward closed")
    mask = 0
    for i in Y:
        mask |= 1 << i
    return mask


def star_violation(X: Poset, Y) -> StarViolation | None:
    """Lexicographically first (y, y', u', u) breaking the gluing condition."""
    ymask = _closed_mask(X, Y)
    ys = [i for i in range(X.n) if ymask >> i & 1]
    us = [i for i in range(X.n) if not ymask >> i & 1]
    for y in ys:
        for yp in ys:
            if not X.le(y, yp):
                continue
            for up in us:
                for u in us:
                    if X.le(up, u) and X.lt(y, u) and not X.lt(yp, up):
                        lab = tuple(X.labels[k] for k in (y, yp, up, u))
                        return StarViolation(y, yp, up, u, lab)
    return None


def ay_poset(X: Poset, Y) -> Poset | StarViolation:
    """Reglue: keep the orders inside U and Y, and put u below y iff y < u in X.

    Returns the resulting poset on the same labels (same element order) when
    the gluing condition holds, otherwise the first violating quadruple.
    """
    violation = star_violation(X, Y)
    if violation is not None:
        return violation
    ymask = _closed_mask(X, Y)
    up = []
    for i in range(X.n):
        if ymask >> i & 1:
            up.append(X.up[i] & ymask)
        else:
            # u keeps the U-part of its up-set and gains every y below it in X
            up.append((X.up[i] & ~ymask) | (X.down[i] & ymask))
    return Poset(X.labels, up)


@dataclass
class AlgebraPresentation:
    """Finite-dimensional algebra given by a basis and 0/1 structure constants.

    ``basis`` entries are triples ``(kind, a, b)`` with kind ``"Y"`` for
    e_{yy'}, ``"U"`` for e_{u'u} and ``"UY"`` for e_{uy}.  ``table`` maps a
    pair of basis indices to ``(k, c)`` meaning ``b_i * b_j = c * b_k``;
    missing pairs multiply to zero.
    """

    basis: list
    labels: list
    idempotents: list
    table: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, kind, a, b) -> int:
        return self.basis.index((kind, a, b))

    def multiply(self, i: int, j: int):
        return self.table.get((i, j))

    def mul_vectors(self, v: dict, w: dict) -> dict:
        out: dict = {}
        for i, a in v.items():
            for j, b in w.items():
                hit = self.table.get((i, j))
                if hit is not None:
                    k, c = hit
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c}

    def is_associative(self) -> bool:
        d = self.dimension
        for i in range(d):
            for j in range(d):
                ij = self.mul_vectors({i: 1}, {j: 1})
                for k in range(d):
                    left = self.mul_vectors(ij, {k: 1})
                    right = self.mul_vectors({i: 1}, self.mul_vectors({j: 1}, {k: 1}))
                    if left != right:
                        return False
        return True

    def unit_acts_trivially(self) -> bool:
        unit = {i: 1 for i in self.idempotents}
        return all(self.mul_vectors(unit, {i: 1}) == {i: 1} == self.mul_vectors({i: 1}, unit)
                   for i in range(self.dimension))

    def name(self, i: int) -> str:
        _, a, b = self.basis[i]
        return f"e_{self.labels[a]}{self.labels[b]}" if all(
            len(self.labels[t]) == 1 for t in (a, b)) else f"e_({self.labels[a]},{self.labels[b]})"

    def render(self) -> str:
        lines = [f"dimension {self.dimension}",
                 "basis: " + " ".join(self.name(i) for i in range(self.dimension))]
        for (i, j), (k, c) in sorted(self.table.items()):
            coef = "" if c == 1 else "-"
            lines.append(f"{self.name(i)} * {self.name(j)} = {coef}{self.name(k)}")
        return "\n".join(lines)


def ay_algebra(X: Poset, Y) -> AlgebraPresentation:
    """Endomorphism algebra of the exceptional collection attached to Y.

    Basis e_{yy'} (y <= y' in Y), e_{u'u} (u' <= u in U), e_{uy} (y < u);
    products

        e_{yy'} e_{y'y''} = e_{yy''}         e_{u''u'} e_{u'u} = e_{u''u}
        e_{uy} e_{yy'} = e_{uy'} if y' < u   e_{u'u} e_{uy} = e_{u'y} if y < u'

    and all other products vanish.
    """
    ymask = _closed_mask(X, Y)
    ys = [i for i in range(X.n) if ymask >> i & 1]
    us = [i for i in range(X.n) if not ymask >> i & 1]
    basis = []
    basis += [("Y", y, yp) for y in ys for yp in ys if X.le(y, yp)]
    basis += [("U", up, u) for up in us for u in us if X.le(up, u)]
    basis += [("UY", u, y) for u in us for y in ys if X.lt(y, u)]
    pos = {b: k for k, b in enumerate(basis)}
    table = {}
    for i, (k1, a, b) in enumerate(basis):
        for j, (k2, c, d) in enumerate(basis):
            target = None
            if k1 == "Y" and k2 == "Y" and b == c:
                target = ("Y", a, d)
            elif k1 == "U" and k2 == "U" and b == c:
                target = ("U", a, d)
            elif k1 == "UY" and k2 == "Y" and b == c:
                # e_{uy} e_{yy'}: a = u, d = y'
                if X.lt(d, a):
                    target = ("UY", a, d)
            elif k1 == "U" and k2 == "UY" and b == c:
                # e_{u'u} e_{uy}: a = u', d = y
                if X.lt(d, a):
                    target = ("UY", a, d)
            if target is not None:
                table[(i, j)] = (pos[target], 1)
    idem = [pos[("Y", y, y)] for y in ys] + [pos[("U", u, u)] for u in us]
    return AlgebraPresentation(basis, list(X.labels), idem, table)


def incidence_algebra(X: Poset) -> AlgebraPresentation:
    """kX with basis e_{xy} (x <= y) and e_{xy} e_{yz} = e_{xz}."""
    basis = [("X", x, y) for x in range(X.n) for y in range(X.n) if X.le(x, y)]
    pos = {b: k for k, b in enumerate(basis)}
    table = {}
    for i, (_, a, b) in enumerate(basis):
        for j, (_, c, d) in enumerate(basis):
            if b == c:
                table[(i, j)] = (pos[("X", a, d)], 1)
    idem = [pos[("X", x, x)] for x in range(X.n)]
    return AlgebraPresentation(basis, list(X.labels), idem, table)


def ay_matches_incidence(X: Poset, Y) -> bool:
    """Check A_Y against the incidence algebra of the reglued poset.

    Only meaningful when the gluing condition holds.  Basis elements are
    identified by their endpoints: e_{yy'} and e_{u'u} keep them, e_{uy}
    becomes the relation u <' y.
    """
    Xp = ay_poset(X, Y)
    if isinstance(Xp, StarViolation):
        return False
    A = ay_algebra(X, Y)
    B = incidence_algebra(Xp)
    ident = {}
    for i, (kind, a, b) in enumerate(A.basis):
        ident[i] = B.index("X", a, b)
    if sorted(ident.values()) != list(range(B.dimension)):
        return False
    mapped = {(ident[i], ident[j]): (ident[k], c) for (i, j), (k, c) in A.table.items()}
    return mapped == B.table
