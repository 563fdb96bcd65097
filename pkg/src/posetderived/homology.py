"""Order complex of a poset and its simplicial cohomology over a field."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ, Field, parse_field
from .linalg import rank
from .poset import Poset, _bits


@dataclass(frozen=True)
class OrderComplex:
    """Chains of a poset grouped by dimension.

    ``simplices[p]`` lists the p-simplices, each a tuple of element
    indices increasing in the order, and the list is sorted.
    """

    poset: Poset
    simplices: tuple

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def counts(self) -> list[int]:
        return [len(s) for s in self.simplices]

    def index(self, p: int) -> dict:
        return {s: k for k, s in enumerate(self.simplices[p])}


def order_complex(X: Poset) -> OrderComplex:
    by_dim: list[list] = []

    def grow(chain_, top):
        p = len(chain_) - 1
        while len(by_dim) <= p:
            by_dim.append([])
        by_dim[p].append(tuple(chain_))
        for y in _bits(X.up[top]):
            if y != top:
                chain_.append(y)
                grow(chain_, y)
                chain_.pop()

    for x in range(X.n):
        grow([x], x)
    # each chain is already listed bottom-up; sort the lists for determinism
    simplices = tuple(tuple(sorted(level)) for level in by_dim)
    return OrderComplex(X, simplices)


def coboundary(K: OrderComplex, p: int, F: Field = QQ) -> list:
    """Matrix of d^p : C^p -> C^{p+1}; rows are (p+1)-simplices.

    The face of sigma = (x_0 < ... < x_{p+1}) obtained by deleting x_j
    enters with sign (-1)^j.
    """
    if p + 1 > K.dim or p < 0:
        return []
    src = K.index(p)
    ncols = len(K.simplices[p])
    one, mone = F(1), F(-1)
    rows = []
    for sigma in K.simplices[p + 1]:
        row = [F.zero] * ncols
        for j in range(len(sigma)):
            face = sigma[:j] + sigma[j + 1:]
            row[src[face]] = one if j % 2 == 0 else mone
        rows.append(row)
    return rows


def coboundary_ranks(K: OrderComplex, F: Field) -> list[int]:
    """rank d^p for p = 0 .. dim-1."""
    out = []
    for p in range(K.dim):
        out.append(rank(coboundary(K, p, F), len(K.simplices[p]), F))
    return out


def betti(X: Poset, field=QQ) -> list[int]:
    """Unreduced cohomology dimensions beta^0 .. beta^dim of the order complex."""
    F = parse_field(field)
    K = order_complex(X)
    counts = K.counts()
    ranks = coboundary_ranks(K, F)
    out = []
    for p, c in enumerate(counts):
        r_out = ranks[p] if p < len(ranks) else 0
        r_in = ranks[p - 1] if p >= 1 else 0
        out.append(c - r_out - r_in)
    return out


def euler_char_simplicial(X: Poset) -> int:
    return sum((-1) ** p * c for p, c in enumerate(order_complex(X).counts()))


def pad(values, length: int) -> list:
    values = list(values)
    return values + [0] * (length - len(values))
