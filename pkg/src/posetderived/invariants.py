"""Derived-equivalence invariants of a poset and a pairwise comparator.

Matrices are indexed by the canonical linear extension, so the incidence
matrix is upper unitriangular and every report is reproducible.

The Coxeter matrix is the plain product ``1_X * 1_X^{-t}``; no sign is
applied.  Similarity classes are insensitive to that convention.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Union

from .fields import DEFAULT_PRIMES, GF, QQ, ZZ, Field, parse_field
from .homology import betti, euler_char_simplicial, pad
from .linalg import ExactMatrix, char_poly, invariant_factors, inverse_unimodular
from .poly import poly_prod
from .poset import Poset, connected_components, linear_extension, longest_chain


def incidence_matrix(X: Poset) -> ExactMatrix:
    order = linear_extension(X)
    return ExactMatrix.from_rows(
        [[1 if X.le(a, b) else 0 for b in order] for a in order], ZZ)


def mobius_matrix(X: Poset) -> ExactMatrix:
    """Inverse of the incidence matrix; entry (x, y) is mu_X(x, y)."""
    return inverse_unimodular(incidence_matrix(X))


def mobius(X: Poset) -> dict:
    """mu_X as a dict keyed by element index pairs (input order)."""
    order = linear_extension(X)
    M = mobius_matrix(X)
    return {(order[i], order[j]): M[i, j] for i in range(X.n) for j in range(X.n)}


def coxeter_matrix(X: Poset) -> ExactMatrix:
    inc = incidence_matrix(X)
    return inc @ inverse_unimodular(inc).T


def euler_char_mobius(X: Poset) -> int:
    return mobius_matrix(X).entry_sum()


def _poly_strs(polys):
    return [str(f) for f in polys]


@dataclass
class InvariantReport:
    n: int
    component_count: int
    component_sizes: list
    dim: int
    mobius_entry_sum: int
    coxeter_charpoly: list          # integer coefficients, leading term first
    q_invariant_factors: list       # printed polynomials
    p_invariant_factors: dict       # prime -> printed polynomials
    betti: dict                     # field tag -> Betti numbers
    euler_char: int
    primes: list = field(default_factory=list)

    def __post_init__(self):
        for tag, bs in self.betti.items():
            alt = sum((-1) ** i * b for i, b in enumerate(bs))
            if alt != self.euler_char:
                raise AssertionError(f"Betti numbers over {tag} give chi={alt}, "
                                     f"expected {self.euler_char}")
        if self.mobius_entry_sum != self.euler_char:
            raise AssertionError("Mobius entry sum differs from the Euler characteristic")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["p_invariant_factors"] = {str(p): v for p, v in self.p_invariant_factors.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def render(self) -> str:
        lines = [
            f"points: {self.n}",
            f"components: {self.component_count} (sizes {self.component_sizes})",
            f"dimension: {self.dim}",
            f"euler characteristic: {self.euler_char}",
            f"mobius entry sum: {self.mobius_entry_sum}",
        ]
        for tag, bs in self.betti.items():
            lines.append(f"betti over {tag}: {tuple(bs)}")
        cp = " ".join(str(c) for c in self.coxeter_charpoly)
        lines.append(f"coxeter char poly coefficients: [{cp}]")
        lines.append("invariant factors over Q: " + "; ".join(self.q_invariant_factors))
        for p, fs in self.p_invariant_factors.items():
            lines.append(f"invariant factors over F{p}: " + "; ".join(fs))
        return "\n".join(lines)


def _check_primes(primes):
    return [GF(p).p for p in primes]


def invariant_report(X: Poset, primes=DEFAULT_PRIMES, fields=None) -> InvariantReport:
    """Every implemented invariant of X.

    ``fields`` selects where Betti numbers are computed; the default is Q
    followed by F_p for each prime in ``primes``.
    """
    primes = _check_primes(primes)
    if fields is None:
        fields = [QQ] + [GF(p) for p in primes]
    fields = [parse_field(f) for f in fields]
    comps = connected_components(X)
    cox = coxeter_matrix(X)
    cp = char_poly(cox)
    qf = invariant_factors(cox, QQ)
    if poly_prod(qf, QQ) != cp.to_field(QQ):
        raise AssertionError("product of invariant factors differs from char poly")
    pf = {p: _poly_strs(invariant_factors(cox.to(GF(p)), GF(p))) for p in primes}
    return InvariantReport(
        n=X.n,
        component_count=len(comps),
        component_sizes=sorted(len(c) for c in comps),
        dim=longest_chain(X),
        mobius_entry_sum=euler_char_mobius(X),
        coxeter_charpoly=[int(c) for c in cp.desc()],
        q_invariant_factors=_poly_strs(qf),
        p_invariant_factors=pf,
        betti={F.tag: betti(X, F) for F in fields},
        euler_char=euler_char_simplicial(X),
        primes=list(primes),
    )


@dataclass(frozen=True)
class Distinguished:
    invariant: str
    x_value: object
    y_value: object

    def __post_init__(self):
        if self.x_value == self.y_value:
            raise AssertionError("a distinguishing invariant must differ")

    def render(self) -> str:
        return (f"distinguished by {self.invariant}:\n"
                f"  first:  {self.x_value}\n  second: {self.y_value}")


@dataclass(frozen=True)
class NotDistinguished:
    checked: tuple

    def render(self) -> str:
        return ("not distinguished (necessary conditions only; this does not prove "
                "derived equivalence). checked: " + ", ".join(self.checked))


Verdict = Union[Distinguished, NotDistinguished]


def comparison_checks(primes):
    """Ordered (name, function) pairs evaluated by :func:`distinguish`."""
    primes = _check_primes(primes)
    cox = lru_cache(maxsize=8)(coxeter_matrix)
    checks = [
        ("point count", lambda X: X.n),
        ("component count", lambda X: len(connected_components(X))),
        ("component sizes", lambda X: sorted(len(c) for c in connected_components(X))),
        ("euler characteristic", euler_char_mobius),
        ("betti numbers over Q", lambda X: betti(X, QQ)),
    ]
    for p in primes:
        checks.append((f"betti numbers over F{p}", lambda X, p=p: betti(X, GF(p))))
    checks.append(("coxeter char poly",
                   lambda X: [int(c) for c in char_poly(cox(X)).desc()]))
    checks.append(("invariant factors over Q",
                   lambda X: _poly_strs(invariant_factors(cox(X), QQ))))
    for p in primes:
        checks.append((f"invariant factors over F{p}",
                       lambda X, p=p: _poly_strs(invariant_factors(cox(X).to(GF(p)), GF(p)))))
    return checks


def distinguish(X: Poset, Y: Poset, primes=DEFAULT_PRIMES) -> Verdict:
    """First invariant on which X and Y differ, else NotDistinguished.

    Agreement is only a necessary condition for derived equivalence.
    """
    checked = []
    for name, fn in comparison_checks(primes):
        vx, vy = fn(X), fn(Y)
        if name.startswith("betti"):
            # posets of different dimension are compared on padded lists
            length = max(len(vx), len(vy))
            vx, vy = pad(vx, length), pad(vy, length)
        checked.append(name)
        if vx != vy:
            return Distinguished(name, vx, vy)
    return NotDistinguished(tuple(checked))
