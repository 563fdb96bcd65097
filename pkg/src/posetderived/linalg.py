"""Exact dense linear algebra over Z, Q and F_p.

Two layers live here.  The low-level helpers (``rref``, ``rank``,
``nullspace_vectors``, ...) work on plain lists of rows together with a
:class:`~posetderived.fields.Field`; the sheaf and homology code calls them
directly.  :class:`ExactMatrix` wraps a matrix with its ring tag and carries
the public operations: unimodular inversion, characteristic polynomials,
invariant factors and the similarity test built on them.

Modular elimination is dispatched to :mod:`posetderived.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import kernels
from .errors import (
    FieldMismatch,
    NotSquare,
    NotUnimodular,
    RingMismatch,
    SizeMismatch,
)
from .fields import QQ, ZZ, Field, Integers
from .poly import Poly


# ---------------------------------------------------------------------------
# list-of-rows helpers


def _rref_q(rows, ncols):
    A = [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in rows]
    m = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        row = A[r]
        inv = 1 / row[c]
        if inv != 1:
            for j in range(c, ncols):
                if row[j]:
                    row[j] *= inv
        for i in range(m):
            if i != r:
                f = A[i][c]
                if f:
                    other = A[i]
                    for j in range(c, ncols):
                        if row[j]:
                            other[j] -= f * row[j]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref(rows, ncols, F: Field):
    """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
    if not rows or not ncols:
        return [], []
    if F.p:
        return kernels.rref_mod_p(rows, ncols, F.p)
    return _rref_q(rows, ncols)


def _integral_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _rank_bareiss(A, ncols):
    # fraction-free elimination; every division below is exact
    m = len(A)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        prow = A[r]
        pc = prow[c]
        for i in range(r + 1, m):
            row = A[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (pc * row[j] - f * prow[j]) // prev
            elif pc != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = pc * row[j] // prev
            row[c] = 0
        prev = pc
        r += 1
    return r


def rank(rows, ncols, F: Field) -> int:
    if not rows or not ncols:
        return 0
    if F.p:
        return kernels.rank_mod_p(rows, ncols, F.p)
    return _rank_bareiss(_integral_rows(rows), ncols)


def nullspace_vectors(rows, ncols, F: Field):
    """Basis of ``{v : A v = 0}`` plus the free column indices.

    Basis vector ``k`` is 1 at ``free[k]`` and 0 at the other free columns,
    so the coordinates of any kernel vector are its entries at ``free``.
    """
    R, pivots = rref(rows, ncols, F)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            if R[i][f]:
                v[pc] = F.neg(R[i][f])
        basis.append(v)
    return basis, free


def complement_basis(vectors, dim, F: Field):
    """Standard basis vectors extending span(vectors) to the whole space.

    Returns indices ``e`` such that span(vectors) + span(e_i) = F^dim is
    direct, chosen greedily in index order (the non-pivot columns of the
    echelon form of ``vectors``).
    """
    if not vectors:
        return list(range(dim))
    _, pivots = rref(vectors, dim, F)
    pivset = set(pivots)
    return [c for c in range(dim) if c not in pivset]


def matmul(A, B, F) -> list:
    """Product of list matrices; ``A`` is m x k, ``B`` is k x n."""
    if not A:
        return []
    k = len(B)
    n = len(B[0]) if B else 0
    if isinstance(F, Field) and F.p:
        return kernels.matmul_mod_p(A, B, F.p) if k else [[0] * n for _ in A]
    out = []
    for row in A:
        acc = [0] * n
        for t in range(k):
            a = row[t]
            if a:
                bt = B[t]
                for j in range(n):
                    if bt[j]:
                        acc[j] += a * bt[j]
        out.append([F(x) for x in acc] if isinstance(F, Field) else acc)
    return out


def matvec(A, v, F: Field) -> list:
    red = F.reduce
    return [red(sum(a * b for a, b in zip(row, v) if a and b)) for row in A]


def transpose(A, ncols=None) -> list:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def identity(n, F) -> list:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# ExactMatrix


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix with exact entries and an explicit ring tag."""

    ring: object
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows, ring=ZZ, ncols=None):
        rows = tuple(tuple(ring(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise SizeMismatch("ragged rows")
        return cls(ring, rows, ncols)

    @classmethod
    def identity(cls, n, ring=ZZ):
        return cls.from_rows(identity(n, ring), ring, n)

    @classmethod
    def zeros(cls, m, n, ring=ZZ):
        return cls.from_rows([[0] * n for _ in range(m)], ring, n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def to(self, ring) -> ExactMatrix:
        """Coerce entries into ``ring`` (e.g. reduce an integer matrix mod p)."""
        return ExactMatrix.from_rows(self.rows, ring, self.ncols)

    @property
    def T(self) -> ExactMatrix:
        cols = tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        return ExactMatrix(self.ring, cols, self.nrows)

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise SizeMismatch(f"{self.shape} @ {other.shape}")
        prod = matmul(self.tolist(), other.tolist(), self.ring)
        return ExactMatrix.from_rows(prod, self.ring, other.ncols)

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise SizeMismatch(f"{self.shape} + {other.shape}")
        return ExactMatrix.from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ring, self.ncols)

    def __neg__(self):
        return ExactMatrix.from_rows([[-a for a in r] for r in self.rows], self.ring, self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def entry_sum(self):
        return sum(sum(r) for r in self.rows)

    def rank(self, field: Field | None = None) -> int:
        F = field or (self.ring if isinstance(self.ring, Field) else QQ)
        return rank([list(r) for r in self.rows], self.ncols, F)

    def __str__(self):
        return "\n".join("[" + " ".join(str(x) for x in r) + "]" for r in self.rows)


def as_matrix(M, ring=None) -> ExactMatrix:
    if isinstance(M, ExactMatrix):
        return M if ring is None or M.ring == ring else M.to(ring)
    return ExactMatrix.from_rows(M, ring or ZZ)


def _require_square(M: ExactMatrix):
    if not M.is_square:
        raise NotSquare(f"matrix of shape {M.shape} is not square")


def inverse_unimodular(M) -> ExactMatrix:
    """Exact integer inverse of an integer matrix with determinant +-1."""
    M = as_matrix(M, ZZ)
    _require_square(M)
    n = M.nrows
    aug = [list(M.rows[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    R, pivots = _rref_q(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotUnimodular("matrix is singular")
    inv = [row[n:] for row in R[:n]]
    if any(x.denominator != 1 for row in inv for x in row):
        raise NotUnimodular("inverse is not integral")
    det = determinant(M)
    if det not in (1, -1):
        raise NotUnimodular(f"determinant {det}")
    return ExactMatrix.from_rows(inv, ZZ, n)


def determinant(M):
    """Determinant via the constant term of the characteristic polynomial."""
    M = as_matrix(M)
    _require_square(M)
    cp = char_poly(M)
    c0 = cp.coeffs[0] if cp.coeffs else M.ring.zero
    return c0 if M.nrows % 2 == 0 else M.ring.reduce(-c0)


def char_poly(M) -> Poly:
    """det(xI - M) by Berkowitz's division-free recurrence.

    Works over any commutative ring, so integer inputs stay integral.
    """
    M = as_matrix(M)
    _require_square(M)
    R = M.ring
    red = R.reduce
    A = M.rows
    n = M.nrows
    # coefficient vectors are kept in descending order
    cur = [R.one]
    for r in range(n):
        a = A[r][r]
        row = A[r][:r]
        col = [A[i][r] for i in range(r)]
        vec = [R.one, red(-a)]
        # successive R . A_r^k . col
        w = col
        for _ in range(r):
            vec.append(red(-sum(x * y for x, y in zip(row, w))))
            w = [red(sum(A[i][j] * w[j] for j in range(r))) for i in range(r)]
        # multiply lower-triangular Toeplitz (r+2)x(r+1) by cur
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(min(i, r) + 1):
                s += vec[i - j] * cur[j]
            new.append(red(s))
        cur = new
    return Poly(list(reversed(cur)), R)


def _field_of(M: ExactMatrix, field):
    if field is not None:
        return field
    if isinstance(M.ring, Field):
        return M.ring
    return QQ


def smith_form_poly(A, F: Field, track: bool = False):
    """Smith normal form of a square matrix over F[x].

    Pivot rule: lowest-degree nonzero entry of the trailing block, ties
    broken row-major.  Returns ``(diag, U, V)`` with ``U A V = diag``;
    ``U``/``V`` are None unless ``track``.
    """
    A = [list(row) for row in A]
    n = len(A)
    m = len(A[0]) if A else 0
    one, zero = Poly([1], F), Poly([], F)
    U = [[one if i == j else zero for j in range(n)] for i in range(n)] if track else None
    V = [[one if i == j else zero for j in range(m)] for i in range(m)] if track else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b if b else a for a, b in zip(A[dst], A[src])]
        if track:
            U[dst] = [a + q * b if b else a for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            if row[src]:
                row[dst] = row[dst] + q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] = row[dst] + q * row[src]

    size = min(n, m)
    for t in range(size):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    e = A[i][j]
                    if e and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
                        if best[0] == 0:
                            break
                if best is not None and best[0] == 0:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            piv = A[t][t]
            clean = True
            for i in range(t + 1, n):
                if A[i][t]:
                    q, r = divmod(A[i][t], piv)
                    add_row(i, t, -q)
                    if r:
                        clean = False
            for j in range(t + 1, m):
                if A[t][j]:
                    q, r = divmod(A[t][j], piv)
                    add_col(j, t, -q)
                    if r:
                        clean = False
            if not clean:
                continue
            bad = None
            if piv.degree > 0:
                for i in range(t + 1, n):
                    for j in range(t + 1, m):
                        if A[i][j] and A[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            add_row(t, bad, one)
        if best is None:
            break

    diag = []
    for t in range(size):
        d = A[t][t]
        if d:
            inv = F.inv(d.lead)
            if inv != 1:
                A[t] = [e.scale(inv) for e in A[t]]
                if track:
                    U[t] = [e.scale(inv) for e in U[t]]
            d = A[t][t]
        diag.append(d)
    return diag, U, V


def characteristic_matrix(M: ExactMatrix, F: Field):
    """xI - M as a list matrix of polynomials over F."""
    n = M.nrows
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            c = F.reduce(-F(M.rows[i][j]))
            row.append(Poly([c, 1] if i == j else [c], F))
        out.append(row)
    return out


def invariant_factors(M, field: Field | None = None) -> tuple:
    """Nonconstant monic invariant factors of M over ``field``.

    Integer matrices default to Q; pass ``GF(p)`` to work modulo p.
    The result satisfies f_1 | f_2 | ... and prod f_i = char_poly(M).
    """
    M = as_matrix(M)
    _require_square(M)
    F = _field_of(M, field)
    if isinstance(M.ring, Field) and field is not None and M.ring != field:
        raise FieldMismatch(f"matrix over {M.ring}, requested {field}")
    diag, _, _ = smith_form_poly(characteristic_matrix(M, F), F)
    return tuple(d for d in diag if d.degree > 0)


def similar(M1, M2, field: Field | None = None) -> bool:
    """Similarity over a field via equality of invariant factors."""
    M1, M2 = as_matrix(M1), as_matrix(M2)
    _require_square(M1)
    _require_square(M2)
    if M1.shape != M2.shape:
        raise SizeMismatch(f"{M1.shape} vs {M2.shape}")
    if isinstance(M1.ring, Field) and isinstance(M2.ring, Field) and M1.ring != M2.ring:
        raise FieldMismatch(f"{M1.ring} vs {M2.ring}")
    F = field or (M1.ring if isinstance(M1.ring, Field) else
                  M2.ring if isinstance(M2.ring, Field) else QQ)
    if char_poly(M1.to(F)) != char_poly(M2.to(F)):
        return False
    return invariant_factors(M1.to(F), F) == invariant_factors(M2.to(F), F)


def nullspace(M, field: Field | None = None) -> ExactMatrix:
    """Kernel basis as the columns of a ``cols x k`` matrix (rref pivot convention)."""
    M = as_matrix(M)
    F = _field_of(M, field)
    basis, _ = nullspace_vectors([[F(x) for x in r] for r in M.rows], M.ncols, F)
    if not basis:
        return ExactMatrix(F, tuple(() for _ in range(M.ncols)), 0)
    return ExactMatrix.from_rows(transpose(basis), F, len(basis))


def kronecker(M1, M2) -> ExactMatrix:
    M1, M2 = as_matrix(M1), as_matrix(M2)
    if M1.ring != M2.ring:
        raise RingMismatch(f"{M1.ring} vs {M2.ring}")
    red = M1.ring.reduce
    rows = []
    for r1 in M1.rows:
        for r2 in M2.rows:
            rows.append([red(a * b) for a in r1 for b in r2])
    return ExactMatrix.from_rows(rows, M1.ring, M1.ncols * M2.ncols)


__all__ = [
    "ExactMatrix", "Integers", "ZZ", "QQ",
    "inverse_unimodular", "char_poly", "determinant", "invariant_factors",
    "similar", "nullspace", "kronecker", "smith_form_poly",
    "rref", "rank", "nullspace_vectors", "complement_basis", "matmul",
]
