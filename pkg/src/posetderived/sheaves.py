"""Sheaves of vector spaces on a poset, viewed as commutative diagrams.

A :class:`Diagram` assigns a stalk ``F(x) = k^{dims[x]}`` to each element
and a matrix ``F(x) -> F(y)`` to each Hasse cover ``x -> y``.  Matrices are
lists of rows, shape ``dims[y] x dims[x]``.

Ext groups are computed from minimal projective resolutions:
``Hom(P_x, G) = G(x)`` turns a resolution of ``F`` into a cochain complex
whose cohomology is ``Ext^*(F, G)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    BaseMismatch,
    ElementOnWrongSide,
    FieldMismatch,
    MissingElement,
    NotClosed,
    NotCommutative,
)
from .fields import QQ, Field, parse_field
from .homology import order_complex, pad
from .linalg import complement_basis, nullspace_vectors, rank
from .poset import Poset, _bits, covers, is_closed, linear_extension, longest_chain, opposite, product


def _zeros(m, n, F):
    return [[F.zero] * n for _ in range(m)]


def _eye(n, F):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def _mul(A, B, n, F):
    """A (m x k) times B (k x n) with explicit ``n`` so empty shapes work."""
    red = F.reduce
    out = []
    for row in A:
        acc = [0] * n
        for t, a in enumerate(row):
            if a:
                bt = B[t]
                for j in range(n):
                    if bt[j]:
                        acc[j] += a * bt[j]
        out.append([red(F(x)) if not F.p else x % F.p for x in acc])
    return out


def _apply(A, v, F):
    red = F.reduce
    return [red(sum(a * b for a, b in zip(row, v) if a and b)) for row in A]


class Diagram:
    """A commutative diagram of finite-dimensional vector spaces over a poset."""

    def __init__(self, base: Poset, field: Field, dims, maps=None, *, check=True):
        self.base = base
        self.field = F = parse_field(field)
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != base.n:
            raise ValueError("one stalk dimension per element is required")
        maps = dict(maps or {})
        self.covers = covers(base)
        cover_set = set(self.covers)
        for key in maps:
            if tuple(key) not in cover_set:
                raise ValueError(f"map on {key} which is not a Hasse cover")
        self.maps = {}
        for x, y in self.covers:
            mx, my = self.dims[x], self.dims[y]
            M = maps.get((x, y))
            if M is None:
                M = _zeros(my, mx, F)
            else:
                M = [[F(a) for a in row] for row in M]
                if len(M) != my or any(len(r) != mx for r in M):
                    raise ValueError(f"map {x}->{y} should be {my}x{mx}")
            self.maps[(x, y)] = M
        self._transport = {}
        if check and not self.is_commutative():
            raise NotCommutative("diagram does not commute")

    @cached_property
    def _in_covers(self):
        into = {y: [] for y in range(self.base.n)}
        for x, y in self.covers:
            into[y].append(x)
        return into

    def transport(self, x: int, y: int):
        """The composite map F(x) -> F(y) for x <= y (zero matrix otherwise)."""
        key = (x, y)
        hit = self._transport.get(key)
        if hit is not None:
            return hit
        F = self.field
        if x == y:
            M = _eye(self.dims[x], F)
        elif not self.base.le(x, y):
            M = _zeros(self.dims[y], self.dims[x], F)
        else:
            z = next(z for z in self._in_covers[y] if self.base.le(x, z))
            M = _mul(self.maps[(z, y)], self.transport(x, z), self.dims[x], F)
        self._transport[key] = M
        return M

    def is_commutative(self) -> bool:
        """Every pair of cover paths between two elements composes equally.

        By induction along a linear extension it suffices that, for each
        x < y, all covers z -> y with x <= z give the same composite.
        """
        X = self.base
        order = linear_extension(X)
        for x in range(X.n):
            for y in order:
                if y == x or not X.le(x, y):
                    continue
                ways = [z for z in self._in_covers[y] if X.le(x, z)]
                first = _mul(self.maps[(ways[0], y)], self.transport(x, ways[0]),
                             self.dims[x], self.field)
                for z in ways[1:]:
                    other = _mul(self.maps[(z, y)], self.transport(x, z),
                                 self.dims[x], self.field)
                    if other != first:
                        return False
        return True

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def __repr__(self):
        stalks = " ".join(f"{l}:{d}" for l, d in zip(self.base.labels, self.dims))
        return f"Diagram[{self.field}]({stalks})"

    # -- interchange -------------------------------------------------------

    def to_json(self) -> str:
        from .io import poset_to_dict

        def enc(a):
            if isinstance(a, Fraction):
                return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            return int(a)

        labels = self.base.labels
        return json.dumps({
            "poset": poset_to_dict(self.base),
            "field": self.field.tag,
            "stalks": {labels[i]: d for i, d in enumerate(self.dims)},
            "maps": [{"from": labels[x], "to": labels[y],
                      "matrix": [[enc(a) for a in row] for row in M]}
                     for (x, y), M in self.maps.items()],
        }, indent=2)

    @classmethod
    def from_json(cls, text) -> Diagram:
        from .io import poset_from_dict
        data = json.loads(text) if isinstance(text, str) else text
        X = poset_from_dict(data["poset"])
        F = parse_field(data["field"])
        dims = [int(data["stalks"].get(lbl, 0)) for lbl in X.labels]
        maps = {}
        for entry in data.get("maps", []):
            key = (X.index(entry["from"]), X.index(entry["to"]))
            maps[key] = [[F(Fraction(a)) for a in row] for row in entry["matrix"]]
        return cls(X, F, dims, maps)


def _same_setting(F: Diagram, G: Diagram):
    if F.base != G.base:
        raise BaseMismatch("diagrams live on different posets")
    if F.field != G.field:
        raise FieldMismatch(f"{F.field} vs {G.field}")


# ---------------------------------------------------------------------------
# standard sheaves


def indicator_sheaf(X: Poset, support, field=QQ) -> Diagram:
    """k on a convex subset, identity between adjacent nonzero stalks."""
    F = parse_field(field)
    support = set(support)
    dims = [1 if i in support else 0 for i in range(X.n)]
    maps = {(x, y): [[F.one]] for x, y in covers(X) if x in support and y in support}
    return Diagram(X, F, dims, maps, check=False)


def _resolve_element(X: Poset, x):
    if x is None:
        raise MissingElement("an element is required")
    if isinstance(x, int) and 0 <= x < X.n:
        return x
    return X.index(x)


def standard_sheaf(X: Poset, kind: str, x=None, field=QQ) -> Diagram:
    """``simple``, ``projective`` (k on U_x), ``injective`` (k on {x}^-) or ``constant``."""
    if kind == "constant":
        return indicator_sheaf(X, range(X.n), field)
    i = _resolve_element(X, x)
    if kind == "simple":
        return indicator_sheaf(X, [i], field)
    if kind == "projective":
        return indicator_sheaf(X, X.up_set(i), field)
    if kind == "injective":
        return indicator_sheaf(X, X.down_set(i), field)
    raise ValueError(f"unknown sheaf kind {kind!r}")


def truncated_sheaf(X: Poset, Y, kind: str, element, field=QQ) -> Diagram:
    """Projective restricted to a closed Y, or injective restricted to U = X \\ Y."""
    Y = set(Y)
    if not is_closed(X, Y):
        raise NotClosed("Y must be downward closed")
    e = _resolve_element(X, element)
    if kind == "proj_trunc":
        if e not in Y:
            raise ElementOnWrongSide("truncated projectives need an element of Y")
        return indicator_sheaf(X, [z for z in X.up_set(e) if z in Y], field)
    if kind == "inj_trunc":
        if e in Y:
            raise ElementOnWrongSide("truncated injectives need an element outside Y")
        return indicator_sheaf(X, [z for z in X.down_set(e) if z not in Y], field)
    raise ValueError(f"unknown truncated kind {kind!r}")


# ---------------------------------------------------------------------------
# Hom spaces


def hom_space(F: Diagram, G: Diagram):
    """(dimension, basis) of natural transformations F -> G.

    Each basis element is a dict ``x -> matrix G(x) x F(x)``.
    """
    _same_setting(F, G)
    K = F.field
    X = F.base
    offset = []
    total = 0
    for x in range(X.n):
        offset.append(total)
        total += G.dims[x] * F.dims[x]
    rows = []
    for (x, y) in F.covers:
        fx, fy, gx, gy = F.dims[x], F.dims[y], G.dims[x], G.dims[y]
        Fm, Gm = F.maps[(x, y)], G.maps[(x, y)]
        # (G_xy phi_x - phi_y F_xy)[r][c] = 0 for r < gy, c < fx
        for r in range(gy):
            for c in range(fx):
                row = [K.zero] * total
                for s in range(gx):
                    if Gm[r][s]:
                        row[offset[x] + s * fx + c] += Gm[r][s]
                for s in range(fy):
                    if Fm[s][c]:
                        row[offset[y] + r * fy + s] -= Fm[s][c]
                rows.append([K.reduce(a) for a in row])
    basis, _ = nullspace_vectors(rows, total, K) if rows else (
        [[K.one if i == j else K.zero for i in range(total)] for j in range(total)], None)
    morphisms = []
    for v in basis:
        phi = {}
        for x in range(X.n):
            fx, gx = F.dims[x], G.dims[x]
            phi[x] = [[v[offset[x] + r * fx + c] for c in range(fx)] for r in range(gx)]
        morphisms.append(phi)
    return len(basis), morphisms


def is_morphism(phi, F: Diagram, G: Diagram) -> bool:
    K = F.field
    for (x, y) in F.covers:
        left = _mul(G.maps[(x, y)], phi[x], F.dims[x], K)
        right = _mul(phi[y], F.maps[(x, y)], F.dims[x], K)
        if left != right:
            return False
    return True


# ---------------------------------------------------------------------------
# projective covers and resolutions


@dataclass
class ProjectiveCover:
    """Generators of a surjection from a sum of indecomposable projectives.

    Generator k is the element ``gens[k]``; it maps the unit of
    P_{gens[k]} to ``vectors[k]`` in the stalk of the target at that element.
    """

    gens: list
    vectors: list

    def multiplicities(self, n: int) -> list[int]:
        out = [0] * n
        for g in self.gens:
            out[g] += 1
        return out


def top_and_cover(F: Diagram):
    """Top dimensions per element and the minimal projective cover of F.

    top(x) = F(x) / (sum of images of the cover maps into x); the cover
    uses standard basis vectors completing those images, chosen by echelon
    pivoting.
    """
    K = F.field
    X = F.base
    tops = [0] * X.n
    gens, vecs = [], []
    into = F._in_covers
    for x in linear_extension(X):
        d = F.dims[x]
        if d == 0:
            continue
        images = []
        for z in into[x]:
            M = F.maps[(z, x)]
            for c in range(F.dims[z]):
                col = [M[r][c] for r in range(d)]
                if any(col):
                    images.append(col)
        extra = complement_basis(images, d, K)
        tops[x] = len(extra)
        for e in extra:
            v = [K.zero] * d
            v[e] = K.one
            gens.append(x)
            vecs.append(v)
    return tops, ProjectiveCover(gens, vecs)


def canonical_cover(F: Diagram) -> ProjectiveCover:
    """The big surjection from the sum over x of P_x^{dim F(x)}."""
    K = F.field
    gens, vecs = [], []
    for x in range(F.base.n):
        for e in range(F.dims[x]):
            v = [K.zero] * F.dims[x]
            v[e] = K.one
            gens.append(x)
            vecs.append(v)
    return ProjectiveCover(gens, vecs)


def _stalk_matrix(D: Diagram, cover: ProjectiveCover, z: int, dom):
    """Matrix of the cover at stalk z; columns follow ``dom`` (generator ids)."""
    cols = [_apply(D.transport(cover.gens[k], z), cover.vectors[k], D.field) for k in dom]
    d = D.dims[z]
    return [[cols[j][r] for j in range(len(dom))] for r in range(d)]


@dataclass
class _Kernel:
    diagram: Diagram
    domains: list     # per z: generator ids k with gens[k] <= z
    bases: list       # per z: kernel basis vectors in ``domains[z]`` coordinates


def _kernel(D: Diagram, cover: ProjectiveCover) -> _Kernel:
    K = D.field
    X = D.base
    domains, bases, frees = [], [], []
    for z in range(X.n):
        dom = [k for k, g in enumerate(cover.gens) if X.le(g, z)]
        M = _stalk_matrix(D, cover, z, dom)
        if dom and D.dims[z]:
            basis, free = nullspace_vectors(M, len(dom), K)
        else:
            basis = [[K.one if i == j else K.zero for i in range(len(dom))]
                     for j in range(len(dom))]
            free = list(range(len(dom)))
        domains.append(dom)
        bases.append(basis)
        frees.append(free)
    maps = {}
    for (z, w) in covers(X):
        pos_w = {k: t for t, k in enumerate(domains[w])}
        rows = [[K.zero] * len(bases[z]) for _ in bases[w]]
        for c, b in enumerate(bases[z]):
            emb = [K.zero] * len(domains[w])
            for t, k in enumerate(domains[z]):
                emb[pos_w[k]] = b[t]
            for r, f in enumerate(frees[w]):
                rows[r][c] = emb[f]
        maps[(z, w)] = rows
    dims = [len(b) for b in bases]
    return _Kernel(Diagram(X, K, dims, maps, check=False), domains, bases)


@dataclass
class ProjResolution:
    """Projective resolution ... -> P_1 -> P_0 -> F -> 0.

    ``terms[i]`` lists the elements x of the summands P_x of P_i (with
    repetition).  ``differentials[i]`` (i >= 1) is the scalar matrix of
    P_i -> P_{i-1}: entry [k][l] is the coefficient of the map from the
    l-th summand of P_i into the k-th summand of P_{i-1}, nonzero only
    when the latter's element lies below the former's.  ``augmentation``
    holds the images in F of the generators of P_0.
    """

    diagram: Diagram
    terms: list
    differentials: list
    augmentation: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def stalk_differential(self, i: int, z: int):
        """d_i at stalk z with its row/column generator ids."""
        X = self.diagram.base
        rows = [k for k, g in enumerate(self.terms[i - 1]) if X.le(g, z)]
        cols = [l for l, g in enumerate(self.terms[i]) if X.le(g, z)]
        D = self.differentials[i]
        return [[D[k][l] for l in cols] for k in rows], rows, cols

    def verify(self) -> bool:
        """Exactness of the augmented complex at every stalk and d o d = 0."""
        Fd = self.diagram
        K = Fd.field
        X = Fd.base
        for z in range(X.n):
            dom = [k for k, g in enumerate(self.terms[0]) if X.le(g, z)]
            aug = _stalk_matrix(Fd, ProjectiveCover(self.terms[0], self.augmentation), z, dom)
            if rank(aug, len(dom), K) != Fd.dims[z]:
                return False
            prev_rank = Fd.dims[z]
            prev_dim = len(dom)
            prev_mat = aug
            for i in range(1, len(self.terms) + 1):
                if i < len(self.terms):
                    M, rows, cols = self.stalk_differential(i, z)
                    r = rank(M, len(cols), K)
                    comp = _mul(prev_mat, M, len(cols), K) if prev_mat and M else []
                    if any(any(row) for row in comp):
                        return False
                    ncols = len(cols)
                else:
                    M, r, ncols = [], 0, 0
                # image of d_i equals kernel of the previous map
                if r != prev_dim - prev_rank:
                    return False
                prev_rank, prev_dim, prev_mat = r, ncols, M
        return True


def projective_resolution(F: Diagram, minimal: bool = True) -> ProjResolution:
    """Iterated covers of kernels until the kernel vanishes.

    With ``minimal=False`` every step uses the canonical cover instead;
    the result is longer and wider but resolves the same diagram.
    """
    X = F.base
    bound = longest_chain(X) + 1
    cover = top_and_cover(F)[1] if minimal else canonical_cover(F)
    terms = [list(cover.gens)]
    diffs = [None]
    augmentation = [list(v) for v in cover.vectors]
    D = F
    steps = 0
    while True:
        ker = _kernel(D, cover)
        if ker.diagram.is_zero():
            break
        steps += 1
        if minimal and steps > bound:
            raise AssertionError("resolution longer than the global dimension bound")
        if not minimal and steps > bound + X.n + 2:
            raise AssertionError("canonical resolution failed to terminate")
        nxt = top_and_cover(ker.diagram)[1] if minimal else canonical_cover(ker.diagram)
        prev_gens = terms[-1]
        d = [[D.field.zero] * len(nxt.gens) for _ in prev_gens]
        for l, (z, v) in enumerate(zip(nxt.gens, nxt.vectors)):
            # embed the kernel vector into coordinates of the previous term
            for b, coef in zip(ker.bases[z], v):
                if coef:
                    for t, k in enumerate(ker.domains[z]):
                        if b[t]:
                            d[k][l] = D.field.reduce(d[k][l] + coef * b[t])
        terms.append(list(nxt.gens))
        diffs.append(d)
        D, cover = ker.diagram, nxt
    return ProjResolution(F, terms, diffs, augmentation)


def hom_complex(res: ProjResolution, G: Diagram):
    """Cochain complex Hom(P_*, G): dimensions and coboundary matrices."""
    K = G.field
    X = G.base
    dims = []
    offsets = []
    for gens in res.terms:
        off, tot = [], 0
        for g in gens:
            off.append(tot)
            tot += G.dims[g]
        offsets.append(off)
        dims.append(tot)
    deltas = []
    for i in range(1, len(res.terms)):
        D = res.differentials[i]
        src, dst = res.terms[i - 1], res.terms[i]
        rows = [[K.zero] * dims[i - 1] for _ in range(dims[i])]
        for l, y in enumerate(dst):
            for k, x in enumerate(src):
                c = D[k][l]
                if not c or not X.le(x, y):
                    continue
                T = G.transport(x, y)
                for r in range(G.dims[y]):
                    for s in range(G.dims[x]):
                        if T[r][s]:
                            rr, cc = offsets[i][l] + r, offsets[i - 1][k] + s
                            rows[rr][cc] = K.reduce(rows[rr][cc] + c * T[r][s])
        deltas.append(rows)
    return dims, deltas


def ext_dims(F: Diagram, G: Diagram, resolution: ProjResolution | None = None) -> list[int]:
    """dim Ext^i(F, G) for i = 0 .. longest_chain(base)."""
    _same_setting(F, G)
    K = F.field
    res = resolution or projective_resolution(F)
    dims, deltas = hom_complex(res, G)
    ranks = [rank(M, dims[i], K) for i, M in enumerate(deltas)]
    out = []
    for i, d in enumerate(dims):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i >= 1 else 0
        out.append(d - r_out - r_in)
    length = longest_chain(F.base) + 1
    if len(out) > length:
        if any(out[length:]):
            raise AssertionError("nonzero Ext beyond the global dimension")
        out = out[:length]
    return pad(out, length)


def euler_form_sheaves(F: Diagram, G: Diagram) -> int:
    return sum((-1) ** i * d for i, d in enumerate(ext_dims(F, G)))


def sheaf_cohomology_constant(X: Poset, field=QQ) -> list[int]:
    """Ext^*(k_X, k_X), which computes the cohomology of the constant sheaf."""
    k = standard_sheaf(X, "constant", field=field)
    return ext_dims(k, k)


# ---------------------------------------------------------------------------
# simplicial injective resolution of the constant sheaf


@dataclass
class InjectiveResolution:
    """0 -> k_X -> I^0 -> I^1 -> ... with I^p = sum over p-simplices s of I_{min s}.

    ``simplices[p]`` indexes the summands of I^p; ``differentials[p]`` is
    the signed incidence matrix of I^p -> I^{p+1} (rows: (p+1)-simplices).
    """

    poset: Poset
    simplices: list
    differentials: list

    def term_diagram(self, p: int, field=QQ) -> Diagram:
        """I^p as a diagram; stalk at x has one coordinate per simplex s with x <= min s."""
        K = parse_field(field)
        X = self.poset
        sims = self.simplices[p]
        support = [[k for k, s in enumerate(sims) if X.le(x, s[0])] for x in range(X.n)]
        maps = {}
        for x, y in covers(X):
            pos = {k: t for t, k in enumerate(support[x])}
            M = [[K.zero] * len(support[x]) for _ in support[y]]
            for r, k in enumerate(support[y]):
                M[r][pos[k]] = K.one
            maps[(x, y)] = M
        return Diagram(X, K, [len(s) for s in support], maps, check=False)

    def stalk_exact(self, field=QQ) -> bool:
        """Acyclicity of 0 -> k -> I^0(x) -> I^1(x) -> ... at each stalk x."""
        K = parse_field(field)
        X = self.poset
        for x in range(X.n):
            supports = [[k for k, s in enumerate(sims) if X.le(x, s[0])]
                        for sims in self.simplices]
            # augmentation k -> I^0(x) is the all-ones column
            prev_rank, prev_dim = 1, len(supports[0])
            if prev_dim == 0:
                return False
            for p in range(len(self.simplices)):
                if p + 1 < len(self.simplices):
                    D = self.differentials[p]
                    M = [[K(D[r][c]) for c in supports[p]] for r in supports[p + 1]]
                    r = rank(M, len(supports[p]), K)
                else:
                    r = 0
                if r != len(supports[p]) - prev_rank:
                    return False
                prev_rank = r
        return True


def constant_sheaf_injective_resolution(X: Poset) -> InjectiveResolution:
    K = order_complex(X)
    diffs = []
    for p in range(K.dim):
        src = K.index(p)
        rows = []
        for sigma in K.simplices[p + 1]:
            row = [0] * len(K.simplices[p])
            for j in range(len(sigma)):
                row[src[sigma[:j] + sigma[j + 1:]]] = -1 if j % 2 else 1
            rows.append(row)
        diffs.append(rows)
    return InjectiveResolution(X, [list(s) for s in K.simplices], diffs)


# ---------------------------------------------------------------------------
# Hochschild cohomology via the enveloping poset


def enveloping_poset(X: Poset) -> Poset:
    """X x X^op; the pair (x, y) sits at index x * |X| + y."""
    return product(X, opposite(X))


def bimodule_diagram(X: Poset, field=QQ) -> Diagram:
    """The algebra kX as a sheaf on X x X^op: k at (x, y) iff y <= x."""
    E = enveloping_poset(X)
    n = X.n
    support = [x * n + y for x in range(n) for y in range(n) if X.le(y, x)]
    return indicator_sheaf(E, support, field)


def hochschild_dims(X: Poset, field=QQ, max_degree: int = 3) -> list[int]:
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    L = bimodule_diagram(X, field)
    return pad(ext_dims(L, L), max_degree + 1)[:max_degree + 1]
