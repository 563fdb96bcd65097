import itertools

import sympy
from hypothesis import given

from posetderived.fields import GF, QQ
from posetderived.homology import betti, coboundary, euler_char_simplicial, order_complex
from posetderived.linalg import matmul
from posetderived.poset import (
    antichain, chain, connected_components, crown4, diamond, longest_chain, opposite,
    poset_from_relations, v3,
)

from conftest import naive_chains, posets


def test_order_complex_examples():
    assert order_complex(antichain(3)).counts() == [3]
    assert order_complex(chain(3)).counts() == [3, 3, 1]
    assert order_complex(crown4()).counts() == [4, 4]


def test_betti_examples():
    for F in (QQ, GF(2), GF(3)):
        assert betti(diamond(), F) == [1, 0, 0]
        assert betti(crown4(), F) == [1, 1]
        assert betti(antichain(4), F) == [4]
        assert betti(v3(), F) == [1, 0]


def test_euler_examples():
    assert euler_char_simplicial(crown4()) == 0
    assert euler_char_simplicial(chain(6)) == 1


def _rp2_face_poset():
    triangles = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
                 (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
    faces = set()
    for t in triangles:
        for r in (1, 2, 3):
            faces.update(frozenset(c) for c in itertools.combinations(t, r))
    faces = sorted(faces, key=lambda f: (len(f), sorted(f)))
    labels = ["".join(map(str, sorted(f))) for f in faces]
    rel = [(labels[i], labels[j]) for i, a in enumerate(faces) for j, b in enumerate(faces)
           if a < b and len(b) == len(a) + 1]
    return poset_from_relations(labels, rel)


def test_characteristic_dependence():
    X = _rp2_face_poset()
    assert X.n == 31
    assert betti(X, QQ) == [1, 0, 0]
    assert betti(X, GF(2)) == [1, 1, 1]
    assert betti(X, GF(3)) == [1, 0, 0]
    assert euler_char_simplicial(X) == 1


@given(posets(max_n=7))
def test_order_complex_structure(X):
    K = order_complex(X)
    assert K.dim == longest_chain(X)
    assert K.simplices[0] == tuple((i,) for i in range(X.n))
    everything = {s for level in K.simplices for s in level}
    assert everything == set(naive_chains(X))
    for level in K.simplices:
        assert list(level) == sorted(level)
        for s in level:
            assert all(X.lt(a, b) for a, b in zip(s, s[1:]))
            for j in range(len(s)):
                face = s[:j] + s[j + 1:]
                assert not face or face in everything


@given(posets(max_n=7))
def test_coboundary_squares_to_zero(X):
    K = order_complex(X)
    for F in (QQ, GF(3)):
        for p in range(K.dim - 1):
            d0 = coboundary(K, p, F)
            d1 = coboundary(K, p + 1, F)
            prod = matmul(d1, d0, F)
            assert all(x == 0 for row in prod for x in row)


@given(posets(max_n=7))
def test_betti_zero_counts_components(X):
    for F in (QQ, GF(2)):
        assert betti(X, F)[0] == len(connected_components(X))


@given(posets(max_n=7))
def test_betti_of_opposite(X):
    for F in (QQ, GF(2)):
        assert betti(X, F) == betti(opposite(X), F)


@given(posets(max_n=6))
def test_betti_over_q_matches_sympy_ranks(X):
    K = order_complex(X)
    ranks = []
    for p in range(K.dim):
        M = coboundary(K, p, QQ)
        ranks.append(sympy.Matrix(M).rank() if M else 0)
    expected = []
    for p, c in enumerate(K.counts()):
        expected.append(c - (ranks[p] if p < len(ranks) else 0) - (ranks[p - 1] if p else 0))
    assert betti(X, QQ) == expected


@given(posets(max_n=7))
def test_max_element_means_contractible(X):
    top = [x for x in range(X.n) if len(X.down_set(x)) == X.n]
    if top:
        assert betti(X, QQ) == [1] + [0] * longest_chain(X)
