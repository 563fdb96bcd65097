import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posetderived import _kernels_py, kernels

try:
    from posetderived import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

backends = [_kernels_py] + ([compiled] if compiled is not None else [])


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")
    if compiled is not None:
        assert kernels.BACKEND == "compiled" or __import__("os").environ.get("POSETDERIVED_PURE")


@pytest.mark.parametrize("mod", backends)
def test_small_examples(mod):
    rows, piv = mod.rref_mod_p([[2, 4], [1, 2]], 2, 5)
    assert piv == [0] and rows == [[1, 2]]
    assert mod.rank_mod_p([[1, 0], [0, 1]], 2, 7) == 2
    assert mod.rank_mod_p([], 3, 7) == 0
    assert mod.matmul_mod_p([[1, 2]], [[3], [4]], 5) == [[1]]


@settings(max_examples=60)
@given(st.integers(1, 9), st.integers(1, 9), st.sampled_from([2, 3, 11, 2147483647]),
       st.randoms(use_true_random=False))
def test_backends_agree(m, n, p, rnd):
    A = [[rnd.randrange(p) for _ in range(n)] for _ in range(m)]
    k = rnd.randint(1, 5)
    B = [[rnd.randrange(p) for _ in range(k)] for _ in range(n)]
    ref = (_kernels_py.rref_mod_p(A, n, p), _kernels_py.rank_mod_p(A, n, p), _kernels_py.matmul_mod_p(A, B, p))
    for mod in backends[1:]:
        assert (mod.rref_mod_p(A, n, p), mod.rank_mod_p(A, n, p), mod.matmul_mod_p(A, B, p)) == ref
    assert (kernels.rref_mod_p(A, n, p), kernels.rank_mod_p(A, n, p)) == ref[:2]


@pytest.mark.parametrize("mod", backends)
def test_ragged_rows_rejected(mod):
    with pytest.raises((ValueError, IndexError)):
        mod.rank_mod_p([[1, 2], [3]], 2, 5)


def test_dispatch_handles_large_modulus():
    p = (1 << 61) - 1
    A = [[random.Random(1).randrange(p) for _ in range(4)] for _ in range(4)]
    assert kernels.rank_mod_p(A, 4, p) == _kernels_py.rank_mod_p(A, 4, p)


def test_pure_fallback_selected_by_environment():
    import subprocess
    import sys
    code = "from posetderived import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={**__import__("os").environ, "POSETDERIVED_PURE": "1"}).stdout.strip()
    assert out == "python"
