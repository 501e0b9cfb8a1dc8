import os
import subprocess
import sys

import numpy as np
import pytest

import oracles
from geninv import kernels
from geninv._jit import ENV_FLAG, HAVE_NUMBA
from geninv.rings import MatrixRing, ModularInt
from geninv.tables import tables_for

RINGS = [ModularInt(6), ModularInt(8), MatrixRing(ModularInt(2), 2), MatrixRing(MatrixRing(ModularInt(2), 1), 2)]
needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


@pytest.fixture(params=RINGS, ids=lambda r: r.spec)
def tables(request):
    return tables_for(request.param)


def test_tables_match_element_arithmetic(tables):
    elems = tables.elements()
    for x in elems:
        for y in elems[::3]:
            assert tables.element(tables.mul[x.index, y.index]) == x * y
            assert tables.element(tables.add[x.index, y.index]) == x + y
        assert tables.element(tables.neg[x.index]) == -x


@needs_numba
def test_backends_agree(tables):
    mul = tables.mul
    for name in ("unit_inverses", "first_inner", "ideal_matrices", "along_table"):
        args = (mul, tables.one) if name == "unit_inverses" else (mul,)
        a = getattr(kernels, name)(*args, backend="numba")
        b = getattr(kernels, name)(*args, backend="numpy")
        for x, y in zip(a if isinstance(a, tuple) else (a,), b if isinstance(b, tuple) else (b,)):
            np.testing.assert_array_equal(x, y)
    n = tables.size
    for a, d in [(0, 0), (1, n - 1), (n // 2, n // 3)]:
        np.testing.assert_array_equal(
            kernels.along_candidates(mul, a, d, backend="numba"),
            kernels.along_candidates(mul, a, d, backend="numpy"),
        )
        np.testing.assert_array_equal(
            kernels.inner_mask(mul, a, backend="numba"), kernels.inner_mask(mul, a, backend="numpy")
        )


@pytest.mark.parametrize("n", [4, 6, 9])
def test_first_inner_matches_reference(n):
    t = tables_for(ModularInt(n))
    ref = [min(oracles.inner_inverses(oracles.zn(n), oracles.mul_zn(n), a), default=-1) for a in range(n)]
    assert kernels.first_inner(t.mul).tolist() == ref


def test_along_table_matches_reference_m2z2():
    t = tables_for(MatrixRing(ModularInt(2), 2))
    first, count = kernels.along_table(t.mul)
    E, mul = oracles.m2(2), oracles.mul_m2(2)
    for a in E:
        for d in E:
            found = oracles.inverses_along(E, mul, a, d)
            ia, idx = E.index(a), E.index(d)
            assert count[ia, idx] == len(found)
            if found:
                assert E[first[ia, idx]] == found[0]


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.first_inner(np.zeros((1, 1), dtype=np.int64), backend="cuda")


def test_first_true():
    assert kernels.first_true(np.array([False, False, True, True])) == 2
    assert kernels.first_true(np.array([False])) == -1


def test_env_flag_selects_numpy():
    env = dict(os.environ, **{ENV_FLAG: "1"})
    out = subprocess.run(
        [sys.executable, "-c", "from geninv import kernels; print(kernels.default_backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
