"""Brute-force scan kernels over Cayley tables.

Every kernel works on a multiplication table ``mul`` (``mul[x, y]`` is the
index of ``x*y`` in enumeration order) and exists twice: a numba loop
version and a vectorized numpy version. ``backend=None`` picks numba when
it is available and not disabled through ``GENINV_DISABLE_JIT``.

Scans report the *first* hit in enumeration order, so results do not
depend on the backend.
"""

from __future__ import annotations

import numpy as np

from geninv._jit import USE_JIT, njit

BACKENDS = ("numba", "numpy")


def default_backend() -> str:
    return "numba" if USE_JIT else "numpy"


def _pick(backend: str | None) -> str:
    b = backend or default_backend()
    if b not in BACKENDS:
        raise ValueError(f"unknown backend {b!r}")
    return b


# --------------------------------------------------------------------------
# numba kernels


@njit(cache=True)
def _unit_inverses_jit(mul, one):
    n = mul.shape[0]
    out = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        for x in range(n):
            if mul[a, x] == one and mul[x, a] == one:
                out[a] = x
                break
    return out


@njit(cache=True)
def _first_inner_jit(mul):
    n = mul.shape[0]
    out = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        for x in range(n):
            if mul[mul[a, x], a] == a:
                out[a] = x
                break
    return out


@njit(cache=True)
def _ideal_matrices_jit(mul):
    n = mul.shape[0]
    left = np.zeros((n, n), dtype=np.bool_)
    right = np.zeros((n, n), dtype=np.bool_)
    for b in range(n):
        for x in range(n):
            left[mul[x, b], b] = True
            right[mul[b, x], b] = True
    return left, right


@njit(cache=True)
def _along_table_jit(mul, left, right):
    n = mul.shape[0]
    first = np.full((n, n), -1, dtype=np.int64)
    count = np.zeros((n, n), dtype=np.int64)
    for d in range(n):
        for a in range(n):
            da = mul[d, a]
            for b in range(n):
                if not (left[b, d] and right[b, d]):
                    continue
                if mul[da, b] != d:
                    continue
                if mul[mul[b, a], d] != d:
                    continue
                if count[a, d] == 0:
                    first[a, d] = b
                count[a, d] += 1
    return first, count


@njit(cache=True)
def _scan_inner_jit(mul, a):
    n = mul.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    for x in range(n):
        mask[x] = mul[mul[a, x], a] == a
    return mask


@njit(cache=True)
def _along_candidates_jit(mul, a, d):
    n = mul.shape[0]
    inleft = np.zeros(n, dtype=np.bool_)
    inright = np.zeros(n, dtype=np.bool_)
    for x in range(n):
        inleft[mul[x, d]] = True
        inright[mul[d, x]] = True
    da = mul[d, a]
    mask = np.zeros(n, dtype=np.bool_)
    for b in range(n):
        mask[b] = inleft[b] and inright[b] and mul[da, b] == d and mul[mul[b, a], d] == d
    return mask


# --------------------------------------------------------------------------
# numpy kernels


def _unit_inverses_numpy(mul, one):
    ok = (mul == one) & (mul.T == one)
    has = ok.any(axis=1)
    return np.where(has, ok.argmax(axis=1), -1).astype(np.int64)


def _first_inner_numpy(mul):
    n = mul.shape[0]
    a = np.arange(n)
    # mul[mul[a, x], a] for all (a, x)
    ok = mul[mul, a[:, None]] == a[:, None]
    has = ok.any(axis=1)
    return np.where(has, ok.argmax(axis=1), -1).astype(np.int64)


def _ideal_matrices_numpy(mul):
    n = mul.shape[0]
    left = np.zeros((n, n), dtype=bool)
    right = np.zeros((n, n), dtype=bool)
    cols = np.broadcast_to(np.arange(n), (n, n))
    left[mul, cols] = True  # mul[x, b] in R*b
    right[mul.T, cols] = True  # mul[b, x] in b*R
    return left, right


def _along_table_numpy(mul, left, right):
    n = mul.shape[0]
    first = np.full((n, n), -1, dtype=np.int64)
    count = np.zeros((n, n), dtype=np.int64)
    for d in range(n):
        h = left[:, d] & right[:, d]
        # c1[a, b]: d*a*b == d ; c2[a, b]: b*a*d == d
        c1 = mul[mul[d, :], :] == d
        c2 = (mul[:, d][mul] == d).T
        ok = c1 & c2 & h[None, :]
        cnt = ok.sum(axis=1)
        count[:, d] = cnt
        first[:, d] = np.where(cnt > 0, ok.argmax(axis=1), -1)
    return first, count


def _scan_inner_numpy(mul, a):
    return mul[mul[a, :], a] == a


def _along_candidates_numpy(mul, a, d):
    n = mul.shape[0]
    inleft = np.zeros(n, dtype=bool)
    inright = np.zeros(n, dtype=bool)
    inleft[mul[:, d]] = True
    inright[mul[d, :]] = True
    return inleft & inright & (mul[mul[d, a], :] == d) & (mul[mul[:, a], d] == d)


# --------------------------------------------------------------------------
# dispatch


def unit_inverses(mul, one: int, backend: str | None = None) -> np.ndarray:
    """``inv[x]`` = index of the two-sided inverse of ``x``, or -1."""
    if _pick(backend) == "numba":
        return _unit_inverses_jit(mul, one)
    return _unit_inverses_numpy(mul, one)


def first_inner(mul, backend: str | None = None) -> np.ndarray:
    """First inner inverse of every element (-1 when not regular)."""
    if _pick(backend) == "numba":
        return _first_inner_jit(mul)
    return _first_inner_numpy(mul)


def inner_mask(mul, a: int, backend: str | None = None) -> np.ndarray:
    if _pick(backend) == "numba":
        return _scan_inner_jit(mul, a)
    return _scan_inner_numpy(mul, a)


def ideal_matrices(mul, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``left[a, b]`` iff a lies in R*b; ``right[a, b]`` iff a lies in b*R."""
    if _pick(backend) == "numba":
        return _ideal_matrices_jit(mul)
    return _ideal_matrices_numpy(mul)


def along_table(mul, left=None, right=None, backend: str | None = None):
    """Brute-force inverse along, for every pair.

    Returns ``(first, count)`` indexed ``[a, d]``: ``count`` is the number
    of ``b`` with ``d a b = d = b a d`` and ``b`` in both ``R d`` and
    ``d R``; ``first`` is the first such ``b`` or -1.
    """
    b = _pick(backend)
    if left is None or right is None:
        left, right = ideal_matrices(mul, backend=b)
    if b == "numba":
        return _along_table_jit(mul, left, right)
    return _along_table_numpy(mul, left, right)


def along_candidates(mul, a: int, d: int, backend: str | None = None) -> np.ndarray:
    if _pick(backend) == "numba":
        return _along_candidates_jit(mul, a, d)
    return _along_candidates_numpy(mul, a, d)


def first_true(mask: np.ndarray) -> int:
    hits = np.flatnonzero(mask)
    return int(hits[0]) if hits.size else -1
