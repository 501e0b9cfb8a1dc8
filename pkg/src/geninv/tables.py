"""Cayley tables for small finite rings.

Tables index elements by their enumeration position. They are built
vectorized (matrix rings recursively from their base tables) and cached
per ring descriptor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from geninv import kernels
from geninv.rings import Element, MatrixRing, RingDescriptor, _Residues

TABLE_LIMIT = 2048
_CHUNK = 128


@dataclass(frozen=True, eq=False)
class RingTables:
    ring: RingDescriptor
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    zero: int
    one: int

    @property
    def size(self) -> int:
        return self.mul.shape[0]

    def element(self, i: int) -> Element:
        return Element(self.ring, self.ring.payload_at(int(i)))

    def elements(self) -> list[Element]:
        return self._elements

    @cached_property
    def _elements(self) -> list[Element]:
        return [self.element(i) for i in range(self.size)]

    # derived tables, computed on first use
    @cached_property
    def units(self) -> np.ndarray:
        return kernels.unit_inverses(self.mul, self.one)

    @cached_property
    def first_inner(self) -> np.ndarray:
        return kernels.first_inner(self.mul)

    @cached_property
    def ideals(self) -> tuple[np.ndarray, np.ndarray]:
        return kernels.ideal_matrices(self.mul)

    @cached_property
    def along(self) -> tuple[np.ndarray, np.ndarray]:
        left, right = self.ideals
        return kernels.along_table(self.mul, left, right)


def has_tables(ring: RingDescriptor) -> bool:
    return ring.is_finite and ring.cardinality <= TABLE_LIMIT and _buildable(ring)


def _buildable(ring: RingDescriptor) -> bool:
    if isinstance(ring, _Residues):
        return True
    if isinstance(ring, MatrixRing):
        return _buildable(ring.base)
    return False


@lru_cache(maxsize=32)
def tables_for(ring: RingDescriptor) -> RingTables:
    if not has_tables(ring):
        raise ValueError(f"no Cayley tables for {ring.spec}")
    if isinstance(ring, _Residues):
        n = ring.modulus
        i = np.arange(n, dtype=np.int64)
        return RingTables(
            ring,
            add=(i[:, None] + i[None, :]) % n,
            mul=(i[:, None] * i[None, :]) % n,
            neg=(-i) % n,
            zero=0,
            one=1 % n,
        )
    return _matrix_tables(ring)


def _digits(n_elems: int, nb: int, width: int) -> np.ndarray:
    idx = np.arange(n_elems, dtype=np.int64)
    out = np.empty((n_elems, width), dtype=np.int64)
    for pos in range(width - 1, -1, -1):
        idx, out[:, pos] = np.divmod(idx, nb)
    return out


def _matrix_tables(ring: MatrixRing) -> RingTables:
    bt = tables_for(ring.base)
    nb, k = bt.size, ring.dim
    width = k * k
    n = int(ring.cardinality)
    ent = _digits(n, nb, width)
    weights = nb ** np.arange(width - 1, -1, -1, dtype=np.int64)

    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for lo in range(0, n, _CHUNK):
        x = ent[lo:lo + _CHUNK]
        s = bt.add[x[:, None, :], ent[None, :, :]]
        add[lo:lo + _CHUNK] = s @ weights
        p = np.empty((x.shape[0], n, width), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                acc = bt.mul[x[:, None, i * k], ent[None, :, j]]
                for l in range(1, k):
                    acc = bt.add[acc, bt.mul[x[:, None, i * k + l], ent[None, :, l * k + j]]]
                p[:, :, i * k + j] = acc
        mul[lo:lo + _CHUNK] = p @ weights
    neg = bt.neg[ent] @ weights
    one = ring.index_of(ring.one)
    return RingTables(ring, add=add, mul=mul, neg=neg, zero=0, one=one)
