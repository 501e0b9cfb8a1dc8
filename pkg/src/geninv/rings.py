"""Concrete unital rings and exact element arithmetic.

Four ring families are supported: residues ``Z/nZ``, prime fields
``GF(p)``, the rationals, and ``k x k`` matrices over any of these
(nesting allowed). Every element carries a canonical payload so that
structural equality is ring equality:

* ``ModularInt`` / ``PrimeField``: least non-negative residue (``int``).
* ``Rationals``: a reduced :class:`fractions.Fraction`.
* ``MatrixRing``: a flat row-major tuple of base payloads.

Enumeration order of a finite ring is lexicographic on the canonical
payload (residues ascending; matrices entry by entry, row-major, each
entry in its base ring's order). ``index_of``/``payload_at`` are the
bijection between payloads and positions in that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any, Iterator

from geninv.errors import CapabilityError, UsageError

INFINITE = math.inf
DEFAULT_ENUMERATION_BOUND = 2**20


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class RingDescriptor:
    """Common interface of the concrete rings.

    Subclasses are frozen dataclasses. Arithmetic methods take and return
    canonical payloads; user code normally goes through :class:`Element`.
    """

    enumeration_bound: int

    # -- metadata ---------------------------------------------------------
    @property
    def cardinality(self) -> int | float:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.cardinality != INFINITE

    @property
    def is_enumerable(self) -> bool:
        return self.is_finite and self.cardinality <= self.enumeration_bound

    @property
    def is_field(self) -> bool:
        return False

    @property
    def spec(self) -> str:
        raise NotImplementedError

    # -- payload arithmetic -----------------------------------------------
    zero: Any
    one: Any

    def add(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def normalize(self, raw):
        """Canonicalize a raw payload, raising UsageError if malformed."""
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    # -- enumeration ------------------------------------------------------
    def index_of(self, x) -> int:
        raise NotImplementedError

    def payload_at(self, i: int):
        raise NotImplementedError

    def require_enumerable(self, what: str = "enumeration") -> None:
        if not self.is_finite:
            raise CapabilityError(f"{what} needs a finite ring; {self.spec} is infinite")
        if self.cardinality > self.enumeration_bound:
            raise CapabilityError(
                f"{what}: |{self.spec}| = {self.cardinality} exceeds the "
                f"enumeration bound {self.enumeration_bound}"
            )

    # -- elements ---------------------------------------------------------
    def element(self, raw) -> Element:
        return Element(self, self.normalize(raw))

    def elements(self) -> Iterator[Element]:
        return enumerate_elements(self)

    @property
    def zero_element(self) -> Element:
        return Element(self, self.zero)

    @property
    def one_element(self) -> Element:
        return Element(self, self.one)

    def __str__(self) -> str:
        return self.spec


class _Residues(RingDescriptor):
    modulus: int

    @property
    def cardinality(self) -> int:
        return self.modulus

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.modulus

    def add(self, x, y):
        return (x + y) % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def neg(self, x):
        return -x % self.modulus

    def mul(self, x, y):
        return x * y % self.modulus

    def from_int(self, n: int) -> int:
        return n % self.modulus

    def inv_payload(self, x: int) -> int | None:
        if math.gcd(x, self.modulus) != 1:
            return None
        return pow(x, -1, self.modulus)

    def normalize(self, raw) -> int:
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise UsageError(f"{self.spec} expects an integer, got {raw!r}")
        return raw % self.modulus

    def format(self, x) -> str:
        return str(x)

    def index_of(self, x) -> int:
        return x

    def payload_at(self, i: int) -> int:
        return i


@dataclass(frozen=True)
class ModularInt(_Residues):
    """The residue ring Z/nZ, n >= 2."""

    modulus: int
    enumeration_bound: int = field(default=DEFAULT_ENUMERATION_BOUND, compare=False, repr=False)

    def __post_init__(self):
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or self.modulus < 2:
            raise UsageError(f"Z:n needs an integer modulus n >= 2, got {self.modulus!r}")

    @property
    def is_field(self) -> bool:
        return is_prime(self.modulus)

    @property
    def spec(self) -> str:
        return f"Z:{self.modulus}"


@dataclass(frozen=True)
class PrimeField(_Residues):
    """GF(p) for a prime p."""

    modulus: int
    enumeration_bound: int = field(default=DEFAULT_ENUMERATION_BOUND, compare=False, repr=False)

    def __post_init__(self):
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or not is_prime(self.modulus):
            raise UsageError(f"GF:p needs a prime p, got {self.modulus!r}")

    @property
    def is_field(self) -> bool:
        return True

    @property
    def spec(self) -> str:
        return f"GF:{self.modulus}"


@dataclass(frozen=True)
class Rationals(RingDescriptor):
    """The field Q with exact fractions."""

    enumeration_bound: int = field(default=DEFAULT_ENUMERATION_BOUND, compare=False, repr=False)

    @property
    def cardinality(self) -> float:
        return INFINITE

    @property
    def is_field(self) -> bool:
        return True

    @property
    def spec(self) -> str:
        return "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def inv_payload(self, x: Fraction) -> Fraction | None:
        return None if x == 0 else 1 / x

    def normalize(self, raw) -> Fraction:
        if isinstance(raw, bool) or not isinstance(raw, (int, Fraction)):
            raise UsageError(f"Q expects an int or Fraction, got {raw!r}")
        return Fraction(raw)

    def format(self, x) -> str:
        return str(x)

    def index_of(self, x):
        raise CapabilityError("Q is infinite and has no enumeration index")

    def payload_at(self, i):
        raise CapabilityError("Q is infinite and has no enumeration index")


@dataclass(frozen=True)
class MatrixRing(RingDescriptor):
    """k x k matrices over a base ring; payloads are flat row-major tuples."""

    base: RingDescriptor
    dim: int
    enumeration_bound: int = field(default=DEFAULT_ENUMERATION_BOUND, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.base, RingDescriptor):
            raise UsageError(f"matrix base must be a ring, got {self.base!r}")
        if isinstance(self.dim, bool) or not isinstance(self.dim, int) or self.dim < 1:
            raise UsageError(f"M:k needs k >= 1, got {self.dim!r}")
        k = self.dim
        object.__setattr__(self, "_size", k * k)
        object.__setattr__(
            self, "_mod", self.base.modulus if isinstance(self.base, _Residues) else None
        )

    @property
    def cardinality(self) -> int | float:
        if not self.base.is_finite:
            return INFINITE
        return self.base.cardinality ** (self.dim * self.dim)

    @property
    def spec(self) -> str:
        return f"M:{self.dim}:{self.base.spec}"

    @property
    def scalar_ring(self) -> RingDescriptor:
        """Innermost non-matrix ring."""
        r = self.base
        while isinstance(r, MatrixRing):
            r = r.base
        return r

    @property
    def flat_dim(self) -> int:
        """Side length after flattening nested blocks into one scalar matrix."""
        if isinstance(self.base, MatrixRing):
            return self.dim * self.base.flat_dim
        return self.dim

    @property
    def over_field(self) -> bool:
        return self.scalar_ring.is_field

    @property
    def zero(self):
        return (self.base.zero,) * self._size

    @property
    def one(self):
        k, z, o = self.dim, self.base.zero, self.base.one
        return tuple(o if i == j else z for i in range(k) for j in range(k))

    def add(self, x, y):
        if self._mod:
            n = self._mod
            return tuple((a + b) % n for a, b in zip(x, y))
        add = self.base.add
        return tuple(add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        if self._mod:
            n = self._mod
            return tuple((a - b) % n for a, b in zip(x, y))
        sub = self.base.sub
        return tuple(sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        if self._mod:
            n = self._mod
            return tuple(-a % n for a in x)
        neg = self.base.neg
        return tuple(neg(a) for a in x)

    def mul(self, x, y):
        k = self.dim
        if self._mod:
            n = self._mod
            if k == 2:
                x0, x1, x2, x3 = x
                y0, y1, y2, y3 = y
                return (
                    (x0 * y0 + x1 * y2) % n,
                    (x0 * y1 + x1 * y3) % n,
                    (x2 * y0 + x3 * y2) % n,
                    (x2 * y1 + x3 * y3) % n,
                )
            return tuple(
                sum(x[i * k + l] * y[l * k + j] for l in range(k)) % n
                for i in range(k)
                for j in range(k)
            )
        add, mul = self.base.add, self.base.mul
        return tuple(
            reduce(add, (mul(x[i * k + l], y[l * k + j]) for l in range(k)))
            for i in range(k)
            for j in range(k)
        )

    def from_int(self, n: int):
        k, z, c = self.dim, self.base.zero, self.base.from_int(n)
        return tuple(c if i == j else z for i in range(k) for j in range(k))

    def normalize(self, raw):
        """Canonicalize nested rows (``[[..], ..]``) of raw base payloads."""
        k = self.dim
        if not isinstance(raw, (list, tuple)) or len(raw) != k:
            raise UsageError(f"{self.spec} expects {k} rows, got {raw!r}")
        out = []
        for row in raw:
            if not isinstance(row, (list, tuple)) or len(row) != k:
                raise UsageError(f"{self.spec} expects rows of length {k}, got {row!r}")
            out.extend(self.base.normalize(v) for v in row)
        return tuple(out)

    def rows(self, x) -> list[list]:
        k = self.dim
        return [list(x[i * k:(i + 1) * k]) for i in range(k)]

    def format(self, x) -> str:
        fmt = self.base.format
        return "[" + ",".join("[" + ",".join(fmt(v) for v in row) + "]" for row in self.rows(x)) + "]"

    def index_of(self, x) -> int:
        n = self.base.cardinality
        idx = self.base.index_of
        i = 0
        for v in x:
            i = i * n + idx(v)
        return i

    def payload_at(self, i: int):
        n = self.base.cardinality
        digits = []
        for _ in range(self._size):
            i, r = divmod(i, n)
            digits.append(self.base.payload_at(r))
        return tuple(reversed(digits))

    # -- flattening nested block matrices ----------------------------------
    def flatten(self, x) -> list[list]:
        """Scalar K x K rows for a payload (K = flat_dim)."""
        k = self.dim
        if not isinstance(self.base, MatrixRing):
            return self.rows(x)
        j = self.base.flat_dim
        out = [[None] * (k * j) for _ in range(k * j)]
        for bi in range(k):
            for bj in range(k):
                block = self.base.flatten(x[bi * k + bj])
                for r in range(j):
                    for c in range(j):
                        out[bi * j + r][bj * j + c] = block[r][c]
        return out

    def unflatten(self, rows: list[list]):
        k = self.dim
        if not isinstance(self.base, MatrixRing):
            return tuple(v for row in rows for v in row)
        j = self.base.flat_dim
        out = []
        for bi in range(k):
            for bj in range(k):
                block = [row[bj * j:(bj + 1) * j] for row in rows[bi * j:(bi + 1) * j]]
                out.append(self.base.unflatten(block))
        return tuple(out)


class Element:
    """An immutable canonical ring element.

    Supports ``+ - *`` and unary minus with other elements of the same ring
    or with Python ints (read as ``n * 1``). Mixing rings raises
    :class:`UsageError`.
    """

    __slots__ = ("ring", "value")

    def __init__(self, ring: RingDescriptor, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def _coerce(self, other) -> Any:
        if isinstance(other, Element):
            if other.ring is not self.ring and other.ring != self.ring:
                raise UsageError(f"mixed-ring operands: {self.ring.spec} and {other.ring.spec}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return Element(self.ring, self.ring.add(self.value, y))

    __radd__ = __add__

    def __sub__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return Element(self.ring, self.ring.sub(self.value, y))

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return Element(self.ring, self.ring.sub(y, self.value))

    def __mul__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return Element(self.ring, self.ring.mul(self.value, y))

    def __rmul__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return Element(self.ring, self.ring.mul(y, self.value))

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.value == other.value and (other.ring is self.ring or other.ring == self.ring)
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def is_zero(self) -> bool:
        return self.value == self.ring.zero

    def is_one(self) -> bool:
        return self.value == self.ring.one

    @property
    def index(self) -> int:
        return self.ring.index_of(self.value)

    def entries(self) -> list[list[Element]]:
        """Rows of entries as base-ring elements (matrix rings only)."""
        if not isinstance(self.ring, MatrixRing):
            raise UsageError(f"{self.ring.spec} is not a matrix ring")
        base = self.ring.base
        return [[Element(base, v) for v in row] for row in self.ring.rows(self.value)]

    def __str__(self) -> str:
        return self.ring.format(self.value)

    def __repr__(self) -> str:
        return f"Element({self.ring.spec}, {self})"


def same_ring(*xs: Element) -> RingDescriptor:
    """Return the common ring of the arguments, or raise UsageError."""
    ring = xs[0].ring
    for x in xs[1:]:
        if x.ring is not ring and x.ring != ring:
            raise UsageError(f"mixed-ring operands: {ring.spec} and {x.ring.spec}")
    return ring


def matrix(base: RingDescriptor, rows) -> Element:
    """Build an element of ``M_k(base)`` from nested rows of raw payloads or Elements."""
    k = len(rows)
    ring = MatrixRing(base, k)
    flat = []
    for row in rows:
        if len(row) != k:
            raise UsageError("matrix rows must be square")
        for v in row:
            if isinstance(v, Element):
                same_ring(v, Element(base, base.zero))
                flat.append(v.value)
            else:
                flat.append(base.normalize(v))
    return Element(ring, tuple(flat))


def arith(op: str, a: Element, b: Element | None = None) -> Element:
    """Dispatch ``add``/``sub``/``mul``/``neg`` by name."""
    if op == "neg":
        if b is not None:
            raise UsageError("neg takes one operand")
        return -a
    if b is None:
        raise UsageError(f"{op} takes two operands")
    same_ring(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown operation {op!r}")


def enumerate_elements(ring: RingDescriptor) -> Iterator[Element]:
    """Yield every element once, in lexicographic payload order."""
    ring.require_enumerable()
    for i in range(int(ring.cardinality)):
        yield Element(ring, ring.payload_at(i))


def is_idempotent(e: Element) -> bool:
    return e * e == e


def try_invert(a: Element) -> Element | None:
    """Two-sided inverse of ``a``, or ``None`` when ``a`` is not a unit."""
    from geninv import fieldlinalg

    ring = a.ring
    if isinstance(ring, (_Residues, Rationals)):
        inv = ring.inv_payload(a.value)
        return None if inv is None else Element(ring, inv)
    if not isinstance(ring, MatrixRing):
        raise CapabilityError(f"no inversion routine for {ring.spec}")
    scalar = ring.scalar_ring
    rows = ring.flatten(a.value)
    if scalar.is_field:
        inv_rows = fieldlinalg.inverse(scalar, rows)
    else:
        inv_rows = fieldlinalg.adjugate_inverse(scalar, rows)
    if inv_rows is None:
        return None
    x = Element(ring, ring.unflatten(inv_rows))
    if not ((a * x).is_one() and (x * a).is_one()):
        return None
    return x


def is_unit(a: Element) -> bool:
    return try_invert(a) is not None
