"""Closed forms for the inverse along a 2x2 block matrix.

Block layout throughout: ``D = [[d1, d3], [d2, d4]]`` and
``A = [[a, c], [b, d]]``, so ``A`` maps to ``Block2x2(d1=a, d2=b, d3=c, d4=d)``.

All routines work entrywise over a base ring; the result can be compared
with :func:`geninv.mary.inverse_along` run on the flattened matrix ring,
which is what ``check=True`` does when that ring supports it.
"""

from __future__ import annotations

from dataclasses import dataclass

from geninv.errors import CapabilityError, InvariantViolation, PreconditionError, UsageError
from geninv.mary import MaryResult, inverse_along
from geninv.regularity import inner_inverse
from geninv.results import NotInvertibleAlong, NotRegular
from geninv.rings import Element, MatrixRing, RingDescriptor, same_ring, try_invert


@dataclass(frozen=True)
class Block2x2:
    """``[[d1, d3], [d2, d4]]`` over a common base ring."""

    d1: Element
    d2: Element
    d3: Element
    d4: Element

    def __post_init__(self):
        same_ring(self.d1, self.d2, self.d3, self.d4)

    @classmethod
    def of(cls, a: Element, b: Element, c: Element, d: Element) -> Block2x2:
        """``[[a, c], [b, d]]``, the naming used for the matrix ``A``."""
        return cls(a, b, c, d)

    @classmethod
    def from_rows(cls, rows) -> Block2x2:
        (d1, d3), (d2, d4) = rows
        return cls(d1, d2, d3, d4)

    @classmethod
    def identity(cls, base: RingDescriptor) -> Block2x2:
        z, o = base.zero_element, base.one_element
        return cls(o, z, z, o)

    @classmethod
    def from_element(cls, x: Element) -> Block2x2:
        if not isinstance(x.ring, MatrixRing) or x.ring.dim != 2:
            raise UsageError(f"expected a 2x2 matrix, got ring {x.ring.spec}")
        return cls.from_rows(x.entries())

    @property
    def base(self) -> RingDescriptor:
        return self.d1.ring

    @property
    def ring(self) -> MatrixRing:
        return MatrixRing(self.base, 2)

    def rows(self) -> list[list[Element]]:
        return [[self.d1, self.d3], [self.d2, self.d4]]

    def to_element(self) -> Element:
        return Element(self.ring, (self.d1.value, self.d3.value, self.d2.value, self.d4.value))

    def __add__(self, other: Block2x2) -> Block2x2:
        return Block2x2(self.d1 + other.d1, self.d2 + other.d2, self.d3 + other.d3, self.d4 + other.d4)

    def __sub__(self, other: Block2x2) -> Block2x2:
        return Block2x2(self.d1 - other.d1, self.d2 - other.d2, self.d3 - other.d3, self.d4 - other.d4)

    def __mul__(self, other: Block2x2) -> Block2x2:
        (p, q), (r, s) = self.rows()
        (w, x), (y, z) = other.rows()
        return Block2x2.from_rows([[p * w + q * y, p * x + q * z], [r * w + s * y, r * x + s * z]])

    def __str__(self) -> str:
        return str(self.to_element())


@dataclass(frozen=True)
class LowerTriangularInner:
    """Regularity data for ``M = [[x, 0], [y, z]]``."""

    w: Element
    w_minus: Element
    x_plus: Element
    z_plus: Element
    mm_minus: Block2x2  # the idempotent M M^-


@dataclass(frozen=True)
class SchurData:
    """``D = P M Q`` with ``P = [[1, d3 d4+], [0, 1]]``, ``M = [[s, d3 f], [e d2, d4]]``,
    ``Q = [[1, 0], [d4+ d2, 1]]``."""

    D: Block2x2
    d4_plus: Element
    e: Element
    f: Element
    s: Element
    P: Block2x2
    M: Block2x2
    Q: Block2x2

    def check(self) -> SchurData:
        D, p = self.D, self.d4_plus
        if self.e != 1 - D.d4 * p or self.f != 1 - p * D.d4 or self.s != D.d1 - D.d3 * p * D.d2:
            raise InvariantViolation("e, f or s does not match its definition")
        if self.P * self.M * self.Q != D:
            raise InvariantViolation(f"P M Q != D for D={D}")
        return self


@dataclass(frozen=True)
class BlockData:
    """Intermediates of a block closed form.

    ``variant`` is ``"220"`` or ``"general"`` (corollary formulas reuse
    ``"general"`` with their own ``regime`` tag). ``along`` holds
    ``c^||d2`` (220) or ``a^||s`` (general).
    """

    variant: str
    u: Element
    u_inv: Element
    alpha: Element
    beta: Element
    xi: Element
    xi_inv: Element | None
    along: Element
    w: Element | None = None
    t: Element | None = None
    x1: Element | None = None
    x2: Element | None = None
    schur: SchurData | None = None
    inverses: tuple[tuple[str, Element], ...] = ()
    regime: str = ""


@dataclass(frozen=True)
class BlockResult:
    result: Block2x2
    data: BlockData

    @property
    def matrix(self) -> Element:
        return self.result.to_element()


def _reflexive(x: Element, supplied: Element | None, name: str) -> Element:
    if supplied is None:
        cert = inner_inverse(x)
        if not cert:
            raise PreconditionError(f"{name} = {x} is not regular")
        return cert.reflexive
    same_ring(x, supplied)
    if x * supplied * x != x or supplied * x * supplied != supplied:
        raise PreconditionError(f"{supplied} is not a reflexive inverse of {name} = {x}")
    return supplied


def _inner(x: Element, supplied: Element | None, name: str) -> Element | None:
    if supplied is None:
        cert = inner_inverse(x)
        return cert.inner if cert else None
    same_ring(x, supplied)
    if x * supplied * x != x:
        raise PreconditionError(f"{supplied} is not an inner inverse of {name} = {x}")
    return supplied


def lt_projector(x: Element, y: Element, z: Element, x_plus: Element, z_plus: Element,
                 w: Element, w_minus: Element) -> Block2x2:
    """``M M^-`` for ``M = [[x, 0], [y, z]]`` given ``x+``, ``z+`` and ``w^-``."""
    ez = 1 - z * z_plus
    ew = 1 - w * w_minus
    return Block2x2(
        d1=x * x_plus,
        d2=ew * ez * y * x_plus,
        d3=x.ring.zero_element,
        d4=z * z_plus + w * w_minus * ez,
    )


def lt_regular_inner(
    d2: Element,
    d1: Element,
    d3: Element,
    *,
    d2_plus: Element | None = None,
    d3_plus: Element | None = None,
    w_minus: Element | None = None,
) -> LowerTriangularInner | NotRegular:
    """Regularity of ``M = [[d2, 0], [d1, d3]]`` through
    ``w = (1 - d3 d3+) d1 (1 - d2+ d2)``; returns ``M M^-`` when regular."""
    same_ring(d2, d1, d3)
    d2p = _reflexive(d2, d2_plus, "d2")
    d3p = _reflexive(d3, d3_plus, "d3")
    w = (1 - d3 * d3p) * d1 * (1 - d2p * d2)
    wm = _inner(w, w_minus, "w")
    M = Block2x2(d2, d1, d2.ring.zero_element, d3)
    if wm is None:
        return NotRegular(M.to_element(), f"w = {w} is not regular")
    E = lt_projector(d2, d1, d3, d2p, d3p, w, wm)
    if E * M != M or E * E != E:
        raise InvariantViolation(f"M M^- is not an idempotent left identity of M={M}")
    return LowerTriangularInner(w, wm, d2p, d3p, E)


def _flat_check(A: Block2x2, D: Block2x2, closed: Block2x2 | None) -> None:
    try:
        flat = inverse_along(A.to_element(), D.to_element())
    except CapabilityError:
        return
    if closed is None:
        if isinstance(flat, MaryResult):
            raise InvariantViolation(f"closed form says no inverse but flattened ring has {flat.b}")
        return
    if not isinstance(flat, MaryResult):
        raise InvariantViolation(f"closed form gives {closed} but flattened ring has none")
    if flat.b != closed.to_element():
        raise InvariantViolation(f"closed form {closed} != flattened {flat.b}")


def _check_factorization(U: Block2x2, u_inv: Element, alpha: Element, xi: Element, top: Element) -> None:
    """``U = [[1,0],[alpha u^-1, 1]] diag(u, xi) [[1, top], [0, 1]]``."""
    base = U.base
    z, o = base.zero_element, base.one_element
    L = Block2x2(o, alpha * u_inv, z, o)
    Dg = Block2x2(U.d1, z, z, xi)
    R = Block2x2(o, z, top, o)
    if L * Dg * R != U:
        raise InvariantViolation(f"Schur factorization of U fails for U={U}")


def _same_base(A: Block2x2, D: Block2x2) -> RingDescriptor:
    return same_ring(A.d1, D.d1)


def inverse_along_220(
    A: Block2x2,
    D: Block2x2,
    *,
    d2_plus: Element | None = None,
    d3_plus: Element | None = None,
    w_minus: Element | None = None,
    check: bool = True,
) -> BlockResult | NotInvertibleAlong | NotRegular:
    """``A^||D`` for ``D = [[d1, d3], [d2, 0]]``.

    Needs ``d2``, ``d3`` regular and ``c^||d2`` to exist (otherwise
    :class:`PreconditionError`). Returns :class:`NotRegular` when ``D``
    itself is not regular and :class:`NotInvertibleAlong` when ``xi`` is not
    a unit.
    """
    _same_base(A, D)
    if not D.d4.is_zero():
        raise UsageError("the (2,2,0) form needs d4 = 0")
    a, b, c, d = A.d1, A.d2, A.d3, A.d4
    d1, d2, d3 = D.d1, D.d2, D.d3
    d2p = _reflexive(d2, d2_plus, "d2")
    d3p = _reflexive(d3, d3_plus, "d3")
    along = inverse_along(c, d2, inner=d2p)
    if not isinstance(along, MaryResult):
        raise PreconditionError(f"c^||d2 does not exist (c={c}, d2={d2})")
    K = along.b
    lt = lt_regular_inner(d2, d1, d3, d2_plus=d2p, d3_plus=d3p, w_minus=w_minus)
    if not lt:
        if check:
            _flat_check(A, D, None)
        return NotRegular(D.to_element(), f"{lt.reason}; D is not regular")
    w, wm = lt.w, lt.w_minus
    u, u_inv = along.u, along.u_inv
    ew = 1 - w * wm
    e3 = 1 - d3 * d3p
    alpha = d1 * c + d3 * d - ew * e3 * d1 * d2p
    beta = d1 * a + d3 * b + ew * e3
    xi = beta - alpha * K * a

    U = Block2x2(u, alpha, d2 * a, beta)
    if check:
        z, o = a.ring.zero_element, a.ring.one_element
        P = Block2x2(z, o, o, z)
        M = Block2x2(d2, d1, z, d3)
        if M * A * P + Block2x2.identity(a.ring) - lt.mm_minus != U:
            raise InvariantViolation("U != M A P + I - M M^-")
        _check_factorization(U, u_inv, alpha, xi, K * a)

    xi_inv = try_invert(xi)
    data = BlockData(
        "220", u, u_inv, alpha, beta, xi, xi_inv, K, w=w,
        inverses=(("d2+", d2p), ("d3+", d3p), ("w-", wm)),
    )
    if xi_inv is None:
        if check:
            _flat_check(A, D, None)
        return NotInvertibleAlong(A.to_element(), D.to_element(), xi, "xi")
    top = xi_inv * (d1 - alpha * K)
    result = Block2x2(
        d1=top,
        d2=K * (1 - a * top),
        d3=xi_inv * d3,
        d4=-(K * a * xi_inv * d3),
    )
    if check:
        _flat_check(A, D, result)
    return BlockResult(result, data)


def schur_decompose(D: Block2x2, d4_plus: Element | None = None) -> SchurData | NotRegular:
    d1, d2, d3, d4 = D.d1, D.d2, D.d3, D.d4
    if d4_plus is None:
        cert = inner_inverse(d4)
        if not cert:
            return NotRegular(d4, "d4 is not regular")
        p = cert.reflexive
    else:
        p = _reflexive(d4, d4_plus, "d4")
    z, o = d1.ring.zero_element, d1.ring.one_element
    e = 1 - d4 * p
    f = 1 - p * d4
    s = d1 - d3 * p * d2
    P = Block2x2(o, z, d3 * p, o)
    M = Block2x2(s, e * d2, d3 * f, d4)
    Q = Block2x2(o, p * d2, z, o)
    return SchurData(D, p, e, f, s, P, M, Q).check()


def _general_core(A, D, sd, s_plus, t_minus, alpha_fn, beta_fn, check, regime):
    a, b, c, d = A.d1, A.d2, A.d3, A.d4
    d2, d3, d4 = D.d2, D.d3, D.d4
    e, s, p4 = sd.e, sd.s, sd.d4_plus
    sp = _reflexive(s, s_plus, "s")
    along = inverse_along(a, s, inner=sp)
    if not isinstance(along, MaryResult):
        raise PreconditionError(f"a^||s does not exist (a={a}, s={s})")
    K, u, u_inv = along.b, along.u, along.u_inv
    t = e * d2 * (1 - sp * s)
    tm = _inner(t, t_minus, "t")
    if tm is None:
        if check:
            _flat_check(A, D, None)
        return NotRegular(D.to_element(), f"t = {t} is not regular; D is not regular")
    g = 1 - t * tm
    alpha = alpha_fn(g, sp)
    beta = beta_fn(g)
    h = a * d3 * p4 + c
    xi = beta - alpha * K * h

    U = Block2x2(u, alpha, s * h, beta)
    if check:
        base = a.ring
        I = Block2x2.identity(base)
        E = lt_projector(s, e * d2, d4, sp, p4, t, tm)
        expected = Block2x2(1 - s * sp, -(g * e * d2 * sp), base.zero_element, g * e)
        if I - E != expected:
            raise InvariantViolation("I - M M^- does not match its closed form")
        if sd.M * sd.Q * A * sd.P + I - E != U:
            raise InvariantViolation("U != M Q A P + I - M M^-")
        _check_factorization(U, u_inv, alpha, xi, K * h)

    xi_inv = try_invert(xi)
    inverses = (("d4+", p4), ("s+", sp), ("t-", tm))
    if xi_inv is None:
        if check:
            _flat_check(A, D, None)
        return NotInvertibleAlong(A.to_element(), D.to_element(), xi, "xi")
    x1 = ((1 - K * a) * d3 * p4 - K * c) * xi_inv
    x2 = u_inv - x1 * alpha * u_inv
    result = Block2x2(
        d1=x1 * d2 + x2 * s,
        d2=xi_inv * (d2 - alpha * K),
        d3=x1 * d4,
        d4=xi_inv * d4,
    )
    data = BlockData(
        "general", u, u_inv, alpha, beta, xi, xi_inv, K, t=t, x1=x1, x2=x2,
        schur=sd, inverses=inverses, regime=regime,
    )
    if check:
        _flat_check(A, D, result)
    return BlockResult(result, data)


def _schur_or_raise(D: Block2x2, d4_plus: Element | None) -> SchurData:
    sd = schur_decompose(D, d4_plus)
    if not sd:
        raise PreconditionError(f"d4 = {D.d4} is not regular")
    if not (D.d3 * sd.f).is_zero():
        raise PreconditionError(f"d3 f != 0 (d3={D.d3}, f={sd.f})")
    return sd


def inverse_along_general(
    A: Block2x2,
    D: Block2x2,
    *,
    d4_plus: Element | None = None,
    s_plus: Element | None = None,
    t_minus: Element | None = None,
    check: bool = True,
) -> BlockResult | NotInvertibleAlong | NotRegular:
    """``A^||D`` through the Schur decomposition ``D = P M Q``.

    Hypotheses (each a :class:`PreconditionError` when violated): ``d4``
    regular, ``d3 f = 0``, ``s`` regular and ``a^||s`` exists.
    """
    _same_base(A, D)
    a, b, c, d = A.d1, A.d2, A.d3, A.d4
    d2, d3, d4 = D.d2, D.d3, D.d4
    sd = _schur_or_raise(D, d4_plus)
    e, p4 = sd.e, sd.d4_plus

    def alpha_fn(g, sp):
        return d2 * a + d4 * b - g * e * d2 * sp

    def beta_fn(g):
        return (d2 * a + d4 * b) * d3 * p4 + d2 * c + d4 * d + g * e

    return _general_core(A, D, sd, s_plus, t_minus, alpha_fn, beta_fn, check, "general")


# --- specialised regimes -------------------------------------------------
#
# Each writes the simplified formulas out directly; the test-suite checks
# them against inverse_along_general on every sampled input.


def inverse_along_d4_invertible(A: Block2x2, D: Block2x2, *, check: bool = True):
    """``d4`` a unit: ``e = f = 0`` and the correction terms vanish."""
    _same_base(A, D)
    a, b, c, d = A.d1, A.d2, A.d3, A.d4
    d1, d2, d3, d4 = D.d1, D.d2, D.d3, D.d4
    d4i = try_invert(d4)
    if d4i is None:
        raise PreconditionError(f"d4 = {d4} is not a unit")
    s = d1 - d3 * d4i * d2
    sp = _reflexive(s, None, "s")
    along = inverse_along(a, s, inner=sp)
    if not isinstance(along, MaryResult):
        raise PreconditionError(f"a^||s does not exist (a={a}, s={s})")
    K, u, u_inv = along.b, along.u, along.u_inv
    alpha = d2 * a + d4 * b
    beta = alpha * d3 * d4i + d2 * c + d4 * d
    xi = beta - alpha * K * (a * d3 * d4i + c)
    xi_inv = try_invert(xi)
    if xi_inv is None:
        if check:
            _flat_check(A, D, None)
        return NotInvertibleAlong(A.to_element(), D.to_element(), xi, "xi")
    x1 = ((1 - K * a) * d3 * d4i - K * c) * xi_inv
    x2 = u_inv - x1 * alpha * u_inv
    result = Block2x2(x1 * d2 + x2 * s, xi_inv * (d2 - alpha * K), x1 * d4, xi_inv * d4)
    if check:
        _flat_check(A, D, result)
    data = BlockData("general", u, u_inv, alpha, beta, xi, xi_inv, K, x1=x1, x2=x2,
                     inverses=(("d4^-1", d4i), ("s+", sp)), regime="d4-invertible")
    return BlockResult(result, data)


def inverse_along_lower_triangular(A: Block2x2, D: Block2x2, *, check: bool = True):
    """``d3 = 0``: ``s = d1`` and the top row collapses.

    The top-left entry is ``K - K c xi^-1 (d2 - alpha K)`` with
    ``K = a^||d1``; it equals ``K`` only when the correction vanishes.
    """
    _same_base(A, D)
    a, b, c, d = A.d1, A.d2, A.d3, A.d4
    d1, d2, d3, d4 = D.d1, D.d2, D.d3, D.d4
    if not d3.is_zero():
        raise PreconditionError("lower-triangular form needs d3 = 0")
    cert = inner_inverse(d4)
    if not cert:
        raise PreconditionError(f"d4 = {d4} is not regular")
    p4 = cert.reflexive
    e = 1 - d4 * p4
    d1p = _reflexive(d1, None, "d1")
    along = inverse_along(a, d1, inner=d1p)
    if not isinstance(along, MaryResult):
        raise PreconditionError(f"a^||d1 does not exist (a={a}, d1={d1})")
    K, u = along.b, along.u
    t = e * d2 * (1 - d1p * d1)
    tm = _inner(t, None, "t")
    if tm is None:
        return NotRegular(D.to_element(), f"t = {t} is not regular; D is not regular")
    g = 1 - t * tm
    alpha = d2 * a + d4 * b - g * e * d2 * d1p
    beta = d2 * c + d4 * d + g * e
    xi = beta - alpha * K * c
    xi_inv = try_invert(xi)
    if xi_inv is None:
        if check:
            _flat_check(A, D, None)
        return NotInvertibleAlong(A.to_element(), D.to_element(), xi, "xi")
    bottom_left = xi_inv * (d2 - alpha * K)
    result = Block2x2(
        d1=K - K * c * bottom_left,
        d2=bottom_left,
        d3=-(K * c * xi_inv * d4),
        d4=xi_inv * d4,
    )
    if check:
        _flat_check(A, D, result)
    data = BlockData("general", u, along.u_inv, alpha, beta, xi, xi_inv, K, t=t,
                     inverses=(("d4+", p4), ("d1+", d1p), ("t-", tm)), regime="lower-triangular")
    return BlockResult(result, data)


def inverse_along_ed2_zero(A: Block2x2, D: Block2x2, *, check: bool = True):
    """``e d2 = 0`` and ``d3 f = 0``: ``t = 0`` so only ``e`` survives in ``beta``."""
    _same_base(A, D)
    a, b, c, d = A.d1, A.d2, A.d3, A.d4
    d2, d3, d4 = D.d2, D.d3, D.d4
    sd = _schur_or_raise(D, None)
    e, s, p4 = sd.e, sd.s, sd.d4_plus
    if not (e * d2).is_zero():
        raise PreconditionError("e d2 != 0")
    sp = _reflexive(s, None, "s")
    along = inverse_along(a, s, inner=sp)
    if not isinstance(along, MaryResult):
        raise PreconditionError(f"a^||s does not exist (a={a}, s={s})")
    K, u, u_inv = along.b, along.u, along.u_inv
    alpha = d2 * a + d4 * b
    beta = alpha * d3 * p4 + d2 * c + d4 * d + e
    xi = beta - alpha * K * (a * d3 * p4 + c)
    xi_inv = try_invert(xi)
    if xi_inv is None:
        if check:
            _flat_check(A, D, None)
        return NotInvertibleAlong(A.to_element(), D.to_element(), xi, "xi")
    x1 = ((1 - K * a) * d3 * p4 - K * c) * xi_inv
    x2 = u_inv - x1 * alpha * u_inv
    result = Block2x2(x1 * d2 + x2 * s, xi_inv * (d2 - alpha * K), x1 * d4, xi_inv * d4)
    if check:
        _flat_check(A, D, result)
    data = BlockData("general", u, u_inv, alpha, beta, xi, xi_inv, K, x1=x1, x2=x2,
                     schur=sd, inverses=(("d4+", p4), ("s+", sp)), regime="ed2-zero")
    return BlockResult(result, data)


def flattened_inverse_along(A: Block2x2, D: Block2x2):
    """``A^||D`` computed directly in the 2x2 matrix ring over the base."""
    _same_base(A, D)
    return inverse_along(A.to_element(), D.to_element())
