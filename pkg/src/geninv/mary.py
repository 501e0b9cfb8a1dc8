"""The inverse along an element and along a product ``p m q``.

``a`` is invertible along ``d`` when some ``b`` satisfies
``d a b = d = b a d`` and ``b <=_H d``; such ``b`` is unique and written
``a^||d``. With ``m`` regular and inner inverse ``m1``:

* along ``m``: exists iff ``u = m a + 1 - m m1`` is a unit (equivalently
  ``v = a m + 1 - m1 m``), and then ``b = u^-1 m = m v^-1``;
* along ``p m q`` with ``p' p m = m = m q q'``: the same with
  ``u = m q a p + 1 - m m1``, ``v = q a p m + 1 - m1 m`` and
  ``b = p u^-1 m q = p m v^-1 q``.

:func:`mary_oracle` is the definitional brute force used to check both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from geninv import green, kernels
from geninv.errors import InvariantViolation, PreconditionError, UsageError
from geninv.green import GreenWitness
from geninv.regularity import RegularityCertificate, certify, inner_inverse
from geninv.results import NotInvertibleAlong, NotRegular
from geninv.rings import Element, enumerate_elements, is_idempotent, same_ring, try_invert
from geninv.tables import has_tables, tables_for


@dataclass(frozen=True)
class MaryResult:
    a: Element
    d: Element
    inner_used: Element
    u: Element
    u_inv: Element
    v: Element
    v_inv: Element
    b: Element
    h_witness: GreenWitness
    factors: tuple[Element, Element, Element] | None = None  # (p, m, q)

    @property
    def inverse(self) -> Element:
        return self.b

    def check(self) -> MaryResult:
        a, d, b, u, v = self.a, self.d, self.b, self.u, self.v
        if self.factors is None:
            m, m1 = d, self.inner_used
            if u != m * a + 1 - m * m1 or v != a * m + 1 - m1 * m:
                raise InvariantViolation("u or v does not match its definition")
            if b != self.u_inv * m or b != m * self.v_inv:
                raise InvariantViolation("b != u^-1 m or b != m v^-1")
        else:
            p, m, q = self.factors
            m1 = self.inner_used
            if d != p * m * q:
                raise InvariantViolation("d != p m q")
            if u != m * q * a * p + 1 - m * m1 or v != q * a * p * m + 1 - m1 * m:
                raise InvariantViolation("u or v does not match its definition")
            if b != p * self.u_inv * m * q or b != p * m * self.v_inv * q:
                raise InvariantViolation("b != p u^-1 m q or b != p m v^-1 q")
        for w, w_inv in ((u, self.u_inv), (v, self.v_inv)):
            if not ((w * w_inv).is_one() and (w_inv * w).is_one()):
                raise InvariantViolation(f"{w_inv} is not a two-sided inverse of {w}")
        if d * a * b != d or b * a * d != d:
            raise InvariantViolation("d a b = d = b a d fails")
        hw = self.h_witness
        if hw.kind != "LeqH" or hw.a != b or hw.b != d or not hw.holds():
            raise InvariantViolation("H-witness does not certify b <=_H d")
        return self


@dataclass(frozen=True)
class ProductMaryProblem:
    """Inputs for the inverse along ``p m q`` with its hypothesis witnesses."""

    a: Element
    p: Element
    m: Element
    q: Element
    p_prime: Element
    q_prime: Element
    m_cert: RegularityCertificate

    def check(self) -> ProductMaryProblem:
        same_ring(self.a, self.p, self.m, self.q, self.p_prime, self.q_prime)
        p, m, q = self.p, self.m, self.q
        if self.p_prime * p * m != m:
            raise PreconditionError(f"p' p m != m (p'={self.p_prime})")
        if m * q * self.q_prime != m:
            raise PreconditionError(f"m q q' != m (q'={self.q_prime})")
        if self.m_cert.a != m or m * self.m_cert.inner * m != m:
            raise PreconditionError("m_cert does not certify m")
        return self

    @property
    def d(self) -> Element:
        return self.p * self.m * self.q


def jacobson_invert(a: Element, b: Element) -> tuple[Element, Element] | None:
    """``((1+ab)^-1, (1+ba)^-1)``, the second from ``1 - b (1+ab)^-1 a``.

    Returns ``None`` when ``1 + a b`` is not a unit.
    """
    ring = same_ring(a, b)
    x = try_invert(1 + a * b)
    if x is None:
        if ring.is_finite and try_invert(1 + b * a) is not None:
            raise InvariantViolation(f"1+ba is a unit but 1+ab is not (a={a}, b={b})")
        return None
    y = 1 - b * x * a
    one_ba = 1 + b * a
    if not ((one_ba * y).is_one() and (y * one_ba).is_one()):
        raise InvariantViolation(f"1 - b(1+ab)^-1 a does not invert 1+ba (a={a}, b={b})")
    return x, y


@dataclass(frozen=True)
class CornerReport:
    e: Element
    x: Element
    global_unit: bool
    corner_unit: bool
    corner_inverse: Element | None


def corner_invertible(e: Element, x: Element) -> CornerReport:
    """Compare invertibility of ``exe + 1 - e`` in R with that of ``exe`` in ``eRe``.

    On enumerable rings the corner side is decided by scanning ``eRe`` for
    ``y`` with ``(exe) y = y (exe) = e``, independently of the global side.
    Elsewhere the corner inverse is taken as ``e g e`` with
    ``g = (exe + 1 - e)^-1`` and verified.
    """
    ring = same_ring(e, x)
    if not is_idempotent(e):
        raise UsageError(f"{e} is not idempotent")
    exe = e * x * e
    g = try_invert(exe + 1 - e)
    global_unit = g is not None
    corner_inv = None
    if ring.is_enumerable:
        seen = set()
        for r in enumerate_elements(ring):
            y = e * r * e
            if y in seen:
                continue
            seen.add(y)
            if exe * y == e and y * exe == e:
                corner_inv = y if corner_inv is None or y.index < corner_inv.index else corner_inv
    elif global_unit:
        y = e * g * e
        if exe * y == e and y * exe == e:
            corner_inv = y
    corner_unit = corner_inv is not None
    if global_unit != corner_unit:
        raise InvariantViolation(f"corner lemma fails for e={e}, x={x}")
    return CornerReport(e, x, global_unit, corner_unit, corner_inv)


def _resolve_inner(m: Element, inner: Element | None) -> RegularityCertificate | NotRegular:
    if inner is None:
        return inner_inverse(m)
    same_ring(m, inner)
    if m * inner * m != m:
        raise PreconditionError(f"{inner} is not an inner inverse of {m}")
    return certify(m, inner)


def inverse_along(
    a: Element, m: Element, inner: Element | None = None
) -> MaryResult | NotInvertibleAlong | NotRegular:
    """``a^||m`` through the unit criterion, with full certificate."""
    same_ring(a, m)
    cert = _resolve_inner(m, inner)
    if not cert:
        return cert
    m1 = cert.inner
    u = m * a + 1 - m * m1
    v = a * m + 1 - m1 * m
    u_inv, v_inv = try_invert(u), try_invert(v)
    if (u_inv is None) != (v_inv is None):
        raise InvariantViolation(f"u and v disagree on invertibility (a={a}, m={m})")
    if u_inv is None:
        return NotInvertibleAlong(a, m, u)
    b = u_inv * m
    witness = GreenWitness(
        "LeqH",
        b,
        m,
        left=GreenWitness("LeqL", b, m, x=u_inv),
        right=GreenWitness("LeqR", b, m, x=v_inv),
    )
    return MaryResult(a, m, m1, u, u_inv, v, v_inv, b, witness).check()


def product_problem(
    a: Element,
    p: Element,
    m: Element,
    q: Element,
    *,
    p_prime: Element | None = None,
    q_prime: Element | None = None,
    inner: Element | None = None,
) -> ProductMaryProblem | NotRegular:
    """Assemble a :class:`ProductMaryProblem`, deriving missing witnesses.

    Raises :class:`PreconditionError` when ``m <=_L p m`` or ``m <=_R m q``
    fails (or a supplied witness is wrong).
    """
    same_ring(a, p, m, q)
    cert = _resolve_inner(m, inner)
    if not cert:
        return cert
    if p_prime is None:
        w = green.leq_L(m, p * m)
        if not w:
            raise PreconditionError(f"hypothesis m <=_L pm fails (p={p}, m={m})")
        p_prime = w.x
    if q_prime is None:
        w = green.leq_R(m, m * q)
        if not w:
            raise PreconditionError(f"hypothesis m <=_R mq fails (m={m}, q={q})")
        q_prime = w.x
    return ProductMaryProblem(a, p, m, q, p_prime, q_prime, cert).check()


def inverse_along_product(prob: ProductMaryProblem) -> MaryResult | NotInvertibleAlong:
    """``a^||pmq`` from the unit ``u = m q a p + 1 - m m1``."""
    prob.check()
    a, p, m, q = prob.a, prob.p, prob.m, prob.q
    m1 = prob.m_cert.inner
    d = p * m * q
    u = m * q * a * p + 1 - m * m1
    v = q * a * p * m + 1 - m1 * m
    u_inv, v_inv = try_invert(u), try_invert(v)
    if (u_inv is None) != (v_inv is None):
        raise InvariantViolation(f"u and v disagree on invertibility (a={a}, p={p}, m={m}, q={q})")
    if u_inv is None:
        return NotInvertibleAlong(a, d, u)
    b = p * u_inv * m * q
    if b != p * m * v_inv * q:
        raise InvariantViolation("p u^-1 m q != p m v^-1 q")
    # b = p u^-1 p' (p m q) = (p m q) q' v^-1 q
    witness = GreenWitness(
        "LeqH",
        b,
        d,
        left=GreenWitness("LeqL", b, d, x=p * u_inv * prob.p_prime),
        right=GreenWitness("LeqR", b, d, x=prob.q_prime * v_inv * q),
    )
    return MaryResult(a, d, m1, u, u_inv, v, v_inv, b, witness, factors=(p, m, q)).check()


def exists_via_H(a: Element, d: Element) -> bool:
    """Existence of ``a^||d`` decided by ``d H d a d``."""
    same_ring(a, d)
    return bool(green.green_H(d, d * a * d))


def mary_oracle(a: Element, d: Element) -> list[Element]:
    """Every ``b`` with ``d a b = d = b a d`` and ``b <=_H d``, by full scan.

    The list has at most one entry; more would contradict uniqueness and
    raises :class:`InvariantViolation`.
    """
    ring = same_ring(a, d)
    ring.require_enumerable("mary_oracle")
    if has_tables(ring):
        t = tables_for(ring)
        mask = kernels.along_candidates(t.mul, a.index, d.index)
        found = [t.element(i) for i in np.flatnonzero(mask)]
    else:
        elems = list(enumerate_elements(ring))
        left = {x * d for x in elems}
        right = {d * x for x in elems}
        da = d * a
        found = [b for b in elems if b in left and b in right and da * b == d and b * a * d == d]
    if len(found) > 1:
        raise InvariantViolation(
            f"{len(found)} inverses of {a} along {d}: " + ", ".join(map(str, found))
        )
    return found


def oracle_value(a: Element, d: Element) -> Element | None:
    found = mary_oracle(a, d)
    return found[0] if found else None


__all__ = [
    "CornerReport",
    "MaryResult",
    "ProductMaryProblem",
    "corner_invertible",
    "exists_via_H",
    "inverse_along",
    "inverse_along_product",
    "jacobson_invert",
    "mary_oracle",
    "oracle_value",
    "product_problem",
]
