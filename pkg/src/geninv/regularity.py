"""Von Neumann regularity: inner and reflexive inverses.

Three decision paths, chosen by :func:`inner_inverse` with ``method="auto"``:

* scalar fields: ``0 -> 0``, otherwise the field inverse;
* matrices over a field: canonical rank-factorization inner inverse;
* any other enumerable ring: scan, first hit in enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass

from geninv import fieldlinalg, kernels
from geninv.errors import CapabilityError, InvariantViolation, UsageError
from geninv.results import NotRegular
from geninv.rings import Element, MatrixRing, RingDescriptor, enumerate_elements, try_invert
from geninv.tables import has_tables, tables_for

METHODS = ("auto", "scan", "field")


@dataclass(frozen=True)
class RegularityCertificate:
    a: Element
    inner: Element
    reflexive: Element

    def check(self) -> None:
        a, x, r = self.a, self.inner, self.reflexive
        if a * x * a != a:
            raise InvariantViolation(f"a x a != a for a={a}, x={x}")
        if r != x * a * x or a * r * a != a or r * a * r != r:
            raise InvariantViolation(f"bad reflexive inverse {r} of {a}")


def certify(a: Element, inner: Element) -> RegularityCertificate:
    """Certificate from a known inner inverse; rejects a wrong one."""
    if a * inner * a != a:
        raise UsageError(f"{inner} is not an inner inverse of {a}")
    cert = RegularityCertificate(a, inner, inner * a * inner)
    cert.check()
    return cert


def field_path_available(ring: RingDescriptor) -> bool:
    if isinstance(ring, MatrixRing):
        return ring.over_field
    return ring.is_field


def _pick_method(ring: RingDescriptor, method: str) -> str:
    if method not in METHODS:
        raise UsageError(f"unknown method {method!r}")
    if method == "auto":
        if field_path_available(ring):
            return "field"
        if ring.is_enumerable:
            return "scan"
        raise CapabilityError(f"regularity is undecidable here for {ring.spec}")
    if method == "field" and not field_path_available(ring):
        raise CapabilityError(f"no field algorithm for {ring.spec}")
    if method == "scan":
        ring.require_enumerable("regularity scan")
    return method


def _field_inner(a: Element) -> Element:
    ring = a.ring
    if not isinstance(ring, MatrixRing):
        if a.is_zero():
            return a
        return try_invert(a)
    F = ring.scalar_ring
    x = fieldlinalg.inner_inverse(F, ring.flatten(a.value))
    return Element(ring, ring.unflatten(x))


def _scan_inner(a: Element) -> Element | None:
    ring = a.ring
    if has_tables(ring):
        t = tables_for(ring)
        i = int(t.first_inner[a.index])
        return None if i < 0 else t.element(i)
    for x in enumerate_elements(ring):
        if a * x * a == a:
            return x
    return None


def inner_inverse(a: Element, method: str = "auto") -> RegularityCertificate | NotRegular:
    """Inner and reflexive inverse of ``a``, or :class:`NotRegular`."""
    m = _pick_method(a.ring, method)
    x = _field_inner(a) if m == "field" else _scan_inner(a)
    if x is None:
        return NotRegular(a, "exhaustive scan found no inner inverse")
    cert = RegularityCertificate(a, x, x * a * x)
    cert.check()
    return cert


def is_regular(a: Element, method: str = "auto") -> bool:
    return bool(inner_inverse(a, method))


def all_inner_inverses(a: Element) -> list[Element]:
    """Every x with a x a = a, in enumeration order."""
    ring = a.ring
    ring.require_enumerable("all_inner_inverses")
    if has_tables(ring):
        t = tables_for(ring)
        mask = kernels.inner_mask(t.mul, a.index)
        return [t.element(i) for i in mask.nonzero()[0]]
    return [x for x in enumerate_elements(ring) if a * x * a == a]


def reflexive_inverse(a: Element) -> Element | None:
    cert = inner_inverse(a)
    return cert.reflexive if cert else None
