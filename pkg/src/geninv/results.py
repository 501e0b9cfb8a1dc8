"""Negative answers.

These are ordinary return values, not exceptions: nonexistence is an
outcome the theory predicts. All of them are falsy, so ``if result:``
separates positive from negative answers.
"""

from __future__ import annotations

from dataclasses import dataclass

from geninv.rings import Element


class Negative:
    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class NotRegular(Negative):
    """No x with a x a = a (for ``a`` a ring element)."""

    a: Element
    reason: str = ""


@dataclass(frozen=True)
class NotRelated(Negative):
    """The requested Green preorder/relation does not hold."""

    kind: str
    a: Element
    b: Element


@dataclass(frozen=True)
class NotInvertibleAlong(Negative):
    """``a`` has no inverse along ``d``; ``witness`` is the non-unit that decided it."""

    a: Element
    d: Element
    witness: Element | None = None
    witness_name: str = "u"
