"""Brute-force reference arithmetic that shares no code with the package.

Elements of Z/n are ints; 2x2 matrices over Z/n are 4-tuples (a, b, c, d)
for [[a, b], [c, d]]. Everything here is plain loops, meant to be obviously
correct rather than fast.
"""

from __future__ import annotations

import itertools


def zn(n):
    return list(range(n))


def m2(n):
    return list(itertools.product(range(n), repeat=4))


def mul_zn(n):
    return lambda x, y: (x * y) % n


def mul_m2(n):
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)

    return mul


def add_m2(n):
    return lambda x, y: tuple((p + q) % n for p, q in zip(x, y))


def units(elems, mul, one):
    return {x for x in elems if any(mul(x, y) == one and mul(y, x) == one for y in elems)}


def inner_inverses(elems, mul, a):
    return [x for x in elems if mul(mul(a, x), a) == a]


def in_left_ideal(elems, mul, a, b):
    """a in R b."""
    return any(mul(x, b) == a for x in elems)


def in_right_ideal(elems, mul, a, b):
    return any(mul(b, x) == a for x in elems)


def inverses_along(elems, mul, a, d):
    """All b with d a b = d = b a d, b in R d and b in d R."""
    left = {mul(x, d) for x in elems}
    right = {mul(d, x) for x in elems}
    da = mul(d, a)
    return [b for b in elems if b in left and b in right and mul(da, b) == d and mul(mul(b, a), d) == d]


def block(n, a, b, c, d):
    """Entry layout [[a, c], [b, d]] as a flat 4-tuple."""
    return (a % n, c % n, b % n, d % n)
