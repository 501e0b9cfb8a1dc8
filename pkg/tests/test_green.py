import pytest

import oracles
from geninv import green
from geninv.errors import CapabilityError, InvariantViolation, UsageError
from geninv.green import GreenWitness, decide, green_H, leq_H, leq_L, leq_R
from geninv.results import NotRelated
from geninv.rings import MatrixRing, ModularInt, enumerate_elements


def test_leq_l_mod_six(el):
    w = leq_L(el("Z:6", 2), el("Z:6", 4))
    assert w.x == 2 and w.holds()


def test_leq_r_mod_six(el):
    assert leq_R(el("Z:6", 2), el("Z:6", 4)).x == 2


@pytest.mark.parametrize("spec, lit", [("Z:6", "0"), ("Z:6", "3"), ("M:2:Z:2", "[[1,1],[0,0]]"), ("Q", "2/3")])
def test_reflexive_witness_is_one(el, spec, lit):
    a = el(spec, lit)
    for fn in (leq_L, leq_R):
        assert fn(a, a).x.is_one()
    w = green_H(a, a)
    assert w.left.x.is_one() and w.left.y.is_one() and w.right.x.is_one() and w.right.y.is_one()


def test_idempotent_below_identity(el):
    a = el("M:2:Z:2", "[[1,0],[0,0]]")
    assert leq_L(a, a.ring.one_element).x == a


def test_zero_below_anything(el):
    for lit in ("1", "2", "5"):
        assert leq_R(el("Z:6", 0), el("Z:6", lit)).x == 0


def test_leq_r_matrix_witness(el):
    a = el("M:2:Z:2", "[[0,1],[0,0]]")
    b = el("M:2:Z:2", "[[1,0],[0,0]]")
    w = leq_R(a, b)
    assert str(w.x) == "[[0,1],[0,0]]"
    scan = leq_R(a, b, "scan")
    assert b * scan.x == a


def test_two_and_four_are_h_related(el):
    w = green_H(el("Z:6", 2), el("Z:6", 4))
    assert w and w.holds()


def test_one_not_below_two(el):
    r = leq_H(el("Z:6", 1), el("Z:6", 2))
    assert isinstance(r, NotRelated) and not r


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_principal_ideals_match_reference(n):
    ring = ModularInt(n)
    E, mul = oracles.zn(n), oracles.mul_zn(n)
    for a in enumerate_elements(ring):
        for b in enumerate_elements(ring):
            assert bool(leq_L(a, b)) == oracles.in_left_ideal(E, mul, a.value, b.value)
            assert bool(leq_R(a, b)) == oracles.in_right_ideal(E, mul, a.value, b.value)


def test_noncommutative_left_right_differ():
    ring = MatrixRing(ModularInt(2), 2)
    E, mul = oracles.m2(2), oracles.mul_m2(2)
    asym = 0
    for a in enumerate_elements(ring):
        for b in enumerate_elements(ring):
            ra, rb = a.value, b.value
            assert bool(leq_L(a, b, "scan")) == oracles.in_left_ideal(E, mul, ra, rb)
            assert bool(leq_R(a, b, "scan")) == oracles.in_right_ideal(E, mul, ra, rb)
            asym += bool(leq_L(a, b)) != bool(leq_R(a, b))
    assert asym > 0


def test_scan_returns_first_witness(el):
    a, b = el("Z:6", 2), el("Z:6", 4)
    w = leq_L(a, b, "scan")
    assert w.x == 2  # 2*4 = 2, and neither 0 nor 1 works


def test_decide_dispatch_and_errors(el):
    a, b = el("Z:6", 2), el("Z:6", 4)
    assert decide("H", a, b)
    with pytest.raises(UsageError):
        decide("J", a, b)
    with pytest.raises(UsageError):
        decide("H", a, b, method="guess")
    with pytest.raises(CapabilityError):
        decide("LeqL", a, b, method="linear")


def test_forged_witness_detected(el):
    w = GreenWitness("LeqL", el("Z:6", 2), el("Z:6", 4), x=el("Z:6", 1))
    assert not w.holds()
    with pytest.raises(InvariantViolation):
        w.check()


def test_linear_decider_on_rationals(el):
    a = el("M:2:Q", "[[1,2],[2,4]]")
    b = el("M:2:Q", "[[1,0],[2,0]]")
    w = green.leq_R(a, b)
    assert w and b * w.x == a
    assert not green.leq_L(a, b)
