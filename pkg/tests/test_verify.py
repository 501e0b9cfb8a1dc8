import pytest

import oracles
from geninv import mary, verify
from geninv.errors import CapabilityError, UsageError
from geninv.rings import MatrixRing, ModularInt, Rationals
from geninv.syntax import parse_element
from geninv.verify import Mode, VerificationReport, replay, run_check, search_question

GOLDEN_ALONG_Z6 = """\
theorem=mary-equivalence
ring=Z:6
mode=exhaustive
cases_checked=36
hypothesis_failed=0
passed=36
failures=0
status=pass
note.existing=21
note.multi_inner_cases=24
"""


def strip_elapsed(text):
    lines = text.splitlines(keepends=True)
    assert lines[-1].startswith("elapsed=")
    return "".join(lines[:-1])


def test_golden_report_text():
    rep = run_check("mary-equivalence", ModularInt(6))
    assert strip_elapsed(rep.to_text()) == GOLDEN_ALONG_Z6
    assert rep.to_text(with_elapsed=False) == GOLDEN_ALONG_Z6


def test_golden_counts_from_reference():
    E, mul = oracles.zn(6), oracles.mul_zn(6)
    existing = sum(bool(oracles.inverses_along(E, mul, a, d)) for a in E for d in E)
    multi = sum(len(oracles.inner_inverses(E, mul, d)) > 1 for d in E) * 6
    assert f"note.existing={existing}\n" in GOLDEN_ALONG_Z6
    assert f"note.multi_inner_cases={multi}\n" in GOLDEN_ALONG_Z6


def test_pmq_example_counts():
    rep = run_check("pmq-theorem", ModularInt(6))
    assert rep.cases_checked == 1296 and rep.ok
    assert rep.hypothesis_failed + rep.passed == 1296
    assert rep.passed > 0


def test_jacobson_m2z2():
    rep = run_check("jacobson", MatrixRing(ModularInt(2), 2))
    assert (rep.cases_checked, len(rep.failures), rep.status) == (256, 0, "pass")


@pytest.mark.parametrize("theorem", verify.THEOREM_IDS)
def test_every_theorem_passes_on_a_small_ring(theorem):
    ring = {
        "green-agreement": MatrixRing(ModularInt(2), 2),
        "block-220": ModularInt(2),
        "block-general": ModularInt(2),
    }.get(theorem, ModularInt(4))
    rep = run_check(theorem, ring)
    assert rep.ok, rep.to_text()
    assert rep.cases_checked == rep.passed + rep.hypothesis_failed


def test_text_round_trip():
    rep = run_check("pmq-theorem", ModularInt(4), Mode.sampled(3, 50))
    back = VerificationReport.from_text(rep.to_text())
    assert back.to_text() == rep.to_text()
    assert back.mode == Mode.sampled(3, 50)


def test_sampled_is_deterministic():
    a = run_check("block-general", ModularInt(3), Mode.sampled(1, 100))
    b = run_check("block-general", ModularInt(3), Mode.sampled(1, 100))
    c = run_check("block-general", ModularInt(3), Mode.sampled(2, 100))
    assert a.to_text(with_elapsed=False) == b.to_text(with_elapsed=False)
    assert a.passed == 100
    assert a.to_text(with_elapsed=False) != c.to_text(with_elapsed=False)


def test_worker_count_does_not_change_report():
    one = run_check("pmq-theorem", ModularInt(6), workers=1)
    three = run_check("pmq-theorem", ModularInt(6), workers=3)
    assert one.to_text(with_elapsed=False) == three.to_text(with_elapsed=False)


def test_tuple_space_bound():
    ring = MatrixRing(ModularInt(2), 2, enumeration_bound=1000)
    with pytest.raises(CapabilityError, match="65536"):
        run_check("pmq-theorem", ring)


def test_capability_errors():
    with pytest.raises(CapabilityError):
        run_check("jacobson", Rationals())
    with pytest.raises(CapabilityError):
        run_check("green-agreement", ModularInt(6))
    with pytest.raises(UsageError):
        run_check("fermat", ModularInt(6))
    with pytest.raises(UsageError):
        Mode.sampled(1, 0)


def test_failures_are_reported_and_replayable(monkeypatch):
    real = mary.inverse_along

    def broken(a, m, inner=None):
        r = real(a, m, inner)
        if r and a.value == 5 and m.value == 2:
            return mary.MaryResult(r.a, r.d, r.inner_used, r.u, r.u_inv, r.v, r.v_inv, a, r.h_witness)
        return r

    monkeypatch.setattr(mary, "inverse_along", broken)
    rep = run_check("mary-equivalence", ModularInt(6))
    assert rep.status == "fail"
    assert len(rep.failures) == 1
    tr = rep.failures[0]
    assert (tr["a"], tr["d"], tr["lhs"], tr["rhs"]) == ("5", "2", "5", "2")
    # literals paste straight back into the library
    assert parse_element(ModularInt(6), tr["a"]) == 5
    text = rep.to_text()
    assert "failure.1.reason=values differ\n" in text
    assert replay(VerificationReport.from_text(text)) == tr
    monkeypatch.setattr(mary, "inverse_along", real)
    assert replay(rep) is None


def test_failure_count_mismatch_rejected():
    text = GOLDEN_ALONG_Z6.replace("failures=0", "failures=1")
    with pytest.raises(UsageError):
        VerificationReport.from_text(text)


def test_search_question_z2():
    rep = search_question(ModularInt(2))
    assert rep.ok
    assert rep.cases_checked == 256
    assert rep.notes["existing"] == rep.notes["covered"] + rep.notes["uncovered"]
    assert rep.notes["uncovered"] == len(rep.findings) > 0
    for f in rep.findings:
        A = parse_element(MatrixRing(ModularInt(2), 2), f["A"])
        D = parse_element(MatrixRing(ModularInt(2), 2), f["D"])
        assert mary.inverse_along(A, D)


def test_search_question_infinite_base():
    with pytest.raises(CapabilityError):
        search_question(Rationals())


def test_search_question_sampled_is_deterministic():
    a = search_question(ModularInt(2), Mode.sampled(1, 100))
    b = search_question(ModularInt(2), Mode.sampled(1, 100))
    assert a.to_text(with_elapsed=False) == b.to_text(with_elapsed=False)
    assert "seed=1\ncount=100\n" in a.to_text()
