"""Exhaustive and seeded-random theorem checks.

Each check quantifies over tuples of ring elements, filters them by the
theorem's hypotheses and compares the library's closed-form answer with an
independent brute-force route (Cayley-table scans). Tuples failing a
hypothesis are counted separately and never count as passes.

Reports serialize to ``key=value`` lines, see :meth:`VerificationReport.to_text`.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from geninv import block, green, mary
from geninv.errors import CapabilityError, GeninvError, InvariantViolation, PreconditionError, UsageError
from geninv.regularity import all_inner_inverses
from geninv.rings import Element, MatrixRing, RingDescriptor, enumerate_elements, try_invert
from geninv.syntax import parse_element, parse_ring
from geninv.tables import has_tables, tables_for

THEOREM_IDS = (
    "jacobson",
    "corner",
    "mary-equivalence",
    "pmq-theorem",
    "lt-regularity",
    "block-220",
    "block-general",
    "green-agreement",
    "uniqueness",
)

MAX_FINDINGS = 25
_SKIP = object()


@dataclass(frozen=True)
class Mode:
    kind: str = "exhaustive"
    seed: int | None = None
    count: int | None = None

    @classmethod
    def exhaustive(cls) -> Mode:
        return cls("exhaustive")

    @classmethod
    def sampled(cls, seed: int, count: int) -> Mode:
        if count < 1:
            raise UsageError("sampled mode needs count >= 1")
        return cls("sampled", int(seed), int(count))


@dataclass
class VerificationReport:
    theorem: str
    ring: RingDescriptor
    mode: Mode
    cases_checked: int = 0
    hypothesis_failed: int = 0
    passed: int = 0
    failures: list[dict[str, str]] = field(default_factory=list)
    notes: dict[str, int] = field(default_factory=dict)
    findings: list[dict[str, str]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_text(self, with_elapsed: bool = True) -> str:
        lines = [f"theorem={self.theorem}", f"ring={self.ring.spec}", f"mode={self.mode.kind}"]
        if self.mode.kind == "sampled":
            lines += [f"seed={self.mode.seed}", f"count={self.mode.count}"]
        lines += [
            f"cases_checked={self.cases_checked}",
            f"hypothesis_failed={self.hypothesis_failed}",
            f"passed={self.passed}",
            f"failures={len(self.failures)}",
            f"status={self.status}",
        ]
        lines += [f"note.{k}={v}" for k, v in sorted(self.notes.items())]
        for prefix, items in (("failure", self.failures), ("finding", self.findings)):
            for n, tr in enumerate(items, start=1):
                lines += [f"{prefix}.{n}.{k}={v}" for k, v in tr.items()]
        if with_elapsed:
            lines.append(f"elapsed={self.elapsed:.3f}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> VerificationReport:
        kv: dict[str, str] = {}
        failures: dict[int, dict[str, str]] = {}
        findings: dict[int, dict[str, str]] = {}
        notes: dict[str, int] = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"report line without '=': {line!r}")
            if key.startswith(("failure.", "finding.")):
                prefix, n, name = key.split(".", 2)
                target = failures if prefix == "failure" else findings
                target.setdefault(int(n), {})[name] = value
            elif key.startswith("note."):
                notes[key[5:]] = int(value)
            else:
                kv[key] = value
        if kv.get("mode") == "sampled":
            mode = Mode.sampled(int(kv["seed"]), int(kv["count"]))
        else:
            mode = Mode.exhaustive()
        rep = cls(
            theorem=kv["theorem"],
            ring=parse_ring(kv["ring"]),
            mode=mode,
            cases_checked=int(kv["cases_checked"]),
            hypothesis_failed=int(kv["hypothesis_failed"]),
            passed=int(kv["passed"]),
            failures=[failures[k] for k in sorted(failures)],
            notes=notes,
            findings=[findings[k] for k in sorted(findings)],
            elapsed=float(kv.get("elapsed", 0.0)),
        )
        if int(kv["failures"]) != len(rep.failures):
            raise UsageError("failure count does not match the transcripts")
        return rep


# --------------------------------------------------------------------------
# per-check context


class _Ctx:
    """Precomputed brute-force data for one ring, built once per worker."""

    def __init__(self, ring: RingDescriptor, flat: bool):
        self.ring = ring
        self.elems = list(enumerate_elements(ring))
        self.notes: dict[str, int] = {}
        self.findings: list[dict[str, str]] = []
        self.tables = tables_for(ring) if has_tables(ring) else None
        self.flat_ring = MatrixRing(ring, 2) if flat else None
        self.flat_tables = None
        if flat:
            if not has_tables(self.flat_ring):
                raise CapabilityError(f"no tables for the flattened ring {self.flat_ring.spec}")
            self.flat_tables = tables_for(self.flat_ring)

    def note(self, key: str, n: int = 1) -> None:
        self.notes[key] = self.notes.get(key, 0) + n

    # brute-force facts, table-backed when possible
    def unit(self, x: Element) -> bool:
        if self.tables is not None:
            return bool(self.tables.units[x.index] >= 0)
        return any((x * y).is_one() and (y * x).is_one() for y in self.elems)

    def regular(self, x: Element) -> bool:
        if self.tables is not None:
            return bool(self.tables.first_inner[x.index] >= 0)
        return any(x * y * x == x for y in self.elems)

    def leq(self, side: str, a: Element, b: Element) -> bool:
        if self.tables is not None:
            left, right = self.tables.ideals
            return bool((left if side == "L" else right)[a.index, b.index])
        return any((y * b if side == "L" else b * y) == a for y in self.elems)

    def oracle(self, a: Element, d: Element) -> Element | None:
        if self.tables is not None:
            first, count = self.tables.along
            i, n = int(first[a.index, d.index]), int(count[a.index, d.index])
            if n > 1:
                raise InvariantViolation(f"{n} inverses of {a} along {d}")
            return None if i < 0 else self.tables.element(i)
        return mary.oracle_value(a, d)

    def flat_oracle(self, A: Element, D: Element) -> Element | None:
        first, count = self.flat_tables.along
        i, n = int(first[A.index, D.index]), int(count[A.index, D.index])
        if n > 1:
            raise InvariantViolation(f"{n} inverses of {A} along {D}")
        return None if i < 0 else self.flat_tables.element(i)

    def flat_regular(self, X: Element) -> bool:
        return bool(self.flat_tables.first_inner[X.index] >= 0)


def _fail(names, elems, reason: str, **sides) -> dict[str, str]:
    tr = {n: str(x) for n, x in zip(names, elems)}
    tr["reason"] = reason
    for k, v in sides.items():
        tr[k] = str(v)
    return tr


def _b(r) -> Element | None:
    return r.b if isinstance(r, mary.MaryResult) else None


# --------------------------------------------------------------------------
# checks


class Check:
    id: str = ""
    names: tuple[str, ...] = ()
    flat: bool = False

    def supports(self, ring: RingDescriptor) -> None:
        ring.require_enumerable(self.id)

    def evaluate(self, ctx: _Ctx, xs: tuple[Element, ...]):
        raise NotImplementedError


class Jacobson(Check):
    id, names = "jacobson", ("a", "b")

    def evaluate(self, ctx, xs):
        a, b = xs
        ab_unit, ba_unit = ctx.unit(1 + a * b), ctx.unit(1 + b * a)
        if ab_unit != ba_unit:
            return _fail(self.names, xs, "1+ab unit != 1+ba unit", lhs=ab_unit, rhs=ba_unit)
        r = mary.jacobson_invert(a, b)
        if (r is not None) != ab_unit:
            return _fail(self.names, xs, "jacobson_invert disagrees with unit scan", lhs=r is not None, rhs=ab_unit)
        if r is not None:
            ctx.note("unit_pairs")
            y = r[1]
            lhs = (1 + b * a) * y
            if not lhs.is_one() or not (y * (1 + b * a)).is_one():
                return _fail(self.names, xs, "(1+ba)(1-b(1+ab)^-1 a) != 1", lhs=lhs, rhs=1)
        return None


class Corner(Check):
    id, names = "corner", ("e", "x")

    def evaluate(self, ctx, xs):
        e, x = xs
        if e * e != e:
            return _SKIP
        rep = mary.corner_invertible(e, x)
        glob = ctx.unit(e * x * e + 1 - e)
        if rep.global_unit != glob or rep.corner_unit != glob:
            return _fail(self.names, xs, "global and corner invertibility differ",
                         lhs=rep.corner_unit, rhs=glob)
        if glob:
            ctx.note("invertible")
        return None


def _choice_independent(ctx, names, xs, expect, compute, m):
    """Every inner inverse of ``m`` must give the same answer."""
    inners = all_inner_inverses(m)
    if len(inners) > 1:
        ctx.note("multi_inner_cases")
    for x in inners:
        got = _b(compute(x))
        if got != expect:
            return _fail(names, xs, "answer depends on the inner inverse", inner=x, lhs=got, rhs=expect)
    return None


class AlongEquivalence(Check):
    id, names = "mary-equivalence", ("a", "d")

    def evaluate(self, ctx, xs):
        a, d = xs
        want = ctx.oracle(a, d)
        got = _b(mary.inverse_along(a, d))
        via_h = mary.exists_via_H(a, d)
        if (got is not None) != (want is not None) or via_h != (want is not None):
            return _fail(self.names, xs, "existence disagrees", unit=got is not None,
                         h=via_h, oracle=want is not None)
        if got != want:
            return _fail(self.names, xs, "values differ", lhs=got, rhs=want)
        if want is not None:
            ctx.note("existing")
        if ctx.regular(d):
            return _choice_independent(ctx, self.names, xs, want,
                                       lambda x: mary.inverse_along(a, d, inner=x), d)
        return None


class PmqTheorem(Check):
    id, names = "pmq-theorem", ("p", "m", "q", "a")

    def evaluate(self, ctx, xs):
        p, m, q, a = xs
        if not (ctx.regular(m) and ctx.leq("L", m, p * m) and ctx.leq("R", m, m * q)):
            return _SKIP
        prob = mary.product_problem(a, p, m, q)
        d = p * m * q
        want = ctx.oracle(a, d)
        r = mary.inverse_along_product(prob)
        m1 = prob.m_cert.inner
        u = m * q * a * p + 1 - m * m1
        v = q * a * p * m + 1 - m1 * m
        u_unit, v_unit = ctx.unit(u), ctx.unit(v)
        if not (u_unit == v_unit == (want is not None) == isinstance(r, mary.MaryResult)):
            return _fail(self.names, xs, "u unit / v unit / oracle existence disagree",
                         u=u, v=v, u_unit=u_unit, v_unit=v_unit, oracle=want is not None)
        if want is None:
            return _choice_independent(
                ctx, self.names, xs, None,
                lambda x: mary.inverse_along_product(mary.product_problem(
                    a, p, m, q, p_prime=prob.p_prime, q_prime=prob.q_prime, inner=x)), m)
        ctx.note("existing")
        if r.b != want or p * m * r.v_inv * q != want:
            return _fail(self.names, xs, "p u^-1 m q / p m v^-1 q != oracle", lhs=r.b, rhs=want)
        return _choice_independent(
            ctx, self.names, xs, want,
            lambda x: mary.inverse_along_product(mary.product_problem(
                a, p, m, q, p_prime=prob.p_prime, q_prime=prob.q_prime, inner=x)), m)


class LtRegularity(Check):
    id, names, flat = "lt-regularity", ("d1", "d2", "d3"), True

    def evaluate(self, ctx, xs):
        d1, d2, d3 = xs
        if not (ctx.regular(d2) and ctx.regular(d3)):
            return _SKIP
        M = block.Block2x2(d2, d1, d2.ring.zero_element, d3)
        flat_reg = ctx.flat_regular(M.to_element())
        lt = block.lt_regular_inner(d2, d1, d3)
        if bool(lt) != flat_reg:
            return _fail(self.names, xs, "w regular != M regular", lhs=bool(lt), rhs=flat_reg)
        if lt:
            ctx.note("regular")
            E = lt.mm_minus
            if E * M != M or E * E != E:
                return _fail(self.names, xs, "M M^- not an idempotent left identity", lhs=E, rhs=M)
        return None


def _compare_block(ctx, names, xs, A, D, closed):
    Af, Df = A.to_element(), D.to_element()
    want = ctx.flat_oracle(Af, Df)
    flat = _b(mary.inverse_along(Af, Df))
    got = closed.matrix if isinstance(closed, block.BlockResult) else None
    if flat != want:
        return _fail(names, xs, "flattened inverse_along != oracle", lhs=flat, rhs=want)
    if got != want:
        return _fail(names, xs, "closed form != flattened ring", lhs=got, rhs=want)
    if want is not None:
        ctx.note("existing")
    return None


class Block220(Check):
    id, names, flat = "block-220", ("a", "b", "c", "d", "d1", "d2", "d3"), True

    def evaluate(self, ctx, xs):
        a, b, c, d, d1, d2, d3 = xs
        A = block.Block2x2.of(a, b, c, d)
        D = block.Block2x2(d1, d2, d3, d1.ring.zero_element)
        if not (ctx.regular(d2) and ctx.regular(d3)):
            return _SKIP
        try:
            r = block.inverse_along_220(A, D, check=False)
        except PreconditionError:
            return _SKIP
        if isinstance(r, mary.NotRegular):
            return _SKIP
        return _compare_block(ctx, self.names, xs, A, D, r)


_REGIMES = (
    ("d3-zero", lambda D, sd: D.d3.is_zero(), block.inverse_along_lower_triangular),
    ("d4-invertible", lambda D, sd: try_invert(D.d4) is not None, block.inverse_along_d4_invertible),
    ("ed2-zero", lambda D, sd: (sd.e * D.d2).is_zero(), block.inverse_along_ed2_zero),
)


class BlockGeneral(Check):
    id, names, flat = "block-general", ("a", "b", "c", "d", "d1", "d2", "d3", "d4"), True

    def evaluate(self, ctx, xs):
        a, b, c, d, d1, d2, d3, d4 = xs
        A = block.Block2x2.of(a, b, c, d)
        D = block.Block2x2(d1, d2, d3, d4)
        if not ctx.regular(d4):
            return _SKIP
        try:
            r = block.inverse_along_general(A, D, check=False)
        except PreconditionError:
            return _SKIP
        if isinstance(r, mary.NotRegular):
            return _SKIP
        bad = _compare_block(ctx, self.names, xs, A, D, r)
        if bad:
            return bad
        sd = block.schur_decompose(D)
        got = r.matrix if isinstance(r, block.BlockResult) else None
        for name, applies, fn in _REGIMES:
            if not applies(D, sd):
                continue
            ctx.note(f"regime.{name}")
            alt = fn(A, D, check=False)
            alt_m = alt.matrix if isinstance(alt, block.BlockResult) else None
            if alt_m != got:
                return _fail(self.names, xs, f"{name} formula != general formula", lhs=alt_m, rhs=got)
        return None


class GreenAgreement(Check):
    id, names = "green-agreement", ("a", "b")

    def supports(self, ring):
        super().supports(ring)
        if not (isinstance(ring, MatrixRing) and ring.over_field):
            raise CapabilityError("green-agreement needs a matrix ring over a field")

    def evaluate(self, ctx, xs):
        a, b = xs
        for kind in ("LeqL", "LeqR", "H"):
            s = green.decide(kind, a, b, "scan")
            lin = green.decide(kind, a, b, "linear")
            if bool(s) != bool(lin):
                return _fail(self.names, xs, f"{kind}: scan and linear decisions differ", lhs=bool(s), rhs=bool(lin))
            for w in (s, lin):
                if w and not w.holds():
                    return _fail(self.names, xs, f"{kind}: witness does not hold", lhs=w.x, rhs=w.y)
            if s:
                ctx.note(f"related.{kind}")
        return None


class Uniqueness(Check):
    id, names = "uniqueness", ("a", "d")

    def evaluate(self, ctx, xs):
        a, d = xs
        if ctx.tables is not None:
            first, count = ctx.tables.along
            n = int(count[a.index, d.index])
            cands = [ctx.tables.element(first[a.index, d.index])] if n else []
        else:
            cands = [b for b in ctx.elems if d * a * b == d == b * a * d
                     and ctx.leq("L", b, d) and ctx.leq("R", b, d)]
            n = len(cands)
        if n > 1:
            return _fail(self.names, xs, "more than one inverse along d", lhs=n, rhs=1)
        for b in cands:
            if d * a * b != d or b * a * d != d or not green.leq_H(b, d):
                return _fail(self.names, xs, "oracle candidate fails the definition", lhs=b, rhs=d)
        if n:
            ctx.note("existing")
        return None


class SearchQuestion(Check):
    """Pairs (A, D) over the base with D regular and A^||D existing although
    neither block theorem's hypotheses hold. Records findings; never fails."""

    id, names, flat = "search-question", ("A", "D"), True

    def supports(self, ring):
        super().supports(ring)
        MatrixRing(ring, 2).require_enumerable(self.id)

    def evaluate(self, ctx, xs):
        A, D = xs
        if not ctx.flat_regular(D):
            return _SKIP
        if ctx.flat_oracle(A, D) is None:
            return None
        ctx.note("existing")
        Ab, Db = block.Block2x2.from_element(A), block.Block2x2.from_element(D)
        covered = []
        for name, fn in (("general", block.inverse_along_general), ("220", block.inverse_along_220)):
            try:
                fn(Ab, Db, check=False)
                covered.append(name)
            except (PreconditionError, UsageError):
                pass
        if covered:
            ctx.note("covered")
            return None
        ctx.note("uncovered")
        if len(ctx.findings) < MAX_FINDINGS:
            ctx.findings.append({"A": str(A), "D": str(D), "reason": _why_uncovered(Db)})
        return None


def _why_uncovered(D: block.Block2x2) -> str:
    sd = block.schur_decompose(D)
    if not sd:
        return "d4 not regular"
    if not (D.d3 * sd.f).is_zero():
        return "d3 f != 0"
    return "a^||s missing or s not regular"


CHECKS: dict[str, Check] = {c.id: c for c in (
    Jacobson(), Corner(), AlongEquivalence(), PmqTheorem(), LtRegularity(),
    Block220(), BlockGeneral(), GreenAgreement(), Uniqueness(),
)}
SEARCH = SearchQuestion()


# --------------------------------------------------------------------------
# drivers


def _domain(check: Check, ctx: _Ctx) -> list[Element]:
    if isinstance(check, SearchQuestion):
        return ctx.flat_tables.elements()
    return ctx.elems


def _run_slice(check_id: str, ring: RingDescriptor, first_lo: int, first_hi: int):
    """Worker entry: evaluate every tuple whose first index is in [lo, hi)."""
    check = SEARCH if check_id == SEARCH.id else CHECKS[check_id]
    ctx = _Ctx(ring, check.flat)
    dom = _domain(check, ctx)
    arity = len(check.names)
    out = [0, 0, 0, []]
    for i in range(first_lo, first_hi):
        for rest in itertools.product(range(len(dom)), repeat=arity - 1):
            idx = (i,) + rest
            _tally(check, ctx, tuple(dom[j] for j in idx), idx, out)
    return out[0], out[1], out[2], out[3], ctx.notes, ctx.findings


def _tally(check, ctx, xs, idx, out) -> None:
    out[0] += 1
    try:
        res = check.evaluate(ctx, xs)
    except (InvariantViolation, PreconditionError) as exc:
        res = _fail(check.names, xs, f"{type(exc).__name__}: {exc}")
    if res is _SKIP:
        out[1] += 1
    elif res is None:
        out[2] += 1
    else:
        out[3].append((idx, res))


def _merge_notes(into: dict, more: dict) -> None:
    for k, v in more.items():
        into[k] = into.get(k, 0) + v


def _domain_size(check: Check, ring: RingDescriptor) -> int:
    return int(MatrixRing(ring, 2).cardinality if isinstance(check, SearchQuestion) else ring.cardinality)


def _prepare(check: Check, ring: RingDescriptor, mode: Mode) -> None:
    check.supports(ring)
    if mode.kind == "exhaustive":
        size = _domain_size(check, ring) ** len(check.names)
        if size > ring.enumeration_bound:
            raise CapabilityError(
                f"{check.id}: tuple space has {size} elements, above the bound {ring.enumeration_bound}"
            )


def _execute(check: Check, ring: RingDescriptor, mode: Mode, workers: int) -> VerificationReport:
    t0 = time.perf_counter()
    _prepare(check, ring, mode)
    rep = VerificationReport(check.id, ring, mode)
    failures: list[tuple[tuple, dict]] = []
    findings: list[dict] = []
    if mode.kind == "exhaustive":
        n_first = _domain_size(check, ring)
        if workers > 1 and n_first > 1:
            step = max(1, -(-n_first // (workers * 4)))
            bounds = [(lo, min(n_first, lo + step)) for lo in range(0, n_first, step)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(
                    _run_slice,
                    [check.id] * len(bounds),
                    [ring] * len(bounds),
                    [lo for lo, _ in bounds],
                    [hi for _, hi in bounds],
                ))
        else:
            parts = [_run_slice(check.id, ring, 0, n_first)]
        for checked, skipped, passed, fails, notes, finds in parts:
            rep.cases_checked += checked
            rep.hypothesis_failed += skipped
            rep.passed += passed
            failures.extend(fails)
            _merge_notes(rep.notes, notes)
            findings.extend(finds)
    else:
        ctx = _Ctx(ring, check.flat)
        dom = _domain(check, ctx)
        rng = random.Random(mode.seed)
        out = [0, 0, 0, []]
        limit = 100 * mode.count
        while out[2] + len(out[3]) < mode.count and out[0] < limit:
            idx = tuple(rng.randrange(len(dom)) for _ in check.names)
            _tally(check, ctx, tuple(dom[j] for j in idx), idx, out)
        rep.cases_checked, rep.hypothesis_failed, rep.passed = out[0], out[1], out[2]
        failures = out[3]
        rep.notes = ctx.notes
        findings = ctx.findings
    failures.sort(key=lambda f: f[0])
    rep.failures = [tr for _, tr in failures]
    findings.sort(key=lambda f: tuple(f.values()))
    rep.findings = findings[:MAX_FINDINGS]
    rep.elapsed = time.perf_counter() - t0
    return rep


def run_check(theorem: str, ring: RingDescriptor, mode: Mode | None = None, workers: int = 1) -> VerificationReport:
    """Run one registered check.

    Exhaustive mode walks the full tuple space (bounded by the ring's
    ``enumeration_bound``); sampled mode draws seeded tuples until ``count``
    of them satisfy the hypotheses (giving up after ``100 * count`` draws).
    Sampled cases pass or fail; hypothesis-failing draws are reported in
    ``hypothesis_failed``.
    """
    if theorem not in CHECKS:
        raise UsageError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREM_IDS)}")
    return _execute(CHECKS[theorem], ring, mode or Mode.exhaustive(), workers)


def search_question(ring: RingDescriptor, mode: Mode | None = None, workers: int = 1) -> VerificationReport:
    """Collect pairs where ``A^||D`` exists but no block theorem applies.

    The family searched is every ``(A, D)`` in ``M_2(ring)`` with ``D``
    regular. Findings are raw material only; the report never fails on them.
    """
    if not ring.is_finite:
        raise CapabilityError(f"search-question needs a finite base ring; {ring.spec} is infinite")
    return _execute(SEARCH, ring, mode or Mode.exhaustive(), workers)


def replay(report: VerificationReport, n: int = 0) -> dict[str, str] | None:
    """Re-evaluate failure ``n`` of a report; returns the fresh transcript
    (``None`` if the case now passes or is skipped)."""
    check = CHECKS[report.theorem]
    tr = report.failures[n]
    ctx = _Ctx(report.ring, check.flat)
    xs = tuple(parse_element(report.ring, tr[name]) for name in check.names)
    out = [0, 0, 0, []]
    _tally(check, ctx, xs, (), out)
    return out[3][0][1] if out[3] else None


__all__ = [
    "CHECKS",
    "Check",
    "GeninvError",
    "Mode",
    "THEOREM_IDS",
    "VerificationReport",
    "replay",
    "run_check",
    "search_question",
]
