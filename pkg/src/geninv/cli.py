"""Command-line front end.

Every command prints ``key=value`` lines on stdout. Exit status: 0 for a
positive answer or a passing report, 2 for a negative answer or a failing
report, 1 for usage and capability errors (one line on stderr).
"""

from __future__ import annotations

import argparse
import sys

from geninv import block, green, mary, verify
from geninv.errors import GeninvError
from geninv.regularity import all_inner_inverses, inner_inverse
from geninv.results import NotInvertibleAlong, NotRegular
from geninv.rings import Element
from geninv.syntax import format_ring, parse_element, parse_ring, read_literals

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


class _Fail(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2, which we reserve
        raise _Fail(message)


def _bool(x) -> str:
    return "true" if x else "false"


def _emit(out, **pairs) -> None:
    for k, v in pairs.items():
        out.write(f"{k}={v}\n")


def _literals(args, ring, names: list[str]) -> list[Element]:
    """Element literals from positionals or ``--file``; exactly ``len(names)`` of them."""
    if args.file and args.literals:
        raise _Fail("give element literals either as arguments or with --file, not both")
    if args.file:
        try:
            items = read_literals(args.file)
        except OSError as exc:
            raise _Fail(f"cannot read {args.file}: {exc.strerror}") from None
    else:
        items = [(1, t) for t in args.literals]
    if len(items) != len(names):
        raise _Fail(f"expected {len(names)} literals ({' '.join(names)}), got {len(items)}")
    return [parse_element(ring, text, line) for line, text in items]


def _block_entries(args, ring, names: list[str]) -> dict[str, Element]:
    """Block entries from ``--a .. --d4`` flags, falling back to positionals/--file."""
    flagged = {n: getattr(args, n) for n in names}
    if all(v is not None for v in flagged.values()):
        if args.literals or args.file:
            raise _Fail("entries given both as flags and as literals")
        return {n: parse_element(ring, v) for n, v in flagged.items()}
    if any(v is not None for v in flagged.values()):
        missing = [f"--{n}" for n, v in flagged.items() if v is None]
        raise _Fail("missing " + " ".join(missing))
    return dict(zip(names, _literals(args, ring, names)))


# ---------------------------------------------------------------- commands


def cmd_inner_inverse(args, out) -> int:
    ring = parse_ring(args.ring)
    (a,) = _literals(args, ring, ["a"])
    cert = inner_inverse(a, args.method)
    _emit(out, ring=format_ring(ring), a=a)
    if not cert:
        _emit(out, regular="false")
        return EXIT_NEGATIVE
    _emit(out, regular="true", inner=cert.inner, reflexive=cert.reflexive)
    if args.all:
        xs = all_inner_inverses(a)
        _emit(out, inner_count=len(xs))
        for i, x in enumerate(xs, start=1):
            _emit(out, **{f"inner.{i}": x})
    return EXIT_OK


def cmd_green(args, out) -> int:
    ring = parse_ring(args.ring)
    a, b = _literals(args, ring, ["a", "b"])
    w = green.decide(args.relation, a, b, args.method)
    _emit(out, ring=format_ring(ring), relation=args.relation, a=a, b=b, related=_bool(w))
    if not w:
        return EXIT_NEGATIVE
    parts = [("", w)] if w.left is None else [("left.", w.left), ("right.", w.right)]
    for prefix, sub in parts:
        if sub.x is not None:
            _emit(out, **{f"{prefix}x": sub.x})
        if sub.y is not None:
            _emit(out, **{f"{prefix}y": sub.y})
    return EXIT_OK


def _report_mary(out, r) -> int:
    if isinstance(r, NotRegular):
        _emit(out, exists="false", reason="d is not regular")
        return EXIT_NEGATIVE
    if isinstance(r, NotInvertibleAlong):
        _emit(out, exists="false", reason=f"{r.witness_name} is not a unit", **{r.witness_name: r.witness})
        return EXIT_NEGATIVE
    _emit(out, exists="true", inverse=r.b, inner=r.inner_used, u=r.u, u_inv=r.u_inv, v=r.v, v_inv=r.v_inv)
    return EXIT_OK


def cmd_inverse_along(args, out) -> int:
    ring = parse_ring(args.ring)
    a, d = _literals(args, ring, ["a", "d"])
    inner = None if args.inner is None else parse_element(ring, args.inner)
    _emit(out, ring=format_ring(ring), a=a, d=d)
    return _report_mary(out, mary.inverse_along(a, d, inner=inner))


def cmd_inverse_along_product(args, out) -> int:
    ring = parse_ring(args.ring)
    a, p, m, q = _literals(args, ring, ["a", "p", "m", "q"])
    _emit(out, ring=format_ring(ring), a=a, p=p, m=m, q=q, d=p * m * q)
    prob = mary.product_problem(a, p, m, q)
    if isinstance(prob, NotRegular):
        _emit(out, exists="unknown", reason="m is not regular")
        return EXIT_NEGATIVE
    _emit(out, p_prime=prob.p_prime, q_prime=prob.q_prime)
    return _report_mary(out, mary.inverse_along_product(prob))


def _report_block(out, r) -> int:
    if isinstance(r, NotRegular):
        _emit(out, exists="false", reason="D is not regular")
        return EXIT_NEGATIVE
    if isinstance(r, NotInvertibleAlong):
        _emit(out, exists="false", reason="xi is not a unit", xi=r.witness)
        return EXIT_NEGATIVE
    data = r.data
    _emit(out, exists="true", inverse=r.matrix, u=data.u, alpha=data.alpha, beta=data.beta, xi=data.xi,
          xi_inv=data.xi_inv)
    for name, x in data.inverses:
        _emit(out, **{f"used.{name}": x})
    return EXIT_OK


def cmd_block_220(args, out) -> int:
    ring = parse_ring(args.ring)
    e = _block_entries(args, ring, ["a", "b", "c", "d", "d1", "d2", "d3"])
    A = block.Block2x2.of(e["a"], e["b"], e["c"], e["d"])
    D = block.Block2x2(e["d1"], e["d2"], e["d3"], ring.zero_element)
    _emit(out, ring=format_ring(ring), A=A, D=D)
    return _report_block(out, block.inverse_along_220(A, D))


def cmd_block_general(args, out) -> int:
    ring = parse_ring(args.ring)
    e = _block_entries(args, ring, ["a", "b", "c", "d", "d1", "d2", "d3", "d4"])
    A = block.Block2x2.of(e["a"], e["b"], e["c"], e["d"])
    D = block.Block2x2(e["d1"], e["d2"], e["d3"], e["d4"])
    _emit(out, ring=format_ring(ring), A=A, D=D)
    return _report_block(out, block.inverse_along_general(A, D))


def _mode(args) -> verify.Mode:
    if args.exhaustive:
        if args.seed is not None or args.count is not None:
            raise _Fail("--exhaustive excludes --seed/--count")
        return verify.Mode.exhaustive()
    if args.seed is None or args.count is None:
        raise _Fail("give --exhaustive or both --seed and --count")
    return verify.Mode.sampled(args.seed, args.count)


def cmd_verify(args, out) -> int:
    rep = verify.run_check(args.theorem, parse_ring(args.ring), _mode(args), workers=args.workers)
    out.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_search_question(args, out) -> int:
    rep = verify.search_question(parse_ring(args.ring), _mode(args), workers=args.workers)
    out.write(rep.to_text())
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="geninv", description="Generalized inverses in finite and exact rings.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, fn, help, literals=True):
        p = sub.add_parser(name, help=help)
        p.add_argument("--ring", required=True, help="ring spec, e.g. Z:6, GF:5, M:2:Z:2, Q")
        if literals:
            p.add_argument("literals", nargs="*", metavar="LITERAL")
            p.add_argument("--file", help="read literals from a file, one per line, '#' comments")
        p.set_defaults(fn=fn)
        return p

    p = command("inner-inverse", cmd_inner_inverse, "inner and reflexive inverse of a")
    p.add_argument("--method", default="auto", choices=("auto", "scan", "field"))
    p.add_argument("--all", action="store_true", help="also list every inner inverse (enumerable rings)")

    p = command("green", cmd_green, "decide a Green preorder or relation between a and b")
    p.add_argument("--relation", default="H", choices=green.KINDS)
    p.add_argument("--method", default="auto", choices=green.METHODS)

    p = command("inverse-along", cmd_inverse_along, "inverse of a along d")
    p.add_argument("--inner", help="inner inverse of d to use")

    command("inverse-along-product", cmd_inverse_along_product, "inverse of a along p m q")

    for name, fn, entries in (
        ("block-220", cmd_block_220, ("a", "b", "c", "d", "d1", "d2", "d3")),
        ("block-general", cmd_block_general, ("a", "b", "c", "d", "d1", "d2", "d3", "d4")),
    ):
        p = command(name, fn, f"inverse of A=[[a,c],[b,d]] along D=[[d1,d3],[d2,d4]] ({name})")
        for e in entries:
            p.add_argument(f"--{e}", metavar="LITERAL")

    for name, fn in (("verify", cmd_verify), ("search-question", cmd_search_question)):
        p = command(name, fn, "run a theorem check" if name == "verify" else "collect uncovered block cases",
                    literals=False)
        if name == "verify":
            p.add_argument("--theorem", required=True, choices=verify.THEOREM_IDS)
        p.add_argument("--exhaustive", action="store_true")
        p.add_argument("--seed", type=int)
        p.add_argument("--count", type=int)
        p.add_argument("--workers", type=int, default=1)
    return ap


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, out)
    except (_Fail, GeninvError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        err.write(f"geninv: error: {msg}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
