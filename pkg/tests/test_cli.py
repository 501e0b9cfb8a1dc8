import io
import subprocess
import sys

import pytest

from geninv.cli import run
from geninv.syntax import parse_element, parse_ring


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def without_elapsed(text):
    return "".join(line for line in text.splitlines(keepends=True) if not line.startswith("elapsed="))


GOLDEN = {
    ("inverse-along", "--ring", "Z:6", "5", "2"): (
        0,
        "ring=Z:6\na=5\nd=2\nexists=true\ninverse=2\ninner=2\nu=1\nu_inv=1\nv=1\nv_inv=1\n",
    ),
    ("inverse-along", "--ring", "Z:6", "3", "2"): (
        2,
        "ring=Z:6\na=3\nd=2\nexists=false\nreason=u is not a unit\nu=3\n",
    ),
    ("verify", "--theorem", "pmq-theorem", "--ring", "Z:6", "--exhaustive"): (
        0,
        "theorem=pmq-theorem\nring=Z:6\nmode=exhaustive\ncases_checked=1296\nhypothesis_failed=786\n"
        "passed=510\nfailures=0\nstatus=pass\nnote.existing=387\nnote.multi_inner_cases=462\n",
    ),
}


@pytest.mark.parametrize("argv", list(GOLDEN), ids=lambda a: " ".join(a))
def test_golden_transcripts(argv):
    code, out, err = call(*argv)
    assert (code, without_elapsed(out)) == GOLDEN[argv]
    assert err == ""


def test_golden_key_lines():
    assert "exists=true\ninverse=2\n" in GOLDEN[("inverse-along", "--ring", "Z:6", "5", "2")][1]
    assert "exists=false\n" in GOLDEN[("inverse-along", "--ring", "Z:6", "3", "2")][1]
    assert "failures=0\n" in GOLDEN[("verify", "--theorem", "pmq-theorem", "--ring", "Z:6", "--exhaustive")][1]


def test_output_is_stable():
    assert call("inverse-along", "--ring", "M:2:Z:2", "[[0,1],[1,0]]", "[[1,0],[0,0]]") == call(
        "inverse-along", "--ring", "M:2:Z:2", "[[0,1],[1,0]]", "[[1,0],[0,0]]"
    )


def test_file_input(tmp_path):
    f = tmp_path / "lits.txt"
    f.write_text("# a then d\n5\n2\n")
    assert call("inverse-along", "--ring", "Z:6", "--file", str(f))[:2] == call(
        "inverse-along", "--ring", "Z:6", "5", "2"
    )[:2]


def test_file_parse_error_reports_line_and_column(tmp_path):
    f = tmp_path / "lits.txt"
    f.write_text("[[1,0],[0,1]]\n\n[[1,x],[0,1]]\n")
    code, out, err = call("inverse-along", "--ring", "M:2:Z:6", "--file", str(f))
    assert code == 1 and out == ""
    assert "line 3, column 5" in err
    assert err.count("\n") == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("inverse-along", "--ring", "Z:6", "5"),
        ("inverse-along", "--ring", "Z:6", "5", "2/3"),
        ("inverse-along", "--ring", "Z:1", "0", "0"),
        ("inverse-along", "--ring", "M:2:Z:2", "1", "[[1,0],[0,1]]"),
        ("frobnicate", "--ring", "Z:6"),
        ("verify", "--theorem", "jacobson", "--ring", "Z:6"),
        ("verify", "--theorem", "jacobson", "--ring", "Q", "--exhaustive"),
        ("block-general", "--ring", "Z:3", "--a", "1"),
        ("inverse-along", "--ring", "Z:6", "--file", "/nonexistent/path"),
    ],
)
def test_faults_exit_one(argv):
    code, out, err = call(*argv)
    assert code == 1
    assert err.startswith("geninv: error: ") and err.count("\n") == 1


def test_inner_inverse_commands():
    code, out, _ = call("inner-inverse", "--ring", "Z:6", "--all", "2")
    assert code == 0
    assert "regular=true\ninner=2\nreflexive=2\ninner_count=2\ninner.1=2\ninner.2=5\n" in out
    assert call("inner-inverse", "--ring", "Z:4", "2")[0] == 2


def test_green_command():
    code, out, _ = call("green", "--ring", "M:2:Z:2", "--relation", "LeqR", "[[0,1],[0,0]]", "[[1,0],[0,0]]")
    assert code == 0 and "related=true\nx=[[0,1],[0,0]]\n" in out
    code, out, _ = call("green", "--ring", "Z:6", "--relation", "LeqH", "1", "2")
    assert code == 2 and "related=false" in out


def test_product_command():
    code, out, _ = call("inverse-along-product", "--ring", "Z:6", "5", "5", "2", "1")
    assert code == 0
    assert "d=4\n" in out and "inverse=2\n" in out and "u=5\n" in out


def test_block_commands():
    code, out, _ = call("block-220", "--ring", "Z:2", "--a", "0", "--b", "1", "--c", "1", "--d", "0",
                        "--d1", "0", "--d2", "1", "--d3", "1")
    assert code == 0 and "inverse=[[0,1],[1,0]]\n" in out
    code, out, _ = call("block-general", "--ring", "Z:6", "5", "0", "1", "0", "2", "1", "0", "3")
    assert code == 0 and "inverse=[[4,0],[5,3]]\n" in out and "xi=" in out
    code, out, _ = call("block-general", "--ring", "Z:4", "1", "0", "0", "1", "1", "0", "1", "0")
    assert code == 1  # d3 f != 0 is a hypothesis failure


def test_printed_values_reparse():
    code, out, _ = call("block-general", "--ring", "Z:6", "5", "0", "1", "0", "2", "1", "0", "3")
    ring = parse_ring("Z:6")
    mat = parse_ring("M:2:Z:6")
    for line in out.splitlines():
        key, _, value = line.partition("=")
        if key in ("A", "D", "inverse"):
            parse_element(mat, value)
        elif key in ("u", "alpha", "beta", "xi", "xi_inv") or key.startswith("used."):
            parse_element(ring, value)


def test_search_question_command():
    code, out, _ = call("search-question", "--ring", "Z:2", "--seed", "1", "--count", "20")
    assert code == 0 and "theorem=search-question\n" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "geninv", "inverse-along", "--ring", "Z:6", "3", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert "exists=false\n" in proc.stdout
