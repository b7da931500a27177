import io
import subprocess
import sys

import pytest

from expected import H_NONE_LEXINGS, RECOVERY_INPUT
from locallex.cli import main
from locallex.lexing import format_path


def run(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_tokens_H_none():
    code, out, _ = run("tokens", "H-none.ll", "a-b+c")
    assert code == 0
    assert out.splitlines() == [format_path(p) for p in H_NONE_LEXINGS]


def test_tokens_H_alias():
    assert run("tokens", "H.ll", "a-b+c")[1] == run("tokens", "H-none.ll", "a-b+c")[1]


def test_recognize_err():
    code, out, _ = run("recognize", "err.ll", RECOVERY_INPUT)
    assert (code, out) == (0, "ACCEPT\n")


def test_recognize_reject():
    assert run("recognize", "H-none.ll", "+") == (1, "REJECT\n", "")


def test_check_H():
    code, out, _ = run("check", "H-none.ll", "a-b+c")
    assert code == 0 and out.startswith("AGREE ACCEPT 8")


def test_check_truncated_infinite():
    code, out, _ = run("check", "infinite.ll", "aa", "--max-eps", "2")
    assert code == 0 and "TRUNCATED" in out


def test_oracle_infinite_cap():
    code, out, _ = run("oracle", "infinite.ll", "aa", "--max-eps", "3")
    assert out.splitlines() == ["aa/t1", "aa/t1 ε/t1", "aa/t1 ε/t1 ε/t1",
                                "aa/t1 ε/t1 ε/t1 ε/t1", "# TRUNCATED"]


def test_outside_alphabet():
    code, out, err = run("recognize", "H-none.ll", "a?b")
    assert code == 1 and out == "OUTSIDE-ALPHABET\n" and "'?'" in err


def test_usage_errors():
    assert run("recognize", "H-none.ll")[0] == 2
    assert run("bogus")[0] == 2
    assert run("forest", "H-none.ll", "a-b+c")[0] == 2


def test_spec_errors(tmp_path):
    bad = tmp_path / "bad.ll"
    bad.write_text("alphabet [a]\nrule S -> x\nstart S\n")
    code, _, err = run("recognize", str(bad), "a")
    assert code == 3 and "line" in err
    assert run("recognize", "nope.ll", "a")[0] == 3


def test_dump_chart():
    code, out, _ = run("recognize", "--dump-chart", "H-order.ll", "a-b+c")
    lines = out.splitlines()
    assert lines[-1] == "ACCEPT"
    assert '4\tid\t"c"' in lines


def test_forest_outputs(tmp_path):
    dot = tmp_path / "f.dot"
    code, _, _ = run("forest", "lexerhack.ll", "(a)*b", "--dot", str(dot))
    assert code == 0 and dot.read_text().startswith("digraph forest {")
    code, out, _ = run("forest", "H-order.ll", "a-b+c", "--json", "-")
    assert code == 0 and '"v": 1' in out


def test_forest_reject():
    assert run("forest", "H-none.ll", "+", "--dot", "-")[:2] == (1, "REJECT\n")


def test_deterministic_output():
    a = run("tokens", "lexerhack.ll", "(a)*b")
    b = run("tokens", "lexerhack.ll", "(a)*b")
    assert a == b


def test_stdin_and_entry_point():
    proc = subprocess.run([sys.executable, "-m", "locallex.cli", "recognize", "H-none.ll", "--stdin"],
                          input="a-b+c\n", capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "ACCEPT\n"


DOCUMENTED = [
    ("H-none.ll", ["a-b+c", "a", "+", "a+b-c"]),
    ("H-order.ll", ["a-b+c", "ab-c"]),
    ("H-longest.ll", ["a-b+c", "a--b"]),
    ("H-longest-order.ll", ["a-b+c"]),
    ("traditional.ll", ["if x1 22", "", "ifx"]),
    ("lexerhack.ll", ["(a)*b", "*b", "()"]),
    ("infinite.ll", ["aa", ""]),
    ("err.ll", ["1+2*3", "2(a*+))+(1", ")"]),
]


@pytest.mark.parametrize("spec,inputs", DOCUMENTED)
def test_check_bundled(spec, inputs):
    for D in inputs:
        code, out, _ = run("check", spec, D, "--max-eps", "2", "--max-paths", "2000")
        assert code == 0, (spec, D, out)
