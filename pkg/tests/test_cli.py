import random

import pytest
from hypothesis import given, strategies as st

from cohnloc.cli import main
from cohnloc.complexes import make_w0_complex
from cohnloc.errors import ParseError, UnknownSuite
from cohnloc.formats import (
    format_complex,
    format_group,
    format_matrix,
    parse_complex,
    parse_group,
    parse_matrix,
)
from cohnloc.groupring import GroupRingElement, GroupRingMatrix
from cohnloc.localization import LambdaContext, canonical_map, format_lambda, parse_lambda
from cohnloc.suites import builtin_group, random_wh_matrix, run_suite

S3 = builtin_group("S3")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# ------------------------------------------------------------------ formats

@pytest.mark.parametrize("name", ["Z2", "S3", "A4", "Q8", "D5"])
def test_group_round_trip(name):
    G = builtin_group(name)
    assert parse_group(format_group(G)).same_as(G)


def test_perm_group_file():
    G = parse_group("perm 3  # S3\n1 0 2\n1 2 0\n")
    assert G.order == 6
    T = parse_group("perm 4\n")
    assert T.order == 1


@pytest.mark.parametrize("text", [
    "",
    "perm\n1 0\n",
    "perm 3\n1 0\n",
    "perm 3\n0 0 1\n",
    "perm 2\n1 x\n",
    "table 2\n0 1\n1 1\n",
    "table 3\n0 1 2\n1 2 0\n",
    "table 2\ngens 1\n1 0\n0 1\n",
    "cayley 2\n",
])
def test_bad_group_files(text):
    with pytest.raises(ParseError):
        parse_group(text)


def test_table_group_file_relabels():
    # identity written as label 1
    G = parse_group("table 2\n1 0\n0 1\n")
    assert G.order == 2 and G.element_orders[0] == 1


@given(st.lists(st.integers(-4, 4), min_size=12, max_size=12), st.integers(1, 2))
def test_matrix_round_trip(cs, rows):
    cols = 2
    M = GroupRingMatrix(S3, [[GroupRingElement(S3, {g: cs[(i * cols + j) * 3 + g % 3]
                                                    for g in range(6)})
                              for j in range(cols)] for i in range(rows)])
    assert parse_matrix(format_matrix(M), S3) == M


def test_matrix_parse_errors():
    with pytest.raises(ParseError):
        parse_matrix("matrix 1 2\n(1)*g0\n", S3)
    with pytest.raises(ParseError):
        parse_matrix("matrix 2 1\n(1)*g0\n", S3)


def test_complex_round_trip():
    rng = random.Random(5)
    for n in (0, 2):
        C = make_w0_complex(random_wh_matrix(S3, 2, rng), n=n)
        assert parse_complex(format_complex(C), S3) == C


def test_lambda_element_round_trip():
    ctx = LambdaContext(builtin_group("Z6"))
    rng = random.Random(9)
    for _ in range(10):
        e = GroupRingElement(ctx.group, {g: rng.randint(-4, 4) for g in range(6)})
        image = canonical_map(ctx, e)
        assert parse_lambda(format_lambda(image), ctx) == image


# ---------------------------------------------------------------------- CLI

def test_analyze_examples(capsys):
    expected = {
        "S3": "Λ = Z_(2)[C2] ×_{Z_(2)} Z; not nilpotent",
        "A5": "Λ = Z; not nilpotent",
        "Z6": "Λ = (Z_(2)[C2] × Z_(3)[C3]) ×_{Z_(2)×Z_(3)} Z; nilpotent",
    }
    for name, line in expected.items():
        code, out, _ = run(capsys, "analyze", f"@{name}")
        assert code == 0
        assert f"result: {line}\n" in out


def test_analyze_from_file(tmp_path, capsys):
    path = write(tmp_path, "s3.txt", "perm 3\n1 0 2\n1 2 0\n")
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0
    assert "order: 6\n" in out and "p-quotients: (2, 2)\n" in out
    assert "element orders: 1:1 2:3 3:2\n" in out


def test_invert_examples(tmp_path, capsys):
    x = next(g for g in range(6) if S3.element_orders[g] == 2)
    m = write(tmp_path, "m.txt", f"matrix 1 1\n(2)*g0 + (-1)*g{x}\n")
    code, out, _ = run(capsys, "invert", "@S3", m)
    assert code == 0 and "W^h: yes" in out and "outcome: pass" in out
    assert "2/3" in out and "1/3" in out

    bad = write(tmp_path, "bad.txt", f"matrix 1 1\n(1)*g0 + (-1)*g{x}\n")
    code, out, err = run(capsys, "invert", "@S3", bad)
    assert code == 2 and out == "" and err

    neg = write(tmp_path, "neg.txt", "matrix 1 1\n(-1)*g0\n")
    code, out, _ = run(capsys, "invert", "@S3", neg)
    assert code == 0
    assert "W^h: yes\nW^s: no\n" in out


def test_localize_element(capsys):
    code, out, _ = run(capsys, "localize-element", "@S3", "(2)*g0 + (-1)*g1")
    assert code == 0 and "unit: yes" in out and "inverse:" in out
    code, out, _ = run(capsys, "localize-element", "@S3", "(1)*g0 + (-1)*g1")
    assert code == 0 and "unit: no" in out
    code, _, _ = run(capsys, "localize-element", "@S3", "2*g0")
    assert code == 2


@pytest.mark.parametrize("name,degree,expected", [
    ("Z4", 1, "Z/4"), ("S3", 1, "Z/2"), ("A4", 2, "Z/2"),
])
def test_homology_examples(capsys, name, degree, expected):
    code, out, _ = run(capsys, "homology", f"@{name}", str(degree))
    assert code == 0 and f"H_{degree}(G, Z): {expected}\n" in out


def test_homology_local_and_normalized(capsys):
    code, out, _ = run(capsys, "homology", "@S3", "3", "--prime", "3", "--normalized-bar")
    assert code == 0 and "H_3(G, Z_(3)): Z/3\n" in out


def test_budget_exit_code(capsys):
    code, out, err = run(capsys, "--budget-mb", "1", "homology", "@A5", "3")
    assert code == 3 and out == "" and "budget" in err
    # the flag is also accepted after the subcommand
    code, _, _ = run(capsys, "homology", "@A5", "3", "--budget-mb", "1")
    assert code == 3


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "analyze", "@Nope")[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "analyze", write(tmp_path, "g.txt", "perm 2\n1 1\n"))[0] == 2
    assert run(capsys, "verify", "nosuch")[0] == 2
    with pytest.raises(UnknownSuite):
        run_suite("nosuch")


def test_failed_check_exit_code(capsys, monkeypatch):
    import cohnloc.cex2 as cx

    monkeypatch.setattr(cx, "expected_products", lambda: (cx.Mat2K.identity(),) * 3)
    code, _, err = run(capsys, "verify", "cex2")
    assert code == 1 and "check failed" in err


@pytest.mark.parametrize("suite", ["cex2", "lemma32", "sublemma", "complexes"])
def test_verify_fast_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", suite)
    assert code == 0 and out.endswith("outcome: pass\n")
    assert "FAIL" not in out


def test_verify_cex2_lists_three_matrices(capsys):
    _, out, _ = run(capsys, "verify", "cex2")
    assert out.count("PASS: phi(") == 3


def test_verify_quillen_small_bound(capsys):
    # with bound 1 the 3-part of S3 has not shown up yet
    code, out, _ = run(capsys, "verify", "quillen", "--bound", "1")
    assert code == 1 and "FAIL: S3, p=3" in out


def test_reports_are_byte_identical(capsys):
    for argv in (["analyze", "@D4"], ["homology", "@S3", "2"], ["verify", "cex2"]):
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second


def test_timing_only_appends(capsys):
    _, plain, _ = run(capsys, "analyze", "@Q8")
    _, timed, _ = run(capsys, "--timing", "analyze", "@Q8")
    assert timed.startswith(plain)
    extra = timed[len(plain):]
    assert extra.startswith("wall time: ") and extra.count("\n") == 1


def test_report_layout(capsys):
    _, out, _ = run(capsys, "analyze", "@Z6")
    lines = out.splitlines()
    assert lines[0] == "command: analyze"
    assert lines[1].startswith("inputs: sha256:") and len(lines[1]) == len("inputs: sha256:") + 16
    assert lines[-1] == "outcome: value"
    assert any(ln.startswith("omega_2: ") for ln in lines)
