"""The command-line surface and its exit-code contract."""

import json

import pytest

from qschur.algebra import Context, EKF
from qschur.cli import main
from qschur.oracle import build_rep, matrix_of_element, oracle_equal
from qschur.textio import element_from_json, parse_element


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_multiply_inline(capsys):
    code, out, _ = run(
        capsys, "multiply", "--d", "1", "--lhs", "e^(1) K[0,1]", "--rhs", "K[0,1] f^(1)"
    )
    assert code == 0
    assert out.strip() == "K[1,0]"


def test_multiply_identity_file(tmp_path, capsys):
    ident = tmp_path / "identity.txt"
    ident.write_text("K[1,0] + K[0,1]")
    code, out, _ = run(
        capsys, "multiply", "--d", "1", "--lhs", "e^(1) K[0,1]", "--rhs", str(ident)
    )
    assert code == 0
    assert out.strip() == "e^(1) K[0,1]"


def test_multiply_json_output(capsys):
    code, out, _ = run(
        capsys,
        "multiply",
        "--d",
        "1",
        "--lhs",
        "K[1,0]",
        "--rhs",
        "K[1,0]",
        "--format",
        "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["terms"] == [{"a": 0, "b1": 1, "b2": 0, "c": 0, "coeff": [[0, "1"]]}]


def test_multiply_degree_mismatch(tmp_path, capsys):
    elt = tmp_path / "elt.json"
    elt.write_text(json.dumps({"d": 1, "orientation": "EKF", "terms": []}))
    code, _, err = run(capsys, "multiply", "--d", "2", "--lhs", str(elt), "--rhs", "K[0,2]")
    assert code == 2
    assert "error" in err


def test_reduce_command(capsys):
    code, out, _ = run(capsys, "reduce", "--d", "2", "--monomial", "1,1,1,1")
    assert code == 0
    assert "result: (v + v^-1) * K[2,0]" in out
    assert "s: 1" in out and "k: 1..1" in out

    code, out, _ = run(capsys, "reduce", "--d", "3", "--monomial", "0,2,1,0")
    assert code == 0
    assert "result: K[2,1]" in out and "s: -1" in out

    code, out, _ = run(capsys, "reduce", "--d", "1", "--monomial", "1,1,0,1")
    assert code == 0
    assert "result: 0" in out and "(empty)" in out


def test_reduce_invalid_quadruple(capsys):
    code, _, err = run(capsys, "reduce", "--d", "1", "--monomial", "1,1,1,1")
    assert code == 2
    assert "error" in err


def test_basis_command(capsys):
    code, out, _ = run(capsys, "basis", "--d", "1")
    assert code == 0
    assert out.splitlines() == ["K[0,1]", "K[0,1] f^(1)", "K[1,0]", "e^(1) K[0,1]"]
    code, out, _ = run(capsys, "basis", "--d", "2", "--format", "json")
    assert len(json.loads(out)["monomials"]) == 10


def test_table_degree_zero(capsys):
    code, out, _ = run(capsys, "table", "--d", "0")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1
    row = json.loads(lines[0])
    assert row["lhs"] == row["rhs"] == {"a": 0, "b1": 0, "b2": 0, "c": 0}
    assert row["product"]["terms"][0]["coeff"] == [[0, "1"]]


def test_table_is_closed_and_oracle_checked(capsys):
    # every product line re-parses and re-verifies against the oracle
    for d in (1, 2, 3):
        code, out, _ = run(capsys, "table", "--d", str(d))
        assert code == 0
        lines = out.strip().splitlines()
        ctx = Context(d)
        rep = build_rep(d)
        assert len(lines) == len(ctx.monomials(EKF)) ** 2
        for line in lines:
            row = json.loads(line)
            product = element_from_json(row["product"], ctx)
            lhs = parse_element(
                _factor_text(row["lhs"]), ctx
            )
            rhs = parse_element(_factor_text(row["rhs"]), ctx)
            assert matrix_of_element(rep, product) == matrix_of_element(
                rep, lhs
            ) * matrix_of_element(rep, rhs)


def test_table_degree_one_contains_known_product(capsys):
    code, out, _ = run(capsys, "table", "--d", "1")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 16
    wanted = [
        r
        for r in rows
        if r["lhs"] == {"a": 1, "b1": 0, "b2": 1, "c": 0}
        and r["rhs"] == {"a": 0, "b1": 0, "b2": 1, "c": 1}
    ]
    assert len(wanted) == 1
    assert wanted[0]["product"]["terms"] == [
        {"a": 0, "b1": 1, "b2": 0, "c": 0, "coeff": [[0, "1"]]}
    ]


def _factor_text(quad: dict) -> str:
    parts = []
    if quad["a"]:
        parts.append(f"e^({quad['a']})")
    parts.append(f"K[{quad['b1']},{quad['b2']}]")
    if quad["c"]:
        parts.append(f"f^({quad['c']})")
    return " ".join(parts)


def test_table_guard(capsys):
    code, _, err = run(capsys, "table", "--d", "7")
    assert code == 2
    assert "guard" in err


def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify", "--d", "2", "--suite", "all")
    assert code == 0
    assert "PASS  overall" in out


def test_verify_degenerate_degree(capsys):
    code, out, _ = run(capsys, "verify", "--d", "0", "--suite", "all")
    assert code == 0


def test_verify_json_report(capsys):
    code, out, _ = run(
        capsys, "verify", "--d", "1", "--suite", "relations", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["d"] == 1
    assert all(set(c) <= {"id", "pass", "witness"} for c in report["checks"])


def test_verify_guard_and_override(capsys):
    code, _, err = run(capsys, "verify", "--d", "7", "--suite", "relations")
    assert code == 2
    assert "guard" in err
    # the override lifts the guard, warns, and scales the oracle past d = 6
    code, out, err = run(
        capsys, "verify", "--d", "7", "--suite", "relations", "--max-d-override"
    )
    assert code == 0
    assert "warning" in err
    assert "orc-ef-commutator" in out


def test_verify_fault_injection_fails(capsys):
    code, out, _ = run(
        capsys,
        "verify",
        "--d",
        "2",
        "--suite",
        "relations",
        "--inject-fault",
        "broken-coproduct",
    )
    assert code == 1
    assert "FAIL" in out

    code, _, _ = run(
        capsys,
        "verify",
        "--d",
        "2",
        "--suite",
        "reduction",
        "--inject-fault",
        "skip-reduction",
    )
    assert code == 1


def test_out_file(tmp_path, capsys):
    target = tmp_path / "product.txt"
    code, out, _ = run(
        capsys,
        "multiply",
        "--d",
        "1",
        "--lhs",
        "K[1,0]",
        "--rhs",
        "K[1,0]",
        "--out",
        str(target),
    )
    assert code == 0
    assert target.read_text().strip() == "K[1,0]"


def test_usage_error_exit_code(capsys):
    assert main(["multiply", "--d", "1", "--lhs", "K[1,0]"]) == 2  # missing --rhs
    assert main(["frobnicate"]) == 2


def test_outputs_are_byte_deterministic(capsys):
    runs = []
    for _ in range(2):
        code, out, _ = run(capsys, "table", "--d", "2")
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
    runs = []
    for _ in range(2):
        code, out, _ = run(
            capsys, "verify", "--d", "2", "--suite", "oracle", "--format", "json"
        )
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
