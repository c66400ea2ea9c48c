import json
import io
import contextlib

import pytest

from deepcong.cli import main
from deepcong.exact_arith import GaloisRing
from deepcong.module_compare import synthesize_traces
from deepcong.symfunc import convert, expr_from_obj, expr_to_obj


def run_cli(*argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_paper_table_shape_and_stability():
    code, out, _ = run_cli("paper-table")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 18  # header + 17 rows
    assert lines[0] == "n\t1+v_p(n)\te_n(P)\te_n(Q)\tp_n(P)\tp_n(Q)\tv_p(diff)"
    code2, out2, _ = run_cli("paper-table")
    assert out2 == out  # byte stable
    code3, out3, _ = run_cli("paper-table", "--format", "json")
    assert code3 == 0
    data = json.loads(out3)
    assert len(data["rows"]) == 17


def test_congruence_check_exit_codes():
    code, out, _ = run_cli(
        "congruence-check", "--p", "2", "--P", "1,1,3", "--Q", "1,1,3"
    )
    assert code == 0
    code, _, _ = run_cli(
        "congruence-check", "--p", "2", "--P", "1,1", "--Q", "1,2"
    )
    assert code == 1
    code, _, err = run_cli("congruence-check", "--p", "2", "--P", "2,1", "--Q", "1,1")
    assert code == 2
    assert "error" in err


def test_congruence_check_json_input(tmp_path):
    payload = {
        "ring": {"type": "eisenstein", "p": 2, "e": 2},
        "P": [["1", "0"], ["0", "-1"], ["0", "0"]],
        "Q": [["1", "0"], ["0", "0"], ["0", "0"]],
    }
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(payload))
    code, out, _ = run_cli(
        "congruence-check",
        "--p",
        "2",
        "--ideal-val",
        "1/2",
        "--in",
        str(path),
    )
    data = json.loads(out)
    assert data["conditions"]["elementary"] is True
    assert data["conditions"]["deep"] is False
    assert code == 1


def test_glam_output():
    code, out, _ = run_cli("glam", "--p", "2", "--partition", "1,1")
    assert code == 0
    data = json.loads(out)
    assert data == {
        "basis": "p",
        "terms": [
            {"partition": [2], "coefficient": "-1/2"},
            {"partition": [1, 1], "coefficient": "1/2"},
        ],
    }


def test_partitions_class_output():
    code, out, _ = run_cli("partitions-class", "--p", "2", "--partition", "3,3,1,1")
    data = json.loads(out)
    assert data["partitions"] == [[6, 2], [6, 1, 1], [3, 3, 2], [3, 3, 1, 1]]


def test_symfunc_convert_round_trip(tmp_path):
    expr = {
        "basis": "p",
        "terms": [{"partition": [2, 1], "coefficient": "3/4"}],
    }
    path = tmp_path / "expr.json"
    path.write_text(json.dumps(expr))
    code, out, _ = run_cli("symfunc-convert", "--to", "e", "--in", str(path))
    assert code == 0
    converted = json.loads(out)
    back = expr_to_obj(convert(expr_from_obj(converted), "p"))
    assert back == expr


def test_artin_hasse_cli():
    code, out, _ = run_cli("artin-hasse", "--p", "3", "--order", "6")
    assert code == 0
    data = json.loads(out)
    assert data["methods_agree"] is True
    assert data["coefficients"][3] == "1/2"


def test_gu_series_cli():
    code, out, _ = run_cli(
        "gu-series", "--u", "1", "--p", "2", "--order", "4", "--method", "both"
    )
    assert code == 0
    data = json.loads(out)
    assert data["methods_agree"] is True
    assert data["coefficients"][0]["terms"][0]["coefficient"] == "1"
    code, _, _ = run_cli("gu-series", "--u", "2", "--p", "2", "--order", "4")
    assert code == 2


def test_module_compare_cli(tmp_path):
    payload = {"M": [[2, 0], [0, 2]], "N": [[2 + 3, 0], [0, 2]]}
    path = tmp_path / "mats.json"
    path.write_text(json.dumps(payload))
    code, out, _ = run_cli("module-compare", "--p", "3", "--in", str(path))
    data = json.loads(out)
    assert data["verdict"] is True and data["consistent"] is True
    assert code == 0
    payload = {"M": [[1, 0], [0, 1]], "N": [[1, 0], [0, 2]]}
    path.write_text(json.dumps(payload))
    code, out, _ = run_cli("module-compare", "--p", "2", "--in", str(path))
    assert code == 1


def test_virtual_compare_cli(tmp_path):
    payload = {"M1": [[1, 0], [0, 3]], "N1": [[1]], "M2": [[1]], "N2": []}
    path = tmp_path / "virt.json"
    path.write_text(json.dumps(payload))
    code, out, _ = run_cli(
        "virtual-compare", "--p", "2", "--range", "10", "--in", str(path)
    )
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] is True
    assert len(data["rows"]) == 11


def test_recover_cli(tmp_path):
    ring = GaloisRing(2, 2, 1)
    x1 = ring.residue_field().element((1,))
    x0 = ring.residue_field().element((0,))
    traces = synthesize_traces(ring, {x1: 3, x0: 1})
    payload = {
        "p": 2,
        "S": 2,
        "k": 1,
        "traces": [list(t.coeffs) for t in traces],
    }
    path = tmp_path / "traces.json"
    path.write_text(json.dumps(payload))
    code, out, _ = run_cli("recover", "--in", str(path))
    assert code == 0
    data = json.loads(out)
    got = {tuple(e["residue"]): e["multiplicity"] for e in data["entries"]}
    assert got == {(0,): 1, (1,): 3}


def test_recover_cli_bad_traces(tmp_path):
    payload = {"p": 2, "S": 2, "k": 1, "traces": [[1], [1], [0]]}
    path = tmp_path / "traces.json"
    path.write_text(json.dumps(payload))
    code, _, err = run_cli("recover", "--in", str(path))
    assert code == 2
    assert "error" in err


def test_missing_input_is_usage_error():
    code, _, err = run_cli("congruence-check", "--p", "2")
    assert code == 2

    code, _, err = run_cli("module-compare", "--p", "2", "--in", "/nonexistent.json")
    assert code == 2
