"""Command-line interface: exit codes, output formats, export invariants."""

import csv
import io
import json

import pytest

from chainq.chainring import ChainRing
from chainq.cli import PRESETS, SEARCH_CSV_COLUMNS, main, preset_code
from chainq.code import CyclicCodeR, SlotAssignment, descriptor
from chainq.field import gf_cache
from chainq.polyring import factor_xn_minus_1
from chainq.search import evaluate_assignment


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# factor


def test_factor_json(capsys):
    code, out, _ = run_cli(capsys, "factor", "--n", "7", "--m", "1", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema_version"] == 1
    assert rep["command"] == "factor"
    assert rep["m"] == 1
    assert "modulus" in rep and "basis" in rep and "conventions" in rep
    degrees = sorted(f["degree"] for f in rep["factors"])
    assert degrees == [1, 3, 3]
    reps = [f["coset_rep"] for f in rep["factors"]]
    assert reps == [0, 1, 3]


def test_factor_table_and_csv(capsys):
    code, out, _ = run_cli(capsys, "factor", "--n", "15", "--m", "1")
    assert code == 0
    assert "x^" in out
    code, out, _ = run_cli(capsys, "factor", "--n", "15", "--m", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "rep"
    assert len(rows) == 1 + 5


def test_factor_rejects_even_length(capsys):
    code, _, err = run_cli(capsys, "factor", "--n", "6", "--m", "1")
    assert code == 1
    assert "error" in err


# ---------------------------------------------------------------------------
# code


def make_descriptor(tmp_path, n, m, k, slots):
    gf = gf_cache(m)
    code = CyclicCodeR(
        ChainRing(gf, k), SlotAssignment(factor_xn_minus_1(n, gf), k, tuple(slots))
    )
    path = tmp_path / "desc.json"
    path.write_text(json.dumps(descriptor(code)))
    return path


def test_code_from_descriptor(capsys, tmp_path):
    path = make_descriptor(tmp_path, 7, 1, 1, (2, 1, 1))
    code, out, _ = run_cli(
        capsys, "code", "--descriptor", str(path), "--format", "json"
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["type"] == [6, 1]
    assert rep["certificate"]["passes"] and rep["contains_dual"]
    assert rep["gray_image"]["d"] == 2 and rep["gray_image"]["d_exact"]
    qi = rep["quantum_i"]
    assert (qi["n"], qi["l"], qi["d"]) == (14, 12, 2)


def test_code_descriptor_matches_preset(capsys, tmp_path):
    ring_code, _ = preset_code("n21k1", None)
    path = tmp_path / "desc.json"
    path.write_text(json.dumps(descriptor(ring_code)))
    code, out, _ = run_cli(capsys, "code", "--descriptor", str(path), "--format", "json")
    assert code == 0
    from_desc = json.loads(out)
    code, out, _ = run_cli(capsys, "code", "--preset", "n21k1", "--format", "json")
    assert code == 0
    from_preset = json.loads(out)
    for key in ("type", "log2_size", "certificate", "contains_dual",
                "gray_image", "quantum_i", "quantum_ii"):
        assert from_desc[key] == from_preset[key]


def test_code_preset_published_mismatch_warnings(capsys):
    code, out, _ = run_cli(capsys, "code", "--preset", "n15k3", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    codes = {w["code"] for w in rep["warnings"]}
    assert "published-distance-mismatch" in codes
    assert rep["gray_image"]["d"] == 2


def test_code_preset_certificate_failure_still_reports(capsys):
    code, out, _ = run_cli(capsys, "code", "--preset", "n21k1-literal", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert not rep["certificate"]["passes"]
    assert rep["quantum_i"] is None
    assert rep["gray_image"]["d"] >= 1


def test_code_csv_and_table(capsys, tmp_path):
    path = make_descriptor(tmp_path, 7, 1, 1, (2, 1, 1))
    code, out, _ = run_cli(capsys, "code", "--descriptor", str(path), "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "n" and len(rows) == 2
    code, out, _ = run_cli(capsys, "code", "--descriptor", str(path))
    assert code == 0
    assert "[[14, 12, 2]]" in out


def test_code_missing_descriptor_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "code", "--descriptor", str(tmp_path / "nope.json"))
    assert code == 1
    assert "error" in err


def test_code_malformed_descriptor(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "code", "--descriptor", str(path))
    assert code == 1


def test_preset_table_is_complete():
    assert set(PRESETS) == {"n15k3", "n21k1", "n21k1-literal"}
    for name in PRESETS:
        ring_code, preset = preset_code(name, None)
        assert ring_code.n == preset.n


# ---------------------------------------------------------------------------
# search


def test_search_json_and_export_invariant(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "search", "--n", "7", "--m", "1", "--k", "1",
        "--format", "json", "--export", "out.jsonl", "--results-dir", str(tmp_path),
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["certified_assignments"] == 12
    lines = (tmp_path / "out.jsonl").read_text().splitlines()
    assert len(lines) == 12
    # every exported row rebuilds to the identical evaluation
    gf = gf_cache(1)
    ring = ChainRing(gf, 1)
    fac = factor_xn_minus_1(7, gf)
    for line in lines:
        row = json.loads(line)
        again = evaluate_assignment(ring, fac, row["index"])
        assert again.to_json_dict() == row


def test_search_csv_columns(capsys):
    code, out, _ = run_cli(
        capsys, "search", "--n", "7", "--m", "1", "--k", "1", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == SEARCH_CSV_COLUMNS
    assert len(rows) == 1 + 12


def test_search_table_output(capsys):
    code, out, _ = run_cli(capsys, "search", "--n", "7", "--m", "1", "--k", "1")
    assert code == 0
    assert "12 certificate-passing assignments" in out
    assert "best with distance >= 2" in out


def test_search_budget_refusal(capsys):
    code, _, err = run_cli(
        capsys, "search", "--n", "43", "--m", "2", "--k", "1",
        "--assignment-budget", "100",
    )
    assert code == 2
    assert "budget refusal" in err


def test_search_rejects_bad_field(capsys):
    code, _, err = run_cli(capsys, "search", "--n", "7", "--m", "0", "--k", "1")
    assert code == 1


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "chainq" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# table1


def test_table1_audit_single_row(capsys, tmp_path, monkeypatch):
    # restrict the audit to the n=7 row so the wrapper test stays fast
    import chainq.search as search_mod

    monkeypatch.setattr(
        search_mod, "TABLE1_PUBLISHED", (search_mod.TABLE1_PUBLISHED[0],)
    )
    code, out, _ = run_cli(
        capsys, "table1", "--format", "json",
        "--results-dir", str(tmp_path), "--export", "report.json",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["command"] == "table1"
    (row,) = rep["rows"]
    assert row["n"] == 7
    assert row["status"] == "match"
    assert row["published"]["quantum_i"] == [14, 12, 2]
    assert row["matching_indices"]
    assert row["best"]["quantum_i"]["d_exact"] is True
    assert "type-column-reading" in [w["code"] for w in rep["warnings"]]
    exported = json.loads((tmp_path / "report.json").read_text())
    assert exported == rep


def test_table1_table_and_csv_render(capsys, monkeypatch):
    import chainq.search as search_mod

    monkeypatch.setattr(
        search_mod, "TABLE1_PUBLISHED", (search_mod.TABLE1_PUBLISHED[0],)
    )
    code, out, _ = run_cli(capsys, "table1")
    assert code == 0
    assert "published [[14,12,2]]_4" in out
    assert "status match" in out
    code, out, _ = run_cli(capsys, "table1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "status", "claim_l", "claim_d", "matches", "best_l", "best_d"]
    assert rows[1][:2] == ["7", "match"]
