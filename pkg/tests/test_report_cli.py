import csv
import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from yamabe_check import cli
from yamabe_check.report import (CSV_COLUMNS, ReportDocument, emit, exit_code, from_json, to_csv, to_json, to_text)
from yamabe_check.suite import DISCREPANCY, FAIL, PASS, STATUSES, VerificationReport

reports = st.builds(
    VerificationReport,
    lemma_id=st.sampled_from(["AdA-1", "R(UU)", "poho"]),
    paper_ref=st.text(max_size=20),
    expected=st.text(max_size=20),
    expected_provenance=st.sampled_from(["paper", "derived", "trivial"]),
    computed_exact=st.text(max_size=20),
    status=st.sampled_from(STATUSES),
    computed_numeric=st.none() | st.floats(allow_nan=False, allow_infinity=False),
    rel_err=st.none() | st.floats(min_value=0, max_value=1),
    notes=st.lists(st.text(max_size=10), max_size=3).map(tuple),
)


@given(st.lists(reports, max_size=6))
@settings(max_examples=50, deadline=None)
def test_json_round_trip(reps):
    doc = ReportDocument({"command": "verify"}, reps)
    text = to_json(doc)
    back = from_json(text)
    assert back.reports == doc.reports and back.config == doc.config
    assert to_json(back) == text


@given(st.lists(st.sampled_from(STATUSES), max_size=8))
def test_exit_code_pure_function_of_statuses(statuses):
    code = exit_code(statuses)
    assert code == exit_code(sorted(statuses))
    if FAIL in statuses:
        assert code == 1
    elif DISCREPANCY in statuses:
        assert code == 3
    else:
        assert code == 0


def test_empty_document():
    doc = ReportDocument()
    d = json.loads(to_json(doc))
    assert d["summary"] == {PASS: 0, FAIL: 0, DISCREPANCY: 0, "total": 0}
    assert doc.exit_code == 0
    assert to_csv(doc).strip() == ",".join(CSV_COLUMNS)
    assert "0 reports" in to_text(doc)


def test_exact_value_is_string():
    rep = VerificationReport("stimafinalegamma", "", "29/432 * w5 * I(7,9)", "paper", "29/432 * w5 * I(7,9)", PASS)
    d = json.loads(emit(ReportDocument({}, [rep]), "json"))
    assert d["reports"][0]["status"] == "pass"
    assert d["reports"][0]["computed_exact"] == "29/432 * w5 * I(7,9)"


def test_summary_mismatch_rejected():
    d = json.loads(to_json(ReportDocument({}, [])))
    d["summary"]["total"] = 3
    with pytest.raises(ValueError):
        ReportDocument.from_dict(d)


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_table(capsys):
    code, out, _ = run(capsys, "table", "--integrals")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["m", "alpha", "canonical_coeff", "canonical_base", "numeric_value"]
    row = next(r for r in rows if r["m"] == "7" and r["alpha"] == "7")
    assert row["canonical_coeff"] == "1/2" and row["canonical_base"] == "I(7,9)"


def test_cli_scan_b(capsys, tmp_path):
    code, out, err = run(capsys, "scan-b", "--grid", "-3,-2,-1,0", "--format", "csv", "--figures", str(tmp_path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["sign"] for r in rows] == ["+", "+", "+", "-"]
    assert (tmp_path / "scan_b.png").stat().st_size > 0
    code, out, _ = run(capsys, "scan-b", "--grid", "-3,-2,-1,0")
    assert "vertex b* = -50/21" in out


def test_cli_discrepancy_exit(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "stimafinalegamma8", "--b", "-2", "--format", "json")
    assert code == 3
    d = json.loads(out)
    assert "computed 121/13608 vs printed 121/13601; downstream 1089/34020 consistent with computed" \
        in d["reports"][0]["notes"]


def test_cli_pohozaev(capsys):
    code, out, _ = run(capsys, "pohozaev", "--n", "7", "--r", "2", "--format", "json")
    assert code == 0 and json.loads(out)["reports"][0]["status"] == "pass"


@pytest.mark.parametrize("argv", [
    ["verify"],
    ["verify", "--all", "--lemma", "AdA-1"],
    ["verify", "--lemma", "nope"],
    ["verify", "--all", "--unknown"],
    ["verify", "--all", "--n", "9"],
    ["verify", "--lemma", "AdA-1", "--n", "8"],
    ["verify", "--lemma", "AdA-1", "--b", "1"],
    ["verify", "--all", "--delta", "0.1"],
    ["scan-b", "--grid", "x"],
    ["pohozaev", "--n", "7", "--r", "-1"],
    ["profile", "Phi0", "--n", "6"],
])
def test_cli_usage_errors(capsys, argv):
    assert cli.run(argv) == 2


def test_cli_output_file_and_io_error(capsys, tmp_path):
    out = tmp_path / "r.csv"
    assert cli.run(["verify", "--lemma", "Iam", "--format", "csv", "-o", str(out)]) == 0
    assert out.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert cli.run(["verify", "--lemma", "Iam", "-o", str(blocker / "x.json")]) == 2


def test_cli_profile_and_dump(capsys):
    code, out, _ = run(capsys, "profile", "PhiTilde0", "--n", "8")
    assert code == 0 and "-1/12 * rho^0 * t^0 * Q^(0/2) * logQ^1" in out
    code, out, _ = run(capsys, "verify", "--lemma", "Phitilda2", "--n", "7", "--dump-profile", "--format", "json")
    assert code == 0
    assert any(n.startswith("profile PhiTilde2") for n in json.loads(out)["reports"][0]["notes"])


def test_cli_n7_lemma_filter(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "AdA-1", "--format", "json")
    d = json.loads(out)
    assert code == 0 and [r["lemma_id"] for r in d["reports"]] == ["AdA-1"]
    assert d["config"]["lemma"] == "AdA-1"


def test_json_matches_documented_schema():
    import pathlib

    from yamabe_check import suite as S
    from yamabe_check.report import ReportDocument, to_json

    schema = json.loads((pathlib.Path(__file__).parents[1] / "docs" / "report_schema.json").read_text())
    doc = json.loads(to_json(ReportDocument({"n": [7]}, S.suite_n7())))
    assert set(schema["required"]) == set(doc)
    rep = schema["$defs"]["report"]
    for r in doc["reports"]:
        assert list(r) == rep["required"]
        assert r["status"] in rep["properties"]["status"]["enum"]
        assert r["expected_provenance"] in rep["properties"]["expected_provenance"]["enum"]
    assert set(doc["summary"]) == set(schema["properties"]["summary"]["required"])
