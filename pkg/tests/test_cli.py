import json

from stvtrace.cli import main

from .conftest import FIXTURES, GOLDEN, REPO_ROOT


def test_validate_ok(oracle_path, capsys):
    assert main(["validate", str(oracle_path)]) == 0
    out = capsys.readouterr().out
    assert "3 candidates" in out and "20 papers" in out


def test_validate_bad_file_names_record(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {
                "name": "bad",
                "vacancies": 1,
                "candidates": [{"name": "A"}, {"name": "B"}],
                "ballots": [{"prefs": [0]}, {"prefs": [1, 1]}],
            }
        )
    )
    assert main(["validate", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "ballots[1]" in err


def test_count_matches_golden_byte_for_byte(oracle_path, tmp_path):
    out = tmp_path / "transcript.json"
    assert main(["count", str(oracle_path), "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / "oracle_transcript.json").read_bytes()


def test_count_with_config_rules(grouped_path, tmp_path):
    config = REPO_ROOT / "config" / "default.json"
    out = tmp_path / "t.json"
    rc = main(
        ["count", str(grouped_path), "--config", str(config), "--rules", "senate-exact", "--out", str(out)]
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["rules"] == "senate-exact"
    # the 9-preference ballot line (12 papers) falls under the senate minimum
    assert doc["informal_papers"] == 12
    assert doc["total_formal_papers"] == 34


def test_trace_by_candidate_names(oracle_path, tmp_path):
    out = tmp_path / "report.json"
    assert main(["trace", str(oracle_path), "--prefs", "C,A,B", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [leg["holder_name"] for leg in doc["legs"]] == ["C"]
    assert doc["legs"][0]["to_count"] == 2


def test_trace_unknown_name_fails(oracle_path, capsys):
    assert main(["trace", str(oracle_path), "--prefs", "Z"]) == 1
    assert "no candidate named" in capsys.readouterr().err


def test_ingest_roundtrip(tmp_path, capsys):
    csv = tmp_path / "prefs.csv"
    csv.write_text("A,B,C\n1,2,3\n1,2,3\n2,1,3\n1,1,1\n")
    manifest = tmp_path / "manifest.json"
    manifest.write_text(
        json.dumps(
            {
                "name": "ingested",
                "vacancies": 1,
                "candidates": [{"name": "A"}, {"name": "B"}, {"name": "C"}],
            }
        )
    )
    out = tmp_path / "election.json"
    assert main(["ingest", str(csv), str(manifest), "--out", str(out)]) == 0
    err = capsys.readouterr().err
    assert "3 formal" in err and "1 informal" in err
    assert main(["validate", str(out)]) == 0
    assert main(["count", str(out)]) == 0


def test_unknown_rules_diagnostic(oracle_path, capsys):
    assert main(["count", str(oracle_path), "--rules", "nope"]) == 1
    assert "unknown ruleset" in capsys.readouterr().err


def test_missing_file_diagnostic(capsys):
    assert main(["validate", "/no/such/file.json"]) == 1
    assert capsys.readouterr().err.startswith("error:")
