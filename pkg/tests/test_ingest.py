import json

import pytest

from stvtrace.canonical import parse_canonical
from stvtrace.engine import tabulate
from stvtrace.ingest import ingest_external, row_to_preferences
from stvtrace.model import ElectionDataError
from stvtrace.rules import BUILTIN_RULESETS, RuleSet

MANIFEST = json.dumps(
    {
        "name": "csv contest",
        "vacancies": 1,
        "candidates": [{"name": "A"}, {"name": "B"}, {"name": "C"}],
        "groups": [],
    }
)


def ingest(csv_text, rules=None, manifest=MANIFEST):
    return ingest_external(csv_text, manifest, rules or BUILTIN_RULESETS["default"])


class TestRowParsing:
    def test_full_ranking(self):
        assert row_to_preferences(["1", "2", "3"]) == [0, 1, 2]

    def test_blank_means_no_rank(self):
        assert row_to_preferences(["1", "", "2"]) == [0, 2]

    def test_duplicate_rank_is_informal(self):
        assert row_to_preferences(["1", "1", "2"]) is None

    def test_gapped_ranks_are_informal(self):
        assert row_to_preferences(["1", "", "3"]) is None

    def test_unparseable_cell_raises(self):
        with pytest.raises(ValueError):
            row_to_preferences(["1", "x", "2"])


class TestIngest:
    def test_rows_become_aggregated_ballots(self):
        blob, report = ingest("A,B,C\n1,2,3\n1,2,3\n3,1,2\n")
        data = parse_canonical(blob)
        ballots = {b.preferences: b.multiplicity for b in data.ballots}
        assert ballots == {(0, 1, 2): 2, (1, 2, 0): 1}
        assert (report.rows, report.formal, report.informal, report.skipped) == (3, 3, 0, 0)

    def test_informal_rows_dropped_and_counted(self):
        blob, report = ingest("A,B,C\n1,1,2\n1,2,3\n")
        data = parse_canonical(blob)
        assert data.total_papers == 1
        assert report.informal == 1

    def test_formality_minimum_applies(self):
        rules = RuleSet(name="min2", min_preferences=2)
        _, report = ingest("A,B,C\n1,,\n1,2,\n", rules=rules)
        assert (report.formal, report.informal) == (1, 1)

    def test_unparseable_row_skipped_with_warning(self):
        blob, report = ingest("A,B,C\n1,x,2\n2,1,3\n")
        assert report.skipped == 1
        assert any("line 2" in w for w in report.warnings)
        assert parse_canonical(blob).total_papers == 1

    def test_header_mismatch_rejected(self):
        with pytest.raises(ElectionDataError, match="header"):
            ingest("A,B\n1,2\n")

    def test_manifest_with_ballots_rejected(self):
        manifest = json.loads(MANIFEST)
        manifest["ballots"] = [{"prefs": [0]}]
        with pytest.raises(ElectionDataError, match="ballots"):
            ingest("A,B,C\n1,2,3\n", manifest=json.dumps(manifest))

    def test_ingested_file_counts(self):
        blob, _ = ingest("A,B,C\n1,2,3\n1,2,3\n2,1,3\n3,2,1\n")
        transcript = tabulate(parse_canonical(blob), BUILTIN_RULESETS["default"])
        assert len(transcript.winners) == 1

    def test_manifest_groups_and_htv_carried_through(self):
        manifest = json.dumps(
            {
                "name": "grouped csv",
                "vacancies": 1,
                "candidates": [{"name": "A", "group": 0}, {"name": "B", "group": 0}, {"name": "C"}],
                "groups": [{"name": "G"}],
                "htv": [{"party": "G", "prefs": [0, 1, 2]}],
            }
        )
        blob, _ = ingest("A,B,C\n1,2,3\n", manifest=manifest)
        data = parse_canonical(blob)
        assert data.groups[0].candidate_ids == (0, 1)
        assert data.htv_cards[0].party == "G"
