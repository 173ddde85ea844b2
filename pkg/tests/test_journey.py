import json
import random
from fractions import Fraction

import pytest

from stvtrace.canonical import parse_canonical
from stvtrace.engine import EXHAUSTED, tabulate
from stvtrace.journey import (
    EndReason,
    InformalBallotError,
    augment,
    contributions,
    report_to_dict,
    trace_journey,
)
from stvtrace.model import Ballot, Candidate, ElectionData
from stvtrace.rules import BUILTIN_RULESETS, RuleSet

from .oracle.gen import random_election, random_preferences

DEFAULT = BUILTIN_RULESETS["default"]


def election(ncand, vacancies, *ballots, name="t"):
    return ElectionData(
        name=name,
        vacancies=vacancies,
        candidates=tuple(Candidate(id=i, name=chr(ord("A") + i)) for i in range(ncand)),
        ballots=tuple(Ballot(preferences=tuple(p), multiplicity=n) for p, n in ballots),
    )


ORACLE = election(3, 2, ((0, 1, 2), 10), ((1, 2), 6), ((2, 1), 4), name="oracle")


class TestAugment:
    def test_paper_total_grows_by_one(self):
        augmented = augment(ORACLE, [0], DEFAULT)
        assert augmented.total_papers == 21
        assert ORACLE.total_papers == 20  # original untouched

    def test_quota_boundary_crossed(self):
        # 20 papers: quota floor(20/3)+1 = 7; 21 papers: floor(21/3)+1 = 8
        base = tabulate(ORACLE, DEFAULT)
        augmented = tabulate(augment(ORACLE, [0], DEFAULT), DEFAULT)
        assert (base.quota, augmented.quota) == (7, 8)

    def test_quota_boundary_not_crossed(self):
        # 19 papers: floor(19/3)+1 = 7; 20 papers: floor(20/3)+1 = 7
        nineteen = election(3, 2, ((0, 1, 2), 10), ((1, 2), 6), ((2, 1), 3))
        base = tabulate(nineteen, DEFAULT)
        augmented = tabulate(augment(nineteen, [0], DEFAULT), DEFAULT)
        assert (base.quota, augmented.quota) == (7, 7)

    def test_informal_rejected(self):
        strict = RuleSet(name="strict", min_preferences=3)
        with pytest.raises(InformalBallotError, match="below minimum preferences"):
            augment(ORACLE, [0, 1], strict)


class TestTraceLegs:
    def test_single_candidate_single_leg(self):
        data = election(1, 1, ((0,), 3))
        report = trace_journey(data, [0], DEFAULT)
        (leg,) = report.legs
        assert (leg.holder, leg.value) == (0, 1)
        assert (leg.from_count, leg.to_count) == (1, 1)
        assert leg.end_reason is EndReason.COUNT_ENDED

    def test_oracle_cab_ballot_stays_with_c(self):
        """Augmented oracle: 21 papers, quota 8. A elected count 1; surplus
        2/10 lifts B to exactly 8 at count 2 and counting stops, so a C-first
        ballot never leaves C."""
        report = trace_journey(ORACLE, [2, 0, 1], DEFAULT)
        (leg,) = report.legs
        assert (leg.holder, leg.value) == (2, 1)
        assert (leg.from_count, leg.to_count) == (1, 2)
        assert leg.end_reason is EndReason.COUNT_ENDED
        assert report.augmented.quota == 8
        assert not report.outcome_changed

    def test_ballot_follows_surplus(self):
        # A opens on 11 of quota 8; the ballot leaves in A's surplus at
        # tv 3/11 and lands on B
        report = trace_journey(ORACLE, [0, 1, 2], DEFAULT)
        first, second = report.legs
        assert (first.holder, first.value) == (0, 1)
        assert first.end_reason is EndReason.HOLDER_ELECTED
        assert (first.from_count, first.to_count) == (1, 2)
        assert second.holder == 1
        assert second.value == Fraction(3, 11)
        assert (second.from_count, second.to_count) == (2, 2)
        assert second.end_reason is EndReason.COUNT_ENDED

    def test_exhaustion_leg(self):
        # B's exclusion exhausts the hypothetical [B] ballot mid-count
        data = election(3, 1, ((0,), 6), ((1,), 2), ((2, 0), 3))
        report = trace_journey(data, [1], DEFAULT)
        assert [leg.holder for leg in report.legs] == [1, EXHAUSTED]
        held, exhausted = report.legs
        assert held.end_reason is EndReason.HOLDER_EXCLUDED
        assert exhausted.end_reason is EndReason.BALLOT_EXHAUSTED
        assert exhausted.value == 1
        assert exhausted.from_count == held.to_count
        assert exhausted.to_count == report.augmented.counts[-1].index

    def test_legs_partition_with_shared_boundaries(self):
        rng = random.Random(99)
        for _ in range(100):
            data = random_election(rng)
            prefs = random_preferences(rng, data.num_candidates)
            report = trace_journey(data, prefs, DEFAULT)
            legs = report.legs
            assert legs[0].from_count == 1
            assert legs[-1].to_count == report.augmented.counts[-1].index
            for earlier, later in zip(legs, legs[1:]):
                assert later.from_count == earlier.to_count
                assert earlier.from_count <= earlier.to_count

    def test_wig_journey_values_non_increasing(self):
        rng = random.Random(1234)
        wig = BUILTIN_RULESETS["wig"]
        for _ in range(100):
            data = random_election(rng)
            prefs = random_preferences(rng, data.num_candidates)
            report = trace_journey(data, prefs, wig)
            values = [leg.value for leg in report.legs]
            assert all(a >= b for a, b in zip(values, values[1:]))


class TestContributions:
    def test_first_count_linearity(self):
        report = trace_journey(ORACLE, [2, 0, 1], DEFAULT)
        for record in report.contributions:
            assert record.per_count_delta[1] == (1 if record.candidate == 2 else 0)

    def test_oracle_b_first_ballot(self):
        """hb [B]: 21 papers lift the quota to 8 and shrink A's surplus, so
        B's count-2 tally is 9 in both runs: +1 at count 1, 0 at count 2."""
        report = trace_journey(ORACLE, [1], DEFAULT)
        by_candidate = {r.candidate: r for r in report.contributions}
        assert by_candidate[1].per_count_delta == {1: 1, 2: 0}
        assert by_candidate[1].final_delta == 0
        assert not report.outcome_changed
        assert report.divergence_count is None

    def test_oracle_cab_negative_delta_for_b(self):
        # quota bump 7 -> 8 trims A's surplus; B lands on 8 instead of 9
        report = trace_journey(ORACLE, [2, 0, 1], DEFAULT)
        by_candidate = {r.candidate: r for r in report.contributions}
        assert by_candidate[1].per_count_delta == {1: 0, 2: -1}
        assert by_candidate[1].final_delta == -1
        assert by_candidate[2].final_delta == 1
        # A was done at count 1; the later, quota-driven +1 is not attributed
        assert by_candidate[0].final_delta == 0

    def test_null_ballot_symmetry(self):
        base = tabulate(ORACLE, DEFAULT)
        augmented = tabulate(augment(ORACLE, [2, 0, 1], DEFAULT), DEFAULT)
        forward, _, _ = contributions(base, augmented)
        backward, _, _ = contributions(augmented, base)
        for fwd, bwd in zip(forward, backward):
            assert fwd.per_count_delta == {k: -v for k, v in bwd.per_count_delta.items()}

    def test_rules_mismatch_rejected(self):
        base = tabulate(ORACLE, DEFAULT)
        other = tabulate(ORACLE, BUILTIN_RULESETS["wig"])
        with pytest.raises(ValueError, match="different rules"):
            contributions(base, other)


class TestFixtures:
    def test_negative_contribution_fixture(self, negative_fixture):
        data = parse_canonical(json.dumps(negative_fixture["election"]))
        rules = BUILTIN_RULESETS[negative_fixture["rules"]]
        report = trace_journey(data, negative_fixture["hypothetical"], rules)
        by_candidate = {r.candidate: r.final_delta for r in report.contributions}
        expected = negative_fixture["negative_candidates"]
        assert expected, "fixture must name at least one harmed candidate"
        for entry in expected:
            delta = by_candidate[entry["candidate"]]
            assert delta == Fraction(entry["final_delta"]["num"], entry["final_delta"]["den"])
            assert delta < 0
        assert report.outcome_changed == negative_fixture["outcome_changed"]

    def test_divergent_journey_fixture(self, divergent_fixture):
        data = parse_canonical(json.dumps(divergent_fixture["election"]))
        rules = BUILTIN_RULESETS[divergent_fixture["rules"]]
        report = trace_journey(data, divergent_fixture["hypothetical"], rules)
        assert report.outcome_changed
        assert report.divergence_count == divergent_fixture["divergence_count"]
        assert report.baseline.winners == divergent_fixture["baseline_winners"]
        assert report.augmented.winners == divergent_fixture["augmented_winners"]
        # deltas stop at the divergence point
        for record in report.contributions:
            assert all(count < report.divergence_count for count in record.per_count_delta)


class TestReportSerialization:
    def test_wire_form(self, oracle_data):
        report = trace_journey(oracle_data, [2, 0, 1], DEFAULT)
        doc = report_to_dict(report, oracle_data)
        assert doc["legs"][0]["holder_name"] == "C"
        assert doc["legs"][0]["value"] == {"num": 1, "den": 1, "decimal": "1.000000", "display": "1"}
        assert doc["outcome_changed"] is False
        b_row = next(c for c in doc["contributions"] if c["candidate"] == 1)
        assert b_row["final_delta"]["display"] == "-1"
        # zero deltas are omitted from the sparse per-count map
        assert "1" not in b_row["per_count_delta"]
        assert b_row["per_count_delta"]["2"]["num"] == -1

    def test_exhausted_holder_name(self):
        data = election(3, 1, ((0,), 6), ((1,), 2), ((2, 0), 3))
        report = trace_journey(data, [1], DEFAULT)
        doc = report_to_dict(report, data)
        assert doc["legs"][-1]["holder_name"] == "exhausted"

    def test_single_candidate_report(self):
        data = election(1, 1, ((0,), 3))
        report = trace_journey(data, [0], DEFAULT)
        assert len(report.legs) == 1
        assert report.contributions[0].per_count_delta[1] == 1
        assert not report.outcome_changed
