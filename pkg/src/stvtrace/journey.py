"""Counterfactual journey of a hypothetical ballot through a count.

The hypothetical paper is appended to the election and participates fully in
a fresh tabulation (it raises the formal-vote total, so the quota and every
transfer value may shift). A candidate's contribution is defined
counterfactually: augmented tally minus baseline tally per aligned count.
"Value held" is non-negative by construction, so only this counterfactual
definition can surface the real phenomenon that an extra ballot may lower
somebody's tally.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction

from .engine import (
    EXHAUSTED,
    ActionKind,
    PaperEvent,
    Transcript,
    tabulate,
    tabulate_tracked,
)
from .fmt import fraction_json, fraction_sigfig
from .model import ElectionData, check_formality, check_preferences
from .rules import RuleSet


class InformalBallotError(ValueError):
    pass


class EndReason(enum.Enum):
    HOLDER_ELECTED = "holder_elected"
    HOLDER_EXCLUDED = "holder_excluded"
    COUNT_ENDED = "count_ended"
    BALLOT_EXHAUSTED = "ballot_exhausted"


@dataclass(frozen=True)
class JourneyLeg:
    """One stretch of the ballot's path: who held it and at what value.

    from_count is the count whose action delivered the paper (count 1 for
    the first leg); to_count is the count whose action moved it on, or the
    final count. Adjacent legs therefore share their boundary count, the way
    a transfer happens within a single count.
    """

    holder: int  # candidate id, or EXHAUSTED
    value: Fraction
    from_count: int
    to_count: int
    end_reason: EndReason


@dataclass
class ContributionRecord:
    candidate: int
    per_count_delta: dict[int, Fraction]
    final_delta: Fraction


@dataclass
class JourneyReport:
    legs: list[JourneyLeg]
    contributions: list[ContributionRecord]
    outcome_changed: bool
    divergence_count: int | None
    baseline: Transcript
    augmented: Transcript


def augment(data: ElectionData, preferences: list[int] | tuple[int, ...], rules: RuleSet) -> ElectionData:
    """Append the hypothetical paper (multiplicity 1, unaggregated, last index)."""
    prefs = tuple(preferences)
    check_preferences(prefs, data.num_candidates, "hypothetical ballot")
    if not check_formality(prefs, rules):
        raise InformalBallotError(
            f"below minimum preferences (ranked {len(prefs)}, need {rules.min_preferences})"
        )
    return data.with_extra_ballot(prefs)


def trace_legs(transcript: Transcript, events: list[PaperEvent]) -> list[JourneyLeg]:
    """Fold the tracked paper's arrival events into journey legs."""
    if not events:
        raise ValueError("tracked ballot produced no events")
    last_count = transcript.counts[-1].index
    legs: list[JourneyLeg] = []
    for i, event in enumerate(events):
        if i + 1 < len(events):
            departure = events[i + 1].count
            action = transcript.counts[departure - 1].action
            reason = (
                EndReason.HOLDER_ELECTED
                if action.kind is ActionKind.SURPLUS
                else EndReason.HOLDER_EXCLUDED
            )
            to_count = departure
        else:
            reason = EndReason.BALLOT_EXHAUSTED if event.holder == EXHAUSTED else EndReason.COUNT_ENDED
            to_count = last_count
        legs.append(
            JourneyLeg(
                holder=event.holder,
                value=event.value,
                from_count=event.count,
                to_count=to_count,
                end_reason=reason,
            )
        )
    return legs


def contributions(
    baseline: Transcript, augmented: Transcript
) -> tuple[list[ContributionRecord], bool, int | None]:
    """Per-candidate tally deltas (augmented - baseline) over the aligned prefix.

    Counts align while action kinds and acting candidates match. A
    candidate's final delta is taken at the last aligned count at which they
    were still continuing or newly elected (in the augmented run); afterwards
    their tally is pinned at quota or zero and the comparison means nothing.
    """
    if baseline.rules_name != augmented.rules_name:
        raise ValueError("baseline and augmented transcripts use different rules")

    aligned = 0
    for base_rec, aug_rec in zip(baseline.counts, augmented.counts):
        if (
            base_rec.action.kind is not aug_rec.action.kind
            or base_rec.action.candidate != aug_rec.action.candidate
        ):
            break
        aligned += 1

    fully_aligned = aligned == len(baseline.counts) == len(augmented.counts)
    divergence_count = None if fully_aligned else aligned + 1
    outcome_changed = not fully_aligned or set(baseline.winners) != set(augmented.winners)

    # status per candidate per aligned count, from the augmented run
    gone: set[int] = set()
    records: list[ContributionRecord] = []
    candidates = sorted(augmented.counts[0].tallies)
    relevant_until = {c: 0 for c in candidates}
    for aug_rec in augmented.counts[:aligned]:
        for c in candidates:
            if c not in gone or c in aug_rec.newly_elected:
                relevant_until[c] = aug_rec.index
        gone.update(aug_rec.newly_elected)
        gone.update(aug_rec.newly_excluded)

    for c in candidates:
        deltas: dict[int, Fraction] = {}
        for base_rec, aug_rec in zip(baseline.counts[:aligned], augmented.counts[:aligned]):
            deltas[aug_rec.index] = aug_rec.tallies[c] - base_rec.tallies[c]
        final = deltas.get(relevant_until[c], Fraction(0))
        records.append(ContributionRecord(candidate=c, per_count_delta=deltas, final_delta=final))
    return records, outcome_changed, divergence_count


def trace_journey(
    data: ElectionData,
    preferences: list[int] | tuple[int, ...],
    rules: RuleSet,
    baseline: Transcript | None = None,
) -> JourneyReport:
    """Full what-if for one hypothetical ballot.

    A precomputed baseline transcript (same data, same rules) may be passed
    in; callers serving many traces of one election cache it.
    """
    augmented_data = augment(data, preferences, rules)
    if baseline is None:
        baseline = tabulate(data, rules)
    augmented, events = tabulate_tracked(augmented_data, rules, len(augmented_data.ballots) - 1)
    legs = trace_legs(augmented, events)
    contribs, outcome_changed, divergence_count = contributions(baseline, augmented)
    return JourneyReport(
        legs=legs,
        contributions=contribs,
        outcome_changed=outcome_changed,
        divergence_count=divergence_count,
        baseline=baseline,
        augmented=augmented,
    )


# -- serialization -------------------------------------------------------


def report_to_dict(report: JourneyReport, data: ElectionData) -> dict:
    """Wire form of a journey report; holders appear by name, values carry
    num/den plus a 4-significant-figure decimal. Zero per-count deltas are
    omitted (absent aligned count means zero)."""

    def holder_name(holder: int) -> str:
        return "exhausted" if holder == EXHAUSTED else data.candidates[holder].name

    legs = [
        {
            "holder": leg.holder,
            "holder_name": holder_name(leg.holder),
            "value": fraction_json(leg.value) | {"display": fraction_sigfig(leg.value)},
            "from_count": leg.from_count,
            "to_count": leg.to_count,
            "end_reason": leg.end_reason.value,
        }
        for leg in report.legs
    ]
    contribs = []
    for rec in report.contributions:
        contribs.append(
            {
                "candidate": rec.candidate,
                "name": data.candidates[rec.candidate].name,
                "per_count_delta": {
                    str(count): fraction_json(delta) | {"display": fraction_sigfig(delta)}
                    for count, delta in sorted(rec.per_count_delta.items())
                    if delta != 0
                },
                "final_delta": fraction_json(rec.final_delta)
                | {"display": fraction_sigfig(rec.final_delta)},
            }
        )
    return {
        "election": data.name,
        "rules": report.augmented.rules_name,
        "legs": legs,
        "contributions": contribs,
        "outcome_changed": report.outcome_changed,
        "divergence_count": report.divergence_count,
        "baseline_quota": fraction_json(report.baseline.quota),
        "augmented_quota": fraction_json(report.augmented.quota),
    }


def serialize_report(report: JourneyReport, data: ElectionData) -> bytes:
    doc = report_to_dict(report, data)
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
