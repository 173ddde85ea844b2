"""Deterministic STV count producing a full per-count transcript.

The count is a strict loop: distribute first preferences, then repeat
{elect everyone at or over quota, check termination, distribute the oldest
queued surplus, otherwise exclude the lowest candidate}. Exactly one action
per count. All arithmetic is exact rational; a RuleSet selects the surplus
re-weighting method and optional truncation of tallies to whole votes.

Two runs over identical inputs serialize byte-identically, and splitting a
multiplicity-n ballot into n separate papers changes nothing: those are
load-bearing guarantees, not accidents, so keep iteration orders explicit.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .fmt import fraction_json
from .model import ElectionData, check_formality, validate_election
from .rules import Rounding, RuleSet, SurplusMethod

EXHAUSTED = -1  # pseudo-holder for papers with no continuing preference

ZERO = Fraction(0)
ONE = Fraction(1)


class MalformedElectionError(ValueError):
    pass


class ActionKind(enum.Enum):
    FIRST_PREFERENCES = "first_preferences"
    SURPLUS = "surplus"
    EXCLUSION = "exclusion"
    DECLARATION = "declaration"


@dataclass(frozen=True)
class CountAction:
    kind: ActionKind
    candidate: int | None = None
    transfer_value: Fraction | None = None


@dataclass
class CountRecord:
    """State after one count: tallies for every candidate (excluded ones at
    zero), running exhausted and rounding-loss totals, and what changed."""

    index: int
    action: CountAction
    tallies: dict[int, Fraction]
    exhausted: Fraction
    rounding_loss: Fraction
    newly_elected: list[int] = field(default_factory=list)
    newly_excluded: list[int] = field(default_factory=list)
    tie_events: list[str] = field(default_factory=list)


@dataclass
class Transcript:
    election_name: str
    rules_name: str
    vacancies: int
    total_formal_papers: int
    informal_papers: int
    quota: Fraction
    counts: list[CountRecord]
    elected: list[tuple[int, int]]  # (candidate id, count index), election order

    @property
    def winners(self) -> list[int]:
        return [cand for cand, _ in self.elected]

    @property
    def exhausted_final(self) -> Fraction:
        return self.counts[-1].exhausted if self.counts else ZERO


@dataclass
class PaperEvent:
    """Arrival of the tracked paper somewhere: at its first preference on
    count 1, then at each later holder (or EXHAUSTED) when it transfers."""

    count: int
    holder: int
    value: Fraction


class Termination(enum.Enum):
    CONTINUE = "continue"
    ALL_VACANCIES_FILLED = "all_vacancies_filled"
    DECLARE_REMAINING = "declare_remaining"


def compute_quota(total_formal_votes: int, vacancies: int) -> Fraction:
    """Droop quota: smallest whole-vote threshold that at most `vacancies`
    candidates can reach simultaneously."""
    if total_formal_votes < 1:
        raise MalformedElectionError("no formal votes")
    if vacancies < 1:
        raise MalformedElectionError("vacancies must be >= 1")
    return Fraction(total_formal_votes // (vacancies + 1) + 1)


def break_tie(
    tied: set[int],
    history: list[CountRecord],
    select: str = "lowest",
) -> tuple[int, str]:
    """Resolve a tally tie deterministically by countback.

    Walk prior counts newest-first; whenever the still-tied candidates'
    tallies differ, keep only those with the lowest ("lowest", exclusion
    ties) or highest ("highest", election-order ties) tally there. If the
    whole history never separates them, the lowest candidate id is chosen.
    Returns the candidate and a description for the tie_events log.
    """
    if select not in ("lowest", "highest"):
        raise ValueError("select must be 'lowest' or 'highest'")
    remaining = sorted(tied)
    if len(remaining) < 2:
        raise ValueError("break_tie needs at least two candidates")
    label = "{" + ", ".join(str(c) for c in remaining) + "}"
    pick = min if select == "lowest" else max
    for record in reversed(history):
        tallies = {c: record.tallies[c] for c in remaining}
        if len(set(tallies.values())) > 1:
            target = pick(tallies.values())
            remaining = [c for c in remaining if tallies[c] == target]
            if len(remaining) == 1:
                reason = f"countback at count {record.index}"
                return remaining[0], f"tie {label} ({select} selected): {reason} -> candidate {remaining[0]}"
    winner = min(remaining)
    return winner, f"tie {label} ({select} selected): identical history, lowest id -> candidate {winner}"


@dataclass
class _Pile:
    """Papers currently held by one candidate. A paper is (preferences,
    multiplicity, value, tracked); multiplicity-aggregated papers always
    travel together because identical ballots follow identical paths."""

    papers: list[tuple[tuple[int, ...], int, Fraction, bool]] = field(default_factory=list)

    def paper_count(self) -> int:
        return sum(mult for _, mult, _, _ in self.papers)

    def value_sum(self) -> Fraction:
        return sum((value * mult for _, mult, value, _ in self.papers), ZERO)


class _Count:
    """Mutable state of one tabulation run."""

    def __init__(self, data: ElectionData, rules: RuleSet, track_ballot: int | None):
        validate_election(data)
        if data.vacancies > data.num_candidates:
            raise MalformedElectionError("fewer candidates than vacancies")
        self.data = data
        self.rules = rules
        self.track_ballot = track_ballot
        self.num_candidates = data.num_candidates

        self.formal = [b for b in data.ballots if check_formality(b.preferences, rules)]
        self.informal_papers = data.total_papers - sum(b.multiplicity for b in self.formal)
        self.total_formal = sum(b.multiplicity for b in self.formal)
        if self.total_formal < 1:
            raise MalformedElectionError("no formal ballots")
        self.quota = compute_quota(self.total_formal, data.vacancies)

        self.tallies: dict[int, Fraction] = {c: ZERO for c in range(self.num_candidates)}
        self.piles: dict[int, _Pile] = {c: _Pile() for c in range(self.num_candidates)}
        self.elected: list[tuple[int, int]] = []
        self.elected_set: set[int] = set()
        self.excluded: set[int] = set()
        self.surplus_queue: deque[int] = deque()
        self.exhausted_total = ZERO
        self.rounding_total = ZERO
        self.counts: list[CountRecord] = []
        self.events: list[PaperEvent] = []

    # -- helpers ---------------------------------------------------------

    def continuing(self) -> list[int]:
        return [
            c
            for c in range(self.num_candidates)
            if c not in self.elected_set and c not in self.excluded
        ]

    def next_continuing(self, prefs: tuple[int, ...], start: int) -> int | None:
        """First preference at or after `start` that is still continuing."""
        for cid in prefs[start:]:
            if cid not in self.elected_set and cid not in self.excluded:
                return cid
        return None

    def snapshot(self, action: CountAction) -> CountRecord:
        return CountRecord(
            index=len(self.counts) + 1,
            action=action,
            tallies=dict(self.tallies),
            exhausted=self.exhausted_total,
            rounding_loss=self.rounding_total,
        )

    # -- count actions ---------------------------------------------------

    def first_preferences(self) -> CountRecord:
        for idx, ballot in enumerate(self.data.ballots):
            if not check_formality(ballot.preferences, self.rules):
                continue
            first = ballot.preferences[0]
            tracked = self.track_ballot == idx
            self.piles[first].papers.append((ballot.preferences, ballot.multiplicity, ONE, tracked))
            self.tallies[first] += ballot.multiplicity
            if tracked:
                self.events.append(PaperEvent(count=1, holder=first, value=ONE))
        return self.snapshot(CountAction(kind=ActionKind.FIRST_PREFERENCES))

    def transfer_papers(
        self,
        papers: list[tuple[tuple[int, ...], int, Fraction, bool]],
        value_of,
        outflow: Fraction,
    ) -> None:
        """Move papers to their next continuing preference at value_of(paper).

        Per-candidate increments are truncated to whole votes when the rules
        say so; conservation stays exact because outflow - applied - exhausted
        is booked into the rounding-loss running total.
        """
        increments: dict[int, Fraction] = {}
        exhausted_inc = ZERO
        count_index = len(self.counts) + 1
        for prefs, mult, value, tracked in papers:
            new_value = value_of(value)
            target = self.next_continuing(prefs, 0)
            if target is None:
                exhausted_inc += new_value * mult
                if tracked:
                    self.events.append(PaperEvent(count=count_index, holder=EXHAUSTED, value=new_value))
            else:
                self.piles[target].papers.append((prefs, mult, new_value, tracked))
                increments[target] = increments.get(target, ZERO) + new_value * mult
                if tracked:
                    self.events.append(PaperEvent(count=count_index, holder=target, value=new_value))
        applied_total = ZERO
        for target in sorted(increments):
            inc = increments[target]
            if self.rules.rounding is Rounding.TRUNCATE_TALLIES_TO_INTEGER:
                inc = Fraction(int(inc))  # truncate toward zero; increments are >= 0
            self.tallies[target] += inc
            applied_total += inc
        self.exhausted_total += exhausted_inc
        self.rounding_total += outflow - applied_total - exhausted_inc

    def distribute_surplus(self, candidate: int) -> CountRecord:
        surplus = self.tallies[candidate] - self.quota
        if surplus <= 0:
            raise MalformedElectionError(f"candidate {candidate} has no surplus")
        pile = self.piles[candidate]
        self.piles[candidate] = _Pile()
        if self.rules.surplus_method is SurplusMethod.UNWEIGHTED_INCLUSIVE_GREGORY:
            tv = surplus / pile.paper_count()
            value_of = lambda _value: tv
        else:
            tv = surplus / pile.value_sum()
            value_of = lambda value: min(tv * value, value)
        self.tallies[candidate] = self.quota
        self.transfer_papers(pile.papers, value_of, outflow=surplus)
        return self.snapshot(
            CountAction(kind=ActionKind.SURPLUS, candidate=candidate, transfer_value=tv)
        )

    def exclude_lowest(self) -> CountRecord:
        continuing = self.continuing()
        lowest = min(self.tallies[c] for c in continuing)
        tied = {c for c in continuing if self.tallies[c] == lowest}
        tie_events = []
        if len(tied) > 1:
            candidate, event = break_tie(tied, self.counts, select="lowest")
            tie_events.append(f"exclusion {event}")
        else:
            (candidate,) = tied
        self.excluded.add(candidate)
        pile = self.piles[candidate]
        self.piles[candidate] = _Pile()
        outflow = self.tallies[candidate]
        self.tallies[candidate] = ZERO
        self.transfer_papers(pile.papers, lambda value: value, outflow=outflow)
        record = self.snapshot(CountAction(kind=ActionKind.EXCLUSION, candidate=candidate))
        record.newly_excluded.append(candidate)
        record.tie_events.extend(tie_events)
        return record

    def elect_meeting_quota(self, record: CountRecord) -> None:
        """Mark every continuing candidate at or over quota elected, in
        descending-tally order (ties by countback), queueing surpluses."""
        reached = [c for c in self.continuing() if self.tallies[c] >= self.quota]
        order: list[int] = []
        by_tally: dict[Fraction, list[int]] = {}
        for c in reached:
            by_tally.setdefault(self.tallies[c], []).append(c)
        for tally in sorted(by_tally, reverse=True):
            bucket = by_tally[tally]
            while len(bucket) > 1:
                winner, event = break_tie(set(bucket), self.counts, select="highest")
                record.tie_events.append(f"election order {event}")
                order.append(winner)
                bucket.remove(winner)
            order.append(bucket[0])
        for c in order:
            self.elected_set.add(c)
            self.elected.append((c, record.index))
            record.newly_elected.append(c)
            if self.tallies[c] > self.quota:
                self.surplus_queue.append(c)
        assert len(self.elected) <= self.data.vacancies, "quota arithmetic violated"

    def check_termination(self) -> Termination:
        remaining = self.data.vacancies - len(self.elected)
        if remaining == 0:
            return Termination.ALL_VACANCIES_FILLED
        continuing = self.continuing()
        if len(continuing) < remaining:
            raise MalformedElectionError("fewer continuing candidates than unfilled vacancies")
        if len(continuing) == remaining:
            return Termination.DECLARE_REMAINING
        return Termination.CONTINUE

    def declare_remaining(self) -> CountRecord:
        record = self.snapshot(CountAction(kind=ActionKind.DECLARATION))
        by_tally: dict[Fraction, list[int]] = {}
        for c in self.continuing():
            by_tally.setdefault(self.tallies[c], []).append(c)
        for tally in sorted(by_tally, reverse=True):
            bucket = by_tally[tally]
            while len(bucket) > 1:
                winner, event = break_tie(set(bucket), self.counts, select="highest")
                record.tie_events.append(f"declaration order {event}")
                self.elected_set.add(winner)
                self.elected.append((winner, record.index))
                record.newly_elected.append(winner)
                bucket.remove(winner)
            c = bucket[0]
            self.elected_set.add(c)
            self.elected.append((c, record.index))
            record.newly_elected.append(c)
        return record

    # -- main loop -------------------------------------------------------

    def run(self) -> Transcript:
        record = self.first_preferences()
        self.elect_meeting_quota(record)
        self.counts.append(record)
        while True:
            status = self.check_termination()
            if status is Termination.ALL_VACANCIES_FILLED:
                break
            if status is Termination.DECLARE_REMAINING:
                self.counts.append(self.declare_remaining())
                break
            if self.surplus_queue:
                record = self.distribute_surplus(self.surplus_queue.popleft())
            else:
                record = self.exclude_lowest()
            self.elect_meeting_quota(record)
            self.counts.append(record)
        return Transcript(
            election_name=self.data.name,
            rules_name=self.rules.name,
            vacancies=self.data.vacancies,
            total_formal_papers=self.total_formal,
            informal_papers=self.informal_papers,
            quota=self.quota,
            counts=self.counts,
            elected=self.elected,
        )


def tabulate(data: ElectionData, rules: RuleSet) -> Transcript:
    """Run the full count and return its transcript."""
    return _Count(data, rules, track_ballot=None).run()


def tabulate_tracked(
    data: ElectionData, rules: RuleSet, ballot_index: int
) -> tuple[Transcript, list[PaperEvent]]:
    """Run the count while recording every move of one ballot's paper.

    The tracked ballot must be a distinct entry in data.ballots (the journey
    tracer appends the hypothetical paper unaggregated, at the last index).
    """
    if not 0 <= ballot_index < len(data.ballots):
        raise IndexError(f"ballot index {ballot_index} out of range")
    count = _Count(data, rules, track_ballot=ballot_index)
    transcript = count.run()
    return transcript, count.events


# -- serialization -------------------------------------------------------


def transcript_to_dict(transcript: Transcript, names: list[str] | None = None) -> dict:
    counts = []
    for record in transcript.counts:
        action: dict = {"kind": record.action.kind.value}
        if record.action.candidate is not None:
            action["candidate"] = record.action.candidate
        if record.action.transfer_value is not None:
            action["transfer_value"] = fraction_json(record.action.transfer_value)
        counts.append(
            {
                "index": record.index,
                "action": action,
                "tallies": {
                    str(c): fraction_json(record.tallies[c]) for c in sorted(record.tallies)
                },
                "exhausted": fraction_json(record.exhausted),
                "rounding_loss": fraction_json(record.rounding_loss),
                "newly_elected": list(record.newly_elected),
                "newly_excluded": list(record.newly_excluded),
                "tie_events": list(record.tie_events),
            }
        )
    elected = []
    for cand, at_count in transcript.elected:
        entry = {"candidate": cand, "count": at_count}
        if names is not None:
            entry["name"] = names[cand]
        elected.append(entry)
    return {
        "name": transcript.election_name,
        "rules": transcript.rules_name,
        "vacancies": transcript.vacancies,
        "total_formal_papers": transcript.total_formal_papers,
        "informal_papers": transcript.informal_papers,
        "quota": fraction_json(transcript.quota),
        "counts": counts,
        "elected": elected,
        "exhausted_final": fraction_json(transcript.exhausted_final),
    }


def serialize_transcript(transcript: Transcript, names: list[str] | None = None) -> bytes:
    doc = transcript_to_dict(transcript, names=names)
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
