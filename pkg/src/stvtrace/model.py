"""Election data model: candidates, groups, ballots, How-to-Vote cards.

Candidate ids are ballot-paper order (dense 0..C-1) and double as the final
deterministic tie-break key, so they are load-bearing, not incidental.
ElectionData is immutable after validation and safe to share between
concurrent tabulations.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .rules import RuleSet


class ElectionDataError(ValueError):
    """Invalid election data; message names the offending record."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class Candidate:
    id: int
    name: str
    group_id: int | None = None
    position_in_group: int | None = None


@dataclass(frozen=True)
class Group:
    id: int
    name: str
    candidate_ids: tuple[int, ...]


@dataclass(frozen=True)
class Ballot:
    preferences: tuple[int, ...]
    multiplicity: int = 1


@dataclass(frozen=True)
class HowToVoteCard:
    party: str
    preferences: tuple[int, ...]


@dataclass(frozen=True)
class AtlMarks:
    """Above-the-line marks: group id -> rank (1-based, contiguous)."""

    group_rankings: dict[int, int]


@dataclass(frozen=True)
class ElectionData:
    name: str
    vacancies: int
    candidates: tuple[Candidate, ...]
    groups: tuple[Group, ...] = ()
    ballots: tuple[Ballot, ...] = ()
    htv_cards: tuple[HowToVoteCard, ...] = ()
    year: int | None = None
    region: str | None = None

    @property
    def num_candidates(self) -> int:
        return len(self.candidates)

    @property
    def total_papers(self) -> int:
        return sum(b.multiplicity for b in self.ballots)

    def candidate_named(self, name: str) -> Candidate:
        for c in self.candidates:
            if c.name == name:
                return c
        raise ElectionDataError(f"no candidate named {name!r}")

    def htv_card(self, party: str) -> HowToVoteCard:
        for card in self.htv_cards:
            if card.party == party:
                return card
        raise ElectionDataError(f"no How-to-Vote card for {party!r}")

    def with_extra_ballot(self, preferences: tuple[int, ...]) -> "ElectionData":
        """Copy with one more paper appended (kept unaggregated, last index)."""
        extra = Ballot(preferences=tuple(preferences), multiplicity=1)
        return replace(self, ballots=self.ballots + (extra,))


def check_preferences(prefs: tuple[int, ...], num_candidates: int, location: str | None = None) -> None:
    """Structural validity: non-empty, in range, no duplicates."""
    if not prefs:
        raise ElectionDataError("empty preference list", location)
    seen = set()
    for cid in prefs:
        if not isinstance(cid, int) or isinstance(cid, bool) or not 0 <= cid < num_candidates:
            raise ElectionDataError(f"candidate id {cid!r} out of range 0..{num_candidates - 1}", location)
        if cid in seen:
            raise ElectionDataError(f"duplicate candidate {cid} in preference list", location)
        seen.add(cid)


def validate_election(data: ElectionData) -> ElectionData:
    """Check every structural invariant; returns the data unchanged on success."""
    c = data.num_candidates
    if c == 0:
        raise ElectionDataError("no candidates")
    if not (1 <= data.vacancies <= c):
        raise ElectionDataError(f"vacancies must be in 1..{c}, got {data.vacancies}")
    for i, cand in enumerate(data.candidates):
        loc = f"candidates[{i}]"
        if cand.id != i:
            raise ElectionDataError(f"candidate id {cand.id} out of order (expected {i})", loc)
        if not cand.name:
            raise ElectionDataError("empty candidate name", loc)
        if cand.group_id is not None:
            if not 0 <= cand.group_id < len(data.groups):
                raise ElectionDataError(f"group {cand.group_id} does not exist", loc)
            if cand.position_in_group is None:
                raise ElectionDataError("grouped candidate lacks position_in_group", loc)
    for g, group in enumerate(data.groups):
        loc = f"groups[{g}]"
        if group.id != g:
            raise ElectionDataError(f"group id {group.id} out of order (expected {g})", loc)
        if not group.candidate_ids:
            raise ElectionDataError("group has no candidates", loc)
        for cid in group.candidate_ids:
            if not (0 <= cid < c) or data.candidates[cid].group_id != g:
                raise ElectionDataError(f"candidate {cid} is not a member of this group", loc)
        positions = [data.candidates[cid].position_in_group for cid in group.candidate_ids]
        if positions != sorted(positions) or len(set(positions)) != len(positions):
            raise ElectionDataError("candidate positions within group not unique/ordered", loc)
    if not data.ballots:
        raise ElectionDataError("no ballots")
    for i, ballot in enumerate(data.ballots):
        loc = f"ballots[{i}]"
        check_preferences(ballot.preferences, c, loc)
        if ballot.multiplicity < 1:
            raise ElectionDataError(f"multiplicity must be >= 1, got {ballot.multiplicity}", loc)
    for i, card in enumerate(data.htv_cards):
        check_preferences(card.preferences, c, f"htv[{i}]")
    return data


def check_formality(prefs: tuple[int, ...] | list[int], rules: RuleSet) -> bool:
    """A ballot is formal iff it ranks at least rules.min_preferences candidates."""
    return len(prefs) >= rules.min_preferences


def expand_atl(marks: AtlMarks, data: ElectionData) -> list[int]:
    """Expand above-the-line group rankings to a candidate preference list.

    Ranked groups contribute their candidates in within-group order, groups
    taken in rank order; unranked groups contribute nothing.
    """
    if not marks.group_rankings:
        raise ElectionDataError("no groups ranked")
    for gid in marks.group_rankings:
        if not 0 <= gid < len(data.groups):
            raise ElectionDataError(f"unknown group id {gid}")
    ranks = sorted(marks.group_rankings.values())
    if ranks != list(range(1, len(ranks) + 1)):
        raise ElectionDataError(f"group ranks must be 1..{len(ranks)} with no gaps or repeats, got {ranks}")
    ordered = sorted(marks.group_rankings.items(), key=lambda item: item[1])
    prefs: list[int] = []
    for gid, _rank in ordered:
        prefs.extend(data.groups[gid].candidate_ids)
    return prefs


def apply_htv(card: HowToVoteCard) -> Ballot:
    """A single paper filled out exactly as the card recommends."""
    return Ballot(preferences=card.preferences, multiplicity=1)


def aggregate_ballots(ballots: list[Ballot]) -> tuple[Ballot, ...]:
    """Merge identical preference lists, summing multiplicity (order of first appearance)."""
    totals: dict[tuple[int, ...], int] = {}
    for b in ballots:
        totals[b.preferences] = totals.get(b.preferences, 0) + b.multiplicity
    return tuple(Ballot(preferences=prefs, multiplicity=n) for prefs, n in totals.items())
