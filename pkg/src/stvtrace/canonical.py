"""Canonical election file: a single self-contained JSON document.

The engine never parses jurisdiction-specific exports directly; converters
(see ingest) produce this format. Schema reference lives in docs/format.md.
"""

from __future__ import annotations

import json

from .model import (
    AtlMarks,
    Ballot,
    Candidate,
    ElectionData,
    ElectionDataError,
    Group,
    HowToVoteCard,
    aggregate_ballots,
    validate_election,
)


def parse_canonical(raw: bytes | str) -> ElectionData:
    """Parse and validate a canonical election file.

    Identical ballots are aggregated by multiplicity; the paper total is
    preserved. Raises ElectionDataError naming the offending record.
    """
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ElectionDataError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ElectionDataError("top level must be an object")

    name = _expect(doc, "name", str)
    vacancies = _expect(doc, "vacancies", int)
    cand_records = _expect(doc, "candidates", list)
    group_records = doc.get("groups", [])
    ballot_records = _expect(doc, "ballots", list)
    htv_records = doc.get("htv", [])
    year = doc.get("year")
    region = doc.get("region")
    if year is not None and not isinstance(year, int):
        raise ElectionDataError("year must be an integer", "year")
    if region is not None and not isinstance(region, str):
        raise ElectionDataError("region must be a string", "region")

    if not isinstance(group_records, list):
        raise ElectionDataError("groups must be an array", "groups")
    group_names = []
    for g, rec in enumerate(group_records):
        if not isinstance(rec, dict) or not isinstance(rec.get("name"), str):
            raise ElectionDataError("group record needs a 'name'", f"groups[{g}]")
        group_names.append(rec["name"])

    candidates: list[Candidate] = []
    members: dict[int, list[int]] = {g: [] for g in range(len(group_names))}
    for i, rec in enumerate(cand_records):
        loc = f"candidates[{i}]"
        if not isinstance(rec, dict) or not isinstance(rec.get("name"), str):
            raise ElectionDataError("candidate record needs a 'name'", loc)
        gid = rec.get("group")
        position = None
        if gid is not None:
            if not isinstance(gid, int) or not 0 <= gid < len(group_names):
                raise ElectionDataError(f"group {gid!r} does not exist", loc)
            position = len(members[gid])
            members[gid].append(i)
        candidates.append(Candidate(id=i, name=rec["name"], group_id=gid, position_in_group=position))

    groups = tuple(
        Group(id=g, name=group_names[g], candidate_ids=tuple(members[g]))
        for g in range(len(group_names))
    )

    ballots: list[Ballot] = []
    for i, rec in enumerate(ballot_records):
        loc = f"ballots[{i}]"
        if not isinstance(rec, dict):
            raise ElectionDataError("ballot record must be an object", loc)
        prefs = rec.get("prefs")
        if not isinstance(prefs, list):
            raise ElectionDataError("ballot record needs a 'prefs' array", loc)
        n = rec.get("n", 1)
        if not isinstance(n, int) or n < 1:
            raise ElectionDataError(f"multiplicity must be a positive integer, got {n!r}", loc)
        ballots.append(Ballot(preferences=tuple(prefs), multiplicity=n))

    cards: list[HowToVoteCard] = []
    for i, rec in enumerate(htv_records):
        loc = f"htv[{i}]"
        if not isinstance(rec, dict) or not isinstance(rec.get("party"), str):
            raise ElectionDataError("htv record needs a 'party'", loc)
        prefs = rec.get("prefs")
        if not isinstance(prefs, list):
            raise ElectionDataError("htv record needs a 'prefs' array", loc)
        cards.append(HowToVoteCard(party=rec["party"], preferences=tuple(prefs)))

    data = ElectionData(
        name=name,
        vacancies=vacancies,
        candidates=tuple(candidates),
        groups=groups,
        ballots=tuple(ballots),
        htv_cards=tuple(cards),
        year=year,
        region=region,
    )
    # validate BEFORE aggregation so error locations match the input file
    validate_election(data)
    return ElectionData(
        name=data.name,
        vacancies=data.vacancies,
        candidates=data.candidates,
        groups=data.groups,
        ballots=aggregate_ballots(list(data.ballots)),
        htv_cards=data.htv_cards,
        year=data.year,
        region=data.region,
    )


def election_to_dict(data: ElectionData) -> dict:
    doc: dict = {"name": data.name, "vacancies": data.vacancies}
    if data.year is not None:
        doc["year"] = data.year
    if data.region is not None:
        doc["region"] = data.region
    doc["candidates"] = [
        {"name": c.name} if c.group_id is None else {"name": c.name, "group": c.group_id}
        for c in data.candidates
    ]
    doc["groups"] = [{"name": g.name} for g in data.groups]
    doc["ballots"] = [{"prefs": list(b.preferences), "n": b.multiplicity} for b in data.ballots]
    doc["htv"] = [{"party": h.party, "prefs": list(h.preferences)} for h in data.htv_cards]
    return doc


def serialize_canonical(data: ElectionData) -> bytes:
    return (json.dumps(election_to_dict(data), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def parse_atl_marks(doc: dict) -> AtlMarks:
    """Wire form of above-the-line marks: {"group id": rank, ...}."""
    rankings: dict[int, int] = {}
    for key, rank in doc.items():
        try:
            gid = int(key)
        except (TypeError, ValueError):
            raise ElectionDataError(f"group id {key!r} is not an integer") from None
        if not isinstance(rank, int):
            raise ElectionDataError(f"rank for group {gid} must be an integer")
        rankings[gid] = rank
    return AtlMarks(group_rankings=rankings)


def _expect(doc: dict, key: str, kind: type):
    value = doc.get(key)
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ElectionDataError(f"expected {kind.__name__}", key)
    return value
