"""Convert external rank-matrix preference files to the canonical format.

Input CSV: a header row of candidate names, then one row per paper whose
cells hold the rank written against each candidate (blank = no mark). The
candidate manifest carries everything the CSV cannot: election name,
vacancies, group structure, How-to-Vote cards. Layout details in
docs/ingest.md.

No savings provisions: a paper whose marks are not exactly 1..k once for
each rank is informal and dropped (counted in the report), matching the
no-repair stance of the engine.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .canonical import parse_canonical
from .model import ElectionDataError, check_formality
from .rules import RuleSet


@dataclass
class IngestReport:
    rows: int = 0
    formal: int = 0
    informal: int = 0
    skipped: int = 0
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "formal": self.formal,
            "informal": self.informal,
            "skipped": self.skipped,
            "warnings": list(self.warnings),
        }


def row_to_preferences(cells: list[str]) -> list[int] | None:
    """Rank marks -> candidate ids in rank order; None if structurally informal.

    Marks must be exactly 1..k, each used once. Unparseable cells raise
    ValueError so callers can distinguish bad data from informal votes.
    """
    marks: dict[int, int] = {}
    for candidate, cell in enumerate(cells):
        text = cell.strip()
        if not text:
            continue
        rank = int(text)  # ValueError propagates: unparseable cell
        if rank in marks:
            return None  # duplicate rank
        marks[rank] = candidate
    if not marks:
        return None
    if sorted(marks) != list(range(1, len(marks) + 1)):
        return None  # gapped or non-positive ranks
    return [marks[rank] for rank in range(1, len(marks) + 1)]


def ingest_external(
    preference_csv: bytes | str,
    manifest: bytes | str,
    rules: RuleSet,
) -> tuple[bytes, IngestReport]:
    """Build a canonical election file from a rank-matrix CSV plus manifest.

    Returns the canonical file bytes and a conversion report. Informal rows
    are dropped and counted; unparseable rows are skipped with a warning.
    """
    try:
        doc = json.loads(manifest)
    except json.JSONDecodeError as exc:
        raise ElectionDataError(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ElectionDataError("manifest top level must be an object")
    if "ballots" in doc:
        raise ElectionDataError("manifest must not contain ballots; they come from the CSV")

    expected = [c.get("name") for c in doc.get("candidates", [])]
    if not expected:
        raise ElectionDataError("manifest has no candidates")

    text = preference_csv.decode("utf-8") if isinstance(preference_csv, bytes) else preference_csv
    reader = csv.reader(io.StringIO(text))
    try:
        header = [cell.strip() for cell in next(reader)]
    except StopIteration:
        raise ElectionDataError("preference file is empty") from None
    if header != expected:
        raise ElectionDataError(
            f"CSV header does not match manifest candidates "
            f"(got {len(header)} columns, manifest has {len(expected)})"
        )

    report = IngestReport()
    ballots: list[dict] = []
    totals: dict[tuple[int, ...], int] = {}
    for line, cells in enumerate(reader, start=2):
        if not cells or all(not cell.strip() for cell in cells):
            continue
        report.rows += 1
        if len(cells) != len(expected):
            report.skipped += 1
            report.warnings.append(f"line {line}: expected {len(expected)} cells, got {len(cells)}")
            continue
        try:
            prefs = row_to_preferences(cells)
        except ValueError:
            report.skipped += 1
            report.warnings.append(f"line {line}: unparseable rank cell")
            continue
        if prefs is None or not check_formality(prefs, rules):
            report.informal += 1
            continue
        report.formal += 1
        totals[tuple(prefs)] = totals.get(tuple(prefs), 0) + 1

    for prefs, n in totals.items():
        ballots.append({"prefs": list(prefs), "n": n})
    if not ballots:
        raise ElectionDataError("no formal ballots in preference file")

    canonical = dict(doc)
    canonical["ballots"] = ballots
    blob = (json.dumps(canonical, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    parse_canonical(blob)  # round-trip validation with real record locations
    return blob, report
