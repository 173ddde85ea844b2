"""File-backed election store: a directory of canonical election files.

The election id is the file stem. The index is rebuilt deterministically
from a sorted directory scan; parsed elections and baseline transcripts are
cached immutably (written once per key), so concurrent readers never see
partial state.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

from .canonical import parse_canonical
from .engine import Transcript, tabulate
from .model import ElectionData, ElectionDataError
from .rules import RuleSet


@dataclass(frozen=True)
class ElectionMeta:
    id: str
    path: Path
    name: str
    year: int | None
    region: str | None
    vacancies: int
    candidates: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "year": self.year,
            "region": self.region,
            "vacancies": self.vacancies,
            "candidates": self.candidates,
        }


class UnknownElectionError(KeyError):
    pass


class ElectionStore:
    def __init__(self, root: Path | str):
        self.root = Path(root)
        if not self.root.is_dir():
            raise ElectionDataError(f"store root {self.root} is not a directory")
        self._lock = threading.Lock()
        self._elections: dict[str, ElectionData] = {}
        self._baselines: dict[tuple[str, str], Transcript] = {}
        self.index: dict[str, ElectionMeta] = {}
        for path in sorted(self.root.glob("*.json")):
            try:
                data = parse_canonical(path.read_bytes())
            except ElectionDataError as exc:
                raise ElectionDataError(f"{path.name}: {exc}") from None
            self.index[path.stem] = ElectionMeta(
                id=path.stem,
                path=path,
                name=data.name,
                year=data.year,
                region=data.region,
                vacancies=data.vacancies,
                candidates=data.num_candidates,
            )

    def ids(self) -> list[str]:
        return list(self.index)

    def metadata(self) -> list[dict]:
        return [meta.to_dict() for meta in self.index.values()]

    def election(self, election_id: str) -> ElectionData:
        try:
            meta = self.index[election_id]
        except KeyError:
            raise UnknownElectionError(f"no election {election_id!r}") from None
        with self._lock:
            cached = self._elections.get(election_id)
        if cached is not None:
            return cached
        data = parse_canonical(meta.path.read_bytes())
        with self._lock:
            return self._elections.setdefault(election_id, data)

    def baseline(self, election_id: str, rules: RuleSet) -> Transcript:
        """Baseline transcript, computed once per (election, rules)."""
        key = (election_id, rules.name)
        with self._lock:
            cached = self._baselines.get(key)
        if cached is not None:
            return cached
        transcript = tabulate(self.election(election_id), rules)
        with self._lock:
            return self._baselines.setdefault(key, transcript)
