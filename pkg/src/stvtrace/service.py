"""HTTP API over an election store, plus static hosting for the ballot UI.

GET  /api/elections            -> metadata for every stored election
GET  /api/elections/{id}       -> candidates, groups, HTV cards, rules info
POST /api/elections/{id}/trace -> JourneyReport for a hypothetical ballot

Serving is read-only. Baseline transcripts are cached per (election, rules)
so each trace pays only for the augmented run; identical requests return
byte-identical bodies. Errors use a {code, message} envelope.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, model_validator

from .canonical import parse_atl_marks
from .config import AppConfig
from .journey import InformalBallotError, report_to_dict, trace_journey
from .model import ElectionDataError, expand_atl
from .rules import UnknownRulesError
from .store import ElectionStore, UnknownElectionError


class TraceRequest(BaseModel):
    prefs: list[int] | None = None
    atl: dict[str, int] | None = None
    rules: str | None = None

    @model_validator(mode="after")
    def exactly_one_entry_mode(self):
        if (self.prefs is None) == (self.atl is None):
            raise ValueError("provide exactly one of 'prefs' or 'atl'")
        return self


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def make_app(store: ElectionStore, config: AppConfig | None = None) -> FastAPI:
    config = config or AppConfig()
    app = FastAPI(title="stvtrace", version="0.1.0")

    @app.exception_handler(UnknownElectionError)
    async def unknown_election(_req: Request, exc: UnknownElectionError):
        return _error(404, "unknown_election", str(exc.args[0]))

    @app.exception_handler(UnknownRulesError)
    async def unknown_rules(_req: Request, exc: UnknownRulesError):
        return _error(422, "unknown_rules", str(exc.args[0]))

    @app.exception_handler(InformalBallotError)
    async def informal_ballot(_req: Request, exc: InformalBallotError):
        return _error(422, "informal_ballot", str(exc))

    @app.exception_handler(ElectionDataError)
    async def bad_ballot(_req: Request, exc: ElectionDataError):
        return _error(422, "invalid_ballot", str(exc))

    @app.exception_handler(RequestValidationError)
    async def invalid_request(_req: Request, exc: RequestValidationError):
        return _error(422, "invalid_request", str(exc.errors()[0].get("msg", "invalid request")))

    @app.get("/api/elections")
    def list_elections() -> list[dict]:
        return store.metadata()

    @app.get("/api/elections/{election_id}")
    def election_detail(election_id: str) -> dict:
        data = store.election(election_id)
        rules = config.rules()
        return {
            "id": election_id,
            "name": data.name,
            "year": data.year,
            "region": data.region,
            "vacancies": data.vacancies,
            "candidates": [
                {
                    "id": c.id,
                    "name": c.name,
                    "group": c.group_id,
                    "position_in_group": c.position_in_group,
                }
                for c in data.candidates
            ],
            "groups": [
                {"id": g.id, "name": g.name, "candidates": list(g.candidate_ids)}
                for g in data.groups
            ],
            "htv": [{"party": h.party, "prefs": list(h.preferences)} for h in data.htv_cards],
            "rules": {"name": rules.name, "min_preferences": rules.min_preferences},
        }

    @app.post("/api/elections/{election_id}/trace")
    def trace(election_id: str, request: TraceRequest) -> dict:
        data = store.election(election_id)
        rules = config.rules(request.rules)
        if request.prefs is not None:
            prefs = request.prefs
        else:
            prefs = expand_atl(parse_atl_marks(request.atl), data)
        report = trace_journey(data, prefs, rules, baseline=store.baseline(election_id, rules))
        return report_to_dict(report, data)

    if config.ui_root is not None and Path(config.ui_root).is_dir():
        app.mount("/", StaticFiles(directory=config.ui_root, html=True), name="ui")

    return app
