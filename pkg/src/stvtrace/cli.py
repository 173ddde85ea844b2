"""Command-line front end.

    stvtrace validate <election.json>
    stvtrace count <election.json> [--rules R] [--config C] [--out transcript.json]
    stvtrace trace <election.json> --prefs C,A,B [--rules R] [--config C] [--out report.json]
    stvtrace ingest <prefs.csv> <manifest.json> --out <election.json> [--rules R]
    stvtrace serve --root <dir> [--port P] [--config C] [--ui DIR]

Exit status 0 on success; nonzero with a diagnostic on stderr otherwise.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .canonical import parse_canonical
from .config import load_config
from .engine import serialize_transcript, tabulate
from .ingest import ingest_external
from .journey import serialize_report, trace_journey
from .model import ElectionData, ElectionDataError


def _parse_prefs(text: str, data: ElectionData) -> list[int]:
    """Comma-separated candidate ids or exact candidate names."""
    prefs: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            prefs.append(int(token))
        except ValueError:
            prefs.append(data.candidate_named(token).id)
    return prefs


def _write_or_print(payload: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))


def cmd_validate(args) -> int:
    data = parse_canonical(Path(args.file).read_bytes())
    print(
        f"OK: {data.name!r}: {data.num_candidates} candidates, "
        f"{len(data.groups)} groups, {data.total_papers} papers, {data.vacancies} vacancies"
    )
    return 0


def cmd_count(args) -> int:
    config = load_config(args.config)
    data = parse_canonical(Path(args.file).read_bytes())
    transcript = tabulate(data, config.rules(args.rules))
    payload = serialize_transcript(transcript, names=[c.name for c in data.candidates])
    _write_or_print(payload, args.out)
    return 0


def cmd_trace(args) -> int:
    config = load_config(args.config)
    data = parse_canonical(Path(args.file).read_bytes())
    prefs = _parse_prefs(args.prefs, data)
    report = trace_journey(data, prefs, config.rules(args.rules))
    _write_or_print(serialize_report(report, data), args.out)
    return 0


def cmd_ingest(args) -> int:
    config = load_config(args.config)
    blob, report = ingest_external(
        Path(args.csv).read_bytes(),
        Path(args.manifest).read_bytes(),
        config.rules(args.rules),
    )
    Path(args.out).write_bytes(blob)
    print(
        f"ingested {report.rows} rows: {report.formal} formal, "
        f"{report.informal} informal, {report.skipped} skipped -> {args.out}",
        file=sys.stderr,
    )
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import make_app
    from .store import ElectionStore

    config = load_config(args.config)
    if args.port is not None:
        config.port = args.port
    if args.root is not None:
        config.store_root = Path(args.root)
    if args.ui is not None:
        config.ui_root = Path(args.ui)
    if config.store_root is None:
        print("error: no store root (use --root or config)", file=sys.stderr)
        return 2
    app = make_app(ElectionStore(config.store_root), config)
    uvicorn.run(app, host=args.host, port=config.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stvtrace", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a canonical election file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("count", help="run the count and emit a transcript")
    p.add_argument("file")
    p.add_argument("--rules", default=None)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("trace", help="trace a hypothetical ballot's journey")
    p.add_argument("file")
    p.add_argument("--prefs", required=True, help="comma-separated candidate ids or names")
    p.add_argument("--rules", default=None)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("ingest", help="convert an external preference CSV to canonical form")
    p.add_argument("csv")
    p.add_argument("manifest")
    p.add_argument("--out", required=True)
    p.add_argument("--rules", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("serve", help="serve the trace API (and UI, if built)")
    p.add_argument("--root", default=None, help="directory of canonical election files")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--config", default=None)
    p.add_argument("--ui", default=None, help="directory of built UI assets")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ElectionDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (KeyError, ValueError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
