#!/usr/bin/env python3
"""Search for a hypothetical ballot that changes the course of the count.

One extra paper can flip the quota or reorder an exclusion, after which the
baseline and augmented transcripts stop being comparable count-by-count. The
fixture freezes such a case: outcome_changed is true and divergence_count
marks the first count where the action sequences part ways.

Usage: python scripts/find_divergent_journey.py [--seed N] [--tries N] [--out PATH]
"""

import argparse
import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from oracle.gen import random_election, random_preferences

from stvtrace.canonical import election_to_dict
from stvtrace.journey import trace_journey
from stvtrace.rules import BUILTIN_RULESETS


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20250810)
    parser.add_argument("--tries", type=int, default=20000)
    parser.add_argument(
        "--out",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "divergent_journey.json",
    )
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    rules = BUILTIN_RULESETS["default"]
    for attempt in range(args.tries):
        data = random_election(
            rng,
            max_candidates=5,
            min_candidates=3,
            max_papers=30,
            max_vacancies=2,
            tag=f"div-search-{args.seed}-{attempt}",
        )
        prefs = random_preferences(rng, data.num_candidates)
        report = trace_journey(data, prefs, rules)
        if report.divergence_count is None or not report.outcome_changed:
            continue
        if set(report.baseline.winners) == set(report.augmented.winners):
            continue  # prefer a witness where the extra ballot changes who wins
        fixture = {
            "rules": "default",
            "election": election_to_dict(data),
            "hypothetical": list(prefs),
            "outcome_changed": True,
            "divergence_count": report.divergence_count,
            "baseline_winners": report.baseline.winners,
            "augmented_winners": report.augmented.winners,
            "search": {"seed": args.seed, "attempt": attempt},
        }
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(fixture, indent=2) + "\n")
        print(
            f"wrote {args.out} (diverges at count {report.divergence_count}; "
            f"winners {report.baseline.winners} -> {report.augmented.winners})"
        )
        return 0
    print("no divergent witness found; raise --tries", file=sys.stderr)
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
