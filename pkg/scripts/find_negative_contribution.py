#!/usr/bin/env python3
"""Search random small elections for a ballot with a negative contribution.

Under unweighted inclusive Gregory, adding a ballot to a winner's pile grows
the paper count faster than the surplus, diluting the transfer value; a
candidate downstream can end up with a lower tally than they had without the
ballot. This script hunts for a concrete witness (<= 5 candidates, <= 30
papers, 2 seats) and writes it as a test fixture with the exact deltas
frozen.

Usage: python scripts/find_negative_contribution.py [--seed N] [--tries N] [--out PATH]
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


def witness_score(report, first_pref: int) -> int:
    """Prefer clean witnesses: aligned transcripts, a victim other than the
    ballot's own first preference, and the first preference actually elected."""
    negatives = [c for c in report.contributions if c.final_delta < 0]
    if not negatives:
        return -1
    score = 1
    if not report.outcome_changed:
        score += 4
    if any(c.candidate != first_pref for c in negatives):
        score += 2
    if first_pref in report.augmented.winners:
        score += 1
    return score


def search(seed: int, tries: int):
    rng = random.Random(seed)
    rules = BUILTIN_RULESETS["default"]
    best = None
    for attempt in range(tries):
        data = random_election(
            rng,
            max_candidates=5,
            min_candidates=3,
            max_papers=30,
            exact_vacancies=2,
            tag=f"neg-search-{seed}-{attempt}",
        )
        if data.num_candidates <= data.vacancies:
            continue
        prefs = random_preferences(rng, data.num_candidates)
        report = trace_journey(data, prefs, rules)
        score = witness_score(report, prefs[0])
        if score > (best[0] if best else 0):
            best = (score, data, prefs, report)
            if score >= 8:
                break
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20250810)
    parser.add_argument("--tries", type=int, default=20000)
    parser.add_argument(
        "--out",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "negative_contribution.json",
    )
    args = parser.parse_args(argv)

    best = search(args.seed, args.tries)
    if best is None:
        print("no negative-contribution witness found; raise --tries", file=sys.stderr)
        return 1
    score, data, prefs, report = best
    fixture = {
        "rules": "default",
        "election": election_to_dict(data),
        "hypothetical": list(prefs),
        "outcome_changed": report.outcome_changed,
        "negative_candidates": [
            {
                "candidate": c.candidate,
                "final_delta": {"num": c.final_delta.numerator, "den": c.final_delta.denominator},
            }
            for c in report.contributions
            if c.final_delta < 0
        ],
        "search": {"seed": args.seed, "score": score},
    }
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(fixture, indent=2) + "\n")
    victims = ", ".join(str(v["candidate"]) for v in fixture["negative_candidates"])
    print(f"wrote {args.out} (negative final delta for candidate(s) {victims}, score {score})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
