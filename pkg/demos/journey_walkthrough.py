#!/usr/bin/env python3
"""Follow one hypothetical ballot through a grouped Senate-style contest.

The ballot is filled in from a party's How-to-Vote card, appended to the
election, and traced through a fresh count: which candidate holds it at each
count, at what fraction of its original value, and how every candidate's
tally would differ from the count without it.
"""

from pathlib import Path

from stvtrace import parse_canonical, trace_journey
from stvtrace.engine import EXHAUSTED
from stvtrace.fmt import fraction_sigfig
from stvtrace.rules import BUILTIN_RULESETS

data = parse_canonical(
    (Path(__file__).parent.parent / "tests/fixtures/grouped_senate.json").read_bytes()
)
rules = BUILTIN_RULESETS["default"]
card = data.htv_card("The Greens")

print(f"{data.name}: {data.total_papers} papers, {data.vacancies} seats")
print(f"ballot from the {card.party!r} How-to-Vote card "
      f"({len(card.preferences)} preferences, starts with "
      f"{data.candidates[card.preferences[0]].name})\n")

report = trace_journey(data, list(card.preferences), rules)

print("the ballot's journey:")
for leg in report.legs:
    holder = "exhausted" if leg.holder == EXHAUSTED else data.candidates[leg.holder].name
    span = f"counts {leg.from_count}-{leg.to_count}" if leg.from_count != leg.to_count else f"count {leg.from_count}"
    print(f"    {holder:<28} value {fraction_sigfig(leg.value):>8}  {span:<16} ({leg.end_reason.value})")

print("\nfinal tally contribution (augmented count minus baseline count):")
for record in sorted(report.contributions, key=lambda r: r.final_delta, reverse=True):
    if record.final_delta == 0 and not any(record.per_count_delta.values()):
        continue
    name = data.candidates[record.candidate].name
    print(f"    {name:<28} {fraction_sigfig(record.final_delta):>8}")

if report.outcome_changed:
    print(f"\nthis single ballot changes the outcome (divergence at count {report.divergence_count})")
else:
    print("\nthe outcome is unchanged; the deltas above are pure tally shifts")
