#!/usr/bin/env python3
"""Walk through a complete STV count on a 20-paper contest.

Three candidates, two seats, twenty papers:

    10 x [A, B, C]     6 x [B, C]     4 x [C, B]

Droop quota = floor(20 / 3) + 1 = 7. A opens with 10 first preferences and
is elected immediately; her 3-vote surplus leaves across all 10 of her
papers at transfer value 3/10, lifting B past quota.
"""

from pathlib import Path

from stvtrace import parse_canonical, tabulate
from stvtrace.fmt import fraction_decimal
from stvtrace.rules import BUILTIN_RULESETS

data = parse_canonical((Path(__file__).parent.parent / "tests/fixtures/oracle.json").read_bytes())
rules = BUILTIN_RULESETS["default"]
transcript = tabulate(data, rules)

print(f"{data.name}: {data.total_papers} papers, {data.vacancies} seats")
print(f"rules: {rules.name} ({rules.surplus_method.value}, {rules.rounding.value})")
print(f"quota: {fraction_decimal(transcript.quota, 0)}\n")

for record in transcript.counts:
    action = record.action
    label = action.kind.value.replace("_", " ")
    if action.candidate is not None:
        label += f" of {data.candidates[action.candidate].name}"
    if action.transfer_value is not None:
        label += f" at transfer value {action.transfer_value} ({fraction_decimal(action.transfer_value)})"
    print(f"count {record.index}: {label}")
    for cid in sorted(record.tallies):
        print(f"    {data.candidates[cid].name:<3} {fraction_decimal(record.tallies[cid])}")
    print(f"    exhausted {fraction_decimal(record.exhausted)}, "
          f"rounding loss {fraction_decimal(record.rounding_loss)}")
    for cid in record.newly_elected:
        print(f"    -> {data.candidates[cid].name} elected")
    for cid in record.newly_excluded:
        print(f"    -> {data.candidates[cid].name} excluded")
    for event in record.tie_events:
        print(f"    -> {event}")
    print()

winners = ", ".join(data.candidates[c].name for c in transcript.winners)
print(f"elected in order: {winners}")
