#!/usr/bin/env python3
"""A vote that lowers a candidate's tally.

Intuition says an extra ballot can only help the candidates it ranks. Under
unweighted inclusive Gregory that intuition fails: every paper in an elected
candidate's pile transfers at surplus / papers, so one extra paper both
bumps the quota (shrinking the surplus) and grows the pile (diluting the
transfer value). Candidates downstream of the surplus can receive less than
they would have without the ballot.

This demo replays the committed search witness (found by
scripts/find_negative_contribution.py) and shows the arithmetic.
"""

import json
from pathlib import Path

from stvtrace import parse_canonical, tabulate, trace_journey
from stvtrace.fmt import fraction_sigfig
from stvtrace.rules import BUILTIN_RULESETS

fixture = json.loads(
    (Path(__file__).parent.parent / "tests/fixtures/negative_contribution.json").read_text()
)
data = parse_canonical(json.dumps(fixture["election"]))
prefs = fixture["hypothetical"]
rules = BUILTIN_RULESETS[fixture["rules"]]

print(f"{data.name}: {data.total_papers} papers, {data.vacancies} seats")
print("ballots:")
for ballot in data.ballots:
    names = " > ".join(data.candidates[c].name for c in ballot.preferences)
    print(f"    {ballot.multiplicity:>2} x [{names}]")
print(f"hypothetical ballot: [{' > '.join(data.candidates[c].name for c in prefs)}]\n")

baseline = tabulate(data, rules)
report = trace_journey(data, prefs, rules)
augmented = report.augmented

print(f"baseline : quota {baseline.quota}, winners "
      f"{[data.candidates[c].name for c in baseline.winners]}")
print(f"augmented: quota {augmented.quota}, winners "
      f"{[data.candidates[c].name for c in augmented.winners]}\n")

for base_rec, aug_rec in zip(baseline.counts, augmented.counts):
    if base_rec.action.transfer_value is None:
        continue
    who = data.candidates[base_rec.action.candidate].name
    print(f"count {base_rec.index}: {who}'s surplus transfers at "
          f"{base_rec.action.transfer_value} without the ballot, "
          f"{aug_rec.action.transfer_value} with it")

print("\nfinal contribution to each candidate's tally:")
for record in report.contributions:
    name = data.candidates[record.candidate].name
    flag = "  <-- harmed by a ballot that ranked them!" if record.final_delta < 0 else ""
    print(f"    {name:<14} {fraction_sigfig(record.final_delta):>8}{flag}")
