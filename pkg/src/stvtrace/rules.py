"""Counting rule variants.

A RuleSet fixes the three knobs jurisdictions actually disagree on: how a
surplus is re-weighted, whether tallies are kept exact or truncated to whole
votes, and the formality minimum. Everything else in the count is invariant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class SurplusMethod(enum.Enum):
    UNWEIGHTED_INCLUSIVE_GREGORY = "unweighted_inclusive_gregory"
    WEIGHTED_INCLUSIVE_GREGORY = "weighted_inclusive_gregory"


class Rounding(enum.Enum):
    EXACT_RATIONAL = "exact"
    TRUNCATE_TALLIES_TO_INTEGER = "truncate"


@dataclass(frozen=True)
class RuleSet:
    name: str
    surplus_method: SurplusMethod = SurplusMethod.UNWEIGHTED_INCLUSIVE_GREGORY
    rounding: Rounding = Rounding.EXACT_RATIONAL
    min_preferences: int = 1

    def __post_init__(self) -> None:
        if self.min_preferences < 1:
            raise ValueError("min_preferences must be >= 1")


DEFAULT_RULES = RuleSet(name="default")

BUILTIN_RULESETS = {
    rs.name: rs
    for rs in (
        DEFAULT_RULES,
        RuleSet(name="wig", surplus_method=SurplusMethod.WEIGHTED_INCLUSIVE_GREGORY),
        RuleSet(name="truncate", rounding=Rounding.TRUNCATE_TALLIES_TO_INTEGER),
    )
}


class UnknownRulesError(KeyError):
    pass


def ruleset_from_dict(entry: dict) -> RuleSet:
    """Build a RuleSet from a config-file entry."""
    try:
        name = entry["name"]
    except KeyError:
        raise ValueError("ruleset entry missing 'name'") from None
    base = BUILTIN_RULESETS.get(entry.get("base", "default"), DEFAULT_RULES)
    surplus = entry.get("surplus_method", base.surplus_method.value)
    rounding = entry.get("rounding", base.rounding.value)
    try:
        return RuleSet(
            name=name,
            surplus_method=SurplusMethod(surplus),
            rounding=Rounding(rounding),
            min_preferences=int(entry.get("min_preferences", base.min_preferences)),
        )
    except ValueError as exc:
        raise ValueError(f"ruleset {name!r}: {exc}") from None


def resolve_rules(name: str | None, extra: dict[str, RuleSet] | None = None) -> RuleSet:
    """Look up a ruleset by name among builtins plus config-defined ones."""
    if name is None:
        return DEFAULT_RULES
    if extra and name in extra:
        return extra[name]
    try:
        return BUILTIN_RULESETS[name]
    except KeyError:
        known = sorted(BUILTIN_RULESETS | (extra or {}))
        raise UnknownRulesError(f"unknown ruleset {name!r} (known: {', '.join(known)})") from None
