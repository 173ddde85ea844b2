"""Deterministic STV counting with transcripts and vote-journey tracing."""

from .canonical import parse_canonical, serialize_canonical
from .engine import (
    EXHAUSTED,
    MalformedElectionError,
    Transcript,
    compute_quota,
    serialize_transcript,
    tabulate,
)
from .journey import InformalBallotError, JourneyReport, serialize_report, trace_journey
from .model import (
    AtlMarks,
    Ballot,
    Candidate,
    ElectionData,
    ElectionDataError,
    Group,
    HowToVoteCard,
    apply_htv,
    check_formality,
    expand_atl,
)
from .rules import BUILTIN_RULESETS, DEFAULT_RULES, Rounding, RuleSet, SurplusMethod

__all__ = [
    "AtlMarks",
    "BUILTIN_RULESETS",
    "Ballot",
    "Candidate",
    "DEFAULT_RULES",
    "ElectionData",
    "ElectionDataError",
    "EXHAUSTED",
    "Group",
    "HowToVoteCard",
    "InformalBallotError",
    "JourneyReport",
    "MalformedElectionError",
    "Rounding",
    "RuleSet",
    "SurplusMethod",
    "Transcript",
    "apply_htv",
    "check_formality",
    "compute_quota",
    "expand_atl",
    "parse_canonical",
    "serialize_canonical",
    "serialize_report",
    "serialize_transcript",
    "tabulate",
    "trace_journey",
]
