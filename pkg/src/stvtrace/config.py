"""Service/CLI configuration: one optional JSON file, overridden by flags.

No environment-variable magic; a run is reproducible from its command line
plus the named config file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .rules import DEFAULT_RULES, RuleSet, resolve_rules, ruleset_from_dict


@dataclass
class AppConfig:
    port: int = 8400
    store_root: Path | None = None
    default_rules: str = DEFAULT_RULES.name
    rulesets: dict[str, RuleSet] = field(default_factory=dict)
    ui_root: Path | None = None

    def rules(self, name: str | None = None) -> RuleSet:
        return resolve_rules(name or self.default_rules, self.rulesets)


def load_config(path: Path | str | None) -> AppConfig:
    config = AppConfig()
    if path is None:
        return config
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise ValueError("config top level must be an object")
    for entry in doc.get("rules", []):
        ruleset = ruleset_from_dict(entry)
        config.rulesets[ruleset.name] = ruleset
    if "port" in doc:
        config.port = int(doc["port"])
    if "store_root" in doc:
        config.store_root = Path(doc["store_root"])
    if "default_rules" in doc:
        config.default_rules = str(doc["default_rules"])
    if "ui_root" in doc:
        config.ui_root = Path(doc["ui_root"])
    config.rules()  # fail fast if default_rules names nothing known
    return config
