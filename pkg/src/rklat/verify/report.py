"""Verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

FIELD_ORDER = ("suite", "trials", "seed", "passed", "expected_failure", "counterexample", "elapsed_ms", "warnings")


@dataclass
class Report:
    suite: str
    trials: int
    seed: int
    passed: bool
    expected_failure: bool = False
    counterexample: Optional[dict] = None
    elapsed_ms: float = 0.0
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.passed == (self.counterexample is not None):
            raise ValueError("a report carries a counterexample exactly when it did not pass")

    @property
    def ok(self) -> bool:
        """Passed, or failed in the way the suite was told to expect."""
        return self.passed or self.expected_failure

    def to_dict(self, with_elapsed: bool = True) -> dict:
        d = {name: getattr(self, name) for name in FIELD_ORDER}
        if not with_elapsed:
            del d["elapsed_ms"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        status = "PASS" if self.passed else ("EXPECTED-FAIL" if self.expected_failure else "FAIL")
        lines = [
            f"{status} {self.suite}",
            f"  trials: {self.trials}",
            f"  seed: {self.seed}",
            f"  elapsed_ms: {self.elapsed_ms}",
        ]
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        if self.counterexample is not None:
            lines.append("  counterexample: " + json.dumps(self.counterexample, sort_keys=False))
        return "\n".join(lines)

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(**{k: d[k] for k in FIELD_ORDER if k in d})
