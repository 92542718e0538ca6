"""Machine-readable verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "rees-report/1"


@dataclass
class VerificationReport:
    target: str
    params: dict
    passed: bool
    certificates: list[dict] = field(default_factory=list)
    ideal_equality: dict | None = None
    lm_set_diff: list[str] = field(default_factory=list)
    term_diffs: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    skipped: bool = False
    wall_time_ms: float | None = None

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "target": self.target,
            "params": self.params,
            "pass": self.passed,
            "skipped": self.skipped,
            "certificates": self.certificates,
            "ideal_equality": self.ideal_equality,
            "lm_set_diff": self.lm_set_diff,
            "term_diffs": self.term_diffs,
            "notes": self.notes,
            "details": self.details,
            "wall_time_ms": round(self.wall_time_ms, 3) if timing and self.wall_time_ms is not None else None,
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    def summary(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        p = self.params
        line = f"{status} {self.target} m0={p.get('m0')} d={p.get('d')} b={p.get('b')}"
        if self.wall_time_ms is not None:
            line += f" ({self.wall_time_ms:.0f} ms)"
        return line
