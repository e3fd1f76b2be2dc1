"""Deterministic verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

MAX_WITNESSES = 20


@dataclass
class Report:
    """Counts of checked configurations and violations per named check."""

    suite: str
    box: dict = field(default_factory=dict)
    checked: dict = field(default_factory=dict)
    failed: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def check(self, name: str, ok: bool, witness=None) -> bool:
        self.checked[name] = self.checked.get(name, 0) + 1
        if not ok:
            self.failed[name] = self.failed.get(name, 0) + 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append({"check": name, "witness": _plain(witness)})
        return ok

    def require(self, name: str) -> None:
        """Record a check name even if it ends up with zero configurations."""
        self.checked.setdefault(name, 0)

    @property
    def violations(self) -> int:
        return sum(self.failed.values())

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def merge(self, other: "Report", prefix: str = "") -> None:
        for k, v in other.checked.items():
            self.checked[prefix + k] = self.checked.get(prefix + k, 0) + v
        for k, v in other.failed.items():
            self.failed[prefix + k] = self.failed.get(prefix + k, 0) + v
        room = MAX_WITNESSES - len(self.witnesses)
        for w in other.witnesses[:max(room, 0)]:
            self.witnesses.append({**w, "check": prefix + w["check"]})
        for k, v in other.notes.items():
            self.notes[prefix + k] = v

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "box": _plain(self.box),
            "checks": {k: {"checked": self.checked[k], "failed": self.failed.get(k, 0)}
                       for k in sorted(self.checked)},
            "violations": self.violations,
            "witnesses": self.witnesses,
            "notes": _plain(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def summary_lines(self) -> list[str]:
        out = []
        for k in sorted(self.checked):
            bad = self.failed.get(k, 0)
            out.append(f"{'FAIL' if bad else 'ok  '} {k}: {self.checked[k]} checked, {bad} failed")
        return out


def _plain(x):
    """Turn tuples, sets and named tuples into JSON-friendly lists."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted((_plain(v) for v in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x
