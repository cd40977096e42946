"""Verification reports: per-instance records plus a summary."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

RECORD_FIELDS = ("suite", "instance", "expected", "actual", "witness", "ok")


def _plain(value: Any) -> Any:
    """Convert sets and tuples into JSON-friendly, deterministically ordered lists."""
    if isinstance(value, (set, frozenset)):
        return [_plain(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass
class Violation:
    instance: str
    expected: Any
    actual: Any
    witness: Any = None


@dataclass
class VerificationReport:
    suite: str
    instances: int = 0
    violations: list[Violation] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)
    exhaustive: bool = True
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def check(self, instance: str, expected: Any, actual: Any, witness: Any = None, ok: bool | None = None) -> bool:
        """Record one instance; ``ok`` defaults to ``expected == actual``."""
        if ok is None:
            ok = expected == actual
        self.instances += 1
        self.records.append(
            {
                "suite": self.suite,
                "instance": instance,
                "expected": _plain(expected),
                "actual": _plain(actual),
                "witness": _plain(witness),
                "ok": ok,
            }
        )
        if not ok:
            self.violations.append(Violation(instance, expected, actual, witness))
        return ok

    def note(self, **fields: Any) -> None:
        self.notes.append(_plain(fields))

    def merge(self, other: "VerificationReport") -> None:
        self.instances += other.instances
        self.violations.extend(other.violations)
        for rec in other.records:
            self.records.append({**rec, "suite": self.suite})
        self.notes.extend(other.notes)
        self.exhaustive = self.exhaustive and other.exhaustive
        self.elapsed += other.elapsed

    def summary(self, include_elapsed: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "instances": self.instances,
            "violations": len(self.violations),
            "exhaustive": self.exhaustive,
            "passed": self.passed,
        }
        if self.notes:
            out["notes"] = self.notes
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    def to_lines(self, include_elapsed: bool = False) -> list[str]:
        """One JSON object per instance, then the summary object."""
        lines = [json.dumps(rec, separators=(",", ":")) for rec in self.records]
        lines.append(json.dumps({"summary": self.summary(include_elapsed)}, separators=(",", ":")))
        return lines

    def to_text(self) -> str:
        head = f"{self.suite}: {self.instances} instances, {len(self.violations)} violations"
        lines = [head + (" (PASS)" if self.passed else " (FAIL)")]
        for v in self.violations:
            lines.append(f"  {v.instance}: expected {_plain(v.expected)}, got {_plain(v.actual)}, witness {_plain(v.witness)}")
        for note in self.notes:
            lines.append(f"  note: {json.dumps(note)}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for rec in self.records:
            writer.writerow(
                [rec["suite"], rec["instance"], json.dumps(rec["expected"]), json.dumps(rec["actual"]),
                 json.dumps(rec["witness"]), rec["ok"]]
            )
        return buf.getvalue()
