from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator


@dataclass
class Check:
    claim: str
    passed: bool
    measured: Any = None
    expected: Any = None
    note: str = ""


@dataclass
class CheckReport:
    """Outcome of a verification routine: one Check per claim, failures included."""

    title: str
    checks: list[Check] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    def add(self, claim: str, passed: bool, measured: Any = None, expected: Any = None, note: str = "") -> Check:
        c = Check(claim, bool(passed), measured, expected, note)
        self.checks.append(c)
        return c

    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, claim: str) -> Check:
        for c in self.checks:
            if c.claim == claim:
                return c
        raise KeyError(claim)

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        lines = [self.title]
        for c in self.checks:
            lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.claim}: {c.measured}"
                         + (f" (expected {c.expected})" if c.expected is not None else ""))
        return "\n".join(lines)
