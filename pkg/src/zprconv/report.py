"""Pass/fail verification reports shared by the dual engine, oracles and CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: Any = None
    actual: Any = None
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None

    def add(self, name, passed, expected=None, actual=None, detail=""):
        self.checks.append(Check(name, bool(passed), expected, actual, detail))

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }

    def render(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            extra = ""
            if c.expected is not None or c.actual is not None:
                extra = f"  expected={c.expected} actual={c.actual}"
            if c.detail:
                extra += f"  ({c.detail})"
            lines.append(f"[{mark}] {c.name}{extra}")
        lines.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return "\n".join(lines)
