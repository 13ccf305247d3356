"""Structured pass/fail reports shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1


@dataclass
class Report:
    check: str
    passed: bool = True
    failures: list[dict[str, Any]] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)

    def fail(self, **info) -> None:
        self.passed = False
        self.failures.append(info)

    def count(self, key: str, n: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + n

    def absorb(self, other: "Report") -> "Report":
        if not other.passed:
            self.passed = False
        for f in other.failures:
            self.failures.append({"check": other.check, **f})
        for k, v in other.stats.items():
            if isinstance(v, int) and not isinstance(v, bool):
                self.stats[k] = self.stats.get(k, 0) + v
        return self

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self, max_failures: int | None = 50) -> dict[str, Any]:
        shown = self.failures if max_failures is None else self.failures[:max_failures]
        return {
            "check": self.check,
            "passed": self.passed,
            "failure_count": len(self.failures),
            "failures": shown,
            "stats": dict(sorted(self.stats.items())),
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.check} ({len(self.failures)} failures)"
