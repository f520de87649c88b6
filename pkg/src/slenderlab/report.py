"""JSON reports shared by the CLI and the reproduction suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


@dataclass
class Record:
    name: str
    expected: Any
    actual: Any
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": _plain(self.expected),
                "actual": _plain(self.actual), "pass": bool(self.passed)}


def record(name: str, expected: Any, actual: Any, passed: bool | None = None) -> Record:
    """A record that passes when ``actual == expected`` unless ``passed`` is given."""
    return Record(name, expected, actual, actual == expected if passed is None else passed)


def guarded(name: str, fn: Callable[[], list[Record]]) -> list[Record]:
    """Run ``fn``; an exception becomes a single failed record instead of a crash."""
    try:
        return fn()
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        return [Record(name, "no error", f"{type(exc).__name__}: {exc}", False)]


@dataclass
class Report:
    command: str
    parameters: dict = field(default_factory=dict)
    records: list[Record] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def add(self, *recs: Record) -> None:
        self.records.extend(recs)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": _plain(self.parameters),
            "records": [r.as_dict() for r in self.records],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"
