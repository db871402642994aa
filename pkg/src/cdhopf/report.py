"""Verification verdicts and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import Element


def jsonable(obj: Any) -> Any:
    """Convert elements, rationals and containers to plain JSON values."""
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class Check:
    name: str
    passed: bool
    samples: int = 1
    counterexample: dict | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "samples": self.samples}
        if self.counterexample is not None:
            out["counterexample"] = jsonable(self.counterexample)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    suite: str
    anchor: str = ""
    checks: list[Check] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    timings: dict | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, samples: int = 1, counterexample=None, note: str = "") -> Check:
        c = Check(name, bool(passed), samples, counterexample, note)
        self.checks.append(c)
        return c

    def check_all(self, name: str, results, note: str = "") -> Check:
        """Record a property over (ok, witness) pairs; keeps the first failing witness."""
        count = 0
        first_bad = None
        for ok, witness in results:
            count += 1
            if not ok and first_bad is None:
                first_bad = witness
        return self.add(name, first_bad is None, count, first_bad, note)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "anchor": self.anchor,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "config": jsonable(self.config),
        }
        if self.data:
            out["data"] = jsonable(self.data)
        if self.timings is not None:
            out["timings"] = jsonable(self.timings)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def summary_lines(self) -> list[str]:
        return [
            f"{'PASS' if c.passed else 'FAIL'}  {self.suite}: {c.name} ({c.samples} samples)"
            for c in self.checks
        ]


def elements_payload(**named: Element) -> dict:
    return {k: v.to_json() for k, v in named.items()}
