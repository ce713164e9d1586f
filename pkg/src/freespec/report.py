"""Verification reports shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


@dataclass
class CaseResult:
    inputs: dict
    expected: Any
    got: Any
    deviation: Any
    passed: bool

    def to_json(self) -> dict:
        return {
            "inputs": _jsonable(self.inputs),
            "expected": _jsonable(self.expected),
            "got": _jsonable(self.got),
            "deviation": _jsonable(self.deviation),
            "pass": bool(self.passed),
        }


@dataclass
class VerificationReport:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def add(self, inputs, expected, got, deviation=None, passed=None) -> CaseResult:
        if passed is None:
            passed = expected == got
        case = CaseResult(inputs, expected, got, deviation, bool(passed))
        self.cases.append(case)
        return case

    def to_json(self) -> dict:
        return {"suite": self.suite, "pass": self.passed, "cases": [c.to_json() for c in self.cases]}

    def pretty(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.suite}"]
        for c in self.cases:
            args = ", ".join(f"{k}={_jsonable(v)}" for k, v in c.inputs.items())
            lines.append(f"  {'ok ' if c.passed else 'BAD'} {args}: expected {_jsonable(c.expected)}, "
                         f"got {_jsonable(c.got)}")
        return "\n".join(lines)
