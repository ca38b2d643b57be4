"""Structured outcome of one verification suite, JSON-serializable.

The JSON form is a CI artifact: key order is fixed, floats use Python's
shortest-roundtrip repr, and wall time is deliberately left out so that
rerunning a suite with the same seed yields byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "bellkit-report/1"


@dataclass(frozen=True)
class Case:
    case_id: str
    residual: float
    passed: bool


@dataclass
class Report:
    suite: str
    params: dict
    cases: list[Case] = field(default_factory=list)
    tolerance: float = 1e-12
    seed: int | None = None
    wall_ms: int = 0

    def add(self, case_id: str, residual: float, tol: float | None = None) -> None:
        tol = self.tolerance if tol is None else tol
        self.cases.append(Case(case_id, float(residual), bool(residual < tol)))

    def add_expect_fail(self, case_id: str, residual: float, floor: float) -> None:
        """Record a falsifiability control: the case passes iff residual >= floor."""
        self.cases.append(Case(case_id, float(residual), bool(residual >= floor)))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.cases), default=0.0)

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "suite": self.suite,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "tolerance": self.tolerance,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        out["cases"] = [
            {"id": c.case_id, "residual": c.residual, "pass": c.passed} for c in self.cases
        ]
        out["pass"] = self.passed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary_lines(self):
        for c in self.cases:
            status = "PASS" if c.passed else "FAIL"
            yield f"[{status}] {self.suite}: {c.case_id}  residual={c.residual:.3e}"
