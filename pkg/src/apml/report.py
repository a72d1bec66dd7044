"""Machine-readable run reports shared by the CLI and the verify suites."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .polycore import MultiPoly


def fmt(v) -> object:
    """Render a value for output: 15 significant digits, polynomials as text."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.15g}"
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        return f"{v.real:.15g}{v.imag:+.15g}j"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, MultiPoly):
        return v.to_string()
    if isinstance(v, np.ndarray):
        return [fmt(x) for x in v.tolist()]
    if isinstance(v, dict):
        return {str(k): fmt(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = sorted(v) if isinstance(v, (set, frozenset)) else v
        return [fmt(x) for x in items]
    return str(v)


@dataclass
class Check:
    name: str
    passed: bool
    measured: object
    expected: object
    tolerance: object = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "measured": fmt(self.measured),
            "expected": fmt(self.expected),
            "tolerance": fmt(self.tolerance) if self.tolerance is not None else "exact",
        }


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name, passed, measured, expected, tolerance=None) -> Check:
        c = Check(name, bool(passed), measured, expected, tolerance)
        self.checks.append(c)
        return c

    def close(self, name, measured, expected, tolerance) -> Check:
        ok = math.isfinite(measured) and abs(measured - expected) < tolerance
        return self.check(name, ok, measured, expected, tolerance)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": fmt(self.inputs),
            "results": fmt(self.results),
            "checks": [c.as_dict() for c in self.checks],
            "passed": self.passed,
            "wall_time": fmt(self.wall_time),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"== {self.command}"]
        for k, v in fmt(self.inputs).items():
            lines.append(f"  input  {k}: {v}")
        for k, v in fmt(self.results).items():
            lines.append(f"  {k}: {v}")
        for c in self.checks:
            d = c.as_dict()
            tag = "PASS" if c.passed else "FAIL"
            lines.append(
                f"  [{tag}] {d['name']}: measured {d['measured']}, expected {d['expected']}, tol {d['tolerance']}"
            )
        lines.append(f"  wall time: {self.wall_time:.2f} s")
        return "\n".join(lines)
