"""Residual bookkeeping for verification runs."""
from __future__ import annotations

from dataclasses import dataclass, field

ASSERT, REPORT = "assert", "report"


@dataclass(frozen=True)
class Check:
    """One residual. ``kind="report"`` entries are informational and never
    decide pass/fail (used for competing readings of the same formula)."""

    name: str
    n: int | None
    residual: object
    tol: object
    kind: str = ASSERT
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.residual is not None and abs(self.residual) <= self.tol


@dataclass
class VerifyReport:
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name, n, residual, tol, kind=ASSERT, note=""):
        self.checks.append(Check(name, n, residual, tol, kind, note))

    def extend(self, other: VerifyReport):
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.kind == ASSERT)

    def failures(self) -> list:
        return [c for c in self.checks if c.kind == ASSERT and not c.passed]

    def by_name(self, name: str) -> list:
        return [c for c in self.checks if c.name == name]

    def names(self) -> list:
        seen = []
        for c in self.checks:
            if c.name not in seen:
                seen.append(c.name)
        return seen

    def worst(self, name: str):
        vals = [abs(c.residual) for c in self.by_name(name) if c.residual is not None]
        return max(vals) if vals else None

    def summary(self) -> dict:
        """name -> (kind, worst residual, all passed)."""
        out = {}
        for name in self.names():
            cs = self.by_name(name)
            out[name] = (cs[0].kind, self.worst(name), all(c.passed for c in cs))
        return out


def relative(lhs, rhs):
    """|lhs - rhs| scaled by the larger magnitude (absolute when both vanish)."""
    scale = max(abs(lhs), abs(rhs))
    diff = abs(lhs - rhs)
    return diff / scale if scale != 0 else diff
