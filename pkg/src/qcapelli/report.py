"""Per-check records shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Check:
    """Outcome of one identity check.

    ``status`` is "pass", "fail" or "unsupported".  ``identity`` is a short
    human-readable name of the statement being checked.
    """

    id: str
    identity: str
    status: str
    detail: str = ""
    counterexample: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        d = {"id": self.id, "identity": self.identity, "status": self.status, "detail": self.detail}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


def check(id: str, identity: str, ok: bool, detail: str = "", counterexample=None) -> Check:
    return Check(id, identity, "pass" if ok else "fail", detail,
                 None if ok or counterexample is None else str(counterexample))


@dataclass
class Report:
    """A list of checks; passes when every check passes."""

    checks: List[Check] = field(default_factory=list)

    def add(self, c: Check) -> Check:
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def __iter__(self):
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def __repr__(self) -> str:
        bad = len(self.failures())
        return f"Report({len(self.checks)} checks, {bad} not passing)"
