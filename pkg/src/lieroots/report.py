"""Verification reports and fixture loading."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "expected-fail", "skipped-budget")


def toolkit_version() -> str:
    from . import __version__

    return __version__


@dataclass
class Check:
    id: str
    description: str
    status: str
    witness: Any = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass
class VerificationReport:
    suite: str
    checks: List[Check] = field(default_factory=list)
    wall_time: Optional[float] = None

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    @property
    def summary(self) -> Dict[str, int]:
        counts = {s: 0 for s in STATUSES}
        for c in self.checks:
            counts[c.status] += 1
        counts["total"] = len(self.checks)
        return counts

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def by_id(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def select(self, prefix: str) -> List[Check]:
        return [c for c in self.checks if c.id.startswith(prefix)]

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "version": toolkit_version(),
            "summary": self.summary,
            "checks": [asdict(c) for c in self.checks],
        }
        if self.wall_time is not None:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        return cls(d["suite"], [Check(**c) for c in d["checks"]], d.get("wall_time"))

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def text_summary(self) -> str:
        """Failures one per line, other non-pass checks grouped by id prefix."""
        lines, groups = [], {}
        for c in self.checks:
            if c.status == "fail":
                lines.append(f"[fail] {c.id}: {c.description}")
            elif c.status != "pass":
                key = (c.status, ".".join(c.id.split(".")[:3]))
                groups[key] = groups.get(key, 0) + 1
        for (status, prefix), n in groups.items():
            lines.append(f"[{status}] {prefix}" + (f" ({n} checks)" if n > 1 else ""))
        s = self.summary
        lines.append(
            f"{self.suite}: {s['total']} checks, {s['pass']} pass, {s['expected-fail']} expected-fail, "
            f"{s['skipped-budget']} skipped-budget, {s['fail']} fail"
        )
        return "\n".join(lines)


def merge(suite: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    out = VerificationReport(suite)
    for r in reports:
        out.extend(r)
    return out


def load_fixture(name: str, directory: Optional[Path] = None) -> Any:
    if directory is not None:
        return json.loads((Path(directory) / name).read_text())
    return json.loads(resources.files("lieroots").joinpath("data", name).read_text())
