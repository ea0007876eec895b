"""Check results, verification reports, and their JSON/text renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from enum import Enum


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    ASSUMED = "assumed"


class Provenance(str, Enum):
    """Where an expected value comes from.

    cited: a published statement, quoted in the citation field; derived:
    an independent computation; trivial: immediate from definitions;
    assumed: imported theory that is not recomputed.
    """

    CITED = "cited"
    TRIVIAL = "trivial"
    DERIVED = "derived"
    ASSUMED = "assumed"


@dataclass(frozen=True)
class SubCheck:
    condition: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    """Outcome of a multi-part verification routine.

    ``status`` is pass when every sub-check passed, inconclusive when the
    routine ran out of search budget, and fail otherwise.
    """

    name: str
    checks: list[SubCheck] = field(default_factory=list)
    inconclusive: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, condition: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(SubCheck(condition, bool(passed), detail))
        return bool(passed)

    @property
    def status(self) -> Status:
        if any(not c.passed for c in self.checks):
            return Status.FAIL
        if self.inconclusive:
            return Status.INCONCLUSIVE
        return Status.PASS

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def failures(self) -> list[str]:
        return [c.condition + (f": {c.detail}" if c.detail else "") for c in self.checks if not c.passed]

    def summary(self) -> str:
        if self.status is Status.PASS:
            return f"{self.name}: pass ({len(self.checks)} checks)"
        if self.status is Status.INCONCLUSIVE:
            return f"{self.name}: inconclusive ({'; '.join(self.inconclusive)})"
        return f"{self.name}: fail ({'; '.join(self.failures())})"


@dataclass(frozen=True)
class CheckResult:
    id: str
    description: str
    computed: str
    expected: str
    provenance: Provenance
    citation: str
    status: Status
    section: str = ""

    def to_json(self) -> dict:
        d = asdict(self)
        d["provenance"] = self.provenance.value
        d["status"] = self.status.value
        return d

    @classmethod
    def from_json(cls, d: dict) -> CheckResult:
        return cls(
            id=d["id"],
            description=d["description"],
            computed=d["computed"],
            expected=d["expected"],
            provenance=Provenance(d["provenance"]),
            citation=d["citation"],
            status=Status(d["status"]),
            section=d.get("section", ""),
        )


@dataclass
class VerificationReport:
    version: str
    digests: dict[str, str]
    checks: list[CheckResult]
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.checks = sorted(self.checks, key=lambda c: c.id)
        ids = [c.id for c in self.checks]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate check ids in report")
        self.digests = dict(sorted(self.digests.items()))

    @property
    def summary(self) -> dict[str, int]:
        counts = {s.value: 0 for s in Status}
        for c in self.checks:
            counts[c.status.value] += 1
        counts["total"] = len(self.checks)
        return counts

    def exit_code(self) -> int:
        s = self.summary
        if s["fail"]:
            return 1
        if s["inconclusive"]:
            return 2
        return 0

    def get(self, check_id: str) -> CheckResult:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "digests": self.digests,
            "checks": [c.to_json() for c in self.checks],
            "notes": list(self.notes),
            "summary": self.summary,
        }

    @classmethod
    def from_json(cls, d: dict) -> VerificationReport:
        return cls(
            version=d["version"],
            digests=d["digests"],
            checks=[CheckResult.from_json(c) for c in d["checks"]],
            notes=list(d.get("notes", [])),
        )

    def __eq__(self, other):
        if not isinstance(other, VerificationReport):
            return NotImplemented
        return self.to_json() == other.to_json()


def render_json(report: VerificationReport) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_text(report: VerificationReport) -> str:
    lines = [f"verification report (toolkit {report.version})", ""]
    groups: dict[str, list[CheckResult]] = {}
    for c in report.checks:
        groups.setdefault(c.section or "misc", []).append(c)
    for section in sorted(groups):
        lines.append(f"== {section} ==")
        for c in groups[section]:
            lines.append(f"[{c.status.value.upper():>12}] {c.id}: {c.description}")
            lines.append(f"{'':15}computed {c.computed}; expected {c.expected}")
            lines.append(f"{'':15}{c.provenance.value}: {c.citation}")
        lines.append("")
    if report.notes:
        lines.append("notes:")
        lines.extend(f"  - {n}" for n in report.notes)
        lines.append("")
    lines.append("data files:")
    lines.extend(f"  {name}  sha256:{digest}" for name, digest in report.digests.items())
    s = report.summary
    lines.append("")
    lines.append(
        f"summary: {s['total']} checks, {s['pass']} pass, {s['fail']} fail, "
        f"{s['inconclusive']} inconclusive, {s['assumed']} assumed"
    )
    return "\n".join(lines) + "\n"


def render(report: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown report format {fmt!r}")
