"""Three-valued verdicts with provenance, and the per-group report they fill."""

from __future__ import annotations

import contextlib
import enum
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Optional


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"

    def __bool__(self):
        raise TypeError("use `is Verdict.YES` rather than truth-testing a Verdict")

    def __str__(self) -> str:
        return self.value

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.YES if flag else cls.NO


YES, NO, UNDECIDED = Verdict.YES, Verdict.NO, Verdict.UNDECIDED


def v_and(*vs: Verdict) -> Verdict:
    if any(v is NO for v in vs):
        return NO
    if all(v is YES for v in vs):
        return YES
    return UNDECIDED


def v_or(*vs: Verdict) -> Verdict:
    if any(v is YES for v in vs):
        return YES
    if all(v is NO for v in vs):
        return NO
    return UNDECIDED


def v_not(v: Verdict) -> Verdict:
    return {YES: NO, NO: YES, UNDECIDED: UNDECIDED}[v]


@dataclass(frozen=True)
class Finding:
    verdict: Verdict
    rule: str
    citation: str
    value: Any = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value, "rule": self.rule, "citation": self.citation}
        if self.value is not None:
            out["value"] = self.value
        return out


# report keys, in emission order
PROPERTIES = (
    "is_finite", "is_abelian", "exponent", "ATF", "WCL", "prime_exponent",
    "mon_cofinite", "cen_cofinite", "zar_cofinite",
)


class ConsistencyError(AssertionError):
    pass


@dataclass
class ClassReport:
    subject: str
    findings: dict[str, Finding] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Finding:
        return self.findings[key]

    def verdict(self, key: str) -> Verdict:
        return self.findings[key].verdict

    def violations(self) -> list[str]:
        """Breaches of the class inclusions; an empty list means consistent."""
        out = []
        f = self.findings
        if f.get("zar_cofinite") and f["zar_cofinite"].verdict is YES:
            for k in ("mon_cofinite", "cen_cofinite"):
                if f[k].verdict is not YES:
                    out.append(f"zar_cofinite=yes but {k}={f[k].verdict}")
        if f.get("mon_cofinite") and f["mon_cofinite"].verdict is YES:
            if v_or(f["prime_exponent"].verdict, f["WCL"].verdict) is not YES:
                out.append("mon_cofinite=yes but neither prime_exponent nor WCL is yes")
        for k in ("mon_cofinite", "cen_cofinite"):
            if f.get(k) and f[k].verdict is NO and f.get("zar_cofinite") and f["zar_cofinite"].verdict is YES:
                out.append(f"{k}=no contradicts zar_cofinite=yes")
        if f.get("WCL") and f["WCL"].verdict is YES and f.get("ATF") and f["ATF"].verdict is NO:
            out.append("WCL=yes but ATF=no")
        return out

    def to_json(self) -> dict:
        return {"subject": self.subject,
                "properties": {k: self.findings[k].to_json() for k in sorted(self.findings)}}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def render_text(self) -> str:
        keys = [k for k in PROPERTIES if k in self.findings]
        keys += sorted(k for k in self.findings if k not in PROPERTIES)
        width = max((len(k) for k in keys), default=0)
        lines = [f"group: {self.subject}"]
        for k in keys:
            fd = self.findings[k]
            shown = fd.verdict.value if fd.value is None else f"{fd.verdict.value} ({fd.value})"
            lines.append(f"  {k:<{width}}  {shown:<14} [{fd.rule}] {fd.citation}")
        return "\n".join(lines)


class ReportLog:
    """Collects every emitted report so suites can audit them together."""

    def __init__(self):
        self.reports: list[ClassReport] = []

    def add(self, report: ClassReport) -> ClassReport:
        self.reports.append(report)
        return report

    def violations(self) -> list[tuple[str, str]]:
        return [(r.subject, v) for r in self.reports for v in r.violations()]

    def extend(self, reports: Iterable[ClassReport]) -> None:
        self.reports.extend(reports)


GLOBAL_LOG: Optional[ReportLog] = None


def record(report: ClassReport) -> ClassReport:
    """Check a report at emission time and append it to the active log."""
    problems = report.violations()
    if problems:
        raise ConsistencyError(f"{report.subject}: " + "; ".join(problems))
    if GLOBAL_LOG is not None:
        GLOBAL_LOG.add(report)
    return report


@contextlib.contextmanager
def collecting() -> Iterator[ReportLog]:
    """Route every report recorded inside the block into a fresh log."""
    global GLOBAL_LOG
    previous, log = GLOBAL_LOG, ReportLog()
    GLOBAL_LOG = log
    try:
        yield log
    finally:
        GLOBAL_LOG = previous
        if previous is not None:
            previous.extend(log.reports)
