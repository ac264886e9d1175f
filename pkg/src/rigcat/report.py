"""Rendering of check reports as human text or line-oriented JSON records."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = "rigcat.report"
SCHEMA_VERSION = 1


@dataclass
class Section:
    title: str
    ok: bool
    data: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    seconds: float | None = None  # text output only; never written as a record
    limit: float | None = None

    @property
    def in_time(self) -> bool:
        return self.seconds is None or self.limit is None or self.seconds < self.limit

    @property
    def passed(self) -> bool:
        return self.ok and self.in_time


def section(title: str, report: Any, **extra) -> Section:
    """Wrap any report object exposing ``ok``, ``failures`` and ``summary()``."""
    data = report.summary()
    data.pop("failures", None)
    data.update(extra)
    return Section(title, report.ok, data, list(report.failures))


def _line(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, default=str, ensure_ascii=False)


def render_records(command: str, sections: list[Section]) -> str:
    lines = [_line({"schema": SCHEMA, "version": SCHEMA_VERSION, "command": command})]
    for s in sections:
        lines.append(_line({"record": "section", "title": s.title, "ok": s.ok, "data": s.data}))
        lines += [_line({"record": "failure", "section": s.title, "message": m}) for m in s.failures]
    lines.append(_line({"record": "status", "ok": all(s.ok for s in sections)}))
    return "\n".join(lines) + "\n"


def _fmt(value: Any) -> str:
    if isinstance(value, (dict, list)):
        text = json.dumps(value, sort_keys=True, default=str, ensure_ascii=False)
        return text if len(text) <= 160 else text[:157] + "..."
    return str(value)


def render_text(command: str, sections: list[Section], max_failures: int = 10) -> str:
    lines = []
    for s in sections:
        verdict = "PASS" if s.passed else "FAIL"
        timing = ""
        if s.seconds is not None:
            timing = f" ({s.seconds:.2f}s" + (f", limit {s.limit:g}s)" if s.limit is not None else ")")
        lines.append(f"{verdict}  {s.title}{timing}")
        for key in sorted(s.data):
            lines.append(f"    {key}: {_fmt(s.data[key])}")
        for m in s.failures[:max_failures]:
            lines.append(f"    ! {m}")
        if len(s.failures) > max_failures:
            lines.append(f"    ! ... {len(s.failures) - max_failures} more")
        if not s.in_time:
            lines.append(f"    ! exceeded time limit of {s.limit:g}s")
    ok = all(s.passed for s in sections)
    lines.append(f"{command}: {'all checks passed' if ok else 'FAILED'}")
    return "\n".join(lines) + "\n"


def render(command: str, sections: list[Section], fmt: str) -> str:
    if fmt == "records":
        return render_records(command, sections)
    return render_text(command, sections)
