"""Reports produced by one command, with text and JSON renderings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import InputError

SCHEMA = "hopfcyclic.report/1"


@dataclass
class Report:
    command: list
    checks: dict = field(default_factory=dict)       # name -> {"ok": bool, "witness": str | None}
    cohomology: dict | None = None
    objects: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    expect: str | None = None
    error: str | None = None
    wall_time: float | None = None
    files: list | None = None                        # corpus runs: one entry per file

    def add_checks(self, report, prefix: str = ""):
        """Merge a CheckReport (or a mapping name -> Verdict)."""
        verdicts = getattr(report, "verdicts", report)
        for name, v in verdicts.items():
            self.checks[prefix + name] = {"ok": bool(v.ok), "witness": v.witness}

    def add_check(self, name: str, ok: bool, witness: str | None = None):
        self.checks[name] = {"ok": bool(ok), "witness": None if ok else witness}

    @property
    def failures(self) -> list:
        return [k for k, v in self.checks.items() if not v["ok"]]

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        if self.files is not None:
            return "pass" if all(f["conforms"] for f in self.files) else "fail"
        if self.expect is not None:
            return "pass" if self.expect in self.failures else "fail"
        return "pass" if not self.failures else "fail"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "error": 2}[self.status]

    def verdict_line(self) -> str:
        text = " ".join(self.command)
        status = self.status
        if status == "error":
            return f"ERROR {text}: {self.error}"
        if self.files is not None:
            bad = [f["file"] for f in self.files if not f["conforms"]]
            tail = f" ({len(self.files)} files)" if not bad else f": {', '.join(bad)}"
            return f"{status.upper()} {text}{tail}"
        if self.expect is not None:
            how = "fails as expected at" if status == "pass" else "expected a failure at"
            return f"{status.upper()} {text} ({how} {self.expect})"
        fails = self.failures
        return f"{status.upper()} {text}" + (f" (first failure: {fails[0]})" if fails else "")

    def as_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "command": list(self.command),
            "status": self.status,
            "checks": self.checks,
            "cohomology": self.cohomology,
            "objects": self.objects,
            "flags": self.flags,
            "expect": self.expect,
            "error": self.error,
        }
        if self.wall_time is not None:
            out["wall_time"] = self.wall_time
        if self.files is not None:
            out["files"] = self.files
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        if data.get("schema") != SCHEMA:
            raise InputError(f"unsupported report schema {data.get('schema')!r}")
        return cls(list(data["command"]), dict(data.get("checks") or {}), data.get("cohomology"),
                   dict(data.get("objects") or {}), dict(data.get("flags") or {}),
                   data.get("expect"), data.get("error"), data.get("wall_time"), data.get("files"))


def to_json(report: Report) -> str:
    return json.dumps(report.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_report(text: str) -> Report:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"not a JSON report: {e}") from None
    return Report.from_dict(data)


def _cohomology_lines(coh: dict) -> list:
    lines = []
    dims = coh.get("dims", [])
    if coh.get("mode") == "HP":
        lines.append(f"HP  even {dims[0]}  odd {dims[1]}")
        if coh.get("stabilization_flag") is not None:
            lines.append(f"    stabilized: {'yes' if coh['stabilization_flag'] else 'no'}")
    else:
        lines.append(f"{coh.get('mode', 'H')}")
        lines.append("    degree  dim")
        lines.extend(f"    {n:>6}  {d}" for n, d in enumerate(dims))
    for key, value in sorted((coh.get("flags") or {}).items()):
        lines.append(f"    {key}: {value}")
    return lines


def to_text(report: Report) -> str:
    lines = [f"$ hopfcyclic {' '.join(report.command)}"]
    if report.checks:
        width = max(len(k) for k in report.checks)
        for name, v in report.checks.items():
            mark = "ok" if v["ok"] else "FAIL"
            wit = f"  {v['witness']}" if v["witness"] else ""
            lines.append(f"  {name:<{width}}  {mark}{wit}")
    if report.cohomology:
        lines.extend(_cohomology_lines(report.cohomology))
    for name, desc in report.objects.items():
        if not isinstance(desc, dict):
            lines.append(f"{name}: {desc}")
            continue
        flat = [f"{k}={v}" for k, v in desc.items() if not isinstance(v, dict)]
        lines.append(f"{name}: " + ", ".join(flat))
        for k, v in desc.items():
            if isinstance(v, dict):
                lines.extend(f"    {key} = {val}" for key, val in v.items())
    for key, value in sorted(report.flags.items()):
        lines.append(f"  [{key}: {value}]")
    for f in report.files or []:
        lines.append(f"  {'ok  ' if f['conforms'] else 'FAIL'}  {f['file']}")
        if not f["conforms"]:
            lines.extend(f"        {Report.from_dict(d).verdict_line()}"
                         for d in f["directives"] if d["status"] != "pass" or
                         (f["negative_control"] and d["expect"] is None))
    if report.wall_time is not None:
        lines.append(f"  wall time {report.wall_time:.3f} s")
    lines.append(report.verdict_line())
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "text", quiet: bool = False) -> str:
    if quiet:
        return report.verdict_line() + "\n"
    if fmt == "json":
        return to_json(report)
    return to_text(report)
