"""Structured run reports: human text plus a deterministic machine section.

The machine-readable section is sorted key=value lines with exact values
only (rationals as `p/q`); identical configuration and seed give a
byte-identical section.  JSON is emitted on request, never ingested.
"""

from __future__ import annotations

import json
import time


class RunReport:
    def __init__(self, title: str):
        self.title = title
        self.checks = []  # (key, status_bool, detail)
        self.values = {}  # machine-readable key -> string
        self.started = time.time()

    def check(self, key: str, ok: bool, detail: str = ""):
        self.checks.append((key, bool(ok), detail))
        self.values["check." + key] = "pass" if ok else "fail"
        return ok

    def value(self, key: str, val):
        self.values[key] = _stable(val)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def render_text(self, machine: bool = False) -> str:
        lines = ["== %s ==" % self.title]
        for key, ok, detail in self.checks:
            mark = "pass" if ok else "FAIL"
            lines.append("[%s] %s%s" % (mark, key, (" : " + detail) if detail else ""))
        lines.append("result: %s" % ("pass" if self.ok else "FAIL"))
        lines.append("elapsed: %.3fs" % (time.time() - self.started))
        if machine:
            lines.append("-- machine-readable --")
            for k in sorted(self.values):
                lines.append("%s=%s" % (k, self.values[k]))
        return "\n".join(lines)

    def to_json(self) -> str:
        payload = {
            "title": self.title,
            "ok": self.ok,
            "checks": [
                {"key": k, "ok": ok, "detail": d} for k, ok, d in self.checks
            ],
            "values": {k: self.values[k] for k in sorted(self.values)},
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _stable(val) -> str:
    if isinstance(val, (list, tuple)):
        return "[" + ", ".join(_stable(v) for v in val) + "]"
    if isinstance(val, bool):
        return "true" if val else "false"
    return str(val)
