"""Versioned plain-text run reports.

A report is deterministic for fixed inputs and seed: elapsed times are only
written when requested.  Layout::

    repdim-report 1
    run: corpus 5.3
    seed: 0
    summary: 12 pass, 0 fail
    [check] build A(1)
    status: pass
    computed: dim 4
    expected: dim 4
    provenance: stated
    seed: 0
"""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field as dc_field
from typing import Optional

REPORT_HEADER = "repdim-report 1"

PASS, FAIL, WARN, INFO = "pass", "fail", "warn", "info"


@dataclass
class CheckRecord:
    name: str
    status: str
    computed: str = ""
    expected: str = ""
    provenance: str = ""
    seed: Optional[int] = None
    elapsed: float = 0.0
    note: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL


@dataclass
class RunReport:
    run: str
    seed: int
    records: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    def add(self, name: str, ok: Optional[bool], computed="", expected="", provenance="", note="",
            elapsed: float = 0.0, warn: bool = False) -> CheckRecord:
        """``ok`` None records an informational line that cannot fail."""
        if ok is None:
            status = INFO
        elif not ok:
            status = FAIL
        else:
            status = WARN if warn else PASS
        rec = CheckRecord(name, status, str(computed), str(expected), provenance, self.seed, elapsed, note)
        self.records.append(rec)
        return rec

    def error(self, name: str, exc: BaseException, provenance: str = "") -> CheckRecord:
        return self.add(name, False, computed=f"error: {exc}", provenance=provenance)

    @contextmanager
    def timed(self):
        """Yields a list; its first element is set to the elapsed seconds on exit."""
        box = [0.0]
        t = time.perf_counter()
        try:
            yield box
        finally:
            box[0] = time.perf_counter() - t

    @property
    def failures(self) -> list:
        return [r for r in self.records if r.failed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, WARN: 0, INFO: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    def render(self, timings: bool = False) -> str:
        c = self.counts()
        lines = [
            REPORT_HEADER,
            f"run: {self.run}",
            f"seed: {self.seed}",
            f"summary: {c[PASS]} pass, {c[FAIL]} fail, {c[WARN]} warn, {c[INFO]} info",
        ]
        for n in self.notes:
            lines.append(f"note: {n}")
        for r in self.records:
            lines.append(f"[check] {r.name}")
            lines.append(f"status: {r.status}")
            if r.computed:
                lines.append(f"computed: {r.computed}")
            if r.expected:
                lines.append(f"expected: {r.expected}")
            if r.provenance:
                lines.append(f"provenance: {r.provenance}")
            if r.note:
                lines.append(f"note: {r.note}")
            lines.append(f"seed: {r.seed}")
            if timings:
                lines.append(f"elapsed: {r.elapsed:.3f}")
        return "\n".join(lines) + "\n"


def merge(run: str, seed: int, reports: list) -> RunReport:
    out = RunReport(run, seed)
    for r in reports:
        out.notes.extend(r.notes)
        for rec in r.records:
            rec = CheckRecord(**{**rec.__dict__, "name": f"{r.run}: {rec.name}"})
            out.records.append(rec)
    return out
