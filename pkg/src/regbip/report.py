"""Verification reports shared by the Hecke, Newman and congruence checkers."""

from __future__ import annotations

import enum
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

SCHEMA = 1
MAX_WITNESSES = 10


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIP = "SKIP"


@dataclass
class Witness:
    n: int
    index: int
    lhs: int
    rhs: int

    def to_json(self):
        return {"n": self.n, "index": self.index, "lhs": str(self.lhs), "rhs": str(self.rhs)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["n"], obj["index"], int(obj["lhs"]), int(obj["rhs"]))


@dataclass
class VerificationReport:
    family_id: str
    params: dict
    n_range: tuple[int, int]
    status: Status
    witnesses: list[Witness] = field(default_factory=list)
    hypotheses: list[dict] = field(default_factory=list)
    checked: int = 0
    skipped_n: int = 0
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status is Status.FAIL and not self.witnesses:
            raise ValueError("a FAIL report needs at least one witness")

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAIL

    def summary(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{self.status.value:4} {self.family_id} [{params}] n={self.n_range[0]}..{self.n_range[1]}"
        if self.status is Status.FAIL:
            w = self.witnesses[0]
            line += f" first witness n={w.n}: {w.lhs} vs {w.rhs}"
        elif self.status is Status.SKIP:
            unmet = [h["name"] for h in self.hypotheses if not h["holds"]]
            line += " unmet: " + "; ".join(unmet)
        return line

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "family": self.family_id,
            "params": self.params,
            "n_range": list(self.n_range),
            "status": self.status.value,
            "witnesses": [w.to_json() for w in self.witnesses],
            "hypotheses": self.hypotheses,
            "checked": self.checked,
            "skipped_n": self.skipped_n,
            "notes": self.notes,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 4)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "VerificationReport":
        return cls(obj["family"], obj["params"], tuple(obj["n_range"]), Status(obj["status"]),
                   [Witness.from_json(w) for w in obj["witnesses"]], obj["hypotheses"],
                   obj["checked"], obj["skipped_n"], obj["notes"], obj.get("elapsed", 0.0))


def hypothesis(name: str, holds: bool, detail: str = "") -> dict:
    out = {"name": name, "holds": bool(holds)}
    if detail:
        out["detail"] = detail
    return out


def aggregate(reports: list[VerificationReport], timing: bool = True) -> dict:
    counts = {s.value: sum(r.status is s for r in reports) for s in Status}
    return {"schema": SCHEMA, "counts": counts,
            "reports": [r.to_json(timing) for r in reports]}


def dump(obj, path=None):
    text = json.dumps(obj, indent=2)
    if path is None:
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


@contextmanager
def stopwatch():
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = time.perf_counter() - t0


class Collector:
    """Accumulates witnesses and counts while a relation is checked over n."""

    def __init__(self):
        self.witnesses: list[Witness] = []
        self.failures = 0
        self.checked = 0
        self.skipped = 0

    def check(self, n: int, index: int, lhs: int, rhs: int, equal: bool):
        self.checked += 1
        if not equal:
            self.failures += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(Witness(n, index, lhs, rhs))

    def status(self) -> Status:
        return Status.FAIL if self.failures else Status.PASS

    def report(self, family_id, params, n_range, hypotheses=(), notes=(), elapsed=0.0):
        rep = VerificationReport(family_id, params, n_range, self.status(), self.witnesses,
                                 list(hypotheses), self.checked, self.skipped, list(notes), elapsed)
        if self.failures > len(self.witnesses):
            rep.notes.append(f"{self.failures} failures in total, first {len(self.witnesses)} kept")
        return rep
