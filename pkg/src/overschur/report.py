"""Verification reports and their JSON form."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

__all__ = ["VerificationReport", "VERDICTS", "timer"]

VERDICTS = ("verified", "counterexample", "skipped")


@dataclass
class VerificationReport:
    """Outcome of checking one claim over a finite range.

    ``counterexample`` is ``{"n": int, "value": str, "residue": int}``:
    for progressions ``value`` is the coefficient and ``residue`` its
    residue; for series comparisons ``n`` is the first mismatching index
    and ``value`` the difference of the two sides there.
    """

    claim_id: str
    params: dict
    n_max: int
    verdict: str
    counterexample: dict | None = None
    ms: int = 0
    notes: list = field(default_factory=list, compare=False)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "counterexample" and self.counterexample is None:
            raise ValueError("a counterexample verdict needs the counterexample")

    @property
    def passed(self) -> bool:
        return self.verdict == "verified"

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "claim_id": self.claim_id,
            "params": self.params,
            "n_max": self.n_max,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
        }
        if timing:
            d["ms"] = self.ms
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            claim_id=d["claim_id"],
            params=dict(d.get("params", {})),
            n_max=int(d["n_max"]),
            verdict=d["verdict"],
            counterexample=d.get("counterexample"),
            ms=int(d.get("ms", 0)),
        )

    def summary(self) -> str:
        line = f"{self.verdict.upper():<14} {self.claim_id}  n<={self.n_max}"
        if self.counterexample:
            ce = self.counterexample
            line += f"  first failure n={ce['n']} value={ce['value']} residue={ce['residue']}"
        if self.verdict == "skipped" and "reason" in self.params:
            line += f"  ({self.params['reason']})"
        return line


@contextmanager
def timer():
    """Yields a one-element list that receives the elapsed milliseconds."""
    box = [0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = int(round((time.perf_counter() - t0) * 1000))
