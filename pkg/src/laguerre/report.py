from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

CERTIFIED = "CERTIFIED"
SAMPLED = "SAMPLED"


@dataclass
class VerificationReport:
    """Outcome of one exhaustive (or sampled) check.

    Only the first counterexample in scan order is kept, plus a total count.
    """
    lemma: str
    mode: str = CERTIFIED
    universe: dict[str, int] = field(default_factory=dict)
    instantiations: int = 0
    counterexample_count: int = 0
    first_counterexample: Any = None
    details: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def success(self) -> bool:
        return self.counterexample_count == 0

    def fail(self, witness) -> None:
        if self.counterexample_count == 0:
            self.first_counterexample = witness
        self.counterexample_count += 1

    def check(self, ok: bool, witness) -> bool:
        self.instantiations += 1
        if not ok:
            self.fail(witness)
        return ok

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "lemma": self.lemma,
            "mode": self.mode,
            "success": self.success,
            "universe": dict(sorted(self.universe.items())),
            "instantiations": self.instantiations,
            "counterexample_count": self.counterexample_count,
            "first_counterexample": self.first_counterexample,
            "details": self.details,
        }
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    def line(self) -> str:
        status = "PASS" if self.success else "FAIL"
        return (f"{status} {self.lemma} [{self.mode}] instantiations={self.instantiations} "
                f"counterexamples={self.counterexample_count}")


class timed:
    """Context manager filling ``report.wall_time``."""

    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_time += time.perf_counter() - self.t0
        return False
