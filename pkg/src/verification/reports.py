import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from src.utils.serialization import dumps


@dataclass
class _Clock:
    elapsed: float = 0.0


@contextmanager
def report_timer():
    """Measure a suite's wall time; the value is logged, never serialized."""
    clock = _Clock()
    start = time.perf_counter()
    try:
        yield clock
    finally:
        clock.elapsed = time.perf_counter() - start


@dataclass
class VerificationReport:
    """Outcome of one verification check.

    `value` holds either a maximum residual or a minimum value; `value_kind`
    says which, and `passed` records whether the stated comparison against
    `tolerance` held.
    """

    check: str
    germ: Optional[Dict[str, Any]]
    n_samples: int
    seed: Optional[int]
    value: float
    value_kind: str
    tolerance: float
    passed: bool
    runtime: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        # runtime stays out so identical runs serialize identically
        return {
            "check": self.check,
            "germ": self.germ,
            "n_samples": self.n_samples,
            "seed": self.seed,
            self.value_kind: self.value,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "details": self.details,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())
