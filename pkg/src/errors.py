"""Exception hierarchy shared by every kato-germ-lab module."""
from dataclasses import dataclass
from typing import List


class KglError(Exception):
    """Base class for all library errors."""

    code = "KglError"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def as_dict(self):
        return {"code": self.code, "message": self.message}


class ValidationError(KglError):
    """A parameter record violates one or more normal-form conditions.

    All violated conditions are collected, not only the first one found.
    """

    code = "ValidationError"

    def __init__(self, violations: List[Violation]):
        self.violations = list(violations)
        joined = "; ".join(f"{v.code}: {v.message}" for v in self.violations)
        super().__init__(joined)

    @property
    def codes(self) -> List[str]:
        return [v.code for v in self.violations]


class SpecFormatError(KglError):
    code = "SpecFormatError"


class DomainViolation(KglError):
    code = "DomainViolation"


class OutOfDomain(KglError):
    code = "OutOfDomain"


class ZeroCoordinate(KglError):
    code = "ZeroCoordinate"


class MatrixOverflow(KglError):
    code = "Overflow"


class DegenerateSpectrum(KglError):
    code = "DegenerateSpectrum"


class DegenerateGerm(KglError):
    code = "Degenerate"


class PeriodMismatch(KglError):
    code = "PeriodMismatch"


class NotInCone(KglError):
    code = "NotInCone"


class MissingPsi(KglError):
    code = "MissingPsi"


class UnexpectedPsi(KglError):
    code = "UnexpectedPsi"
