"""Functions with known Levi forms, and the tampering hook used for falsification."""
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

from src.dynamics.germs import point_from_logs
from src.dynamics.scaled import ScaledComplex, is_scaled_point, to_complex_point

# steep-saddle has Levi eigenvalues 1e5 and -1
STEEP_WEIGHT = 1e5


def _flat(z: complex, w: complex) -> float:
    return abs(z) ** 2 + abs(w) ** 2


def _negative(z: complex, w: complex) -> float:
    return -abs(z) ** 2


def _mixed(z: complex, w: complex) -> float:
    return z.real * w.real


def _steep_saddle(z: complex, w: complex) -> float:
    return STEEP_WEIGHT * abs(z) ** 2 - abs(w) ** 2


def _log_z(z: complex, w: complex) -> float:
    return math.log(abs(z)) if z != 0 else -math.inf


def _zero(z: complex, w: complex) -> float:
    return 0.0


CALIBRATIONS = {
    "flat": _flat,
    "neg-z2": _negative,
    "rezrew": _mixed,
    "steep-saddle": _steep_saddle,
    "logz": _log_z,
    "zero": _zero,
}

# known min Levi eigenvalue and |u_zw̄|
EXPECTED_LEVI = {"flat": 1.0, "neg-z2": -1.0, "rezrew": -0.25, "steep-saddle": -1.0, "logz": 0.0, "zero": 0.0}
EXPECTED_MIXED = {"flat": 0.0, "neg-z2": 0.0, "rezrew": 0.25, "steep-saddle": 0.0, "logz": 0.0, "zero": 0.0}
EXPECTED_LELONG = {"logz": 1.0, "zero": 0.0}


@dataclass(frozen=True)
class CalibrationFunction:
    """A closed-form potential with the eval_u contract of InvariantFunction."""

    kind: str
    family = "calibration"
    psi = None
    eigen = None
    germ = None
    c = 0.0

    def __post_init__(self):
        if self.kind not in CALIBRATIONS:
            raise ValueError(f"unknown calibration {self.kind!r}; choose from {sorted(CALIBRATIONS)}")

    @property
    def name(self) -> str:
        return f"calibration[{self.kind}]"

    def eval_u(self, point) -> float:
        if is_scaled_point(point):
            if self.kind == "logz":
                return point[0].log_mod
            point = to_complex_point(point)
        z, w = point
        return CALIBRATIONS[self.kind](complex(z), complex(w))

    def eval_log_chart(self, zeta: complex, omega: complex) -> float:
        return self.eval_u(point_from_logs(zeta.real, omega.real, zeta.imag, omega.imag))

    def descriptor(self) -> Dict[str, Any]:
        return {"calibration": self.kind}


@dataclass(frozen=True)
class TamperedFunction:
    """u + weight |w|^2: keeps the base automorphy constant so invariance must fail."""

    base: Any
    weight: float = 0.1

    @property
    def family(self) -> str:
        return self.base.family

    @property
    def psi(self):
        return self.base.psi

    @property
    def eigen(self):
        return self.base.eigen

    @property
    def germ(self):
        return self.base.germ

    @property
    def c(self) -> float:
        return self.base.c

    @property
    def name(self) -> str:
        return f"{self.base.name}+{self.weight}|w|^2"

    def eval_u(self, point) -> float:
        w = point[1]
        w = w if isinstance(w, ScaledComplex) else ScaledComplex.from_complex(w)
        return self.base.eval_u(point) + self.weight * (0.0 if w.is_zero else math.exp(2.0 * w.log_mod))

    def eval_log_chart(self, zeta: complex, omega: complex) -> float:
        return self.eval_u(point_from_logs(zeta.real, omega.real, zeta.imag, omega.imag))


TAMPERS = {"add-wsq": lambda u: TamperedFunction(u, 0.1)}


def tamper(u, mode: str):
    if mode not in TAMPERS:
        raise ValueError(f"unknown tamper mode {mode!r}; choose from {sorted(TAMPERS)}")
    return TAMPERS[mode](u)


def descriptor(u) -> Optional[Dict[str, Any]]:
    """Germ descriptor for reports; calibration inputs name themselves instead."""
    if u.germ is not None:
        return u.germ.to_spec()
    return u.descriptor() if hasattr(u, "descriptor") else None
