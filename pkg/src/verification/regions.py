"""Regions used by the containment suites, with membership in log space."""
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.dynamics.matrix_analysis import EigenData, phi_from_logs
from src.dynamics.scaled import to_scaled_point


class RegionKind(str, enum.Enum):
    POLYDISC = "polydisc"
    SUBLEVEL = "sublevel"
    BAND = "band"
    BALL = "ball"


@dataclass(frozen=True)
class Region:
    """P(R1, R2), {|z|^2 + |w|^(2p) <= e^a}, D(c1, delta, c2) or {|z|^2 + |w|^2 <= e^a}.

    `a`, `b`, `c` hold the kind's parameters in order: (R1, R2), (log rho, p),
    (c1, delta, c2), (log r^2,). Sublevel and ball levels are logarithms so
    that levels like r^(p^n) stay representable. Bands need the eigen data
    defining phi1, phi2.
    """

    kind: RegionKind
    a: float
    b: float = 1.0
    c: float = 1.0
    eigen: Optional[EigenData] = None

    def __post_init__(self):
        if self.kind in (RegionKind.POLYDISC, RegionKind.BAND) and min(self.a, self.b, self.c) <= 0:
            raise ValueError(f"{self.kind.value} parameters must be positive: {(self.a, self.b, self.c)}")
        if math.isnan(self.a) or self.a == math.inf:
            raise ValueError(f"{self.kind.value} level must be finite or -inf, got {self.a}")
        if self.kind is RegionKind.SUBLEVEL and self.b < 1.0:
            raise ValueError(f"sublevel exponent p must be >= 1, got {self.b}")
        if self.kind is RegionKind.BAND:
            if self.b < 1.0:
                raise ValueError(f"band width delta must be >= 1, got {self.b}")
            if self.eigen is None:
                raise ValueError("band regions need eigen data")

    @classmethod
    def polydisc(cls, r1: float, r2: float) -> "Region":
        return cls(RegionKind.POLYDISC, r1, r2)

    @classmethod
    def sublevel(cls, log_rho: float, p: int) -> "Region":
        return cls(RegionKind.SUBLEVEL, float(log_rho), float(p))

    @classmethod
    def band(cls, eigen: EigenData, c1: float, delta: float, c2: float) -> "Region":
        return cls(RegionKind.BAND, c1, delta, c2, eigen)

    @classmethod
    def ball(cls, log_r_sq: float) -> "Region":
        return cls(RegionKind.BALL, float(log_r_sq))

    def log_margins(self, log_z, log_w) -> np.ndarray:
        """Signed log-scale distance to the boundary for arrays of log-moduli; >= 0 inside."""
        lz, lw = np.asarray(log_z, dtype=float), np.asarray(log_w, dtype=float)
        if self.kind is RegionKind.POLYDISC:
            return np.minimum(math.log(self.a) - lz, math.log(self.b) - lw)
        if self.kind is RegionKind.SUBLEVEL:
            return self.a - np.logaddexp(2.0 * lz, 2.0 * self.b * lw)
        if self.kind is RegionKind.BALL:
            return self.a - np.logaddexp(2.0 * lz, 2.0 * lw)
        ed = self.eigen
        phi1 = ed.alpha * lz + ed.beta * lw
        phi2 = ed.alpha2 * lz + ed.beta2 * lw
        c1, delta, c2 = self.a, self.b, self.c
        return np.minimum.reduce([phi1 + c1 * delta, -c1 - phi1, c2 - phi2, phi2 + c2])

    def log_margin(self, point) -> float:
        z, w = to_scaled_point(point)
        if self.kind is RegionKind.BAND:
            # axis points need the -inf conventions of phi_from_logs
            ed = self.eigen
            phi1 = phi_from_logs(ed.alpha, ed.beta, z.log_mod, w.log_mod)
            phi2 = phi_from_logs(ed.alpha2, ed.beta2, z.log_mod, w.log_mod)
            return min(phi1 + self.a * self.b, -self.a - phi1, self.c - phi2, phi2 + self.c)
        return float(self.log_margins(z.log_mod, w.log_mod))

    def contains(self, point, slack: float = 0.0) -> bool:
        return self.log_margin(point) >= -slack

    def to_dict(self):
        params = {
            RegionKind.POLYDISC: {"R1": self.a, "R2": self.b},
            RegionKind.SUBLEVEL: {"log_rho": self.a, "p": self.b},
            RegionKind.BAND: {"c1": self.a, "delta": self.b, "c2": self.c},
            RegionKind.BALL: {"log_r_sq": self.a},
        }[self.kind]
        return {"kind": self.kind.value, **params}
