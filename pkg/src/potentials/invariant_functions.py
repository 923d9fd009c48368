"""Invariant plurisubharmonic functions of the three germ families.

    enoki         u = log|z|                                  u o f = u + log|alpha|
    intermediate  u = -log(-log|z|) - psi(log(-log|z|))        u o f = u - log p
    ih            u = -log(-phi) - psi(log(-phi))              u o f = u - log lambda1

with phi = alpha log|z| + beta log|w| the expanding eigen-potential. Every
evaluation goes through log-polar coordinates, so points far inside the
double underflow range are handled exactly.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, NamedTuple, Optional, Union

import numpy as np
import pandas as pd

from src.dynamics.germs import EnokiGerm, Germ, IHGerm, IntermediateGerm, point_from_logs
from src.dynamics.matrix_analysis import EigenData, eigen_data, phi_from_logs
from src.dynamics.scaled import to_scaled_point
from src.errors import MissingPsi, NotInCone, OutOfDomain, PeriodMismatch, UnexpectedPsi
from src.potentials.kcone import DEFAULT_GRID, DEFAULT_TOL, PeriodicFunction, membership

logger = logging.getLogger(__name__)

PERIOD_RTOL = 1e-12

DOMAINS = {
    "enoki": "C^2",
    "intermediate": "|z| < 1",
    "ih": "phi1(z, w) < 0",
}

ArrayLike = Union[float, np.ndarray]


class AutomorphySpec(NamedTuple):
    constant: float
    relation: str


@dataclass(frozen=True)
class InvariantFunction:
    family: str
    psi: Optional[PeriodicFunction]
    eigen: Optional[EigenData]
    c: float
    germ: Germ

    @property
    def name(self) -> str:
        return f"u[{self.family}]"

    @property
    def domain(self) -> str:
        return DOMAINS[self.family]

    def _psi_term(self, t: float) -> float:
        return 0.0 if self.psi is None else self.psi(t)

    def eval_u(self, point) -> float:
        """u at a complex or log-polar point; -inf exactly on the singular locus."""
        z, w = to_scaled_point(point)
        if self.family == "enoki":
            return z.log_mod
        if self.family == "intermediate":
            if z.log_mod >= 0.0:
                raise OutOfDomain(f"intermediate u needs |z| < 1, got log|z| = {z.log_mod!r}")
            if z.is_zero:
                return -math.inf
            return profile_value(self.psi, math.log(-z.log_mod))
        phi1 = phi_from_logs(self.eigen.alpha, self.eigen.beta, z.log_mod, w.log_mod)
        if phi1 >= 0.0:
            raise OutOfDomain(f"ih u needs phi1 < 0, got {phi1!r}")
        if phi1 == -math.inf:
            return -math.inf
        return profile_value(self.psi, math.log(-phi1))

    def eval_log_chart(self, zeta: complex, omega: complex) -> float:
        """u(exp zeta, exp omega), the pull-back to the exponential cover."""
        return self.eval_u(point_from_logs(zeta.real, omega.real, zeta.imag, omega.imag))


def profile_value(psi: Optional[PeriodicFunction], t: float) -> float:
    """-t - psi(t) for the intermediate (t = log(-log|z|)) and ih (t = log(-phi1)) families."""
    return -t - (0.0 if psi is None else psi(t))


def ih_profile(f: InvariantFunction, t: ArrayLike) -> ArrayLike:
    """-t - psi(t): u as a function of log(-phi1) (ih) or log(-log|z|) (intermediate)."""
    t = np.asarray(t, dtype=float)
    psi_values = 0.0 if f.psi is None else f.psi(t)
    return -t - psi_values


def h_intermediate(t: ArrayLike) -> ArrayLike:
    """Radius with log(-log r) = t."""
    return np.exp(-np.exp(t))


def h_ih(s: ArrayLike) -> ArrayLike:
    """phi1 value with log(-phi1) = s."""
    return -np.exp(s)


def radial_profile(f: InvariantFunction, r: ArrayLike) -> ArrayLike:
    """v(r) = u(r, w) for 0 < r < 1; independent of w."""
    if f.family != "intermediate":
        raise ValueError(f"radial profile is defined for intermediate functions, not {f.family!r}")
    r = np.asarray(r, dtype=float)
    if np.any((r <= 0.0) | (r >= 1.0)):
        raise OutOfDomain("radial profile needs 0 < r < 1")
    return ih_profile(f, np.log(-np.log(r)))


def build(
    germ: Germ,
    psi: Optional[PeriodicFunction] = None,
    grid_n: int = DEFAULT_GRID,
    tol: float = DEFAULT_TOL,
) -> InvariantFunction:
    """Pair a germ with psi and check psi against the family's cone K_alpha."""
    if isinstance(germ, EnokiGerm):
        if psi is not None:
            raise UnexpectedPsi("Enoki germs carry the single invariant function log|z|; psi must be absent")
        return InvariantFunction("enoki", None, None, math.log(abs(germ.alpha)), germ)

    if psi is None:
        raise MissingPsi(f"{germ.family} germs need a psi in K_alpha")

    if isinstance(germ, IntermediateGerm):
        eigen = None
        period = math.log(germ.p)
    elif isinstance(germ, IHGerm):
        eigen = eigen_data(germ.matrix)
        period = math.log(eigen.lambda1)
    else:
        raise TypeError(f"unsupported germ type {type(germ).__name__}")

    if not math.isclose(psi.period, period, rel_tol=PERIOD_RTOL):
        raise PeriodMismatch(f"psi has period {psi.period!r}, the {germ.family} germ needs {period!r}")
    result = membership(psi, grid_n, tol)
    if not result.passed:
        raise NotInCone(
            f"-psi'' + psi' + 1 reaches {result.min_value:.6g} below the threshold {result.threshold:.6g}"
        )
    logger.debug("built %s invariant function, period %.17g", germ.family, period)
    return InvariantFunction(germ.family, psi, eigen, -period, germ)


def eval_u(f: InvariantFunction, point) -> float:
    return f.eval_u(point)


def automorphy_spec(f: InvariantFunction) -> AutomorphySpec:
    relation = "u o f = u + log|alpha|" if f.family == "enoki" else "u o f = u - log lambda"
    if f.family == "intermediate":
        relation = "u o f = u - log p"
    return AutomorphySpec(f.c, relation)


def describe(f: InvariantFunction) -> Dict[str, Any]:
    return {
        "family": f.family,
        "psi": None if f.psi is None else f.psi.to_spec(),
        "eigen": None if f.eigen is None else f.eigen.to_dict(),
        "c": f.c,
        "domain": f.domain,
        "germ": f.germ.to_spec(),
    }


def sample_frame(f, points: Iterable) -> pd.DataFrame:
    """Sampled values table with columns re_z, im_z, re_w, im_w, u."""
    rows = []
    for z, w in points:
        z, w = complex(z), complex(w)
        rows.append({"re_z": z.real, "im_z": z.imag, "re_w": w.real, "im_w": w.imag, "u": f.eval_u((z, w))})
    return pd.DataFrame(rows, columns=["re_z", "im_z", "re_w", "im_w", "u"])
