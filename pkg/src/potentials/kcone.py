"""Finite trigonometric series of period alpha and membership in K_alpha.

K_alpha is the set of alpha-periodic psi with -psi'' + psi' + 1 >= 0. The
constraint involves derivatives only and is affine, so K_alpha is convex and
closed under adding constants, but not under arbitrary positive scaling.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from src.errors import PeriodMismatch, SpecFormatError

logger = logging.getLogger(__name__)

DEFAULT_GRID = 8192
MIN_GRID = 1024
DEFAULT_TOL = 1e-9

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class PeriodicFunction:
    """psi(t) = a0 + sum_k a_k cos(w_k t) + b_k sin(w_k t), w_k = 2 pi k / period."""

    period: float
    a0: float = 0.0
    harmonics: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        if not (math.isfinite(self.period) and self.period > 0):
            raise ValueError(f"period must be positive and finite, got {self.period!r}")
        object.__setattr__(self, "harmonics", tuple((float(a), float(b)) for a, b in self.harmonics))

    @classmethod
    def zero(cls, period: float) -> "PeriodicFunction":
        return cls(period=period)

    @classmethod
    def sine(cls, period: float, amplitude: float = 1.0, k: int = 1) -> "PeriodicFunction":
        harmonics = [(0.0, 0.0)] * (k - 1) + [(0.0, amplitude)]
        return cls(period=period, harmonics=tuple(harmonics))

    @classmethod
    def from_spec(cls, spec: Mapping[str, Any]) -> "PeriodicFunction":
        try:
            return cls(
                period=float(spec["period"]),
                a0=float(spec.get("a0", 0.0)),
                harmonics=tuple((float(a), float(b)) for a, b in spec.get("harmonics", [])),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise SpecFormatError(f"malformed periodic function spec: {e}") from e

    def to_spec(self) -> Dict[str, Any]:
        return {"period": self.period, "a0": self.a0, "harmonics": [list(h) for h in self.harmonics]}

    @property
    def frequencies(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(1, len(self.harmonics) + 1) / self.period

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([math.hypot(a, b) for a, b in self.harmonics])

    def derivative(self, t: ArrayLike, order: int) -> ArrayLike:
        """Closed-form psi^(order)(t) for order 0..3."""
        if order not in (0, 1, 2, 3):
            raise ValueError(f"derivative order must be 0..3, got {order}")
        t_arr = np.asarray(t, dtype=float)
        total = np.full_like(t_arr, self.a0 if order == 0 else 0.0)
        for omega, (a, b) in zip(self.frequencies, self.harmonics):
            phase = omega * t_arr
            cos, sin = np.cos(phase), np.sin(phase)
            # d/dt rotates (cos, sin) -> (-sin, cos)
            for _ in range(order):
                cos, sin = -sin, cos
            total = total + omega ** order * (a * cos + b * sin)
        return float(total) if np.ndim(total) == 0 else total

    def __call__(self, t: ArrayLike) -> ArrayLike:
        return self.derivative(t, 0)

    def scaled(self, factor: float) -> "PeriodicFunction":
        return PeriodicFunction(
            self.period, factor * self.a0, tuple((factor * a, factor * b) for a, b in self.harmonics)
        )

    def shifted(self, constant: float) -> "PeriodicFunction":
        return PeriodicFunction(self.period, self.a0 + constant, self.harmonics)

    def combine(self, other: "PeriodicFunction", c_self: float, c_other: float) -> "PeriodicFunction":
        """c_self * self + c_other * other (same period)."""
        if not math.isclose(self.period, other.period, rel_tol=1e-12):
            raise PeriodMismatch(f"periods {self.period} and {other.period} differ")
        size = max(len(self.harmonics), len(other.harmonics))
        padded_a = list(self.harmonics) + [(0.0, 0.0)] * (size - len(self.harmonics))
        padded_b = list(other.harmonics) + [(0.0, 0.0)] * (size - len(other.harmonics))
        harmonics = tuple(
            (c_self * a1 + c_other * a2, c_self * b1 + c_other * b2)
            for (a1, b1), (a2, b2) in zip(padded_a, padded_b)
        )
        return PeriodicFunction(self.period, c_self * self.a0 + c_other * other.a0, harmonics)


def eval_psi(psi: PeriodicFunction, t: ArrayLike, order: int = 0) -> ArrayLike:
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    return psi.derivative(t, order)


def cone_operator(psi: PeriodicFunction, t: ArrayLike) -> ArrayLike:
    """g(t) = -psi''(t) + psi'(t) + 1."""
    return -psi.derivative(t, 2) + psi.derivative(t, 1) + 1.0


def operator_lipschitz(psi: PeriodicFunction) -> float:
    """Bound on |g'| = |-psi''' + psi''| from the coefficients."""
    omegas = psi.frequencies
    return float(np.sum(psi.amplitudes * (omegas ** 3 + omegas ** 2)))


def period_grid(period: float, grid_n: int) -> np.ndarray:
    return period * np.arange(grid_n) / grid_n


def operator_profile(psi: PeriodicFunction, grid_n: int = DEFAULT_GRID) -> Tuple[np.ndarray, np.ndarray]:
    t = period_grid(psi.period, grid_n)
    return t, cone_operator(psi, t)


@dataclass(frozen=True)
class MembershipResult:
    min_value: float
    passed: bool
    threshold: float
    lipschitz: float
    grid_n: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "min_value": self.min_value,
            "pass": self.passed,
            "threshold": self.threshold,
            "lipschitz": self.lipschitz,
            "grid_n": self.grid_n,
        }


def membership(psi: PeriodicFunction, grid_n: int = DEFAULT_GRID, tol: float = DEFAULT_TOL) -> MembershipResult:
    """Grid test of -psi'' + psi' + 1 >= 0, widened by the Lipschitz grid error."""
    if grid_n < MIN_GRID:
        raise ValueError(f"grid_n must be at least {MIN_GRID}, got {grid_n}")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    _, g = operator_profile(psi, grid_n)
    min_value = float(np.min(g))
    lipschitz = operator_lipschitz(psi)
    threshold = -tol - lipschitz * (psi.period / grid_n)
    passed = min_value >= threshold
    logger.debug("membership: min %.6g threshold %.6g pass %s", min_value, threshold, passed)
    return MembershipResult(min_value, passed, threshold, lipschitz, grid_n)


def max_scale(phi: PeriodicFunction, grid_n: int = DEFAULT_GRID) -> float:
    """Largest eps with eps * phi in K_alpha: 1 / max(phi'' - phi'), or +inf.

    The grid maximum is refined by a bounded scalar search on the bracketing
    grid cells.
    """
    if grid_n < MIN_GRID:
        raise ValueError(f"grid_n must be at least {MIN_GRID}, got {grid_n}")

    def excess(t):
        return phi.derivative(t, 2) - phi.derivative(t, 1)

    t = period_grid(phi.period, grid_n)
    values = excess(t)
    index = int(np.argmax(values))
    peak = float(values[index])
    if peak <= 0.0:
        return math.inf
    step = phi.period / grid_n
    refined = minimize_scalar(
        lambda x: -excess(x),
        bounds=(t[index] - step, t[index] + step),
        method="bounded",
        options={"xatol": 1e-14 * max(1.0, phi.period)},
    )
    peak = max(peak, float(-refined.fun))
    return 1.0 / peak


def random_series(rng: np.random.Generator, period: float, n_harmonics: int, scale: float = 1.0) -> PeriodicFunction:
    coefficients = rng.normal(0.0, scale, size=(n_harmonics, 2))
    return PeriodicFunction(period=period, a0=float(rng.normal()), harmonics=tuple(map(tuple, coefficients)))


def scaled_into_cone(phi: PeriodicFunction, fraction: float, grid_n: int = DEFAULT_GRID) -> PeriodicFunction:
    """fraction * eps* * phi; a cone member whenever fraction < 1."""
    eps = max_scale(phi, grid_n)
    if math.isinf(eps):
        return phi
    return phi.scaled(fraction * eps)


def psi_members(period: float, fractions: Sequence[float] = (0.0, 0.25, 0.5)) -> Tuple[PeriodicFunction, ...]:
    """Sample cone members: zero plus scaled sines of the given period."""
    sine = PeriodicFunction.sine(period)
    return tuple(scaled_into_cone(sine, f) if f > 0 else PeriodicFunction.zero(period) for f in fractions)
