"""Seeded samplers for the verification suites.

All samplers draw from a numpy Generator built from the run seed, so a fixed
seed always yields the same points in the same order. Points come back as
log-polar pairs; callers convert to plain complex pairs when the moduli are
in range.
"""
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from src.dynamics.matrix_analysis import EigenData, logs_from_phis
from src.dynamics.scaled import ScaledComplex, ScaledPoint

BOUNDARY_FRACTION = 0.7


@dataclass(frozen=True)
class SamplingMargins:
    """Radii and potential ranges that keep samples away from singular loci."""

    intermediate_z: Tuple[float, float] = (0.05, 0.9)
    intermediate_w: float = 10.0
    enoki_z: Tuple[float, float] = (0.1, 2.0)
    enoki_w: float = 10.0
    ih_phi1: Tuple[float, float] = (-10.0, -0.1)
    ih_phi2: Tuple[float, float] = (-5.0, 5.0)


DEFAULT_MARGINS = SamplingMargins()


def make_rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _args(rng: np.random.Generator, n: int) -> np.ndarray:
    # uniform on (-pi, pi]
    return math.pi - rng.uniform(0.0, 2.0 * math.pi, size=n)


def _points(log_z, log_w, arg_z, arg_w) -> List[ScaledPoint]:
    return [
        (ScaledComplex(lz, az), ScaledComplex(lw, aw))
        for lz, lw, az, aw in zip(log_z, log_w, arg_z, arg_w)
    ]


def _disc_log_radii(rng: np.random.Generator, radius: float, n: int) -> np.ndarray:
    # area-uniform radii in the disc of the given radius
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, size=n))
    with np.errstate(divide="ignore"):
        return np.log(r)


def log_annulus_radii(rng: np.random.Generator, bounds: Tuple[float, float], n: int) -> np.ndarray:
    low, high = bounds
    return np.log(rng.uniform(low, high, size=n))


def sample_family(rng: np.random.Generator, family: str, n: int, eigen: EigenData = None,
                  margins: SamplingMargins = DEFAULT_MARGINS) -> List[ScaledPoint]:
    """In-domain samples with the margins of the family's invariant function."""
    if family == "intermediate":
        log_z = log_annulus_radii(rng, margins.intermediate_z, n)
        log_w = _disc_log_radii(rng, margins.intermediate_w, n)
    elif family == "ih":
        phi1 = rng.uniform(*margins.ih_phi1, size=n)
        phi2 = rng.uniform(*margins.ih_phi2, size=n)
        log_z, log_w = logs_from_phis(eigen, phi1, phi2)
    else:
        log_z = log_annulus_radii(rng, margins.enoki_z, n)
        log_w = _disc_log_radii(rng, margins.enoki_w, n)
    return _points(log_z, log_w, _args(rng, n), _args(rng, n))


def sample_polydisc(rng: np.random.Generator, r1: float, r2: float, n: int,
                    boundary_fraction: float = BOUNDARY_FRACTION) -> List[ScaledPoint]:
    """Closed polydisc samples; a boundary_fraction share sits on |z| = r1, |w| = r2 or both."""
    n_boundary = int(round(boundary_fraction * n))
    log_z = _disc_log_radii(rng, r1, n)
    log_w = _disc_log_radii(rng, r2, n)
    # 0: z on the boundary, 1: w, 2: both (distinguished boundary)
    modes = rng.integers(0, 3, size=n_boundary)
    log_z[:n_boundary] = np.where(modes != 1, math.log(r1), log_z[:n_boundary])
    log_w[:n_boundary] = np.where(modes != 0, math.log(r2), log_w[:n_boundary])
    return _points(log_z, log_w, _args(rng, n), _args(rng, n))


def sample_band(rng: np.random.Generator, eigen: EigenData, c1: float, delta: float, c2: float, n: int,
                boundary_fraction: float = BOUNDARY_FRACTION) -> Tuple[np.ndarray, np.ndarray]:
    """Log-moduli of samples of D(c1, delta, c2), drawn in (phi1, phi2) and inverted."""
    n_boundary = int(round(boundary_fraction * n))
    phi1 = rng.uniform(-c1 * delta, -c1, size=n)
    phi2 = rng.uniform(-c2, c2, size=n)
    sides = rng.integers(0, 4, size=n_boundary)
    head1, head2 = phi1[:n_boundary], phi2[:n_boundary]
    head1[sides == 0] = -c1 * delta
    head1[sides == 1] = -c1
    head2[sides == 2] = -c2
    head2[sides == 3] = c2
    return logs_from_phis(eigen, phi1, phi2)


def sphere_points(center: Sequence[complex], r: float, n_side: int = 8) -> List[Tuple[complex, complex]]:
    """Deterministic n_side^3 grid on the sphere of radius r about center.

    (z, w) = center + (r cos(theta) e^{ia}, r sin(theta) e^{ib}), theta in
    [0, pi/2] endpoints included, a and b on a uniform angular grid.
    """
    cz, cw = complex(center[0]), complex(center[1])
    thetas = np.linspace(0.0, math.pi / 2.0, n_side)
    angles = 2.0 * math.pi * np.arange(n_side) / n_side
    points = []
    for theta in thetas:
        rz, rw = r * math.cos(theta), r * math.sin(theta)
        for a in angles:
            for b in angles:
                points.append((cz + rz * complex(math.cos(a), math.sin(a)),
                               cw + rw * complex(math.cos(b), math.sin(b))))
    return points


def chunked(items: Sequence, n_chunks: int) -> List[Sequence]:
    """Split into contiguous chunks; the split depends on len(items) and n_chunks only."""
    n_chunks = max(1, min(n_chunks, len(items)))
    bounds = np.linspace(0, len(items), n_chunks + 1).astype(int)
    return [items[start:stop] for start, stop in zip(bounds[:-1], bounds[1:])]
