"""Numerical verification suites for the invariant functions and their germs.

Every suite draws its samples from a Generator seeded with the run seed and
reduces per-sample values with max or min only, so the report does not
depend on how the samples were split across joblib workers.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from scipy.optimize import minimize_scalar

from src.dynamics.germs import EnokiGerm, IHGerm, IntermediateGerm, Polynomial
from src.dynamics.matrix_analysis import (
    EigenData,
    box_bounds,
    eigen_data,
    from_leaf_coordinates,
    leaf_coordinates,
)
from src.dynamics.scaled import to_complex_point
from src.errors import DegenerateGerm
from src.monitoring.config import (
    DEFAULT_FD_STEP,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    FOLIATION_TOL,
    INVARIANCE_TOL,
    LEAF_TOL,
    LEVI_TOL,
    RADIAL_TOL,
)
from src.potentials.invariant_functions import h_intermediate, radial_profile
from src.potentials.kcone import cone_operator, membership
from src.verification import sampling
from src.verification.calibration import EXPECTED_LELONG, descriptor
from src.verification.finite_differences import (
    levi_form,
    min_eigenvalue,
    radial_operator,
    relative_steps,
    richardson_levi_form,
)
from src.verification.regions import Region
from src.verification.reports import VerificationReport, report_timer

logger = logging.getLogger(__name__)

C1_SCAN_POINTS = 512
CONTAINMENT_SLACK = 1e-12
LEAF_SEGMENT_POINTS = 16
RADIAL_GRID = 256
LELONG_RADII = tuple(float(r) for r in np.geomspace(1e-2, 1e-6, 9))
LELONG_TOL = {"enoki": 1e-3, "intermediate": 1e-2, "ih": 1e-2, "calibration": 1e-3}


def _map_chunks(func: Callable, items: Sequence, n_jobs: int, *args) -> np.ndarray:
    chunks = sampling.chunked(items, n_jobs)
    parts = Parallel(n_jobs=n_jobs)(delayed(func)(chunk, *args) for chunk in chunks)
    return np.concatenate(parts)


def _sample_frame(points, values: np.ndarray) -> pd.DataFrame:
    rows = [to_complex_point(p) for p in points]
    return pd.DataFrame({
        "re_z": [z.real for z, _ in rows],
        "im_z": [z.imag for z, _ in rows],
        "re_w": [w.real for _, w in rows],
        "im_w": [w.imag for _, w in rows],
        "value": values,
    })


def _slack(bound) -> np.ndarray:
    return CONTAINMENT_SLACK * np.maximum(1.0, np.abs(bound))


# ----------------------------------------------------------------- invariance

def _invariance_chunk(points, u, germ) -> np.ndarray:
    return np.array([abs(u.eval_u(germ.eval_scaled(p)) - u.eval_u(p) - u.c) for p in points])


def invariance_residual(u, germ, samples: int = DEFAULT_SAMPLES, seed=DEFAULT_SEED,
                        n_jobs: int = 1, accumulator=None) -> VerificationReport:
    """max |u(f(x)) - u(x) - c| over in-domain samples."""
    rng = sampling.make_rng(seed)
    points = sampling.sample_family(rng, u.family, samples, eigen=u.eigen)
    with report_timer() as clock:
        residuals = _map_chunks(_invariance_chunk, points, n_jobs, u, germ)
    worst = float(np.max(residuals))
    if accumulator is not None:
        accumulator.add_samples("invariance", _sample_frame(points, residuals))
    return VerificationReport(
        check="invariance",
        germ=germ.to_spec(),
        n_samples=samples,
        seed=seed,
        value=worst,
        value_kind="max_residual",
        tolerance=INVARIANCE_TOL,
        passed=worst <= INVARIANCE_TOL,
        runtime=clock.elapsed,
        details={"c": u.c, "function": u.name},
    )


# ----------------------------------------------------------------- Levi form

def _leaf_chart(u, point, h: float):
    """u o E in the leaf coordinates (xi, tau) of the point, with per-coordinate steps.

    The chart is holomorphic in (z, w) off the axes, so its Levi form has the
    same inertia as the one in (z, w). An ih u depends on Re(xi) = phi1 only.
    """
    ed = u.eigen
    z, w = point
    xi, tau = leaf_coordinates(ed, complex(z.log_mod, z.arg), complex(w.log_mod, w.arg))

    def leaf_u(a: complex, b: complex) -> float:
        return u.eval_log_chart(*from_leaf_coordinates(ed, a, b))

    # the xi step follows Re(xi) = phi1 so the stencil stays inside phi1 < 0
    step_xi = h * max(abs(xi.real), 10.0 * h)
    step_tau = h * max(abs(tau), 1.0)
    return leaf_u, xi, tau, np.array([step_xi, step_xi, step_tau, step_tau])


def _leaf_chart_levi(u, point, h: float) -> np.ndarray:
    return richardson_levi_form(*_leaf_chart(u, point, h))


def _flat_chart_levi(u, point, h: float) -> np.ndarray:
    z, w = to_complex_point(point)
    return richardson_levi_form(lambda a, b: u.eval_u((a, b)), z, w, relative_steps(z, w, h))


def _levi_chunk(points, u, h) -> np.ndarray:
    chart = _leaf_chart_levi if u.family == "ih" else _flat_chart_levi
    return np.array([min_eigenvalue(chart(u, p, h)) for p in points])


def levi_psd_check(u, samples: int = DEFAULT_SAMPLES, h: float = DEFAULT_FD_STEP, seed=DEFAULT_SEED,
                   n_jobs: int = 1, accumulator=None) -> VerificationReport:
    """Min over samples of the smallest eigenvalue of the finite-difference Levi form."""
    rng = sampling.make_rng(seed)
    points = sampling.sample_family(rng, u.family, samples, eigen=u.eigen)
    with report_timer() as clock:
        eigenvalues = _map_chunks(_levi_chunk, points, n_jobs, u, h)
    worst = float(np.min(eigenvalues))
    if accumulator is not None:
        accumulator.add_samples("levi", _sample_frame(points, eigenvalues))
    return VerificationReport(
        check="levi",
        germ=descriptor(u),
        n_samples=samples,
        seed=seed,
        value=worst,
        value_kind="min_value",
        tolerance=LEVI_TOL,
        passed=worst >= -LEVI_TOL,
        runtime=clock.elapsed,
        details={"h": h, "chart": "leaf" if u.family == "ih" else "zw", "function": u.name},
    )


# ----------------------------------------------------------------- foliation

def _leaf_mixed(u, point, h: float) -> float:
    leaf_u, xi, tau, steps = _leaf_chart(u, point, h)
    return abs(levi_form(leaf_u, xi, tau, steps)[0, 1])


def _foliation_chunk(points, u, h) -> np.ndarray:
    if u.family == "ih":
        return np.array([_leaf_mixed(u, p, h) for p in points])
    return np.array([abs(_flat_chart_levi(u, p, h)[0, 1]) for p in points])


def _projection_residual(germ, point, h: float) -> float:
    """pr1 o f = f1 o pr1 and f*(dz) = f1'(z) dz, relative to the local scale."""
    z, w = to_complex_point(point)
    f1 = germ.first_projection()
    commute = abs(germ.eval((z, w))[0] - f1(z)) / max(1.0, abs(f1(z)))
    step = h * max(abs(z), 10.0 * h)

    def slope(s: float) -> complex:
        return (f1(z + s) - f1(z - s)) / (2.0 * s)

    derivative = (4.0 * slope(step / 2.0) - slope(step)) / 3.0
    factor = germ.dz_pullback_factor(z)
    return max(commute, abs(derivative - factor) / max(1.0, abs(factor)))


def _projection_chunk(points, germ, h) -> np.ndarray:
    return np.array([_projection_residual(germ, p, h) for p in points])


def _leaf_variation_chunk(items, u) -> np.ndarray:
    ed = u.eigen
    variations = []
    for point, direction in items:
        z, w = point
        xi, tau = leaf_coordinates(ed, complex(z.log_mod, z.arg), complex(w.log_mod, w.arg))
        values = [
            u.eval_log_chart(*from_leaf_coordinates(ed, xi, tau + s * direction))
            for s in np.linspace(0.0, 1.0, LEAF_SEGMENT_POINTS)
        ]
        variations.append(max(values) - min(values))
    return np.array(variations)


def leaf_constancy_check(u, samples: int = DEFAULT_SAMPLES, seed=DEFAULT_SEED, n_jobs: int = 1) -> VerificationReport:
    """Variation of an ih function along segments of leaves {alpha zeta + beta omega = const}."""
    if u.family != "ih":
        raise ValueError("leaf constancy is checked for ih functions only")
    rng = sampling.make_rng(seed)
    points = sampling.sample_family(rng, "ih", samples, eigen=u.eigen)
    directions = np.sqrt(rng.uniform(0.0, 1.0, samples)) * np.exp(1j * rng.uniform(-math.pi, math.pi, samples))
    with report_timer() as clock:
        variations = _map_chunks(_leaf_variation_chunk, list(zip(points, directions)), n_jobs, u)
    worst = float(np.max(variations))
    return VerificationReport(
        check="leaf",
        germ=descriptor(u),
        n_samples=samples,
        seed=seed,
        value=worst,
        value_kind="max_residual",
        tolerance=LEAF_TOL,
        passed=worst <= LEAF_TOL,
        runtime=clock.elapsed,
        details={"segment_points": LEAF_SEGMENT_POINTS},
    )


def foliation_check(u, germ=None, samples: int = DEFAULT_SAMPLES, h: float = DEFAULT_FD_STEP, seed=DEFAULT_SEED,
                    n_jobs: int = 1, accumulator=None) -> VerificationReport:
    """max |u_zw̄| (|V_xi tau̅| in leaf coordinates for ih).

    ih functions also get a leaf constancy sweep; Enoki and intermediate germs
    get a check that f preserves the foliation dz = 0.
    """
    rng = sampling.make_rng(seed)
    points = sampling.sample_family(rng, u.family, samples, eigen=u.eigen)
    with report_timer() as clock:
        mixed = _map_chunks(_foliation_chunk, points, n_jobs, u, h)
    worst = float(np.max(mixed))
    passed = worst <= FOLIATION_TOL
    details: Dict[str, Any] = {"h": h, "function": u.name}
    if u.family == "ih":
        leaf = leaf_constancy_check(u, samples, seed, n_jobs)
        details["leaf_variation"] = leaf.value
        details["leaf_tolerance"] = leaf.tolerance
        passed = passed and leaf.passed
    elif germ is not None and hasattr(germ, "first_projection"):
        # the foliation dz = 0 is carried to itself by f
        projection = float(np.max(_map_chunks(_projection_chunk, points, n_jobs, germ, h)))
        details["projection_residual"] = projection
        passed = passed and projection <= FOLIATION_TOL
    if accumulator is not None:
        accumulator.add_samples("foliation", _sample_frame(points, mixed))
    return VerificationReport(
        check="foliation",
        germ=germ.to_spec() if germ is not None else descriptor(u),
        n_samples=samples,
        seed=seed,
        value=worst,
        value_kind="max_residual",
        tolerance=FOLIATION_TOL,
        passed=passed,
        runtime=clock.elapsed,
        details=details,
    )


# ----------------------------------------------------------------- C1 and containments

def compute_C1(Q: Polynomial) -> float:
    """max over |z| = 1 of |Q(z)/z|: circle scan refined by a bounded scalar search."""
    terms = Q.nonzero_terms()
    if not terms:
        return 0.0
    powers = np.array([m - 1 for m, _ in terms])
    coeffs = np.array([c for _, c in terms])

    def modulus(theta):
        return abs(np.sum(coeffs * np.exp(1j * powers * theta)))

    thetas = 2.0 * math.pi * np.arange(C1_SCAN_POINTS) / C1_SCAN_POINTS
    values = np.abs(np.exp(1j * np.outer(thetas, powers)) @ coeffs)
    index = int(np.argmax(values))
    step = 2.0 * math.pi / C1_SCAN_POINTS
    refined = minimize_scalar(
        lambda t: -modulus(t),
        bounds=(thetas[index] - step, thetas[index] + step),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return float(max(values[index], -refined.fun))


def _orbit_logs_chunk(points, germ, n_max: int) -> np.ndarray:
    """(len(points), n_max + 1, 2) array of (log|z_n|, log|w_n|)."""
    logs = np.empty((len(points), n_max + 1, 2))
    for i, point in enumerate(points):
        current = point
        for n in range(n_max + 1):
            if n:
                current = germ.eval_scaled(current)
            logs[i, n] = current[0].log_mod, current[1].log_mod
    return logs


def enoki_log_bounds(germ: EnokiGerm, R2: float, C1: float, n_max: int) -> Tuple[np.ndarray, np.ndarray]:
    """log of the polydisc radii containing f^n(P(1, R2))."""
    log_alpha = math.log(abs(germ.alpha))
    log_c1 = math.log(C1) if C1 > 0 else -math.inf
    n = np.arange(n_max + 1)
    bound_z = n * log_alpha
    with np.errstate(divide="ignore"):
        bound_w = np.logaddexp(
            n * (n - 1) / 2 * log_alpha + math.log(R2 + C1),
            (n - 1) * log_alpha + log_c1 - math.log1p(-abs(germ.alpha)),
        )
    bound_w[0] = math.log(R2)
    return bound_z, bound_w


def _region_points(region: Region, points, seed, samples: int):
    """Seeded polydisc samples, or the caller's points after checking they lie in the region."""
    if points is None:
        return sampling.sample_polydisc(sampling.make_rng(seed), region.a, region.b, samples)
    outside = sum(1 for p in points if not region.contains(p, CONTAINMENT_SLACK))
    if outside:
        raise ValueError(f"{outside} of {len(points)} points lie outside {region.to_dict()}")
    return list(points)


def _adjusted(margin, bound) -> np.ndarray:
    """Log-scale margin plus the rounding allowance; boundary samples attain bounds exactly."""
    return margin + _slack(bound)


def enoki_containment(germ: EnokiGerm, R2: float = 2.0, n_max: int = 20, samples: int = DEFAULT_SAMPLES,
                      seed=DEFAULT_SEED, points=None, n_jobs: int = 1, accumulator=None) -> VerificationReport:
    """f^n(P(1, R2)) inside P(|alpha|^n, bound_n) for n <= n_max; margins in log scale."""
    if R2 <= 0:
        raise ValueError(f"R2 must be positive, got {R2}")
    if not 0 <= n_max <= 60:
        raise ValueError(f"n_max must be in [0, 60], got {n_max}")
    region = Region.polydisc(1.0, R2)
    points = _region_points(region, points, seed, samples)
    C1 = compute_C1(germ.Q)
    bound_z, bound_w = enoki_log_bounds(germ, R2, C1, n_max)
    with report_timer() as clock:
        logs = _map_chunks(_orbit_logs_chunk, points, n_jobs, germ, n_max)
        margins_z = np.min(_adjusted(bound_z[None, :] - logs[:, :, 0], bound_z[None, :]), axis=0)
        margins_w = np.min(_adjusted(bound_w[None, :] - logs[:, :, 1], bound_w[None, :]), axis=0)
    worst = float(min(np.min(margins_z), np.min(margins_w)))
    if accumulator is not None:
        accumulator.add_samples("containment", pd.DataFrame({
            "n": np.arange(n_max + 1), "log_bound_z": bound_z, "log_bound_w": bound_w,
            "margin_z": margins_z, "margin_w": margins_w,
        }))
    return VerificationReport(
        check="enoki_containment",
        germ=germ.to_spec(),
        n_samples=len(points),
        seed=seed,
        value=worst,
        value_kind="min_value",
        tolerance=0.0,
        passed=worst >= 0.0,
        runtime=clock.elapsed,
        details={"C1": C1, "R2": R2, "n_max": n_max, "region": region.to_dict(),
                 "margins_z": margins_z.tolist(), "margins_w": margins_w.tolist()},
    )


def intermediate_containment(germ: IntermediateGerm, r: float = 0.5, r_prime: float = 1.0, n_min: int = 4,
                             n_max: int = 40, samples: int = DEFAULT_SAMPLES, seed=DEFAULT_SEED, points=None,
                             n_jobs: int = 1, accumulator=None) -> VerificationReport:
    """log(|z|^2 + |w|^(2p)) < log(2 C1) + p^n log r on f^n(P(r, r')), n in [n_min, n_max].

    The bound holds only for large n; the report names the first n from
    which it holds for every sample up to n_max.
    """
    if not 0.0 < r < 1.0 or r_prime <= 0:
        raise ValueError(f"need 0 < r < 1 and r' > 0, got r={r}, r'={r_prime}")
    if not 0 <= n_min <= n_max:
        raise ValueError(f"need 0 <= n_min <= n_max, got [{n_min}, {n_max}]")
    C1 = compute_C1(germ.Q)
    if C1 == 0.0:
        raise DegenerateGerm("C1 = 0: every coefficient of Q vanishes")
    region = Region.polydisc(r, r_prime)
    points = _region_points(region, points, seed, samples)
    with report_timer() as clock:
        logs = _map_chunks(_orbit_logs_chunk, points, n_jobs, germ, n_max)
        n = np.arange(n_min, n_max + 1)
        bound = math.log(2.0 * C1) + np.array([float(germ.p ** k) for k in n]) * math.log(r)
        margins = np.array([
            np.min(_adjusted(Region.sublevel(level, germ.p).log_margins(logs[:, k, 0], logs[:, k, 1]), level))
            for k, level in zip(n, bound)
        ])
    threshold = None
    for index in range(len(n) - 1, -1, -1):
        if margins[index] < 0.0:
            break
        threshold = int(n[index])
    worst = float(np.min(margins[threshold - n_min:] if threshold is not None else margins))
    if accumulator is not None:
        accumulator.add_samples("containment", pd.DataFrame({"n": n, "log_bound": bound, "margin": margins}))
    return VerificationReport(
        check="intermediate_containment",
        germ=germ.to_spec(),
        n_samples=len(points),
        seed=seed,
        value=worst,
        value_kind="min_value",
        tolerance=0.0,
        passed=threshold == n_min,
        runtime=clock.elapsed,
        details={"C1": C1, "r": r, "r_prime": r_prime, "n_min": n_min, "n_max": n_max, "threshold": threshold,
                 "region": region.to_dict()},
    )


def ih_box_check(germ: IHGerm, ed: EigenData, c1: float = 1.0, delta: float = math.e, c2: float = 1.0,
                 n_max: int = 10, samples: int = DEFAULT_SAMPLES, seed=DEFAULT_SEED,
                 accumulator=None) -> VerificationReport:
    """f^n(D(c1, delta, c2)) against the four log-modulus bounds and r_n, for n <= n_max.

    Images are computed exactly in log space: (log|z|, log|w|) maps by A^n.
    """
    if c1 <= 0 or c2 <= 0 or delta < 1:
        raise ValueError(f"need c1, c2 > 0 and delta >= 1, got {(c1, delta, c2)}")
    log_z, log_w = sampling.sample_band(sampling.make_rng(seed), ed, c1, delta, c2, samples)
    worst_by_n, log_r_sq = [], []
    with report_timer() as clock:
        for n in range(n_max + 1):
            power = germ.matrix.power(n)
            lz = float(power.a) * log_z + float(power.b) * log_w
            lw = float(power.c) * log_z + float(power.d) * log_w
            b = box_bounds(ed, c1, delta, c2, n)
            margins = (
                _adjusted(lz - b.log_z_min, b.log_z_min),
                _adjusted(b.log_z_max - lz, b.log_z_max),
                _adjusted(lw - b.log_w_min, b.log_w_min),
                _adjusted(b.log_w_max - lw, b.log_w_max),
                _adjusted(Region.ball(b.log_r_sq).log_margins(lz, lw), b.log_r_sq),
            )
            worst_by_n.append(float(min(np.min(m) for m in margins)))
            log_r_sq.append(b.log_r_sq)
    worst = min(worst_by_n)
    if accumulator is not None:
        accumulator.add_samples("containment", pd.DataFrame({
            "n": np.arange(n_max + 1), "log_r_sq": log_r_sq, "margin": worst_by_n,
        }))
    return VerificationReport(
        check="ih_box",
        germ=germ.to_spec(),
        n_samples=samples,
        seed=seed,
        value=worst,
        value_kind="min_value",
        tolerance=0.0,
        passed=worst >= 0.0,
        runtime=clock.elapsed,
        details={"region": Region.band(ed, c1, delta, c2).to_dict(), "n_max": n_max, "eigen": ed.to_dict(),
                 "margins": worst_by_n},
    )


# ----------------------------------------------------------------- Lelong numbers

@dataclass(frozen=True)
class LelongEstimate:
    radii: Tuple[float, ...]
    maxima: Tuple[float, ...]
    slopes: Tuple[float, ...]
    last_slope: float
    nu_hat: float
    method: str = "fit"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "radii": list(self.radii),
            "maxima": list(self.maxima),
            "slopes": list(self.slopes),
            "last_slope": self.last_slope,
            "nu_hat": self.nu_hat,
            "method": self.method,
        }


def _log_mean(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    same = np.isclose(a, b, rtol=1e-15, atol=0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        mean = (a - b) / (np.log(a) - np.log(b))
    return np.where(same, a, mean)


def lelong_estimate(u, center=(0j, 0j), radii: Sequence[float] = LELONG_RADII) -> LelongEstimate:
    """Slopes of M(r) = max over a sphere of u against log r, extrapolated to r -> 0.

    Consecutive slopes are fitted by a quadratic in 1/L_k, L_k the logarithmic
    mean of |log r_k| and |log r_(k+1)|; the intercept is the estimate (a line
    when only two slopes exist). For -log(-log r) each slope equals 1/L_k
    exactly.
    """
    radii = np.asarray(radii, dtype=float)
    if len(radii) < 2 or np.any(np.diff(radii) >= 0):
        raise ValueError("radii must be a strictly decreasing list of at least two values")
    if radii[-1] < 1e-8:
        raise ValueError(f"smallest radius {radii[-1]} is below 1e-8")
    maxima = np.array([max(u.eval_u(p) for p in sampling.sphere_points(center, r)) for r in radii])
    log_r = np.log(radii)
    slopes = np.diff(maxima) / np.diff(log_r)
    last = float(slopes[-1])
    if np.all(slopes == slopes[0]):
        nu_hat, method = float(slopes[0]), "constant"
    elif len(slopes) >= 2 and radii[0] < 1.0:
        inverse = 1.0 / _log_mean(-log_r[:-1], -log_r[1:])
        coefficients = np.polyfit(inverse, slopes, 2 if len(slopes) >= 3 else 1)
        nu_hat, method = float(coefficients[-1]), "fit"
    else:
        nu_hat, method = last, "last_slope"
    logger.debug("lelong: slopes %s, nu_hat %.6g (%s)", slopes, nu_hat, method)
    return LelongEstimate(tuple(radii), tuple(maxima), tuple(slopes), last, nu_hat, method)


def expected_lelong(u) -> float:
    if u.family == "enoki":
        return 1.0
    if u.family == "calibration":
        return EXPECTED_LELONG[u.kind]
    return 0.0


def lelong_check(u, radii: Sequence[float] = LELONG_RADII) -> VerificationReport:
    """Lelong number at the origin against the family value (1 for log|z|, 0 otherwise)."""
    with report_timer() as clock:
        estimate = lelong_estimate(u, (0j, 0j), radii)
    expected = expected_lelong(u)
    tolerance = LELONG_TOL[u.family]
    return VerificationReport(
        check="lelong",
        germ=descriptor(u),
        n_samples=len(radii) * 8 ** 3,
        seed=None,
        value=estimate.nu_hat,
        value_kind="nu_hat",
        tolerance=tolerance,
        passed=abs(estimate.nu_hat - expected) <= tolerance,
        runtime=clock.elapsed,
        details={"expected": expected, **estimate.to_dict()},
    )


# ----------------------------------------------------------------- radial subharmonicity

def radial_subharmonicity_check(u, grid: int = RADIAL_GRID, h: float = 1e-4, tol: float = RADIAL_TOL
                                ) -> VerificationReport:
    """Compare r^2 (log r)^2 (v'' + v'/r) by finite differences with -psi'' + psi' + 1.

    For v(r) = u(r, .) the two agree exactly, so the radial condition holds
    at a radius iff the cone inequality holds at t = log(-log r). The grid
    covers one period of psi, starting at r = 1/2.
    """
    if u.family != "intermediate":
        raise ValueError("the radial condition applies to intermediate functions only")
    period = math.log(u.germ.p)
    t = math.log(math.log(2.0)) + period * np.arange(grid) / grid
    r = h_intermediate(t)
    with report_timer() as clock:
        fd = radial_operator(lambda x: radial_profile(u, x), r, h * r)
        normalized = fd * (r * np.log(r)) ** 2
        exact = cone_operator(u.psi, t) if u.psi is not None else np.ones_like(t)
        residual = float(np.max(np.abs(normalized - exact)))
        decided = np.abs(exact) > tol
        disagreements = int(np.sum(np.sign(normalized[decided]) != np.sign(exact[decided])))
    in_cone = membership(u.psi).passed if u.psi is not None else True
    radial_ok = bool(np.min(normalized) >= -tol)
    return VerificationReport(
        check="radial",
        germ=descriptor(u),
        n_samples=grid,
        seed=None,
        value=residual,
        value_kind="max_residual",
        tolerance=tol,
        passed=residual <= tol and disagreements == 0 and in_cone == radial_ok,
        runtime=clock.elapsed,
        details={"sign_disagreements": disagreements, "membership": in_cone, "radial_nonnegative": radial_ok},
    )


# ----------------------------------------------------------------- driver

@dataclass
class SuiteOptions:
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    h: float = DEFAULT_FD_STEP
    n_jobs: int = 1
    enoki_R2: float = 2.0
    enoki_n_max: int = 20
    intermediate_r: float = 0.5
    intermediate_r_prime: float = 1.0
    intermediate_n: Tuple[int, int] = (4, 40)
    ih_band: Tuple[float, float, float] = (1.0, math.e, 1.0)
    ih_n_max: int = 10
    lelong_radii: Tuple[float, ...] = field(default=LELONG_RADII)


def containment_for(germ, opts: SuiteOptions, accumulator=None) -> VerificationReport:
    if isinstance(germ, EnokiGerm):
        return enoki_containment(germ, opts.enoki_R2, opts.enoki_n_max, opts.samples, opts.seed,
                                 n_jobs=opts.n_jobs, accumulator=accumulator)
    if isinstance(germ, IntermediateGerm):
        n_min, n_max = opts.intermediate_n
        return intermediate_containment(germ, opts.intermediate_r, opts.intermediate_r_prime, n_min, n_max,
                                        opts.samples, opts.seed, n_jobs=opts.n_jobs, accumulator=accumulator)
    c1, delta, c2 = opts.ih_band
    return ih_box_check(germ, eigen_data(germ.matrix), c1, delta, c2, opts.ih_n_max, opts.samples, opts.seed,
                        accumulator=accumulator)


def run_suites(selection: Sequence[str], u, germ, opts: Optional[SuiteOptions] = None, monitor=None,
               accumulator=None) -> List[VerificationReport]:
    """Run the selected suites in the given order; one report each."""
    opts = opts or SuiteOptions()
    runners = {
        "invariance": lambda: invariance_residual(u, germ, opts.samples, opts.seed, opts.n_jobs, accumulator),
        "levi": lambda: levi_psd_check(u, opts.samples, opts.h, opts.seed, opts.n_jobs, accumulator),
        "foliation": lambda: foliation_check(u, germ, opts.samples, opts.h, opts.seed, opts.n_jobs, accumulator),
        "containment": lambda: containment_for(germ, opts, accumulator),
        "lelong": lambda: lelong_check(u, opts.lelong_radii),
        "radial": lambda: radial_subharmonicity_check(u),
        "leaf": lambda: leaf_constancy_check(u, opts.samples, opts.seed, opts.n_jobs),
    }
    reports = []
    for name in selection:
        if name not in runners:
            raise ValueError(f"unknown suite {name!r}")
        if name == "radial" and u.family != "intermediate" or name == "leaf" and u.family != "ih":
            logger.warning(f"Suite {name} does not apply to {u.family} functions; skipped")
            continue
        report = runners[name]()
        logger.info(f"Suite {report.check}: pass={report.passed} in {report.runtime:.3f}s")
        if monitor is not None:
            monitor.log_report(report)
        reports.append(report)
    return reports
