"""Command-line front end: python -m src.cli <command> [options].

Exit status: 0 all checks pass, 1 a suite failed (or psi is not a cone
member for `kcone`), 2 invalid input.
"""
import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.data.accumulator import SampleAccumulator
from src.data.collection import load_germ, load_psi
from src.dynamics.germs import IHGerm
from src.dynamics.matrix_analysis import eigen_data, trace_dichotomy
from src.errors import DegenerateSpectrum, KglError, ValidationError
from src.monitoring.config import (
    DEFAULT_FD_STEP,
    DEFAULT_GRID,
    DEFAULT_MEMBERSHIP_TOL,
    DEFAULT_SAMPLES,
    DEFAULT_SUITES,
    RunConfig,
    VerificationMonitor,
    configure_logging,
    default_log_level,
    default_n_jobs,
    default_seed,
)
from src.potentials.invariant_functions import automorphy_spec, build, describe
from src.potentials.kcone import max_scale, membership
from src.utils.plots import plot_all, plot_psi
from src.utils.serialization import CSV_FLOAT_FORMAT, dumps
from src.verification.calibration import CALIBRATIONS, CalibrationFunction, tamper
from src.verification.suites import LELONG_RADII, SuiteOptions, compute_C1, lelong_estimate, run_suites

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _emit(payload: Dict[str, Any]):
    sys.stdout.write(dumps(payload) + "\n")


def _error_payload(error: Exception) -> Dict[str, Any]:
    payload = {"error": getattr(error, "code", type(error).__name__), "message": str(error)}
    if isinstance(error, ValidationError):
        payload["errors"] = error.codes
        payload["violations"] = [v.as_dict() for v in error.violations]
    return payload


def _config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        germ=getattr(ns, "germ", None),
        psi=getattr(ns, "psi", None),
        suites=tuple(getattr(ns, "suites", DEFAULT_SUITES)),
        samples=getattr(ns, "samples", DEFAULT_SAMPLES),
        seed=getattr(ns, "seed", default_seed()),
        tol=getattr(ns, "tol", DEFAULT_MEMBERSHIP_TOL),
        grid_n=getattr(ns, "grid", DEFAULT_GRID),
        h=getattr(ns, "h", DEFAULT_FD_STEP),
        out=getattr(ns, "out", None),
        dump=getattr(ns, "dump", False),
        tamper=getattr(ns, "tamper", None),
        n_jobs=ns.n_jobs,
    )


# ----------------------------------------------------------------- commands

def _cmd_validate(cfg: RunConfig) -> int:
    try:
        germ = load_germ(cfg.germ)
    except ValidationError as e:
        _emit({"valid": False, "errors": e.codes, "violations": [v.as_dict() for v in e.violations]})
        return EXIT_INPUT
    _emit({"valid": True, "germ": germ.to_spec()})
    return EXIT_OK


def _cmd_analyze(cfg: RunConfig) -> int:
    germ = load_germ(cfg.germ)
    report: Dict[str, Any] = {"family": germ.family, "germ": germ.to_spec()}
    if isinstance(germ, IHGerm):
        m = germ.matrix
        report.update(matrix=m.to_list(), det=m.det, trace=m.trace, disc=m.trace ** 2 - 4 * m.det,
                      classification=trace_dichotomy(germ.word).value)
        try:
            ed = eigen_data(m)
        except DegenerateSpectrum as e:
            report.update(eigen=None, spectrum_error=str(e))
        else:
            report.update(eigen=ed.to_dict(), lambda1=ed.lambda1, c=-math.log(ed.lambda1), period=math.log(ed.lambda1))
    else:
        report["C1"] = compute_C1(germ.Q)
        if germ.family == "enoki":
            report["c"] = math.log(abs(germ.alpha))
        else:
            report.update(c=-math.log(germ.p), period=math.log(germ.p))
    _emit(report)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    germ = load_germ(cfg.germ)
    psi = load_psi(cfg.psi)
    u = build(germ, psi, cfg.grid_n, cfg.tol)
    if cfg.tamper:
        u = tamper(u, cfg.tamper)
    monitor = VerificationMonitor()
    monitor.log_run_start("verify", {"germ": germ.to_spec(), "suites": list(cfg.suites), "seed": cfg.seed})
    out_dir = Path(cfg.out) if cfg.out else (Path("reports") if cfg.dump else None)
    accumulator = SampleAccumulator(out_dir) if cfg.dump else None
    opts = SuiteOptions(samples=cfg.samples, seed=cfg.seed, h=cfg.h, n_jobs=cfg.n_jobs)
    reports = run_suites(cfg.suites, u, germ, opts, monitor, accumulator)

    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        for report in reports:
            (out_dir / f"{report.check}.json").write_text(report.to_json() + "\n")
    if accumulator is not None:
        accumulator.write()
        monitor.metrics_frame().to_csv(out_dir / "metrics.csv", index=False, float_format=CSV_FLOAT_FORMAT)

    passed = all(r.passed for r in reports)
    _emit({"function": describe(u.base if cfg.tamper else u), "tamper": cfg.tamper,
           "reports": [r.to_dict() for r in reports], "pass": passed})
    return EXIT_OK if passed else EXIT_FAILED


def _cmd_kcone(cfg: RunConfig) -> int:
    psi = load_psi(cfg.psi)
    if psi is None:
        raise ValueError("kcone needs --psi")
    result = membership(psi, cfg.grid_n, cfg.tol)
    _emit({"psi": psi.to_spec(), "membership": result.to_dict(), "max_scale": max_scale(psi, cfg.grid_n)})
    return EXIT_OK if result.passed else EXIT_FAILED


def _cmd_lelong(cfg: RunConfig, calibration: Optional[str], radii: List[float]) -> int:
    if calibration:
        u = CalibrationFunction(calibration)
    else:
        u = build(load_germ(cfg.germ), load_psi(cfg.psi), cfg.grid_n, cfg.tol)
    estimate = lelong_estimate(u, (0j, 0j), radii)
    _emit({"function": u.name, **estimate.to_dict()})
    return EXIT_OK


def _cmd_plot(cfg: RunConfig, what: str) -> int:
    psi = load_psi(cfg.psi)
    out_dir = Path(cfg.out or "plots")
    if cfg.germ is None:
        if psi is None or what not in ("psi", "all"):
            raise ValueError("plot needs --germ unless only psi is drawn")
        written = [plot_psi(psi, out_dir / "psi.svg")]
    else:
        u = build(load_germ(cfg.germ), psi, cfg.grid_n, cfg.tol)
        written = plot_all(u, psi, out_dir, what)
        if not written:
            raise ValueError(f"no {what!r} figure applies to {u.family} functions")
    _emit({"written": [str(p) for p in written]})
    return EXIT_OK


# ----------------------------------------------------------------- parser

def _radii(text: str) -> List[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _suites(text: str) -> List[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=default_log_level(), help="Logging level (default from KGL_LOG_LEVEL).")
    common.add_argument("--n-jobs", type=int, default=default_n_jobs(), help="joblib workers for sample evaluation.")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("--germ", help="Germ spec: JSON file path or inline JSON.")
    spec.add_argument("--psi", help="Periodic function spec: JSON file path or inline JSON.")
    spec.add_argument("--grid", type=int, default=DEFAULT_GRID, help="Grid points per period for membership.")
    spec.add_argument("--tol", type=float, default=DEFAULT_MEMBERSHIP_TOL, help="Membership tolerance.")

    p = argparse.ArgumentParser(
        prog="kato-germ-lab",
        description="Dloussky germs, invariant psh functions and their numerical verification.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common], help="Check a germ spec against its normal-form conditions.")
    v.add_argument("--germ", required=True)

    sub.add_parser("analyze", parents=[common, spec], help="Eigen data, classification and automorphy constant.")

    vf = sub.add_parser("verify", parents=[common, spec], help="Run verification suites.")
    vf.add_argument("--suites", type=_suites, default=list(DEFAULT_SUITES), help="Comma-separated suite names.")
    vf.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    vf.add_argument("--seed", type=lambda s: int(s, 0), default=default_seed(), help="Seed (KGL_SEED overrides the default).")
    vf.add_argument("--h", type=float, default=DEFAULT_FD_STEP, help="Relative finite-difference step.")
    vf.add_argument("--out", help="Directory for per-suite JSON reports.")
    vf.add_argument("--dump", action="store_true", help="Also write per-sample CSV dumps.")
    vf.add_argument("--tamper", choices=["add-wsq"], help="Falsification hook: perturb u before verifying.")

    sub.add_parser("kcone", parents=[common, spec], help="Cone membership and max scale of a psi.")

    lg = sub.add_parser("lelong", parents=[common, spec], help="Max-on-sphere slopes and Lelong estimate at 0.")
    lg.add_argument("--radii", type=_radii, default=list(LELONG_RADII), help="Comma-separated decreasing radii.")
    lg.add_argument("--calibration", choices=sorted(CALIBRATIONS), help="Use a calibration function instead of a germ.")

    pl = sub.add_parser("plot", parents=[common, spec], help="SVG plots of psi, v(r) and ih slices.")
    pl.add_argument("--out", help="Output directory (default ./plots).")
    pl.add_argument("--what", choices=["psi", "radial", "slice", "all"], default="all",
                    help="Which figure to draw (default: every figure that applies).")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    ns = _build_parser().parse_args(argv)
    configure_logging(ns.log_level)
    try:
        cfg = _config(ns)
        if ns.command == "validate":
            return _cmd_validate(cfg)
        if ns.command == "analyze":
            return _cmd_analyze(cfg)
        if ns.command == "verify":
            return _cmd_verify(cfg)
        if ns.command == "kcone":
            return _cmd_kcone(cfg)
        if ns.command == "lelong":
            return _cmd_lelong(cfg, ns.calibration, ns.radii)
        return _cmd_plot(cfg, ns.what)
    except (KglError, ValueError, OSError) as e:
        logger.error(f"{ns.command} failed: {e}")
        _emit(_error_payload(e))
        return EXIT_INPUT
    except Exception:
        logger.exception(f"{ns.command} crashed")
        raise


if __name__ == "__main__":
    sys.exit(main())
