# config.py - Run configuration and monitoring for the verification suites

import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from src.utils.serialization import make_json_safe

DEFAULT_SEED = 0xC0FFEE
DEFAULT_SAMPLES = 1000
DEFAULT_GRID = 8192
DEFAULT_MEMBERSHIP_TOL = 1e-9
DEFAULT_FD_STEP = 1e-3

# pass thresholds per suite
INVARIANCE_TOL = 1e-9
LEVI_TOL = 1e-4
FOLIATION_TOL = 1e-6
LEAF_TOL = 1e-10
RADIAL_TOL = 1e-4

DEFAULT_SUITES = ("invariance", "levi", "foliation", "containment", "lelong")
SUITES = DEFAULT_SUITES + ("radial", "leaf")
LOG_FORMAT = "%(asctime)s [%(levelname)s]: %(message)s"


def default_seed() -> int:
    """KGL_SEED overrides the documented default; decimal or 0x-prefixed hex."""
    raw = os.environ.get("KGL_SEED")
    return int(raw, 0) if raw else DEFAULT_SEED


def default_n_jobs() -> int:
    return int(os.environ.get("KGL_N_JOBS", "1"))


def default_log_level() -> str:
    return os.environ.get("KGL_LOG_LEVEL", "WARNING").upper()


def configure_logging(level: Optional[str] = None):
    logging.basicConfig(level=(level or default_log_level()).upper(), format=LOG_FORMAT, force=True)


@dataclass(frozen=True)
class RunConfig:
    command: str
    germ: Optional[str] = None
    psi: Optional[str] = None
    suites: Tuple[str, ...] = DEFAULT_SUITES
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_MEMBERSHIP_TOL
    grid_n: int = DEFAULT_GRID
    h: float = DEFAULT_FD_STEP
    out: Optional[str] = None
    dump: bool = False
    tamper: Optional[str] = None
    n_jobs: int = 1

    def __post_init__(self):
        if self.tol <= 0 or self.h <= 0:
            raise ValueError("tolerances and step sizes must be positive")
        if self.samples < 1:
            raise ValueError(f"samples must be positive, got {self.samples}")
        unknown = sorted(set(self.suites) - set(SUITES))
        if unknown:
            raise ValueError(f"unknown suites {unknown}; choose from {list(SUITES)}")


@dataclass
class MetricRecord:
    name: str
    value: float
    dimension: str


class VerificationMonitor:
    """
    Centralized monitoring for a verification run.
    Handles logging, metric records and failure alerts for every suite.
    """

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.records: List[MetricRecord] = []

    def log_run_start(self, command: str, context: Dict[str, Any]):
        """Log the start of a CLI command"""
        self.logger.info(f"Run {command} started with: {json.dumps(make_json_safe(context), sort_keys=True)}")
        self._put_metric("run_start", 1, command)

    def log_suite_success(self, report):
        self.logger.info(f"Suite {report.check} passed ({report.value_kind} {report.value:.6g})")
        self._put_metric("suite_success", 1, report.check)
        self.log_report_metrics(report)

    def log_suite_failure(self, report):
        """Log a failed suite and raise an alert record"""
        self.logger.warning(
            f"Suite {report.check} FAILED: {report.value_kind} {report.value:.6g} vs tolerance {report.tolerance:.3g}"
        )
        self._put_metric("suite_failure", 1, report.check)
        self.log_report_metrics(report)

    def log_report(self, report):
        if report.passed:
            self.log_suite_success(report)
        else:
            self.log_suite_failure(report)

    def log_report_metrics(self, report):
        self._put_metric(report.value_kind, report.value, report.check)
        self._put_metric("n_samples", report.n_samples, report.check)
        self.logger.debug(f"Suite {report.check} took {report.runtime:.3f}s")

    def _put_metric(self, metric_name: str, value: float, dimension_value: str):
        self.records.append(MetricRecord(metric_name, float(value), dimension_value))

    def metrics_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(r.name, r.value, r.dimension) for r in self.records], columns=["metric", "value", "suite"]
        )

    @property
    def failures(self) -> List[str]:
        return [r.dimension for r in self.records if r.name == "suite_failure"]
