import logging
from pathlib import Path
from typing import Dict, List

import pandas as pd

from src.utils.serialization import CSV_FLOAT_FORMAT

logger = logging.getLogger(__name__)


class SampleAccumulator:
    """Collects per-sample rows of each suite and writes them as CSV dumps."""

    def __init__(self, out_dir="reports"):
        self.out_dir = Path(out_dir)
        self.frames: Dict[str, List[pd.DataFrame]] = {}

    def add_samples(self, check: str, frame: pd.DataFrame):
        """Add one batch of per-sample rows for a check"""
        self.frames.setdefault(check, []).append(frame)
        logger.debug(f"Accumulated {len(frame)} rows for {check}")

    def combined(self, check: str) -> pd.DataFrame:
        return pd.concat(self.frames[check], ignore_index=True)

    def write(self) -> Dict[str, Path]:
        """Write one <check>_samples.csv per check; returns the written paths"""
        self.out_dir.mkdir(parents=True, exist_ok=True)
        written = {}
        for check in sorted(self.frames):
            path = self.out_dir / f"{check}_samples.csv"
            self.combined(check).to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
            written[check] = path
            logger.info(f"Wrote {path}")
        return written

    def get_stats(self) -> Dict[str, int]:
        """Row counts per check"""
        return {check: sum(len(f) for f in frames) for check, frames in self.frames.items()}
