"""Static SVG figures of psi, the radial profile v(r) and ih slices."""
import logging
from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from src.potentials.invariant_functions import ih_profile, radial_profile  # noqa: E402
from src.potentials.kcone import PeriodicFunction, operator_profile  # noqa: E402

logger = logging.getLogger(__name__)

# fixed hash salt and no date keep the SVG bytes stable across runs
matplotlib.rcParams.update({"font.size": 11, "svg.hashsalt": "kato-germ-lab", "svg.fonttype": "none"})
SVG_METADATA = {"Date": None, "Creator": None}
PLOT_POINTS = 1024


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata=SVG_METADATA)
    plt.close(fig)
    logger.info(f"Wrote {path}")
    return path


def plot_psi(psi: PeriodicFunction, path: Path, grid_n: int = PLOT_POINTS) -> Path:
    """psi(t) and the cone operator -psi'' + psi' + 1 over one period."""
    t, g = operator_profile(psi, grid_n)
    fig, axes = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    axes[0].plot(t, np.broadcast_to(psi(t), t.shape), color="tab:blue")
    axes[0].set_ylabel("psi(t)")
    axes[1].plot(t, g, color="tab:green")
    axes[1].axhline(0.0, color="black", linewidth=0.8, linestyle="--")
    axes[1].set_ylabel("-psi'' + psi' + 1")
    axes[1].set_xlabel("t")
    axes[0].set_title(f"period {psi.period:.6g}")
    fig.tight_layout()
    return _save(fig, path)


def plot_radial(u, path: Path) -> Path:
    """v(r) = u(r, .) on (0, 1) for an intermediate function."""
    r = np.linspace(1e-3, 1.0 - 1e-3, PLOT_POINTS)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(r, radial_profile(u, r), color="tab:blue")
    ax.set_xlabel("r")
    ax.set_ylabel("v(r)")
    fig.tight_layout()
    return _save(fig, path)


def plot_ih_slice(u, path: Path) -> Path:
    """u against t = log(-phi1); equals -t - psi(t)."""
    t = np.linspace(-3.0, 3.0, PLOT_POINTS)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, ih_profile(u, t), color="tab:purple")
    ax.set_xlabel("log(-phi1)")
    ax.set_ylabel("u")
    fig.tight_layout()
    return _save(fig, path)


def plot_all(u, psi, out_dir: Path, what: str = "all") -> List[Path]:
    """The selected figures that apply to the function's family ("all" for every one)."""
    out_dir = Path(out_dir)
    written = []
    if psi is not None and what in ("psi", "all"):
        written.append(plot_psi(psi, out_dir / "psi.svg"))
    if u.family == "intermediate" and what in ("radial", "all"):
        written.append(plot_radial(u, out_dir / "radial_profile.svg"))
    if u.family == "ih" and what in ("slice", "all"):
        written.append(plot_ih_slice(u, out_dir / "ih_slice.svg"))
    return written
