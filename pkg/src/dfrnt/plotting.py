"""Figure rendering for the demo and sweep reports.

Figures are drawn on the Agg canvas directly, without pyplot, so rendering
has no global state and works headless. PNG metadata is stripped so equal
inputs give byte-identical files.
"""

from __future__ import annotations

import matplotlib as mpl
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure
import numpy as np

__all__ = ["STYLE", "plot_demo1d", "plot_sweep"]

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "legend.fontsize": 8,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.0,
    "savefig.dpi": 150,
}


def _save(fig, path):
    FigureCanvasAgg(fig)
    fig.savefig(path, metadata={"Software": None})


def plot_demo1d(path, outputs: dict, title: str = ""):
    """Amplitude (top row) and phase (bottom row) for each order.

    ``outputs`` maps order to the complex transformed signal.
    """
    orders = list(outputs)
    with mpl.rc_context(STYLE):
        fig = Figure(figsize=(2.4 * len(orders), 4.0))
        axes = fig.subplots(2, len(orders), squeeze=False, sharex=True)
        for j, alpha in enumerate(orders):
            out = np.asarray(outputs[alpha])
            idx = np.arange(out.shape[0])
            amp, ph = axes[0, j], axes[1, j]
            amp.plot(idx, np.abs(out), color="k")
            amp.set_title(f"alpha = {alpha:g}")
            ph.plot(idx, np.angle(out), color="tab:blue")
            ph.set_ylim(-3.5, 3.5)
            ph.set_xlabel("index")
        axes[0, 0].set_ylabel("amplitude")
        axes[1, 0].set_ylabel("phase [rad]")
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        _save(fig, path)


def plot_sweep(path, report, title: str = ""):
    """Decryption MSE against the order error, log scale."""
    with mpl.rc_context(STYLE):
        fig = Figure(figsize=(4.5, 3.0))
        ax = fig.subplots()
        floor = np.finfo(float).tiny
        ax.semilogy(report.delta_alpha, np.maximum(report.mse, floor), color="k", marker=".", ms=2)
        ax.set_xlabel("delta alpha")
        ax.set_ylabel("MSE")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        _save(fig, path)
