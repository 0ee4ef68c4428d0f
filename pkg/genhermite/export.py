"""
Tabular exports for the command line: the generalized Hermite family sampled
on a grid, the Mielnik partner potential with its first states, and a static
rendering of the family.
"""

import json
import logging
import math
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from .factorization import check_delta, normalized_partner_state, partner_potential
from .functions import gen_hermite_table
from .grid import Grid
from .special_fn import check_index

logger = logging.getLogger(__name__)

FIGURE_DELTAS = (0.0, 1.0, 10.0, 100.0)
FIGURE_N_MAX = 3
FIGURE_GRID = Grid(-5.0, 5.0, 501)
PARTNER_STATES = 3

# 17 significant digits, fixed width
FLOAT_FORMAT = "%.16e"


def figure_table(n_max=FIGURE_N_MAX, deltas=FIGURE_DELTAS, grid=FIGURE_GRID):
    """
    Long-format table with columns x, n, delta, value: one row per
    (delta, n, grid point), in that nesting order.
    """
    n_max = check_index(n_max)
    deltas = [check_delta(d) for d in deltas]
    x = grid.points()

    frames = []
    for delta in deltas:
        table = gen_hermite_table(n_max, delta, x)
        for n in range(n_max + 1):
            frames.append(pd.DataFrame({"x": x, "n": n, "delta": delta, "value": table[n]}))
    frame = pd.concat(frames, ignore_index=True)
    logger.info("Figure table: %d rows (n <= %d, %d deltas, %d points)",
                len(frame), n_max, len(deltas), grid.count)
    return frame


def partner_table(factorization, grid=None, states=PARTNER_STATES):
    """x, V_tilde and the first unit-norm partner eigenstates psi0, psi1, ..."""
    grid = grid or Grid(-5.0, 5.0, 1001)
    x = grid.points()
    columns = {"x": x, "V_tilde": partner_potential(factorization, x)}
    for m in range(states):
        columns[f"psi{m}"] = normalized_partner_state(factorization, m, x)
    return pd.DataFrame(columns)


def write_csv(frame, path):
    """UTF-8, LF line endings, header row, no index."""
    path = Path(path)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    logger.info("Wrote %d rows to %s", len(frame), path)
    return path


def write_json(payload, path):
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    return path


def render_figure(frame, path):
    """
    One panel per n, one line per delta. Each series is divided by its own
    maximum modulus, so the vertical axis is in arbitrary units.
    """
    # files only, never a window
    plt.switch_backend("Agg")
    orders = sorted(frame["n"].unique())
    ncols = 2 if len(orders) > 1 else 1
    nrows = math.ceil(len(orders) / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(6 * ncols, 4 * nrows), sharex=True, squeeze=False)

    for ax, n in zip(axes.flat, orders):
        for delta, series in frame[frame["n"] == n].groupby("delta", sort=True):
            peak = np.max(np.abs(series["value"]))
            scale = peak if peak > 0 else 1.0
            ax.plot(series["x"], series["value"] / scale, label=f"δ = {delta:g}", linewidth=1.5)
        ax.axhline(0.0, color="black", linewidth=0.5)
        ax.set_title(f"n = {n}")
        ax.set_ylabel("H_n^δ (arb. units)")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
    for ax in list(axes.flat)[len(orders):]:
        ax.set_visible(False)
    for ax in axes[-1]:
        ax.set_xlabel("x")

    plt.suptitle("Generalized Hermite functions", fontsize=14, fontweight="bold")
    plt.tight_layout()
    plt.savefig(path, dpi=300, bbox_inches="tight")
    plt.close(fig)
    logger.info("Saved figure: %s", path)
    return Path(path)
