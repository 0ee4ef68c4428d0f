"""Sample grids and the residual report every identity check returns."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``count`` points on [x_min, x_max], endpoints included."""

    x_min: float = -6.0
    x_max: float = 6.0
    count: int = 2001

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ParameterError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise ParameterError(f"grid needs x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if int(self.count) != self.count or self.count < 2:
            raise ParameterError(f"grid needs at least 2 points, got {self.count}")

    @classmethod
    def from_dict(cls, values):
        return cls(float(values["x_min"]), float(values["x_max"]), int(values["count"]))

    @property
    def spacing(self):
        return (self.x_max - self.x_min) / (self.count - 1)

    def points(self):
        return np.linspace(self.x_min, self.x_max, int(self.count))


DEFAULT_GRID = Grid()


@dataclass(frozen=True)
class ResidualReport:
    """Max-abs and RMS of a residual sampled on a grid, with the worst point."""

    max_abs: float
    rms: float
    argmax_x: float
    grid: Grid
    label: str = ""

    @classmethod
    def from_residual(cls, residual, grid, scale=1.0, label=""):
        """Build a report from residual samples on ``grid``, divided by ``scale``."""
        residual = np.broadcast_to(np.asarray(residual, dtype=float), (int(grid.count),))
        if math.isnan(scale):
            # a non-finite evaluation shows up as a NaN residual, not a bad argument
            scaled = np.full(residual.shape, math.nan)
        elif scale <= 0.0 or math.isinf(scale):
            raise ParameterError(f"residual scale must be positive and finite, got {scale}")
        else:
            scaled = np.abs(residual) / scale
        worst = int(np.argmax(scaled))
        return cls(
            max_abs=float(scaled[worst]),
            rms=float(np.sqrt(np.mean(scaled * scaled))),
            argmax_x=float(grid.points()[worst]),
            grid=grid,
            label=label,
        )

    def passes(self, tolerance):
        return self.max_abs <= tolerance
