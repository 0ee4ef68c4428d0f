"""
Raising and lowering operators for the generalized Hermite functions.

    c* = alpha a* alpha^{-1} = (1/sqrt 2)(-d/dx + x (1 + 2D)/(1 + D))
    c  = alpha a  alpha^{-1} = (1/sqrt 2)( d/dx + x / (1 + D))

with D = delta e^{-x^2}. On the family H_n^delta they act as
c* H_n = sqrt(n+1) H_{n+1}, c H_n = sqrt(n) H_{n-1}, so [c, c*] = 1.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .factorization import check_delta, deformation
from .functions import JetValue, gen_hermite_jets
from .grid import Grid, ResidualReport
from .special_fn import check_index

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class LadderOperators:
    """
    The pair c, c* for one delta.

    ``flip_raising_sign`` negates the c* multiplier; it exists only as the
    negative control of the verification suite.
    """

    delta: float = 0.0
    flip_raising_sign: bool = False

    def __post_init__(self):
        object.__setattr__(self, "delta", check_delta(self.delta))

    def raising_coefficient(self, x):
        x = np.asarray(x, dtype=float)
        d = deformation(self.delta, x)
        coefficient = x * (1.0 + 2.0 * d) / (1.0 + d)
        if self.flip_raising_sign:
            coefficient = -coefficient
        return coefficient[()]

    def lowering_coefficient(self, x):
        x = np.asarray(x, dtype=float)
        return (x / (1.0 + deformation(self.delta, x)))[()]


def apply_a_star(f, x):
    """a* f = (1/sqrt 2)(-f' + x f)."""
    x = np.asarray(x, dtype=float)
    return ((-f.d1 + x * f.value) / SQRT2)[()]


def apply_a(f, x):
    """a f = (1/sqrt 2)(f' + x f)."""
    x = np.asarray(x, dtype=float)
    return ((f.d1 + x * f.value) / SQRT2)[()]


def apply_c_star(l, f, x):
    return ((-f.d1 + l.raising_coefficient(x) * f.value) / SQRT2)[()]


def apply_c(l, f, x):
    return ((f.d1 + l.lowering_coefficient(x) * f.value) / SQRT2)[()]


def _jets_with_neighbours(l, n, x):
    # H_{n-1}..H_{n+1}; the raising image needs one degree above n
    check_index(n + 1)
    jets = gen_hermite_jets(n + 1, l.delta, x)
    zero = JetValue(np.zeros_like(x), np.zeros_like(x), np.zeros_like(x))
    below = jets[n - 1] if n >= 1 else zero
    return below, jets[n], jets[n + 1]


def _report(residual, target, grid, label):
    scale = float(np.max(np.abs(target)))
    if scale == 0.0:
        return ResidualReport.from_residual(residual, grid, label=label)
    return ResidualReport.from_residual(residual, grid, scale=scale, label=label)


def ladder_residuals(l, n, grid=None):
    """
    Residuals of c* H_n - sqrt(n+1) H_{n+1} and c H_n - sqrt(n) H_{n-1},
    each relative to the max of its target; the n = 0 lowering target is zero
    and its residual is absolute.
    """
    n = check_index(n)
    grid = grid or Grid()
    x = grid.points()
    below, here, above = _jets_with_neighbours(l, n, x)

    raise_target = math.sqrt(n + 1.0) * above.value
    lower_target = math.sqrt(n) * below.value
    raising = _report(apply_c_star(l, here, x) - raise_target, raise_target, grid, "raising")
    lowering = _report(apply_c(l, here, x) - lower_target, lower_target, grid, "lowering")
    logger.debug("Ladder residuals n=%d delta=%g: %.3e / %.3e", n, l.delta, raising.max_abs, lowering.max_abs)
    return raising, lowering


def _number_images(l, n, x):
    below, here, above = _jets_with_neighbours(l, n, x)
    # inner applications replaced by their exact ladder images
    c_c_star = apply_c(l, math.sqrt(n + 1.0) * above, x)
    c_star_c = apply_c_star(l, math.sqrt(n) * below, x)
    return here, c_c_star, c_star_c


def number_operator_residuals(l, n, grid=None):
    """Residuals of c c* H_n = (n+1) H_n and c* c H_n = n H_n, relative to max |H_n|."""
    n = check_index(n)
    grid = grid or Grid()
    x = grid.points()
    here, c_c_star, c_star_c = _number_images(l, n, x)
    scale_target = here.value
    first = _report(c_c_star - (n + 1.0) * here.value, scale_target, grid, "c c*")
    second = _report(c_star_c - n * here.value, scale_target, grid, "c* c")
    return first, second


def commutator_residual(l, n, grid=None):
    """(c c* - c* c) H_n - H_n relative to max |H_n|."""
    n = check_index(n)
    grid = grid or Grid()
    x = grid.points()
    here, c_c_star, c_star_c = _number_images(l, n, x)
    return _report(c_c_star - c_star_c - here.value, here.value, grid, "commutator")
