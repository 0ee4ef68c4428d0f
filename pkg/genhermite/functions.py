"""
Generalized Hermite functions H_n^delta and the operators they diagonalize.

    H_n^delta(x) = c_n (e^{x^2} + delta)^{-1/2} H_n(x),
    c_n = (2^{n+1} n! sqrt(pi))^{-1/2},

evaluated as c_n e^{-x^2/2} (1 + delta e^{-x^2})^{-1/2} H_n(x) so that e^{x^2}
is never formed. They are eigenfunctions of the self-adjoint operator

    L = (1 + D) d^2/dx^2 - 2 x D d/dx - [x^2 / (1 + D) + D],   D = delta e^{-x^2},

with eigenvalue E_n = n + 1/2 against the weight w(x) = 2 (1 + D).

Operators act on jets (value, first and second derivative at x) rather than
on function handles, so every operator is a closed algebraic formula.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .factorization import alpha, beta_simple, check_delta, deformation, SimpleFactorization
from .grid import Grid, ResidualReport
from .special_fn import check_index, hermite_log_table, log_norm_const, qho_eigenfunction_table

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class GenHermiteFunction:
    """One generalized Hermite function H_n^delta."""

    n: int
    delta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "n", check_index(self.n))
        object.__setattr__(self, "delta", check_delta(self.delta))

    @property
    def energy(self):
        return self.n + 0.5

    def __call__(self, x):
        return gen_hermite(self, x)

    def jet(self, x):
        return gen_hermite_jet(self, x)


@dataclass(frozen=True)
class JetValue:
    """A function's value with its first and second derivatives at the same points."""

    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    def __mul__(self, factor):
        return JetValue(self.value * factor, self.d1 * factor, self.d2 * factor)

    __rmul__ = __mul__

    def __add__(self, other):
        return JetValue(self.value + other.value, self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other):
        return JetValue(self.value - other.value, self.d1 - other.d1, self.d2 - other.d2)


# =============================================================================
# Evaluation
# =============================================================================
def gen_hermite_table(n_max, delta, x):
    """H_k^delta(x) for k = 0..n_max, shape (n_max + 1,) + x.shape."""
    delta = check_delta(delta)
    sign, log_abs = hermite_log_table(n_max, x)
    x = np.asarray(x, dtype=float)
    log_c = log_norm_const(np.arange(n_max + 1)).reshape((n_max + 1,) + (1,) * x.ndim)
    log_envelope = -0.5 * x * x - 0.5 * np.log1p(deformation(delta, x))
    return sign * np.exp(log_abs + log_c + log_envelope)


def gen_hermite(g, x):
    """H_n^delta(x) in the overflow-free factored form."""
    return gen_hermite_table(g.n, g.delta, x)[g.n][()]


def _log_envelope_derivatives(delta, x):
    """(E'/E, (E'/E)') for the envelope E = e^{-x^2/2} (1 + D)^{-1/2}."""
    d = deformation(delta, x)
    inv = 1.0 / (1.0 + d)
    log_d1 = -x * inv
    log_d2 = -inv - 2.0 * x * x * d * inv * inv
    return log_d1, log_d2


def _jet_from_table(table, n, delta, x):
    g_n = table[n]
    g_1 = table[n - 1] if n >= 1 else np.zeros_like(g_n)
    g_2 = table[n - 2] if n >= 2 else np.zeros_like(g_n)
    # c_n H_n' E = sqrt(2n) H_{n-1}^delta, c_n H_n'' E = 2 sqrt(n(n-1)) H_{n-2}^delta
    up_1 = math.sqrt(2.0 * n) * g_1
    up_2 = 2.0 * math.sqrt(n * (n - 1.0)) * g_2 if n >= 2 else np.zeros_like(g_n)
    l1, l1_prime = _log_envelope_derivatives(delta, x)
    d1 = up_1 + l1 * g_n
    d2 = up_2 + 2.0 * l1 * up_1 + (l1_prime + l1 * l1) * g_n
    return JetValue(g_n[()], d1[()], d2[()])


def gen_hermite_jet(g, x):
    """Value, first and second derivative of H_n^delta by the product rule on the factored form."""
    x = np.asarray(x, dtype=float)
    table = gen_hermite_table(g.n, g.delta, x)
    return _jet_from_table(table, g.n, g.delta, x)


def gen_hermite_jets(n_max, delta, x):
    """Jets of H_0^delta..H_{n_max}^delta from a single recurrence pass."""
    x = np.asarray(x, dtype=float)
    table = gen_hermite_table(n_max, delta, x)
    return [_jet_from_table(table, n, delta, x) for n in range(n_max + 1)]


def qho_jet(n, x):
    """Jet of psi_n: psi' = sqrt(2n) psi_{n-1} - x psi, psi'' = (x^2 - 2n - 1) psi."""
    n = check_index(n)
    x = np.asarray(x, dtype=float)
    table = qho_eigenfunction_table(n, x)
    psi = table[n]
    psi_prev = table[n - 1] if n > 0 else np.zeros_like(psi)
    d1 = math.sqrt(2.0 * n) * psi_prev - x * psi
    d2 = (x * x - 2.0 * n - 1.0) * psi
    return JetValue(psi[()], d1[()], d2[()])


def weight(delta, x):
    """w(x) = 2 (1 + delta e^{-x^2}); in [2, 2(1 + delta)], even."""
    delta = check_delta(delta)
    return (2.0 * (1.0 + deformation(delta, x)))[()]


def weight_large_delta(delta, x):
    """Leading behaviour of the weight as delta -> infinity: 2 delta e^{-x^2}."""
    return (2.0 * deformation(check_delta(delta), x))[()]


# =============================================================================
# Operators
# =============================================================================
def apply_B(delta, f, x):
    """B f = (1/sqrt 2)(f'/alpha + beta f), first-order form."""
    fact = SimpleFactorization(delta)
    x = np.asarray(x, dtype=float)
    return ((f.d1 / alpha(fact, x) + beta_simple(fact, x) * f.value) / SQRT2)[()]


def apply_B_star(delta, f, x):
    """B* f = (1/sqrt 2)(-alpha f' + beta f) = alpha a* f."""
    fact = SimpleFactorization(delta)
    x = np.asarray(x, dtype=float)
    return ((-alpha(fact, x) * f.d1 + beta_simple(fact, x) * f.value) / SQRT2)[()]


def apply_B_star_B(delta, f, x):
    """
    B*(B f) by nesting: the jet of g = B f is formed analytically from f, f', f''
    and then fed to B*.
    """
    fact = SimpleFactorization(delta)
    x = np.asarray(x, dtype=float)
    d = deformation(fact.delta, x)
    a = alpha(fact, x)
    inv_a = np.sqrt(1.0 + d)
    inv_a_prime = -x * d * a
    ax_prime = a + x * x * a * (1.0 - a * a)

    g_value = (inv_a * f.d1 + a * x * f.value) / SQRT2
    g_d1 = (inv_a_prime * f.d1 + inv_a * f.d2 + ax_prime * f.value + a * x * f.d1) / SQRT2
    g = JetValue(g_value, g_d1, np.full_like(g_value, np.nan))
    return apply_B_star(fact.delta, g, x)


def apply_L_tilde(delta, f, x):
    """
    L~ = B*B + 1/2 = -1/2 d^2/dx^2 + [delta x e^{-x^2}/(1+D)] d/dx
                     + 1/2 [x^2/(1+D)^2 - 1/(1+D) + 1].
    """
    delta = check_delta(delta)
    x = np.asarray(x, dtype=float)
    d = deformation(delta, x)
    one_d = 1.0 + d
    potential = 0.5 * (x * x / one_d ** 2 - 1.0 / one_d + 1.0)
    return (-0.5 * f.d2 + (x * d / one_d) * f.d1 + potential * f.value)[()]


def apply_L(delta, f, x):
    """L = (1+D) d^2/dx^2 - 2 x D d/dx - [x^2/(1+D) + D]; equals -2(1+D) L~."""
    delta = check_delta(delta)
    x = np.asarray(x, dtype=float)
    d = deformation(delta, x)
    one_d = 1.0 + d
    return (one_d * f.d2 - 2.0 * x * d * f.d1 - (x * x / one_d + d) * f.value)[()]


def apply_L_large_delta(delta, f, x):
    """Limit of L as delta -> infinity: delta e^{-x^2} (d^2/dx^2 - 2x d/dx - 1)."""
    x = np.asarray(x, dtype=float)
    d = deformation(check_delta(delta), x)
    return (d * (f.d2 - 2.0 * x * f.d1 - f.value))[()]


def raised_from_qho(n, delta, x):
    """B* psi_n, the unnormalized H_{n+1}^delta the functions are built from."""
    return apply_B_star(delta, qho_jet(n, x), x)


# =============================================================================
# Residuals
# =============================================================================
def sl_residual(g, grid=None):
    """
    L H_n^delta + E_n w H_n^delta over the grid, relative to max |w H_n^delta|.
    """
    grid = grid or Grid()
    x = grid.points()
    jet = gen_hermite_jet(g, x)
    w = weight(g.delta, x)
    residual = apply_L(g.delta, jet, x) + g.energy * w * jet.value
    scale = float(np.max(np.abs(w * jet.value)))
    report = ResidualReport.from_residual(residual, grid, scale=scale, label="sturm-liouville")
    logger.debug("SL residual n=%d delta=%g: %.3e at x=%.3f", g.n, g.delta, report.max_abs, report.argmax_x)
    return report


def l_tilde_residual(g, grid=None):
    """L~ H_n^delta - (n + 1/2) H_n^delta, relative to max |H_n^delta|."""
    grid = grid or Grid()
    x = grid.points()
    jet = gen_hermite_jet(g, x)
    residual = apply_L_tilde(g.delta, jet, x) - g.energy * jet.value
    return ResidualReport.from_residual(residual, grid, scale=float(np.max(np.abs(jet.value))),
                                        label="l-tilde")


def zero_count(g, grid=None):
    """Number of sign changes of H_n^delta on the grid."""
    grid = grid or Grid()
    values = gen_hermite(g, grid.points())
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
