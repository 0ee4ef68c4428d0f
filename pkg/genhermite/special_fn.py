"""
Classical Hermite polynomials, harmonic oscillator eigenfunctions, the error
function and the normalization constants everything else is built on.

All functions broadcast over numpy arrays; scalars in give numpy scalars out.
Quantities that are normalized (eigenfunctions, generalized Hermite
functions) are assembled from a sign / log-magnitude split of H_n(x) so they
never overflow, even where H_n(x) itself does.
"""

import logging
import math
import numbers

import numpy as np
from scipy.special import gammaln

from .errors import HermiteOverflowError, ParameterError

logger = logging.getLogger(__name__)

MAX_DEGREE = 400
SQRT_PI = math.sqrt(math.pi)
SQRT_HALF_PI = math.sqrt(math.pi / 2.0)
TWO_OVER_SQRT_PI = 2.0 / SQRT_PI

# Recurrence values whose next step could exceed this are rescaled, the scale
# kept in log form.
_RESCALE = 1.0e150

_ERF_SERIES_TERMS = 60
_ERFC_FRACTION_DEPTH = 200


def check_index(n, max_degree=MAX_DEGREE):
    """Validate a Hermite index and return it as a Python int."""
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise ParameterError(f"Hermite index must be an integer, got {n!r}")
    n = int(n)
    if n < 0:
        raise ParameterError(f"Hermite index must satisfy n >= 0, got {n}")
    if n > max_degree:
        raise ParameterError(f"Hermite index must satisfy n <= {max_degree}, got {n}")
    return n


def _as_points(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ParameterError("x must be finite")
    return x


def energy_level(n):
    """E_n = n + 1/2 in units of hbar*omega."""
    return check_index(n) + 0.5


# =============================================================================
# Hermite polynomials
# =============================================================================
def _hermite_last_three(n, x):
    """Return (H_{n-2}, H_{n-1}, H_n) by the three-term recurrence; H_{-k} = 0."""
    h_prev2 = np.zeros_like(x)
    h_prev = np.zeros_like(x)
    h = np.ones_like(x)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n):
            h_prev2, h_prev, h = h_prev, h, 2.0 * x * h - 2.0 * k * h_prev
            if not np.all(np.isfinite(h)):
                logger.debug("Hermite recurrence overflow at degree %d", k + 1)
                raise HermiteOverflowError(k + 1)
    return h_prev2, h_prev, h


def hermite_poly(n, x):
    """
    Physicists' Hermite polynomial H_n(x).

    H_0 = 1, H_1 = 2x, H_{k+1} = 2x H_k - 2k H_{k-1}. Raises
    HermiteOverflowError (carrying the degree) when the unnormalized value
    leaves the double range.
    """
    n = check_index(n)
    x = _as_points(x)
    return _hermite_last_three(n, x)[2][()]


def hermite_poly_deriv(n, x):
    """H_n'(x) = 2n H_{n-1}(x)."""
    n = check_index(n)
    x = _as_points(x)
    if n == 0:
        return np.zeros_like(x)[()]
    return (2.0 * n * _hermite_last_three(n - 1, x)[2])[()]


def hermite_poly_second_deriv(n, x):
    """H_n''(x) = 4n(n-1) H_{n-2}(x)."""
    n = check_index(n)
    x = _as_points(x)
    if n < 2:
        return np.zeros_like(x)[()]
    return (4.0 * n * (n - 1) * _hermite_last_three(n - 2, x)[2])[()]


def hermite_equation_terms(n, x):
    """The three terms H_n'', -2x H_n' and 2n H_n of Hermite's equation."""
    n = check_index(n)
    x = _as_points(x)
    h_prev2, h_prev, h = _hermite_last_three(n, x)
    d2 = 4.0 * n * (n - 1) * h_prev2
    d1 = 2.0 * n * h_prev
    return d2, -2.0 * x * d1, 2.0 * n * h


def hermite_equation_residual(n, x):
    """H_n'' - 2x H_n' + 2n H_n with analytic derivatives; rounding noise only."""
    d2, drift, restoring = hermite_equation_terms(n, x)
    return (d2 + drift + restoring)[()]


def hermite_log_table(n_max, x):
    """
    Sign and log-magnitude of H_k(x) for every k = 0..n_max.

    Returns two arrays of shape (n_max + 1,) + x.shape. The recurrence is run
    on rescaled values so no intermediate overflows; log|H_k(x)| is -inf at
    exact zeros.
    """
    n_max = check_index(n_max, max_degree=MAX_DEGREE + 2)
    x = _as_points(x)

    sign = np.empty((n_max + 1,) + x.shape)
    log_abs = np.empty((n_max + 1,) + x.shape)

    h_prev = np.zeros_like(x)
    h = np.ones_like(x)
    log_scale = np.zeros_like(x)
    for k in range(n_max + 1):
        if k > 0:
            h_prev, h = h, 2.0 * x * h - 2.0 * (k - 1) * h_prev
        magnitude = np.maximum(np.abs(h), np.abs(h_prev))
        with np.errstate(over="ignore"):
            big = magnitude * np.maximum(np.abs(x), 1.0) > _RESCALE
        if np.any(big):
            # |h|, |h_prev| <= 1/4 keeps 2x h finite for any finite x
            factor = np.where(big, 4.0 * magnitude, 1.0)
            h = h / factor
            h_prev = h_prev / factor
            log_scale = log_scale + np.log(factor)
        sign[k] = np.sign(h)
        with np.errstate(divide="ignore"):
            log_abs[k] = np.log(np.abs(h)) + log_scale
    return sign, log_abs


def orthonormal_hermite_table(n_max, x):
    """
    Orthonormal Hermite polynomials p_k = H_k / sqrt(2^k k! sqrt(pi)), k <= n_max.

    Orthonormal against exp(-x^2). Plain recurrence, intended for quadrature
    nodes where the values stay well inside the double range.
    """
    x = np.asarray(x, dtype=float)
    table = np.empty((n_max + 1,) + x.shape)
    table[0] = SQRT_PI ** -0.5
    if n_max >= 1:
        table[1] = math.sqrt(2.0) * x * table[0]
    for k in range(1, n_max):
        table[k + 1] = (math.sqrt(2.0 / (k + 1)) * x * table[k]
                        - math.sqrt(k / (k + 1.0)) * table[k - 1])
    return table


# =============================================================================
# Normalization and eigenfunctions
# =============================================================================
def log_norm_const(n):
    """
    ln c_n with c_n = (2^{n+1} n! sqrt(pi))^{-1/2}.

    Accepts an integer or an integer array (no range check for arrays).
    """
    if np.ndim(n) == 0:
        n = check_index(n, max_degree=MAX_DEGREE + 2)
    n = np.asarray(n, dtype=float)
    return (-0.5 * ((n + 1.0) * math.log(2.0) + gammaln(n + 1.0) + 0.5 * math.log(math.pi)))[()]


def qho_eigenfunction_table(n_max, x):
    """psi_k(x) for k = 0..n_max, unit L2 norm, shape (n_max + 1,) + x.shape."""
    sign, log_abs = hermite_log_table(n_max, x)
    x = np.asarray(x, dtype=float)
    # sqrt(2) c_k = pi^{-1/4} (2^k k!)^{-1/2}
    log_c = log_norm_const(np.arange(n_max + 1)) + 0.5 * math.log(2.0)
    log_c = log_c.reshape((n_max + 1,) + (1,) * x.ndim)
    return sign * np.exp(log_abs + log_c - 0.5 * x * x)


def qho_eigenfunction(n, x):
    """
    Harmonic oscillator eigenfunction psi_n(x) = pi^{-1/4} (2^n n!)^{-1/2} H_n(x) e^{-x^2/2}.

    Unit L2 norm against weight 1.
    """
    n = check_index(n)
    return qho_eigenfunction_table(n, x)[n][()]


# =============================================================================
# Error function and Gaussian integrals
# =============================================================================
def _erf_series(a):
    # erf(a) = 2/sqrt(pi) e^{-a^2} sum_k 2^k a^{2k+1} / (2k+1)!!, all terms positive
    term = a.copy()
    total = a.copy()
    a2 = 2.0 * a * a
    for k in range(1, _ERF_SERIES_TERMS):
        term = term * a2 / (2 * k + 1)
        total = total + term
    return TWO_OVER_SQRT_PI * np.exp(-a * a) * total


def _erfc_continued_fraction(a):
    # erfc(a) = e^{-a^2}/sqrt(pi) / (a + (1/2)/(a + 1/(a + (3/2)/(a + ...)))), a > 0
    t = a.copy()
    for k in range(_ERFC_FRACTION_DEPTH, 0, -1):
        t = a + 0.5 * k / t
    with np.errstate(invalid="ignore"):
        return np.where(np.isinf(a), 0.0, np.exp(-a * a) / (SQRT_PI * t))


def erf(x):
    """
    Error function to about 1e-15 absolute.

    Power series with positive terms for |x| <= 2, continued fraction for the
    complement beyond. Odd by construction; saturates to +/-1.
    """
    x = np.asarray(x, dtype=float)
    a = np.abs(x)
    out = np.empty_like(a)

    small = a <= 2.0
    if np.any(small):
        out[small] = _erf_series(a[small])
    large = ~small
    if np.any(large):
        out[large] = 1.0 - _erfc_continued_fraction(a[large])
    return np.copysign(out, x)[()]


def gaussian_integral(x):
    """int_0^x e^{-t^2/2} dt = sqrt(pi/2) erf(x / sqrt(2))."""
    return (SQRT_HALF_PI * erf(np.asarray(x, dtype=float) / math.sqrt(2.0)))[()]


def error_integral(x):
    """int_0^x e^{-t^2} dt = (sqrt(pi)/2) erf(x); bounded by sqrt(pi)/2."""
    return (0.5 * SQRT_PI * erf(x))[()]
