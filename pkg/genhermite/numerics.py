"""
Quadrature, finite differences and the discretized Schrodinger spectrum.

The orthonormality of the generalized Hermite functions is checked with a
Gauss-Hermite rule: against the weight w(x) = 2 (1 + delta e^{-x^2}),

    w H_n^delta H_m^delta = 2 c_n c_m e^{-x^2} H_n H_m,

so the integrand is a Gaussian times a polynomial of degree n + m and the
rule is exact once 2K - 1 >= n + m.
"""

import logging
import math
import numbers
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.linalg import eigh_tridiagonal

from .errors import NonFiniteError, ParameterError, QuadratureExactnessError
from .factorization import check_delta, normalized_partner_state, partner_potential
from .functions import gen_hermite_table, weight
from .grid import Grid, ResidualReport
from .special_fn import SQRT_PI, check_index, orthonormal_hermite_table

logger = logging.getLogger(__name__)

MAX_NODES = 200
MIN_BOX_POINTS = 100


def _check_count(name, value, lower, upper=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ParameterError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < lower or (upper is not None and value > upper):
        bound = f"{lower} <= {name}" + (f" <= {upper}" if upper is not None else "")
        raise ParameterError(f"{name} must satisfy {bound}, got {value}")
    return value


# =============================================================================
# Gauss-Hermite quadrature
# =============================================================================
@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights approximating int e^{-x^2} g(x) dx."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise ParameterError("quadrature nodes and weights must be non-empty 1-d arrays of equal length")
        if np.any(np.diff(nodes) <= 0.0):
            raise ParameterError("quadrature nodes must be strictly increasing")
        if not np.all(weights > 0.0):
            raise ParameterError("quadrature weights must be positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def node_count(self):
        return int(self.nodes.size)

    @property
    def exact_degree(self):
        """Highest polynomial degree integrated exactly."""
        return 2 * self.node_count - 1


def gauss_hermite_rule(node_count):
    """
    K-point Gauss-Hermite rule (Golub-Welsch).

    Nodes are the eigenvalues of the Jacobi matrix with zero diagonal and
    off-diagonals sqrt(k/2), polished by one Newton step on the orthonormal
    H_K. Weights are 1 / sum_{k<K} p_k(x_i)^2, the closed form of the squared
    first eigenvector component times sqrt(pi).
    """
    k = _check_count("node_count", node_count, 1, MAX_NODES)
    if k == 1:
        return QuadratureRule(np.zeros(1), np.array([SQRT_PI]))

    offdiag = np.sqrt(np.arange(1, k) / 2.0)
    nodes = eigh_tridiagonal(np.zeros(k), offdiag, eigvals_only=True)
    nodes = 0.5 * (nodes - nodes[::-1])

    table = orthonormal_hermite_table(k, nodes)
    # p_K' = sqrt(2K) p_{K-1}
    nodes = nodes - table[k] / (math.sqrt(2.0 * k) * table[k - 1])
    nodes = 0.5 * (nodes - nodes[::-1])

    table = orthonormal_hermite_table(k - 1, nodes)
    weights = 1.0 / np.sum(table * table, axis=0)
    weights = 0.5 * (weights + weights[::-1])
    logger.debug("Gauss-Hermite K=%d: weight sum - sqrt(pi) = %.3e", k, weights.sum() - SQRT_PI)
    return QuadratureRule(nodes, weights)


def integrate_gaussian(rule, g):
    """sum_i w_i g(x_i), approximating int e^{-x^2} g(x) dx."""
    try:
        values = np.asarray(g(rule.nodes), dtype=float)
    except TypeError:
        values = None
    if values is None or values.shape != rule.nodes.shape:
        values = np.array([float(g(x)) for x in rule.nodes])
    if not np.all(np.isfinite(values)):
        bad = rule.nodes[~np.isfinite(values)]
        raise NonFiniteError(f"integrand is not finite at node(s) {bad[:5].tolist()}")
    return math.fsum(rule.weights * values)


def overlap_matrix(delta, n_max, rule):
    """
    Gram matrix int w H_n^delta H_m^delta dx for n, m <= n_max.

    Each entry is evaluated as sum_i w_i [w(x_i) H_n^delta H_m^delta e^{x_i^2}],
    whose bracket is the polynomial 2 c_n c_m H_n H_m, so the result is exact
    up to rounding. Refuses rules that are not exact for degree 2 n_max.
    """
    delta = check_delta(delta)
    n_max = check_index(n_max)
    if rule.exact_degree < 2 * n_max:
        raise QuadratureExactnessError(
            f"{rule.node_count}-node rule is exact to degree {rule.exact_degree}, "
            f"overlaps up to n_max={n_max} need degree {2 * n_max}"
        )
    x = rule.nodes
    table = gen_hermite_table(n_max, delta, x)
    rows = table * np.sqrt(weight(delta, x)) * np.exp(0.5 * x * x)
    gram = (rows * rule.weights) @ rows.T
    return 0.5 * (gram + gram.T)


def overlap_matrix_truncated(delta, n_max, grid=None):
    """
    The same Gram matrix by Simpson's rule on a finite grid.

    Cross-check only: the tails beyond the grid are dropped.
    """
    delta = check_delta(delta)
    n_max = check_index(n_max)
    grid = grid or Grid(-12.0, 12.0, 4001)
    x = grid.points()
    table = gen_hermite_table(n_max, delta, x)
    weighted = table * weight(delta, x)
    gram = simpson(weighted[:, None, :] * table[None, :, :], x=x, axis=-1)
    return 0.5 * (gram + gram.T)


# =============================================================================
# Finite differences
# =============================================================================
def central_diff(f, x, h, order):
    """
    Central difference of order 1 or 2 with O(h^2) truncation.

    order 1: (f(x+h) - f(x-h)) / 2h
    order 2: (f(x+h) - 2 f(x) + f(x-h)) / h^2
    """
    h = float(h)
    if not (h > 0.0 and math.isfinite(h)):
        raise ParameterError(f"step h must be positive and finite, got {h}")
    if order not in (1, 2):
        raise ParameterError(f"order must be 1 or 2, got {order!r}")
    x = np.asarray(x, dtype=float)
    plus = np.asarray(f(x + h), dtype=float)
    minus = np.asarray(f(x - h), dtype=float)
    if order == 1:
        stencil = (plus, minus)
    else:
        centre = np.asarray(f(x), dtype=float)
        stencil = (plus, centre, minus)
    if not all(np.all(np.isfinite(v)) for v in stencil):
        raise NonFiniteError(f"function is not finite on the stencil around x with h={h}")
    if order == 1:
        return ((plus - minus) / (2.0 * h))[()]
    return ((plus - 2.0 * centre + minus) / (h * h))[()]


# =============================================================================
# Tridiagonal eigenproblems
# =============================================================================
def _tridiagonal(diag, offdiag):
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    if diag.ndim != 1 or diag.size == 0:
        raise ParameterError("diagonal must be a non-empty 1-d array")
    if offdiag.shape != (diag.size - 1,):
        raise ParameterError(
            f"off-diagonal needs length {diag.size - 1}, got {offdiag.size}"
        )
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(offdiag))):
        raise NonFiniteError("tridiagonal matrix has non-finite entries")
    return diag, offdiag


def symtridiag_eigen(diag, offdiag, k):
    """The k smallest eigenvalues of a symmetric tridiagonal matrix, ascending."""
    diag, offdiag = _tridiagonal(diag, offdiag)
    k = _check_count("k", k, 1, diag.size)
    if diag.size == 1:
        return diag.copy()
    return eigh_tridiagonal(diag, offdiag, eigvals_only=True, select="i", select_range=(0, k - 1))


def _box_hamiltonian(potential, half_width, count):
    half_width = float(half_width)
    if not (half_width > 0.0 and math.isfinite(half_width)):
        raise ParameterError(f"half_width must be positive and finite, got {half_width}")
    count = _check_count("count", count, MIN_BOX_POINTS)
    h = 2.0 * half_width / (count + 1)
    x = -half_width + h * np.arange(1, count + 1)
    v = np.asarray(potential(x), dtype=float)
    if v.shape != x.shape or not np.all(np.isfinite(v)):
        raise NonFiniteError("potential must be finite at every interior box point")
    diag = 1.0 / (h * h) + v
    offdiag = np.full(count - 1, -0.5 / (h * h))
    return x, h, diag, offdiag


def discretized_spectrum(potential, half_width=12.0, count=2400, k=4):
    """
    Lowest k eigenvalues of -1/2 d^2/dx^2 + V with Dirichlet walls at +/-half_width.

    Three-point Laplacian on the count interior points x_i = -L + i h,
    h = 2L / (count + 1).
    """
    x, h, diag, offdiag = _box_hamiltonian(potential, half_width, count)
    energies = symtridiag_eigen(diag, offdiag, k)
    logger.debug("Discretized spectrum (h=%.3e): %s", h, np.array2string(energies, precision=6))
    return energies


def discretized_states(potential, half_width=12.0, count=2400, k=4):
    """
    Eigenvalues, interior points and eigenvectors (shape (k, count)).

    Vectors are normalized to sum |v|^2 h = 1 with their largest component positive.
    """
    x, h, diag, offdiag = _box_hamiltonian(potential, half_width, count)
    k = _check_count("k", k, 1, count)
    energies, vectors = eigh_tridiagonal(diag, offdiag, select="i", select_range=(0, k - 1))
    states = vectors.T / math.sqrt(h)
    peak = states[np.arange(k), np.argmax(np.abs(states), axis=1)]
    states = states * np.sign(peak)[:, None]
    return energies, x, states


def partner_hamiltonian_residual(f, m, grid=None, step=1.0e-4):
    """
    (-1/2 d^2/dx^2 + V~) psi~_m - (m + 1/2) psi~_m with the second derivative
    from central differences, relative to max |psi~_m|.
    """
    m = check_index(m)
    grid = grid or Grid(-5.0, 5.0, 1001)
    x = grid.points()

    def state(t):
        return normalized_partner_state(f, m, t)

    psi = state(x)
    psi_dd = central_diff(state, x, step, 2)
    residual = -0.5 * psi_dd + partner_potential(f, x) * psi - (m + 0.5) * psi
    return ResidualReport.from_residual(residual, grid, scale=float(np.max(np.abs(psi))),
                                        label="partner-hamiltonian")
