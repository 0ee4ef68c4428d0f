"""
Closed-form factorization functions of the harmonic oscillator.

Two branches live here:

* the simple branch, beta = alpha x, where alpha solves the Bernoulli
  equation alpha' + x alpha^3 - x alpha = 0:
  alpha(x) = (1 + delta e^{-x^2})^{-1/2}, delta >= 0;
* Mielnik's branch, beta = x + phi with
  phi(x) = e^{-x^2} / (gamma + int_0^x e^{-t^2} dt), gamma > sqrt(pi)/2,
  which generates the isospectral partner potentials.

The residual functions certify the differential identities each branch has
to satisfy. Derivatives are analytic; finite differences are only used as
cross-check oracles (``FiniteDifferenceBeta``).
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np

from .errors import ParameterError
from .grid import Grid, ResidualReport
from .special_fn import SQRT_PI, check_index, error_integral, qho_eigenfunction_table

logger = logging.getLogger(__name__)

# Singularity-free bound of gamma + int_0^x e^{-t^2} dt over the real line.
GAMMA_MIN = SQRT_PI / 2.0
SQRT2 = math.sqrt(2.0)


def check_delta(delta):
    delta = float(delta)
    if not math.isfinite(delta) or delta < 0.0:
        raise ParameterError(f"delta must satisfy 0 <= delta < inf, got {delta}")
    return delta


def check_gamma(gamma):
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma <= GAMMA_MIN:
        raise ParameterError(
            f"gamma must satisfy gamma > sqrt(pi)/2 = {GAMMA_MIN:.7f} "
            f"(the partner potential is singular otherwise), got {gamma}"
        )
    return gamma


def deformation(delta, x):
    """D(x) = delta e^{-x^2}; underflows benignly to 0."""
    x = np.asarray(x, dtype=float)
    return delta * np.exp(-x * x)


# =============================================================================
# Simple branch
# =============================================================================
@dataclass(frozen=True)
class SimpleFactorization:
    delta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "delta", check_delta(self.delta))

    def alpha(self, x):
        return alpha(self, x)

    def alpha_prime(self, x):
        return alpha_prime(self, x)

    def beta(self, x):
        return beta_simple(self, x)

    def beta_prime(self, x):
        return beta_simple_prime(self, x)


def alpha(f, x):
    """alpha(x) = (1 + delta e^{-x^2})^{-1/2}; even, in (0, 1], -> 1 at infinity."""
    return (1.0 / np.sqrt(1.0 + deformation(f.delta, x)))[()]


def alpha_prime(f, x):
    """alpha' = delta x e^{-x^2} alpha^3."""
    x = np.asarray(x, dtype=float)
    a = alpha(f, x)
    return (x * deformation(f.delta, x) * a ** 3)[()]


def beta_simple(f, x):
    """beta(x) = x alpha(x); odd, asymptotic to x."""
    x = np.asarray(x, dtype=float)
    return (x * alpha(f, x))[()]


def beta_simple_prime(f, x):
    """beta' = alpha + x alpha'."""
    x = np.asarray(x, dtype=float)
    return (alpha(f, x) + x * alpha_prime(f, x))[()]


# =============================================================================
# Mielnik branch
# =============================================================================
@dataclass(frozen=True)
class MielnikFactorization:
    gamma: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "gamma", check_gamma(self.gamma))

    def beta(self, x):
        return mielnik_beta(self, x)

    def beta_prime(self, x):
        return mielnik_beta_prime(self, x)

    def potential(self, x):
        return partner_potential(self, x)

    def ground_state_norm(self):
        """int psi~_0^2 dx = sqrt(pi) / (gamma^2 - pi/4)."""
        return SQRT_PI / (self.gamma ** 2 - math.pi / 4.0)


def _mielnik_denominator(f, x):
    return f.gamma + error_integral(x)


def mielnik_phi(f, x):
    """phi(x) = e^{-x^2} / (gamma + int_0^x e^{-t^2} dt); positive, decays at infinity."""
    x = np.asarray(x, dtype=float)
    return (np.exp(-x * x) / _mielnik_denominator(f, x))[()]


def mielnik_phi_prime(f, x):
    """phi' by the quotient rule on the closed form (equals -2x phi - phi^2)."""
    x = np.asarray(x, dtype=float)
    gauss = np.exp(-x * x)
    denominator = _mielnik_denominator(f, x)
    return ((-2.0 * x * gauss * denominator - gauss * gauss) / denominator ** 2)[()]


def mielnik_beta(f, x):
    """beta(x) = x + phi(x); parity is broken for finite gamma."""
    x = np.asarray(x, dtype=float)
    return (x + mielnik_phi(f, x))[()]


def mielnik_beta_prime(f, x):
    return (1.0 + mielnik_phi_prime(f, x))[()]


def partner_potential(f, x):
    """V~(x) = x^2/2 - phi'(x) = x^2/2 + 2x phi + phi^2, isospectral to x^2/2."""
    x = np.asarray(x, dtype=float)
    return (0.5 * x * x - mielnik_phi_prime(f, x))[()]


def partner_groundstate(f, x):
    """
    Unnormalized solution of b psi~_0 = 0:
    psi~_0(x) = e^{-x^2/2} / (gamma + int_0^x e^{-t^2} dt). Strictly positive.
    """
    x = np.asarray(x, dtype=float)
    return (np.exp(-0.5 * x * x) / _mielnik_denominator(f, x))[()]


def partner_groundstate_prime(f, x):
    """Quotient-rule derivative of the closed form."""
    x = np.asarray(x, dtype=float)
    envelope = np.exp(-0.5 * x * x)
    denominator = _mielnik_denominator(f, x)
    return ((-x * envelope * denominator - envelope * np.exp(-x * x)) / denominator ** 2)[()]


def partner_excited(f, n, x):
    """
    psi~_{n+1} = b* psi_n = (1/sqrt 2)(-psi_n' + beta psi_n), raw (norm sqrt(n+1)).

    psi_n' = sqrt(2n) psi_{n-1} - x psi_n.
    """
    n = check_index(n)
    x = np.asarray(x, dtype=float)
    psi = qho_eigenfunction_table(n, x)
    psi_n = psi[n]
    psi_prev = psi[n - 1] if n > 0 else np.zeros_like(psi_n)
    psi_n_prime = math.sqrt(2.0 * n) * psi_prev - x * psi_n
    return ((-psi_n_prime + mielnik_beta(f, x) * psi_n) / SQRT2)[()]


def normalized_partner_state(f, m, x):
    """Unit-norm partner eigenstate of energy m + 1/2 (m = 0 ground state)."""
    m = check_index(m)
    if m == 0:
        return (partner_groundstate(f, x) / math.sqrt(f.ground_state_norm()))[()]
    return (partner_excited(f, m - 1, x) / math.sqrt(m))[()]


# =============================================================================
# Residual checkers
# =============================================================================
class BetaProvider(Protocol):
    def beta(self, x): ...

    def beta_prime(self, x): ...


@dataclass(frozen=True)
class ClassicalBeta:
    """beta = x, the annihilation/creation factorization."""

    def beta(self, x):
        return np.asarray(x, dtype=float)[()]

    def beta_prime(self, x):
        return np.ones_like(np.asarray(x, dtype=float))[()]


@dataclass(frozen=True)
class UncoupledRatio:
    """beta/alpha of the simple branch, differentiated by the quotient rule."""

    factorization: SimpleFactorization

    def beta(self, x):
        f = self.factorization
        return (beta_simple(f, x) / alpha(f, x))[()]

    def beta_prime(self, x):
        f = self.factorization
        a = alpha(f, x)
        return ((beta_simple_prime(f, x) * a - beta_simple(f, x) * alpha_prime(f, x)) / (a * a))[()]


@dataclass(frozen=True)
class FiniteDifferenceBeta:
    """Wrap a plain function beta(x); beta' from central differences."""

    function: Callable
    step: float = 1.0e-5

    def __post_init__(self):
        if not self.step > 0.0:
            raise ParameterError(f"finite-difference step must be positive, got {self.step}")

    def beta(self, x):
        return np.asarray(self.function(np.asarray(x, dtype=float)), dtype=float)[()]

    def beta_prime(self, x):
        x = np.asarray(x, dtype=float)
        h = self.step
        return ((self.beta(x + h) - self.beta(x - h)) / (2.0 * h))[()]


def riccati_residual(beta_provider, grid=None):
    """beta' + beta^2 - (1 + x^2) over the grid (absolute)."""
    grid = grid or Grid()
    x = grid.points()
    b = beta_provider.beta(x)
    residual = beta_provider.beta_prime(x) + b * b - (1.0 + x * x)
    report = ResidualReport.from_residual(residual, grid, label="riccati")
    logger.debug("Riccati residual for %r: %.3e", beta_provider, report.max_abs)
    return report


def coupled_residuals(f, grid=None):
    """
    Residuals of alpha' + beta alpha^2 - beta = 0 and
    beta' + alpha beta^2 = (1 + x^2) alpha (absolute).
    """
    grid = grid or Grid()
    x = grid.points()
    a = alpha(f, x)
    b = beta_simple(f, x)
    first = alpha_prime(f, x) + b * a * a - b
    second = beta_simple_prime(f, x) + a * b * b - (1.0 + x * x) * a
    return (ResidualReport.from_residual(first, grid, label="coupled-alpha"),
            ResidualReport.from_residual(second, grid, label="coupled-beta"))


def bernoulli_residual(f, grid=None):
    """alpha' + x alpha^3 - x alpha (absolute)."""
    grid = grid or Grid()
    x = grid.points()
    a = alpha(f, x)
    residual = alpha_prime(f, x) + x * a ** 3 - x * a
    return ResidualReport.from_residual(residual, grid, label="bernoulli")


def uncoupling_residual(f, grid=None):
    """(beta/alpha - x) / max(1, |x|); the chosen solution of the uncoupled Riccati equation."""
    grid = grid or Grid()
    x = grid.points()
    residual = (beta_simple(f, x) / alpha(f, x) - x) / np.maximum(1.0, np.abs(x))
    return ResidualReport.from_residual(residual, grid, label="uncoupling")


def ground_state_residual(f, grid=None):
    """psi~_0' + beta psi~_0, relative to max |psi~_0| on the grid."""
    grid = grid or Grid()
    x = grid.points()
    psi0 = partner_groundstate(f, x)
    residual = partner_groundstate_prime(f, x) + mielnik_beta(f, x) * psi0
    return ResidualReport.from_residual(residual, grid, scale=float(np.max(np.abs(psi0))),
                                        label="ground-state-ode")
