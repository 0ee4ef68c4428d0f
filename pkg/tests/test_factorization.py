import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from genhermite.errors import ParameterError
from genhermite.factorization import (
    GAMMA_MIN,
    ClassicalBeta,
    FiniteDifferenceBeta,
    MielnikFactorization,
    SimpleFactorization,
    UncoupledRatio,
    alpha,
    alpha_prime,
    bernoulli_residual,
    beta_simple,
    beta_simple_prime,
    check_gamma,
    coupled_residuals,
    ground_state_residual,
    mielnik_beta,
    mielnik_phi,
    mielnik_phi_prime,
    normalized_partner_state,
    partner_excited,
    partner_groundstate,
    partner_potential,
    riccati_residual,
    uncoupling_residual,
)
from genhermite.grid import Grid
from genhermite.numerics import central_diff
from genhermite.special_fn import gaussian_integral, qho_eigenfunction

deltas = st.floats(min_value=0.0, max_value=1.0e8, allow_nan=False)
points = st.floats(min_value=-30.0, max_value=30.0, allow_nan=False)


# =============================================================================
# Simple branch
# =============================================================================
def test_alpha_values():
    assert alpha(SimpleFactorization(0.0), 1.7) == 1.0
    assert alpha(SimpleFactorization(3.0), 0.0) == 0.5
    assert alpha(SimpleFactorization(1.0e6), 10.0) == pytest.approx(1.0, abs=1e-12)


@given(deltas, points)
def test_alpha_even_and_bounded(delta, x):
    f = SimpleFactorization(delta)
    a = alpha(f, x)
    assert 0.0 < a <= 1.0
    assert alpha(f, -x) == a


@given(deltas, points)
def test_beta_odd(delta, x):
    f = SimpleFactorization(delta)
    assert beta_simple(f, -x) == -beta_simple(f, x)


def test_beta_values():
    assert beta_simple(SimpleFactorization(5.0), 0.0) == 0.0
    assert beta_simple(SimpleFactorization(0.0), 1.5) == 1.5
    assert beta_simple_prime(SimpleFactorization(3.0), 0.0) == pytest.approx(0.5, rel=1e-15)
    slope = central_diff(lambda t: beta_simple(SimpleFactorization(3.0), t), 0.0, 1e-5, 1)
    assert slope == pytest.approx(0.5, abs=1e-9)


@pytest.mark.parametrize("delta", [0.0, 1.0, 100.0])
def test_analytic_derivatives_match_differences(delta):
    f = SimpleFactorization(delta)
    x = np.linspace(-4.0, 4.0, 41)
    np.testing.assert_allclose(alpha_prime(f, x), central_diff(lambda t: alpha(f, t), x, 1e-5, 1), atol=1e-8)
    np.testing.assert_allclose(beta_simple_prime(f, x), central_diff(lambda t: beta_simple(f, t), x, 1e-5, 1),
                               atol=1e-7)


def test_negative_delta_rejected():
    with pytest.raises(ParameterError, match="delta"):
        SimpleFactorization(-1.0)
    with pytest.raises(ParameterError):
        SimpleFactorization(float("inf"))


def test_methods_delegate():
    f = SimpleFactorization(2.0)
    assert f.alpha(0.4) == alpha(f, 0.4)
    assert f.beta_prime(0.4) == beta_simple_prime(f, 0.4)


@pytest.mark.parametrize("delta", [0.0, 1.0, 1.0e6])
def test_coupled_and_bernoulli_residuals(delta):
    f = SimpleFactorization(delta)
    grid = Grid(-5.0, 5.0, 1001)
    first, second = coupled_residuals(f, grid)
    assert first.max_abs <= 1e-8
    assert second.max_abs <= 1e-8
    assert bernoulli_residual(f, grid).max_abs <= 1e-8


def test_delta_zero_residuals_vanish():
    f = SimpleFactorization(0.0)
    first, second = coupled_residuals(f)
    assert first.max_abs == 0.0
    assert bernoulli_residual(f).max_abs == 0.0


def test_bernoulli_at_two():
    assert bernoulli_residual(SimpleFactorization(2.0), Grid(-5.0, 5.0, 1001)).max_abs <= 1e-12


@settings(max_examples=200)
@given(deltas, st.floats(min_value=-1.0e3, max_value=1.0e3, allow_nan=False))
def test_beta_over_alpha_is_x(delta, x):
    f = SimpleFactorization(delta)
    ratio = beta_simple(f, x) / alpha(f, x)
    assert abs(ratio - x) <= 2.0 * np.spacing(abs(x)) + 1e-300


@pytest.mark.parametrize("delta", [0.0, 1.0, 1.0e6])
def test_uncoupling_residual(delta):
    assert uncoupling_residual(SimpleFactorization(delta)).max_abs <= 1e-15


# =============================================================================
# Mielnik branch
# =============================================================================
def test_gamma_bound():
    assert check_gamma(1.0) == 1.0
    assert GAMMA_MIN == pytest.approx(0.8862269254527580, rel=1e-15)
    for bad in (0.5, GAMMA_MIN, -3.0, float("nan")):
        with pytest.raises(ParameterError, match="gamma"):
            MielnikFactorization(bad)


def test_mielnik_values():
    f = MielnikFactorization(2.0)
    assert mielnik_phi(f, 0.0) == 0.5
    assert mielnik_beta(f, 0.0) == 0.5
    assert partner_potential(f, 0.0) == pytest.approx(0.25, rel=1e-15)
    assert partner_groundstate(f, 0.0) == 0.5
    expected = math.exp(-1.0) / (2.0 + 0.5 * math.sqrt(math.pi) * special.erf(1.0))
    assert mielnik_phi(f, 1.0) == pytest.approx(expected, rel=1e-14)
    assert mielnik_phi(f, 1.0) == pytest.approx(0.133929, abs=1e-6)
    assert mielnik_phi(MielnikFactorization(7.5), 0.0) == pytest.approx(1.0 / 7.5, rel=1e-15)


def test_mielnik_phi_decays_and_is_positive():
    f = MielnikFactorization(1.0)
    x = np.linspace(-10.0, 10.0, 2001)
    phi = mielnik_phi(f, x)
    assert np.all(phi >= 0.0)
    assert mielnik_phi(f, 30.0) == 0.0


def test_mielnik_parity_broken():
    f = MielnikFactorization(2.0)
    assert mielnik_beta(f, -1.0) != -mielnik_beta(f, 1.0)


def test_mielnik_reduces_to_classical():
    f = MielnikFactorization(1.0e12)
    x = np.linspace(-5.0, 5.0, 101)
    np.testing.assert_allclose(mielnik_beta(f, x), x, atol=1e-11)
    np.testing.assert_allclose(partner_potential(f, x), 0.5 * x * x, atol=1e-10)


def test_partner_potential_approaches_oscillator_monotonically():
    gaps = [partner_potential(MielnikFactorization(g), 0.0) for g in (2.0, 10.0, 100.0, 1000.0)]
    assert all(a > b > 0.0 for a, b in zip(gaps, gaps[1:]))


def test_phi_prime_closed_form():
    f = MielnikFactorization(2.0)
    x = np.linspace(-5.0, 5.0, 201)
    phi = mielnik_phi(f, x)
    np.testing.assert_allclose(mielnik_phi_prime(f, x), -2.0 * x * phi - phi * phi, atol=1e-14)


def test_partner_potential_against_differences():
    f = MielnikFactorization(2.0)
    x = np.linspace(-5.0, 5.0, 1001)
    numeric = 0.5 * x * x - central_diff(lambda t: mielnik_phi(f, t), x, 1e-4, 1)
    assert np.max(np.abs(numeric - partner_potential(f, x))) <= 1e-6


def test_riccati_residuals():
    grid = Grid(-4.0, 4.0, 801)
    assert riccati_residual(ClassicalBeta(), grid).max_abs <= 1e-13
    assert riccati_residual(MielnikFactorization(2.0), grid).max_abs <= 1e-6
    assert riccati_residual(UncoupledRatio(SimpleFactorization(10.0)), grid).max_abs <= 1e-12


def test_riccati_with_difference_provider():
    f = MielnikFactorization(2.0)
    provider = FiniteDifferenceBeta(lambda t: mielnik_beta(f, t))
    assert riccati_residual(provider, Grid(-4.0, 4.0, 801)).max_abs <= 1e-6


def test_printed_kernel_is_not_a_riccati_solution():
    # kernel e^{-x^2/2} with int_0^x e^{-t^2/2} dt leaves exactly x phi behind
    def phi(t):
        return np.exp(-0.5 * t * t) / (2.0 + gaussian_integral(t))

    grid = Grid(-4.0, 4.0, 801)
    report = riccati_residual(FiniteDifferenceBeta(lambda t: t + phi(t)), grid)
    x = grid.points()
    assert report.max_abs == pytest.approx(np.max(np.abs(x * phi(x))), rel=1e-6)
    assert report.max_abs > 0.1


def test_ground_state():
    f = MielnikFactorization(2.0)
    x = np.linspace(-8.0, 8.0, 1601)
    assert np.all(partner_groundstate(f, x) > 0.0)
    assert ground_state_residual(f, Grid(-5.0, 5.0, 1001)).max_abs <= 1e-8
    # integrating psi' = -beta psi from 0 reproduces the closed form
    solution = integrate.solve_ivp(lambda t, y: -mielnik_beta(f, t) * y, (0.0, 2.0), [0.5],
                                   rtol=1e-11, atol=1e-13)
    assert solution.y[0, -1] == pytest.approx(partner_groundstate(f, 2.0), rel=1e-8)


@pytest.mark.parametrize("gamma", [1.0, 2.0, 5.0])
def test_ground_state_norm(gamma):
    f = MielnikFactorization(gamma)
    norm, _ = integrate.quad(lambda t: partner_groundstate(f, t) ** 2, -np.inf, np.inf, epsabs=1e-13, epsrel=1e-12)
    assert norm == pytest.approx(f.ground_state_norm(), rel=1e-9)


def test_excited_reduces_to_oscillator():
    f = MielnikFactorization(1.0e12)
    x = np.linspace(-5.0, 5.0, 101)
    np.testing.assert_allclose(partner_excited(f, 0, x), qho_eigenfunction(1, x), atol=1e-11)


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_normalized_partner_states(m):
    f = MielnikFactorization(2.0)
    norm, _ = integrate.quad(lambda t: normalized_partner_state(f, m, t) ** 2, -15.0, 15.0, limit=200, epsabs=1e-13, epsrel=1e-12)
    assert norm == pytest.approx(1.0, abs=1e-9)


def test_partner_states_orthogonal():
    f = MielnikFactorization(2.0)
    overlap, _ = integrate.quad(
        lambda t: normalized_partner_state(f, 0, t) * normalized_partner_state(f, 2, t), -15.0, 15.0, limit=200, epsabs=1e-13, epsrel=1e-12
    )
    assert abs(overlap) < 1e-9
