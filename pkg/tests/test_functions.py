import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genhermite.errors import ParameterError
from genhermite.factorization import SimpleFactorization, alpha, alpha_prime
from genhermite.functions import (
    GenHermiteFunction,
    JetValue,
    apply_B,
    apply_B_star,
    apply_B_star_B,
    apply_L,
    apply_L_large_delta,
    apply_L_tilde,
    gen_hermite,
    gen_hermite_jet,
    gen_hermite_jets,
    gen_hermite_table,
    l_tilde_residual,
    qho_jet,
    raised_from_qho,
    sl_residual,
    weight,
    weight_large_delta,
    zero_count,
)
from genhermite.grid import Grid
from genhermite.numerics import central_diff
from genhermite.special_fn import hermite_poly, log_norm_const, qho_eigenfunction, qho_eigenfunction_table

ACCEPTANCE_DELTAS = [0.0, 1.0, 100.0, 1.0e6]


def c(n):
    return math.exp(log_norm_const(n))


# =============================================================================
# Evaluation
# =============================================================================
def test_ground_state_at_origin():
    value = gen_hermite(GenHermiteFunction(0, 0.0), 0.0)
    assert value == pytest.approx(math.pi ** -0.25 / math.sqrt(2.0), rel=1e-14)


def test_odd_function_vanishes_at_origin():
    assert gen_hermite(GenHermiteFunction(1, 7.0), 0.0) == 0.0


def test_record_validates():
    with pytest.raises(ParameterError):
        GenHermiteFunction(-1, 0.0)
    with pytest.raises(ParameterError, match="delta"):
        GenHermiteFunction(2, -0.5)
    g = GenHermiteFunction(3, 2)
    assert g.delta == 2.0 and g.energy == 3.5
    assert g(0.7) == gen_hermite(g, 0.7)


@pytest.mark.parametrize("n", range(11))
def test_delta_zero_is_oscillator_over_sqrt2(n, grid):
    x = grid.points()
    difference = gen_hermite(GenHermiteFunction(n, 0.0), x) - qho_eigenfunction(n, x) / math.sqrt(2.0)
    assert np.max(np.abs(difference)) <= 1e-12


def test_delta_infinity_recovers_hermite_polynomials():
    delta = 1.0e8
    x = np.linspace(-2.0, 2.0, 401)
    table = gen_hermite_table(5, delta, x)
    for n in range(6):
        h = hermite_poly(n, x)
        error = np.abs(math.sqrt(delta) * table[n] / c(n) - h) / (1.0 + np.abs(h))
        assert np.max(error) <= 1e-6


@pytest.mark.parametrize("n", [0, 2, 4])
def test_envelope_shrinks_with_delta_at_origin(n):
    reference = gen_hermite(GenHermiteFunction(n, 0.0), 0.0)
    for delta in (1.0, 10.0, 100.0):
        value = gen_hermite(GenHermiteFunction(n, delta), 0.0)
        assert abs(value) < abs(reference)
        assert value == pytest.approx(reference / math.sqrt(1.0 + delta), rel=1e-13)


def test_no_overflow_far_out():
    x = np.array([-40.0, 27.0, 40.0])
    values = gen_hermite(GenHermiteFunction(60, 10.0), x)
    assert np.all(np.isfinite(values))
    assert gen_hermite(GenHermiteFunction(400, 1.0), 30.0) == pytest.approx(
        qho_eigenfunction(400, 30.0) / math.sqrt(2.0), rel=1e-10
    )


@pytest.mark.parametrize("x", [1.0e300, -1.0e300])
def test_vanishes_for_huge_arguments(x):
    assert gen_hermite(GenHermiteFunction(2, 1.0), x) == 0.0
    assert gen_hermite(GenHermiteFunction(3, 0.0), x) == 0.0


@settings(max_examples=100, deadline=None)
@given(
    st.integers(min_value=0, max_value=10),
    st.integers(min_value=0, max_value=10),
    st.floats(min_value=0.0, max_value=1.0e6, allow_nan=False),
    st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
)
def test_weight_collapse(n, m, delta, x):
    table = gen_hermite_table(max(n, m), delta, x)
    lhs = weight(delta, x) * table[n] * table[m]
    rhs = 2.0 * c(n) * c(m) * math.exp(-x * x) * hermite_poly(n, x) * hermite_poly(m, x)
    assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-13)


@given(st.integers(min_value=0, max_value=12), st.floats(min_value=0.0, max_value=1.0e6),
       st.floats(min_value=-8.0, max_value=8.0, allow_nan=False))
def test_parity(n, delta, x):
    g = GenHermiteFunction(n, delta)
    assert gen_hermite(g, -x) == pytest.approx((-1) ** n * gen_hermite(g, x), rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("delta", [0.0, 1.0, 10.0, 1.0e6])
@pytest.mark.parametrize("n", range(11))
def test_zero_count_independent_of_delta(n, delta, grid):
    assert zero_count(GenHermiteFunction(n, delta), grid) == n


@pytest.mark.parametrize("delta", [0.5, 3.0, 1.0e4])
def test_ground_state_is_alpha_times_oscillator(delta):
    x = np.linspace(-6.0, 6.0, 121)
    ratio = gen_hermite(GenHermiteFunction(0, delta), x) / (alpha(SimpleFactorization(delta), x) * qho_eigenfunction(0, x))
    np.testing.assert_allclose(ratio, 1.0 / math.sqrt(2.0), rtol=1e-13)


def test_weight():
    assert weight(0.0, 1.3) == 2.0
    assert weight(4.0, 0.0) == 10.0
    x = np.linspace(-3.0, 3.0, 61)
    w = weight(5.0, x)
    assert np.all((w >= 2.0) & (w <= 12.0))
    np.testing.assert_array_equal(w, weight(5.0, -x))
    big = 1.0e8
    np.testing.assert_allclose(weight(big, x) / weight_large_delta(big, x), 1.0, rtol=1e-7)


# =============================================================================
# Jets
# =============================================================================
@pytest.mark.parametrize("delta", [0.0, 1.0, 100.0])
@pytest.mark.parametrize("n", [0, 1, 4, 9])
def test_jet_against_differences(n, delta):
    g = GenHermiteFunction(n, delta)
    x = np.linspace(-4.0, 4.0, 81)
    jet = gen_hermite_jet(g, x)
    np.testing.assert_allclose(jet.d1, central_diff(g, x, 1e-5, 1), atol=1e-8)
    np.testing.assert_allclose(jet.d2, central_diff(g, x, 1e-4, 2), atol=1e-6)


def test_jet_ground_state_curvature():
    x = np.array([-1.7, -0.3, 0.0, 0.8, 2.5])
    jet = gen_hermite_jet(GenHermiteFunction(0, 0.0), x)
    np.testing.assert_allclose(jet.d2 / jet.value, x * x - 1.0, rtol=1e-13, atol=1e-14)


def test_jets_table_matches_single_jets():
    x = np.linspace(-3.0, 3.0, 31)
    jets = gen_hermite_jets(6, 2.5, x)
    for n in (0, 3, 6):
        single = gen_hermite_jet(GenHermiteFunction(n, 2.5), x)
        np.testing.assert_allclose(jets[n].d2, single.d2, rtol=1e-14, atol=1e-16)


def test_jet_arithmetic():
    a = JetValue(np.array(1.0), np.array(2.0), np.array(3.0))
    b = 2.0 * a - a
    assert (b.value, b.d1, b.d2) == (1.0, 2.0, 3.0)


def test_qho_jet_against_differences():
    x = np.linspace(-4.0, 4.0, 41)
    jet = qho_jet(5, x)
    np.testing.assert_allclose(jet.d1, central_diff(lambda t: qho_eigenfunction(5, t), x, 1e-5, 1), atol=1e-8)
    np.testing.assert_allclose(jet.d2, (x * x - 11.0) * qho_eigenfunction(5, x), atol=1e-13)


# =============================================================================
# Operators
# =============================================================================
@pytest.mark.parametrize("delta", ACCEPTANCE_DELTAS)
@pytest.mark.parametrize("n", range(11))
def test_sturm_liouville_equation(n, delta, grid):
    assert sl_residual(GenHermiteFunction(n, delta), grid).max_abs <= 1e-8


@pytest.mark.parametrize("delta", [0.0, 1.0, 100.0])
@pytest.mark.parametrize("n", [0, 3, 10])
def test_l_tilde_eigenvalue(n, delta, grid):
    assert l_tilde_residual(GenHermiteFunction(n, delta), grid).max_abs <= 1e-9


@pytest.mark.parametrize("delta", [0.0, 0.7, 50.0, 1.0e6])
def test_composition_b_star_b(delta, smooth):
    x = np.linspace(-6.0, 6.0, 1201)
    f = smooth(x)
    lhs = apply_L_tilde(delta, f, x)
    rhs = apply_B_star_B(delta, f, x) + 0.5 * f.value
    assert np.max(np.abs(lhs - rhs)) <= 1e-8 * np.max(np.abs(f.value))


@pytest.mark.parametrize("delta", [0.0, 0.7, 50.0, 1.0e6])
def test_l_is_scaled_l_tilde(delta, smooth):
    x = np.linspace(-6.0, 6.0, 1201)
    f = smooth(x)
    d = delta * np.exp(-x * x)
    big_l = apply_L(delta, f, x)
    difference = big_l + 2.0 * (1.0 + d) * apply_L_tilde(delta, f, x)
    assert np.max(np.abs(difference)) <= 1e-9 * np.max(np.abs(big_l))


def test_large_delta_operator_limit(smooth):
    delta = 1.0e8
    x = np.linspace(-2.0, 2.0, 401)
    f = smooth(x)
    limit = apply_L_large_delta(delta, f, x)
    assert np.max(np.abs(apply_L(delta, f, x) - limit)) <= 1e-5 * np.max(np.abs(limit))


@pytest.mark.parametrize("delta", [0.0, 1.0, 100.0])
@pytest.mark.parametrize("n", [0, 1, 5])
def test_b_star_raises_oscillator_states(n, delta):
    x = np.linspace(-5.0, 5.0, 101)
    expected = math.sqrt(n + 1.0) * math.sqrt(2.0) * gen_hermite(GenHermiteFunction(n + 1, delta), x)
    np.testing.assert_allclose(raised_from_qho(n, delta, x), expected, atol=1e-13)


@pytest.mark.parametrize("delta", [0.0, 1.0, 100.0])
@pytest.mark.parametrize("n", [1, 4])
def test_b_on_alpha_psi_is_annihilation(n, delta):
    x = np.linspace(-5.0, 5.0, 101)
    jet = math.sqrt(2.0) * gen_hermite_jet(GenHermiteFunction(n, delta), x)
    expected = math.sqrt(n) * qho_eigenfunction_table(n, x)[n - 1]
    np.testing.assert_allclose(apply_B(delta, jet, x), expected, atol=1e-13)


def test_b_star_is_alpha_times_creation(smooth):
    delta = 3.0
    x = np.linspace(-4.0, 4.0, 81)
    f = smooth(x)
    a = alpha(SimpleFactorization(delta), x)
    creation = (-f.d1 + x * f.value) / math.sqrt(2.0)
    np.testing.assert_allclose(apply_B_star(delta, f, x), a * creation, atol=1e-14)


def test_b_annihilates_deformed_ground_state():
    # B(alpha psi_0) = a psi_0 = 0
    delta = 2.0
    x = np.linspace(-5.0, 5.0, 101)
    f = SimpleFactorization(delta)
    psi = qho_jet(0, x)
    a, a1 = alpha(f, x), alpha_prime(f, x)
    jet = JetValue(a * psi.value, a1 * psi.value + a * psi.d1, np.full_like(x, np.nan))
    np.testing.assert_allclose(apply_B(delta, jet, x), 0.0, atol=1e-14)


def test_grid_defaults_are_used():
    report = sl_residual(GenHermiteFunction(2, 1.0))
    assert report.grid == Grid()
