"""
The residual suite behind ``genhermite verify``.

Every check evaluates one identity over its parameter sweep and keeps the
worst residual together with where it occurred. A check passes when that
worst residual is within the profile tolerance.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .factorization import (
    ClassicalBeta,
    MielnikFactorization,
    SimpleFactorization,
    UncoupledRatio,
    bernoulli_residual,
    coupled_residuals,
    ground_state_residual,
    partner_potential,
    riccati_residual,
    uncoupling_residual,
)
from .functions import (
    GenHermiteFunction,
    JetValue,
    apply_B_star_B,
    apply_L,
    apply_L_tilde,
    gen_hermite_table,
    sl_residual,
)
from .grid import Grid
from .ladder import LadderOperators, commutator_residual, ladder_residuals, number_operator_residuals
from .numerics import discretized_spectrum, gauss_hermite_rule, overlap_matrix, partner_hamiltonian_residual
from .special_fn import hermite_equation_terms, hermite_poly, log_norm_const, qho_eigenfunction_table

logger = logging.getLogger(__name__)

INJECTABLE_BUGS = ("ladder",)
PARTNER_LEVELS = 3


@dataclass(frozen=True)
class CheckResult:
    check: str
    max_residual: float
    tolerance: float
    where: str = ""

    @property
    def passed(self):
        return bool(self.max_residual <= self.tolerance)


class _Worst:
    """Running maximum of one check over its sweep."""

    def __init__(self, check, tolerance):
        self.check = check
        self.tolerance = tolerance
        self.value = -math.inf
        self.where = ""

    def update(self, value, where):
        value = float(value)
        # NaN counts as the worst possible outcome and is kept once seen
        if math.isnan(self.value):
            return
        if math.isnan(value) or value > self.value:
            self.value = value
            self.where = where

    def update_report(self, report, where):
        self.update(report.max_abs, f"{where} x={report.argmax_x:.4g}")

    def result(self):
        value = math.nan if self.value == -math.inf else self.value
        return CheckResult(self.check, value, self.tolerance, self.where)


def _smooth_jet(x, shift=0.3):
    """f = e^{-(x-s)^2/2} cos x with exact derivatives."""
    u = x - shift
    g = np.exp(-0.5 * u * u)
    g1 = -u * g
    g2 = (u * u - 1.0) * g
    c, s = np.cos(x), np.sin(x)
    return JetValue(g * c, g1 * c - g * s, g2 * c - 2.0 * g1 * s - g * c)


# =============================================================================
# Individual checks
# =============================================================================
def check_hermite_equation(profile, grid):
    worst = _Worst("hermite_equation", profile.tolerance("hermite_equation"))
    x = grid.points()
    for n in range(profile.hermite_n_max + 1):
        terms = hermite_equation_terms(n, x)
        # all three terms vanish identically at n = 0
        scale = 1.0 + max(float(np.max(np.abs(t))) for t in terms)
        residual = np.abs(sum(terms)) / scale
        i = int(np.argmax(residual))
        worst.update(residual[i], f"n={n} x={x[i]:.4g}")
    return [worst.result()]


def check_factorization(profile, deltas, gammas, grid):
    riccati = _Worst("riccati", profile.tolerance("riccati"))
    coupled = _Worst("coupled", profile.tolerance("coupled"))
    bernoulli = _Worst("bernoulli", profile.tolerance("bernoulli"))
    uncoupling = _Worst("uncoupling", profile.tolerance("uncoupling"))

    riccati.update_report(riccati_residual(ClassicalBeta(), grid), "beta=x")
    for gamma in gammas:
        riccati.update_report(riccati_residual(MielnikFactorization(gamma), grid), f"gamma={gamma:g}")
    for delta in deltas:
        f = SimpleFactorization(delta)
        where = f"delta={delta:g}"
        riccati.update_report(riccati_residual(UncoupledRatio(f), grid), f"beta/alpha {where}")
        for report in coupled_residuals(f, grid):
            coupled.update_report(report, f"{report.label} {where}")
        bernoulli.update_report(bernoulli_residual(f, grid), where)
        uncoupling.update_report(uncoupling_residual(f, grid), where)
    return [riccati.result(), coupled.result(), bernoulli.result(), uncoupling.result()]


def check_sturm_liouville(profile, deltas, n_max, grid):
    worst = _Worst("sturm_liouville", profile.tolerance("sturm_liouville"))
    for delta in deltas:
        for n in range(n_max + 1):
            worst.update_report(sl_residual(GenHermiteFunction(n, delta), grid), f"n={n} delta={delta:g}")
    return [worst.result()]


def check_ladder(profile, deltas, n_max, grid, inject=None):
    # deltas beyond the profile ladder sweep get the large-delta tolerance
    cutoff = max(profile.ladder_deltas)
    small = [d for d in deltas if d <= cutoff]
    large = [d for d in deltas if d > cutoff]
    flip = inject == "ladder"

    ladder = _Worst("ladder", profile.tolerance("ladder"))
    ladder_large = _Worst("ladder_large_delta", profile.tolerance("ladder_large_delta"))
    annihilation = _Worst("annihilation", profile.tolerance("annihilation"))
    number = _Worst("number_operator", profile.tolerance("number_operator"))
    commutator = _Worst("commutator", profile.tolerance("commutator"))

    for target, sweep in ((ladder, small), (ladder_large, large)):
        for delta in sweep:
            ops = LadderOperators(delta, flip_raising_sign=flip)
            for n in range(n_max + 1):
                where = f"n={n} delta={delta:g}"
                raising, lowering = ladder_residuals(ops, n, grid)
                target.update_report(raising, f"c* {where}")
                if n == 0:
                    annihilation.update_report(lowering, where)
                else:
                    target.update_report(lowering, f"c {where}")
                # at large delta these identities share the ladder_large_delta tolerance
                number_target = number if target is ladder else target
                commutator_target = commutator if target is ladder else target
                for report in number_operator_residuals(ops, n, grid):
                    number_target.update_report(report, f"{report.label} {where}")
                commutator_target.update_report(commutator_residual(ops, n, grid), f"[c, c*] {where}")

    # a sweep restricted by --delta may leave some of these unexercised
    checks = (ladder, ladder_large, annihilation, number, commutator)
    return [w.result() for w in checks if w.where]


def check_orthonormality(profile, n_max=None):
    n_max = profile.orthonormality_n_max if n_max is None else n_max
    worst = _Worst("orthonormality", profile.tolerance("orthonormality"))
    rule = gauss_hermite_rule(profile.quadrature_nodes)
    identity = np.eye(n_max + 1)
    for delta in profile.orthonormality_deltas:
        error = np.abs(overlap_matrix(delta, n_max, rule) - identity)
        n, m = np.unravel_index(int(np.argmax(error)), error.shape)
        worst.update(error[n, m], f"delta={delta:g} (n, m)=({n}, {m})")
    return [worst.result()]


def check_limits(profile, n_max, grid):
    delta_zero = _Worst("delta_zero", profile.tolerance("delta_zero"))
    x = grid.points()
    table = gen_hermite_table(n_max, 0.0, x)
    psi = qho_eigenfunction_table(n_max, x)
    for n in range(n_max + 1):
        error = np.abs(table[n] - psi[n] / math.sqrt(2.0))
        i = int(np.argmax(error))
        delta_zero.update(error[i], f"n={n} x={x[i]:.4g}")

    delta_inf = _Worst("delta_infinity", profile.tolerance("delta_infinity"))
    limit_grid = Grid.from_dict(profile.limit_grid)
    x = limit_grid.points()
    big = profile.limit_delta
    table = gen_hermite_table(5, big, x)
    for n in range(6):
        h = hermite_poly(n, x)
        scaled = math.sqrt(big) * table[n] / math.exp(log_norm_const(n))
        error = np.abs(scaled - h) / (1.0 + np.abs(h))
        i = int(np.argmax(error))
        delta_inf.update(error[i], f"n={n} delta={big:g} x={x[i]:.4g}")
    return [delta_zero.result(), delta_inf.result()]


def check_operators(profile, deltas, grid):
    composition = _Worst("composition", profile.tolerance("composition"))
    scaling = _Worst("scaling", profile.tolerance("scaling"))
    x = grid.points()
    f = _smooth_jet(x)
    for delta in deltas:
        l_tilde = apply_L_tilde(delta, f, x)
        error = np.abs(l_tilde - apply_B_star_B(delta, f, x) - 0.5 * f.value) / np.max(np.abs(f.value))
        i = int(np.argmax(error))
        composition.update(error[i], f"delta={delta:g} x={x[i]:.4g}")

        big_l = apply_L(delta, f, x)
        d = delta * np.exp(-x * x)
        error = np.abs(big_l + 2.0 * (1.0 + d) * l_tilde) / np.max(np.abs(big_l))
        i = int(np.argmax(error))
        scaling.update(error[i], f"delta={delta:g} x={x[i]:.4g}")
    return [composition.result(), scaling.result()]


def check_partner(profile, gammas, grid):
    ground = _Worst("ground_state_ode", profile.tolerance("ground_state_ode"))
    hamiltonian = _Worst("partner_hamiltonian", profile.tolerance("partner_hamiltonian"))
    for gamma in gammas:
        f = MielnikFactorization(gamma)
        ground.update_report(ground_state_residual(f, grid), f"gamma={gamma:g}")
        for m in range(PARTNER_LEVELS):
            report = partner_hamiltonian_residual(f, m, grid, step=profile.fd_step)
            hamiltonian.update_report(report, f"m={m} gamma={gamma:g}")
    return [ground.result(), hamiltonian.result()]


def check_isospectral(profile, gammas):
    box = profile.box
    half_width, count, levels = float(box["half_width"]), int(box["count"]), int(box["levels"])
    exact = np.arange(levels) + 0.5
    sho = discretized_spectrum(lambda x: 0.5 * x * x, half_width, count, levels)

    isospectral = _Worst("isospectral", profile.tolerance("isospectral"))
    versus_sho = _Worst("isospectral_vs_sho", profile.tolerance("isospectral_vs_sho"))
    for gamma in gammas:
        f = MielnikFactorization(gamma)
        partner = discretized_spectrum(lambda x: partner_potential(f, x), half_width, count, levels)
        logger.info("gamma=%g discretized partner spectrum: %s", gamma, np.array2string(partner, precision=6))
        error = np.abs(partner - exact)
        i = int(np.argmax(error))
        isospectral.update(error[i], f"gamma={gamma:g} level={i}")
        error = np.abs(partner - sho)
        i = int(np.argmax(error))
        versus_sho.update(error[i], f"gamma={gamma:g} level={i}")
    return [isospectral.result(), versus_sho.result()]


# =============================================================================
# Suite
# =============================================================================
def run_suite(profile, deltas=None, gammas=None, n_max=None, inject=None):
    """Run every check; returns a list of CheckResult in a fixed order."""
    deltas = tuple(profile.deltas if deltas is None else deltas)
    gammas = tuple(profile.gammas if gammas is None else gammas)
    n_max = profile.n_max if n_max is None else n_max
    if inject is not None:
        logger.warning("Injected bug active: %s", inject)

    grid = Grid.from_dict(profile.grid)
    partner_grid = Grid.from_dict(profile.partner_grid)

    results = []
    results += check_hermite_equation(profile, grid)
    results += check_factorization(profile, deltas, gammas, grid)
    results += check_sturm_liouville(profile, deltas, n_max, grid)
    results += check_ladder(profile, deltas, n_max, grid, inject=inject)
    results += check_orthonormality(profile)
    results += check_limits(profile, n_max, grid)
    results += check_operators(profile, deltas, grid)
    results += check_partner(profile, gammas, partner_grid)
    results += check_isospectral(profile, gammas)

    for r in results:
        logger.info("%-20s %.3e (tol %.1e) %s", r.check, r.max_residual, r.tolerance, r.where)
    return results


def results_frame(results):
    return pd.DataFrame(
        {
            "check": [r.check for r in results],
            "max residual": [f"{r.max_residual:.3e}" for r in results],
            "tolerance": [f"{r.tolerance:.1e}" for r in results],
            "status": ["PASS" if r.passed else "FAIL" for r in results],
            "worst at": [r.where for r in results],
        }
    )


def format_report(results):
    """Summary table (pandas -> tabulate) followed by the failing checks, if any."""
    lines = ["=" * 70, "VERIFICATION SUMMARY", "=" * 70]
    lines.append(results_frame(results).to_markdown(index=False))
    failed = [r for r in results if not r.passed]
    lines.append("")
    if failed:
        lines.append(f"{len(failed)} check(s) FAILED:")
        for r in failed:
            lines.append(f"  {r.check}: {r.max_residual:.3e} > {r.tolerance:.1e} at {r.where}")
    else:
        lines.append(f"All {len(results)} checks passed.")
    return "\n".join(lines)
