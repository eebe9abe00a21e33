"""Renewal pressure, phase transition diagnosis, and the periodic cross-check."""

import itertools

import numpy as np
import pytest
from scipy.special import zeta

from thermoshift import (CriticalPowerFamily, InverseSquareFamily, diagnose,
                         pressure_curve, pressure_periodic, pressure_renewal)
from thermoshift.errors import OutOfRange, UndeterminedTail
from thermoshift.hofbauer import HofbauerPotential

P_08 = 0.10838656549867665  # renewal root for the cubic family at beta = 0.8


def cubic():
    return CriticalPowerFamily(exponent=3.0)


# -- the family itself ---------------------------------------------------------------


def test_s_array_matches_cumsum_of_a():
    fam = cubic()
    assert np.max(np.abs(fam.s_array(500) - np.cumsum(fam.a_array(500)))) < 1e-12


def test_critical_series_sums_to_one():
    assert abs(cubic().series_closed_form(1.0) - 1.0) < 1e-14
    # depression shifts the sum to exp(-d)
    fam = CriticalPowerFamily(exponent=3.0, depression=0.25)
    assert abs(fam.series_closed_form(1.0) - np.exp(-0.25)) < 1e-14


def test_variation_decay_is_logarithmic():
    fam = cubic()
    for k in (1, 5, 40):
        assert abs(fam.var_k(k) - 3.0 * np.log1p(1.0 / k)) < 1e-15
    assert fam.var_k(0) == max(-fam.a(0), -fam.a(1))


def test_birkhoff_extremes_hand_words():
    fam = cubic()
    a = fam.a_array(6)
    cases = {
        (0,): (a[0], a[0]),
        (1,): (0.0, a[1]),
        (1, 1, 0, 1): (a[2] + a[1] + a[0], a[2] + a[1] + a[0] + a[1]),
        (0, 0, 1, 1, 1): (2 * a[0], 2 * a[0] + a[1] + a[2] + a[3]),
    }
    for word, (sup, inf) in cases.items():
        got_sup, got_inf, _, _ = fam.birkhoff_extremes(word)
        assert abs(got_sup - sup) < 1e-15
        assert abs(got_inf - inf) < 1e-15
        assert abs(fam.slack_exact(word) - (sup - inf)) < 1e-15


def test_scale_is_linear_on_extremes():
    fam = cubic()
    scaled = fam.scale(2.5)
    word = (1, 1, 0, 1, 0)
    assert abs(scaled.birkhoff_sup(word) - 2.5 * fam.birkhoff_sup(word)) < 1e-15
    assert np.max(np.abs(scaled.a_array(50) - 2.5 * fam.a_array(50))) < 1e-15
    with pytest.raises(OutOfRange):
        fam.scale(0.0)
    with pytest.raises(OutOfRange):
        CriticalPowerFamily(exponent=0.9)
    with pytest.raises(OutOfRange):
        InverseSquareFamily(scale=-1.0)


# -- uniqueness diagnosis ---------------------------------------------------------------


def test_diagnose_critical_cubic_is_non_unique():
    report = diagnose(cubic())
    assert report.classification == "non-unique"
    assert abs(report.sum_partial + report.sum_tail_bound - 1.0) < 1e-8
    assert np.isfinite(report.weighted_tail_bound)
    # the weighted series converges to zeta(2)/zeta(3) for this family
    target = float(zeta(2.0) / zeta(3.0))
    assert abs(report.weighted_partial + report.weighted_tail_bound - target) < 1e-2


def test_diagnose_inverse_square_is_unique():
    report = diagnose(InverseSquareFamily(scale=1.0))
    assert report.classification == "unique"
    assert report.sum_partial > 1.0


def test_diagnose_depressed_family_is_unique():
    report = diagnose(CriticalPowerFamily(exponent=3.0, depression=0.1))
    assert report.classification == "unique"
    assert report.sum_partial + report.sum_tail_bound < 1.0


def test_diagnose_critical_with_infinite_mean_return():
    # sum exp(s_k) = 1 but the weighted series diverges (q <= 2): the
    # equilibrium state stays unique, carried by the fixed point.  The
    # K^(-1/2) tail cannot certify 1e-8, and the refusal is explicit
    from thermoshift.errors import TailUncertified

    with pytest.raises(TailUncertified):
        diagnose(CriticalPowerFamily(exponent=1.5))
    report = diagnose(CriticalPowerFamily(exponent=1.5), tol=5e-3)
    assert report.classification == "unique"
    assert not np.isfinite(report.weighted_tail_bound)


class BareCubic(HofbauerPotential):
    """Same a_k as the cubic family but with no analytic tail bounds."""

    def a_array(self, K):
        return cubic().a_array(K)


def test_missing_tail_bound_is_refused_not_guessed():
    with pytest.raises(UndeterminedTail):
        diagnose(BareCubic(), K_max=2 ** 13)
    with pytest.raises(UndeterminedTail):
        pressure_renewal(BareCubic(), 1.0, K_max=2 ** 13)


def test_positive_pressure_needs_no_family_tail():
    # for P > 0 the geometric tail certifies on its own, so the bare family
    # reproduces the closed-form route wherever the root is positive
    assert abs(pressure_renewal(BareCubic(), 0.8, K_max=2 ** 16) - P_08) < 1e-9


# -- renewal pressure ----------------------------------------------------------------


def test_pressure_at_beta_zero_is_topological_entropy():
    assert abs(pressure_renewal(cubic(), 0.0) - np.log(2.0)) < 1e-9


def test_pressure_vanishes_past_the_transition():
    fam = cubic()
    for beta in (1.0, 1.2, 1.5):
        assert pressure_renewal(fam, beta) == 0.0


def test_pressure_frozen_value_below_transition():
    assert abs(pressure_renewal(cubic(), 0.8) - P_08) < 1e-9


def test_pressure_monotone_convex_nonnegative():
    fam = cubic()
    betas = [0.0, 0.25, 0.5, 0.75, 1.0, 1.25]
    values = [pressure_renewal(fam, b) for b in betas]
    assert all(v >= 0.0 for v in values)
    assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))
    for i in range(1, len(betas) - 1):
        mid = values[i]
        chord = 0.5 * (values[i - 1] + values[i + 1])
        assert mid <= chord + 1e-9


def test_pressure_rejects_negative_beta():
    with pytest.raises(OutOfRange):
        pressure_renewal(cubic(), -0.1)
    with pytest.raises(OutOfRange):
        pressure_periodic(cubic(), -0.1, 8)
    with pytest.raises(OutOfRange):
        pressure_periodic(cubic(), 0.5, 0)


# -- periodic cross-check ---------------------------------------------------------------


def brute_periodic_sum(fam, beta, n):
    """log(Z_n)/n over all 2^n period-n points, runs read cyclically."""
    a = fam.a_array(n + 1)
    total = 0.0
    for word in itertools.product((0, 1), repeat=n):
        if all(s == 1 for s in word):
            total += 1.0  # the fixed point contributes exp(0)
            continue
        s = 0.0
        for i in range(n):
            run = 0
            while word[(i + run) % n] == 1:
                run += 1
            s += a[run]
        total += np.exp(beta * s)
    return float(np.log(total) / n)


@pytest.mark.parametrize("n", [6, 10])
def test_periodic_sum_matches_brute_enumeration(n):
    fam = cubic()
    for beta in (0.4, 0.8, 1.1):
        assert abs(pressure_periodic(fam, beta, n) -
                   brute_periodic_sum(fam, beta, n)) < 1e-12


def test_periodic_sum_counts_points_at_beta_zero():
    fam = cubic()
    for n in (3, 9, 17):
        assert abs(pressure_periodic(fam, 0.0, n) - np.log(2.0)) < 1e-12


def test_periodic_sum_state_count_invariance():
    fam = cubic()
    vals = [pressure_periodic(fam, 0.8, 18, states=s) for s in (5, 64, 300)]
    assert max(vals) - min(vals) < 1e-14


def test_periodic_sums_converge_to_renewal_pressure():
    fam = cubic()
    p = pressure_renewal(fam, 0.8)
    gaps = [abs(pressure_periodic(fam, 0.8, n) - p) for n in (18, 64, 256)]
    assert gaps[0] < 5e-2
    assert gaps[1] < gaps[0]
    assert gaps[2] < 1e-10


# -- the kink at beta = 1 -----------------------------------------------------------------


def test_kink_quotients():
    fam = cubic()
    curve = pressure_curve(fam, betas=[0.5, 0.8, 1.0, 1.2],
                           kink=1.0, kink_steps=(1e-2, 1e-3, 1e-4))
    for h, q in curve.right_quotients.items():
        assert q == 0.0
    for h, q in curve.left_quotients.items():
        assert q > 0.1
    frozen = {1e-2: 0.499205440564765,
              1e-3: 0.49630801231614896,
              1e-4: 0.49588927595323185}
    for h, q in frozen.items():
        assert abs(curve.left_quotients[h] - q) < 1e-8
    assert np.all(np.diff(curve.pressures) <= 1e-12)
    assert curve.pressures[-1] == 0.0


def test_grid_quotients_shape():
    fam = cubic()
    curve = pressure_curve(fam, betas=[0.2, 0.6, 1.0], kink_steps=(1e-2,))
    left, right = curve.grid_quotients()
    assert np.isnan(left[0]) and np.isnan(right[-1])
    assert np.all(left[1:] <= 0.0)
