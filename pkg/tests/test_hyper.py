"""The hypergeometric kernel, the tower, the mirror map, and their identities."""

from fractions import Fraction as Fr
from math import comb, factorial

import pytest

from hypergw.hyper import (
    HyperSpec,
    diagonal_identities,
    diagonal_series,
    dw_kernel_coeffs,
    exponent_methods_check,
    i_series,
    kernel,
    kernel_inv_hbar,
    kernel_slope_at_zero,
    kernel_value_at_zero,
    ladder_identities,
    ladder_residue,
    ladder_series,
    linear_factor,
    log_kernel_w,
    mirror_shift,
    one_minus_nn_q,
    regular_kernel,
    regularizing_exponent,
    tower_structure_check,
)
from hypergw.residues import taylor_coeff_at_zero
from hypergw.series import QSeries

import oracles


def test_spec_validation():
    with pytest.raises(ValueError):
        HyperSpec(0, 4)
    with pytest.raises(ValueError):
        HyperSpec(3, 0)
    with pytest.raises(ValueError):
        HyperSpec(5, 4, worder=3)
    assert HyperSpec(5, 4).worder == 7


# -- kernel ------------------------------------------------------------------


def test_quintic_kernel_degrees():
    f = kernel(HyperSpec(5, 3))
    # oracle: (5d)! / (d!)^5
    for d in range(4):
        assert f.coeff(0)[d] == Fr(factorial(5 * d), factorial(d) ** 5)


def test_kernel_constant_column():
    f = kernel(HyperSpec(4, 2))
    for j in range(f.worder + 1):
        assert f.coeff(j)[0] == (1 if j == 0 else 0)


def test_conic_kernel_is_central_binomial():
    f = kernel(HyperSpec(2, 4))
    for d in range(5):
        assert f.coeff(0)[d] == comb(2 * d, d)


def test_kernel_matches_brute_force_columns():
    for n in (2, 3, 4):
        spec = HyperSpec(n, 4)
        cols = oracles.kernel_columns(n, 4, spec.worder)
        f = kernel(spec)
        for d in range(5):
            for j in range(spec.worder + 1):
                assert f.coeff(j)[d] == cols[d][j]


def test_inverse_hbar_kernel_pole_orders():
    f = kernel_inv_hbar(HyperSpec(3, 4))
    for d, c in enumerate(f.coeffs):
        assert c.pole_order_at_zero() == d


# -- tower --------------------------------------------------------------------


def test_first_column_entries():
    spec = HyperSpec(5, 2)
    row0 = i_series(spec, 0, 0)
    assert row0.t_free_part() == QSeries([1, 120, 113400])
    entry = i_series(spec, 0, 1)
    assert entry.coeff(1) == QSeries([1, 120, 113400])
    # oracle: 120 * sum_{r=2..5} 5/r
    expected = Fr(120) * sum(Fr(5, r) for r in range(2, 6))
    assert expected == 770
    assert entry.coeff(0)[1] == expected


def test_diagonals_are_unit_series():
    for n in (2, 3, 5, 7):
        spec = HyperSpec(n, 4)
        for p in range(n):
            assert diagonal_series(spec, p)[0] == 1


def test_tower_structure_small():
    for n in (2, 4, 6, 8):
        assert tower_structure_check(HyperSpec(n, 5)).passed


# -- mirror map -----------------------------------------------------------------


def test_mirror_shift_values():
    spec = HyperSpec(5, 2)
    shift = mirror_shift(spec)
    assert shift[0] == 0
    assert shift[1] == 770
    assert shift[2] == 717825  # brute-force oracle value


def test_mirror_shift_matches_oracle():
    *_, shift = oracles.quintic_tables(5)
    assert mirror_shift(HyperSpec(5, 5)) == QSeries(shift)


def test_line_mirror_shift_is_log_free_energy():
    # n = 1: direct expansion of the kernel columns gives
    # (T - t)_d = H_d - H_{d-1} = 1/d, the -log(1 - q) pattern
    shift = mirror_shift(HyperSpec(1, 5))
    assert shift == QSeries([Fr(0)] + [Fr(1, d) for d in range(1, 6)])


# -- regularizing exponent ---------------------------------------------------------


def test_exponent_leading_terms():
    for n in (2, 3, 5, 6):
        mu = regularizing_exponent(HyperSpec(n, 3))
        assert mu[0] == 0
        assert mu[1] == Fr(n) ** (n - 1)


def test_exponent_methods_agree_small():
    for n in range(2, 7):
        assert exponent_methods_check(HyperSpec(n, 8)).passed


# -- regular kernel -----------------------------------------------------------------


def test_regular_kernel_unit_start():
    q = regular_kernel(HyperSpec(5, 3))
    assert q[0] == 1


def test_quintic_kernel_value_and_slope():
    spec = HyperSpec(5, 2)
    q1 = q = regular_kernel(spec)[1]
    # oracles: first-order binomial expansions
    assert taylor_coeff_at_zero(q1, 0) == Fr(1, 5) * 5**5  # 625
    phi0 = kernel_value_at_zero(spec)
    phi1 = kernel_slope_at_zero(spec)
    assert phi0[1] == 625
    assert phi1[1] == Fr(3, 20) * (625 - 3125)  # -375
    assert taylor_coeff_at_zero(q1, 1) == -375


def test_regular_kernel_checks_sampled():
    from hypergw.hyper import regular_kernel_checks

    for n in (2, 3, 4, 6):
        assert regular_kernel_checks(HyperSpec(n, 6)).passed


# -- diagonal identities ---------------------------------------------------------------


def test_conic_diagonal_closed_form():
    spec = HyperSpec(2, 3)
    assert diagonal_series(spec, 0) == QSeries([comb(2 * d, d) for d in range(4)])
    assert diagonal_identities(spec).passed


def test_diagonal_symmetry_instances():
    spec5 = HyperSpec(5, 6)
    assert diagonal_series(spec5, 1) == diagonal_series(spec5, 3)
    spec4 = HyperSpec(4, 6)
    assert diagonal_series(spec4, 1) == diagonal_series(spec4, 2)


def test_diagonal_identities_range():
    for n in range(2, 8):
        assert diagonal_identities(HyperSpec(n, 6)).passed


def test_weighted_product_follows_from_product_and_symmetry():
    # without assuming either normalization, the squared weighted product
    # must equal the (n-1) power of the plain product once symmetry holds
    for n in (3, 4, 5, 6):
        spec = HyperSpec(n, 5)
        d = spec.qorder
        plain = one_minus_nn_q(spec)
        weighted_sq = one_minus_nn_q(spec).power(Fr(n - 1, 2)) ** 2
        for p in range(n):
            g = diagonal_series(spec, p)
            plain = plain * g
            weighted_sq = weighted_sq * g ** (n - 1 - p) * g**p
        assert weighted_sq == plain ** (n - 1)


# -- ladder series -----------------------------------------------------------------------


def test_ladder_base_case():
    y = ladder_series(HyperSpec(4, 3), 0)
    assert y[0] == 1


def test_ladder_residues_match_closed_products():
    spec = HyperSpec(4, 5)
    big_l = linear_factor(spec)
    for p in range(4):
        got = ladder_residue(spec, p, 0)
        closed = QSeries.one(5)
        for r in range(p + 1):
            closed = closed / (big_l * diagonal_series(spec, r))
        assert got == closed


def test_top_ladder_residues():
    # at the top rung the first residue collapses to 1 and the second to
    # the linear factor times the kernel slope
    for n in (3, 5):
        spec = HyperSpec(n, 5)
        assert ladder_residue(spec, n - 1, 0) == QSeries.one(5)
        assert ladder_residue(spec, n - 1, 1) == linear_factor(spec) * kernel_slope_at_zero(spec)


def test_ladder_identities_range():
    for n in (2, 3, 4, 5):
        assert ladder_identities(HyperSpec(n, 5)).passed


def test_first_ladder_step_equals_mirror_route_operator():
    # the first descent step can also be written with the mirror-map
    # derivative in place of the first diagonal
    from hypergw.residues import RatFunc, USeriesRF

    for n in (3, 5):
        spec = HyperSpec(n, 5)
        y = ladder_series(spec, 0)
        h = RatFunc.variable()
        slope = QSeries.one(5) + mirror_shift(spec).derivative()  # dT/dt
        stepped = y + USeriesRF([c * h * d for d, c in enumerate(y.coeffs)])
        alt = stepped.mul_inv_qseries(slope)
        assert alt == ladder_series(spec, 1)


# -- bigraded log -----------------------------------------------------------------------


def test_log_kernel_linear_coefficient_is_mirror_shift():
    for n in (3, 4, 5):
        spec = HyperSpec(n, 5)
        assert log_kernel_w(spec).coeff(1) == mirror_shift(spec)


def test_dw_kernel_linear_coefficient_vanishes_at_five():
    # the w-coefficient list of (1+w)^5/(1+5w) starts 1, 0, ...
    coeffs = dw_kernel_coeffs(5, 3)
    assert coeffs[0] == 1
    assert coeffs[1] == 0
