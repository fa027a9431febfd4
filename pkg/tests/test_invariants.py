"""Invariant extraction, conversions, inversions, and the locus split."""

import json
from fractions import Fraction as Fr

import pytest

from hypergw.errors import MissingColumn
from hypergw.hyper import HyperSpec, mirror_shift, regularizing_exponent
from hypergw.invariants import (
    GWRow,
    GWTable,
    assemble_table,
    boundary_locus_by_residues,
    boundary_locus_series,
    bridge_series,
    divisors,
    effective_locus_series,
    extract_invariants,
    instanton_inversion,
    locus_split_check,
    low_dimension_checks,
    quintic_genus0,
    quintic_genus1,
    reduced_genus1_series,
    reduced_to_standard,
    sigma,
    standard_to_reduced,
    torus_cover_series,
)
from hypergw.residues import moment_identity_check, regularize
from hypergw.series import QSeries

import oracles

D = 5
N0_ORACLE, N1_ORACLE, INST0_ORACLE, INST1_ORACLE, _ = oracles.quintic_tables(D)


# -- quintic genus 0 ----------------------------------------------------------


def test_quintic_genus0_first_degrees():
    values, report = quintic_genus0(3)
    assert values == [Fr(2875), Fr(4876875, 8), Fr(8564575000, 27)]
    assert report.passed


def test_quintic_genus0_against_brute_force():
    values, report = quintic_genus0(D)
    assert values == [N0_ORACLE[d] for d in range(1, D + 1)]
    assert report.passed


# -- quintic genus 1 ----------------------------------------------------------


def test_quintic_genus1_first_degree():
    values = quintic_genus1(2)
    assert values[0] == Fr(2875, 12)


def test_quintic_genus1_against_brute_force():
    assert quintic_genus1(D) == [N1_ORACLE[d] for d in range(1, D + 1)]


def test_genus1_routes_agree():
    spec = HyperSpec(5, D)
    reduced = extract_invariants(reduced_genus1_series(spec), spec)
    n0, _ = quintic_genus0(D)
    direct = quintic_genus1(D)
    for r, v, s in zip(reduced, n0, direct):
        assert s == r + v / 12


def test_cubic_term_identity():
    # (5/24)(J3 - J1 J2 + J1^3/3) = -(1/12) sum_d N0_d exp(dT)
    from hypergw.invariants import _j_poly

    spec = HyperSpec(5, D)
    j1 = _j_poly(spec, 1)
    j2 = _j_poly(spec, 2)
    j3 = _j_poly(spec, 3)
    lhs = (j3 - j1 * j2 + j1 * j1 * j1 * Fr(1, 3)) * Fr(5, 24)
    n0, _ = quintic_genus0(D)
    shift = mirror_shift(spec)
    rhs = QSeries.zero(D)
    for d, v in enumerate(n0, start=1):
        rhs = rhs + QSeries.monomial(d, D) * (shift * d).exp() * (v * Fr(-1, 12))
    assert lhs.t_free_part() == rhs


# -- conversions and inversions --------------------------------------------------


def test_sigma_values():
    assert [sigma(r) for r in (1, 2, 4)] == [1, 3, 7]
    assert divisors(6) == [1, 2, 3, 6]


def test_reduced_standard_round_trip():
    tab = assemble_table(5, 4)
    red = tab.column("GW1_reduced")[:]
    standard_to_reduced(tab)
    assert tab.column("GW1_reduced") == red


def test_zero_table_conversion():
    rows = [GWRow(d=d, N0=Fr(0), GW1_reduced=Fr(0)) for d in (1, 2)]
    tab = GWTable(n=5, truncation=2, rows=rows)
    reduced_to_standard(tab)
    assert tab.column("N1") == [0, 0]


def test_instanton_values():
    tab = assemble_table(5, D)
    assert tab.column("n0") == [INST0_ORACLE[d] for d in range(1, D + 1)]
    assert tab.column("n1") == [INST1_ORACLE[d] for d in range(1, D + 1)]
    assert tab.column("n1")[:2] == [0, 0]
    assert tab.column("n0")[:3] == [2875, 609250, 317206375]


def test_inversion_needs_columns():
    tab = GWTable(n=5, truncation=2, rows=[GWRow(d=1), GWRow(d=2)])
    with pytest.raises(MissingColumn):
        instanton_inversion(tab, 0)
    with pytest.raises(MissingColumn):
        reduced_to_standard(tab)


# -- degenerate dimensions ---------------------------------------------------------


def test_line_and_conic_series_vanish():
    for n in (1, 2):
        spec = HyperSpec(n, 8)
        assert reduced_genus1_series(spec) == QSeries.zero(8)


def test_quartic_surface_invariants_vanish():
    spec = HyperSpec(4, 8)
    assert extract_invariants(reduced_genus1_series(spec), spec) == [0] * 8


def test_cubic_curve_cover_counts():
    spec = HyperSpec(3, 9)
    got = extract_invariants(reduced_genus1_series(spec), spec)
    covers = torus_cover_series(9)
    assert got == list(covers.coeffs[1:])
    # explicitly: zero unless 3 | d, and sigma_r / r at d = 3r
    assert got[2] == 1
    assert got[5] == Fr(3, 2)
    assert got[8] == Fr(4, 3)
    assert all(got[k] == 0 for k in (0, 1, 3, 4, 6, 7))


def test_low_dimension_checks():
    assert low_dimension_checks(7).passed


# -- locus split --------------------------------------------------------------------


def test_effective_locus_forms_agree():
    for n in (2, 3, 4, 5):
        spec = HyperSpec(n, 5)
        assert effective_locus_series(spec, "half-sum") == effective_locus_series(
            spec, "parity"
        )


def test_boundary_residue_route():
    for n in (3, 4, 5):
        spec = HyperSpec(n, 5)
        total, parts = boundary_locus_by_residues(spec)
        assert total == boundary_locus_series(spec)
        assert parts["zero"] + parts["minus_n"] + parts["infinity"] == total


def test_locus_split_sums_to_series():
    for n in (2, 3, 4, 5, 6):
        spec = HyperSpec(n, 5)
        assert locus_split_check(spec).passed


def test_constant_term_of_minus_n_part_vanishes():
    spec = HyperSpec(5, 4)
    _, parts = boundary_locus_by_residues(spec)
    assert parts["minus_n"][0] == 0


# -- bridge -----------------------------------------------------------------------


def test_bridge_regularizes_with_exponent_mu():
    spec = HyperSpec(5, 5)
    z = bridge_series(spec)
    out = regularize(z)
    assert out.regular
    assert out.eta == regularizing_exponent(spec)


def test_bridge_regular_part_value():
    from hypergw.hyper import diagonal_series, kernel_value_at_zero

    spec = HyperSpec(5, 5)
    out = regularize(bridge_series(spec))
    value = QSeries.one(5) + out.zbar.taylor_coeff(0)
    assert value == kernel_value_at_zero(spec) / diagonal_series(spec, 0)


def test_bridge_moment_identities():
    spec = HyperSpec(5, 5)
    z = bridge_series(spec)
    for a in range(3):
        assert moment_identity_check(z, a, "intrinsic").passed
        assert moment_identity_check(z, a, "regularized").passed


def test_bridge_moment_closed_form():
    from hypergw.residues import moment_closed_form_check

    z = bridge_series(HyperSpec(4, 5))
    for a in range(-2, 3):
        assert moment_closed_form_check(z, a).passed


# -- tables ------------------------------------------------------------------------


def test_json_round_trip():
    tab = assemble_table(5, 3)
    obj = tab.to_json_obj()
    clone = GWTable.from_json_obj(json.loads(json.dumps(obj)))
    assert clone.to_json_obj() == obj


def test_csv_columns():
    tab = assemble_table(3, 4)
    lines = tab.to_csv_text().strip().split("\n")
    assert lines[0] == "d,N0,GW1_reduced,N1,n0,n1"
    assert lines[3] == "3,,1,,,"


def test_non_quintic_table_has_reduced_only():
    tab = assemble_table(4, 3)
    assert tab.column("GW1_reduced") == [0, 0, 0]
    assert tab.column("N0") == [None] * 3
