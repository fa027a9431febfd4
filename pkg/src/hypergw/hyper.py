"""Hypergeometric series attached to a degree-n hypersurface in P^{n-1}.

Everything is generated by one bigraded kernel in (w, q): the q^d
coefficient is prod_{r<=nd}(nw+r) / prod_{r<=d}((w+r)^n - w^n).  Its
w-coefficients seed a tower of t-polynomials whose diagonal entries are
unit q-series; the tower yields the mirror map, the regularizing exponent
mu, the h-regular kernel Q obtained by stripping exp(mu/h), and the
ladder series built by repeated first-order descent operators.  The
checker functions turn the structural statements about these objects
into exact pass/fail reports.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from . import polys as P
from .errors import RegularityViolation
from .report import merge_reports, report_equality
from .residues import (
    RatFunc,
    USeriesRF,
    double_residue_split_kernel,
    exp_over_hbar,
    laurent_at_zero,
)
from .series import QSeries, TPoly, WSeries


@dataclass(frozen=True)
class HyperSpec:
    """Problem size: hypersurface degree n, q-order, and w-order."""

    n: int
    qorder: int = 8
    worder: int | None = None  # defaults to n + 2

    def __post_init__(self):
        if self.worder is None:
            object.__setattr__(self, "worder", self.n + 2)
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.qorder < 1:
            raise ValueError("qorder must be >= 1")
        if self.worder < self.n:
            raise ValueError("worder must be at least n")


@lru_cache(maxsize=None)
def _kernel_parts(spec):
    """Per q-degree numerator/denominator polynomials in w (untruncated)."""
    n = spec.n
    parts = []
    for d in range(spec.qorder + 1):
        num = P.ONE
        for r in range(1, n * d + 1):
            num = P.mul(num, (Fraction(r), Fraction(n)))
        den = P.ONE
        for r in range(1, d + 1):
            factor = tuple(Fraction(comb(n, k)) * Fraction(r) ** (n - k) for k in range(n))
            den = P.mul(den, factor)  # (w+r)^n - w^n, degree n-1
        parts.append((num, den))
    return tuple(parts)


@lru_cache(maxsize=None)
def kernel(spec):
    """The (w, q) kernel as a WSeries; (w^0, q^0) coefficient is 1."""
    w, d = spec.worder, spec.qorder
    cols = []
    for num, den in _kernel_parts(spec):
        ser = P.series_mul(num, P.series_inv(den, w), w)
        cols.append(ser)
    rows = []
    for j in range(w + 1):
        rows.append(QSeries([cols[k][j] for k in range(d + 1)]))
    return WSeries(rows)


@lru_cache(maxsize=None)
def kernel_inv_hbar(spec):
    """The kernel at w = 1/h, as a u-series with rational-function coefficients.

    The q^d coefficient has pole order exactly d at h = 0.
    """
    out = []
    for d, (num, den) in enumerate(_kernel_parts(spec)):
        rnum = P.reverse(num, len(num) - 1)
        rden = P.reverse(den, len(den) - 1)
        out.append(RatFunc(rnum, P.mul_xk(rden, d)))
    return USeriesRF(out)


@lru_cache(maxsize=None)
def _tower_row(spec, p):
    """Row p of the t-polynomial tower, entries for k = p..n-1."""
    n, d = spec.n, spec.qorder
    if p == 0:
        f = kernel(spec)
        row = []
        for k in range(n):
            coeffs = [f.coeff(k - j) * Fraction(1, factorial(j)) for j in range(k + 1)]
            row.append(TPoly(coeffs))
        return tuple(row)
    prev = _tower_row(spec, p - 1)
    diag = prev[0].t_free_part()
    return tuple(entry.div_qseries(diag).d_dt() for entry in prev[1:])


def i_series(spec, p, k):
    """Tower entry with indices (p, k); a polynomial in t of degree <= k-p."""
    if not 0 <= p <= k <= spec.n - 1:
        raise ValueError("need 0 <= p <= k <= n-1")
    return _tower_row(spec, p)[k - p]


@lru_cache(maxsize=None)
def diagonal_series(spec, p):
    """The t-free diagonal tower entry, a unit q-series."""
    return i_series(spec, p, p).t_free_part()


@lru_cache(maxsize=None)
def mirror_shift(spec):
    """T - t: the mirror map minus the flat coordinate, a pure q-series.

    The t-linear part must cancel exactly; failure to do so raises.
    For n = 1 the tower has a single column, but the same ratio of kernel
    coefficients still defines the shift.
    """
    if spec.n == 1:
        f = kernel(spec)
        return f.coeff(1) / f.coeff(0)
    ratio = i_series(spec, 0, 1).div_qseries(diagonal_series(spec, 0))
    shifted = ratio - TPoly.t_variable(spec.qorder)
    return shifted.t_free_part()


@lru_cache(maxsize=None)
def one_minus_nn_q(spec):
    d = spec.qorder
    return QSeries.one(d) - QSeries.monomial(1, d, Fraction(spec.n) ** spec.n)


@lru_cache(maxsize=None)
def linear_factor(spec):
    """L = (1 - n^n q)^{1/n}."""
    return one_minus_nn_q(spec).power(Fraction(1, spec.n))


@lru_cache(maxsize=None)
def regularizing_exponent(spec, method="closed_form"):
    """mu: by termwise integration of the closed form, or by the residue
    of the logarithm of the kernel at w = 1/h.  Both are exact and must
    agree; the agreement is one of the verified identities.

    The residue path runs on exact Laurent windows seeded from the
    rational-function coefficients: the q^k coefficient of anything in
    sight has pole order at most k, so windows reaching power d - k
    determine every residue through q^d exactly.
    """
    d = spec.qorder
    if method == "closed_form":
        expanded = one_minus_nn_q(spec).power(Fraction(-1, spec.n)) - 1
        return QSeries([Fraction(0)] + [expanded[k] / k for k in range(1, d + 1)])
    if method == "residue":
        # exact-zero coefficients are carried as None so that window
        # bookkeeping never degrades through them
        def wadd(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return a + b

        f = kernel_inv_hbar(spec)
        z = [None] + [laurent_at_zero(f[k], k, d - k) for k in range(1, d + 1)]
        one = laurent_at_zero(RatFunc.from_scalar(1), 0, d)
        log = [None] * (d + 1)
        power = [one] + [None] * d
        sign = 1
        for m in range(1, d + 1):
            nxt = [None] * (d + 1)
            for i in range(m - 1, d + 1):
                if power[i] is None:
                    continue
                for j in range(1, d + 1 - i):
                    nxt[i + j] = wadd(nxt[i + j], power[i] * z[j])
            power = nxt
            log = [
                wadd(acc, None if p is None else p * Fraction(sign, m))
                for acc, p in zip(log, power)
            ]
            sign = -sign
        return QSeries(
            [
                c.coeff(-1) if c is not None and c.low >= 1 else Fraction(0)
                for c in log
            ]
        )
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def regular_kernel(spec):
    """Q: the kernel at w = 1/h with exp(mu/h) stripped; holomorphic at h=0.

    A pole in any coefficient contradicts the structure theory and raises.
    """
    mu = regularizing_exponent(spec)
    q = exp_over_hbar(mu, -1) * kernel_inv_hbar(spec)
    for d, c in enumerate(q.coeffs):
        order = c.pole_order_at_zero()
        if order:
            raise RegularityViolation(d, order)
    return q


def q_coefficient(spec, d):
    """The q^d coefficient of the regular kernel, a rational function of h."""
    if not 0 <= d <= spec.qorder:
        raise ValueError("degree outside the stored truncation")
    return regular_kernel(spec)[d]


@lru_cache(maxsize=None)
def kernel_value_at_zero(spec):
    """Closed form for the regular kernel at h = 0: (1 - n^n q)^{-1/n}."""
    return one_minus_nn_q(spec).power(Fraction(-1, spec.n))


@lru_cache(maxsize=None)
def kernel_slope_at_zero(spec):
    """Closed form for the first h-derivative of the regular kernel at h = 0."""
    n = spec.n
    c = Fraction((n - 2) * (n + 1), 24 * n)
    base = one_minus_nn_q(spec)
    return (base.power(Fraction(-1, n)) - base.power(Fraction(-1))) * c


@lru_cache(maxsize=None)
def log_kernel_w(spec):
    """Bigraded logarithm of the kernel divided by its w-constant part."""
    f = kernel(spec)
    return f.div_qseries(f.coeff(0)).log()


def dw_kernel_coeffs(n, upto):
    """Taylor coefficients in w of (1+w)^n / (1+nw)."""
    num = tuple(Fraction(comb(n, k)) for k in range(n + 1))
    inv = P.series_inv((Fraction(1), Fraction(n)), upto)
    ser = P.series_mul(num, inv, upto)
    return list(ser)


# -- ladder series -------------------------------------------------------


@lru_cache(maxsize=None)
def ladder_series(spec, p):
    """Series obtained from the normalized kernel at w = 1/h by p descent
    steps (1/diagonal) * (1 + h d/dt)."""
    if not 0 <= p <= spec.n - 1:
        raise ValueError("need 0 <= p <= n-1")
    if p == 0:
        return kernel_inv_hbar(spec).mul_inv_qseries(diagonal_series(spec, 0))
    prev = ladder_series(spec, p - 1)
    h = RatFunc.variable()
    stepped = prev + USeriesRF(
        [c * h * d for d, c in enumerate(prev.coeffs)]
    )
    return stepped.mul_inv_qseries(diagonal_series(spec, p))


@lru_cache(maxsize=None)
def _descended_regular(spec, p):
    """exp(-mu/h) times the p-th ladder series; holomorphic at h = 0."""
    return exp_over_hbar(regularizing_exponent(spec), -1) * ladder_series(spec, p)


def ladder_residue(spec, p, order):
    """res_{h=0} h^{-1-order} exp(-mu/h) * ladder_p, as a q-series."""
    return _descended_regular(spec, p).weighted_residues(-1 - order)


# -- identity suites ------------------------------------------------------


def diagonal_identities(spec):
    """Product, weighted-product, and symmetry identities of the diagonals."""
    n, d = spec.n, spec.qorder
    diags = [diagonal_series(spec, p) for p in range(n)]
    onemq = one_minus_nn_q(spec)
    one = QSeries.one(d)

    prod_all = one
    for g in diags:
        prod_all = prod_all * g
    plain = prod_all * onemq

    weighted = one
    for p, g in enumerate(diags):
        weighted = weighted * g ** (n - 1 - p)
    weighted = weighted * onemq.power(Fraction(n - 1, 2))

    reports = [
        report_equality(
            "diagonal-product",
            {"n": n},
            [(f"q^{k}", plain[k], one[k]) for k in range(d + 1)],
            d,
        ),
        report_equality(
            "diagonal-weighted-product",
            {"n": n},
            [(f"q^{k}", weighted[k], one[k]) for k in range(d + 1)],
            d,
        ),
    ]
    sym_pairs = []
    for p in range(n):
        lhs = diags[p]
        rhs = diags[n - 1 - p]
        sym_pairs.extend((f"p={p} q^{k}", lhs[k], rhs[k]) for k in range(d + 1))
    reports.append(report_equality("diagonal-symmetry", {"n": n}, sym_pairs, d))
    return merge_reports("diagonal-identities", {"n": n, "order": d}, reports, d)


def tower_structure_check(spec):
    """Degrees and constant terms of the tower entries, and the consistency
    of the reduced coefficients across rows."""
    n, d = spec.n, spec.qorder
    seen = {}
    pairs = []
    for p in range(n):
        for k in range(p, n):
            entry = i_series(spec, p, k)
            pairs.append((f"t-degree of ({p},{k})", entry.t_degree <= k - p, True))
            for r in range(p, k + 1):
                reduced = entry.coeff(k - r) * factorial(k - r)
                expect = Fraction(1) if r == p else Fraction(0)
                pairs.append(
                    (f"constant of reduced ({p},{r}) from k={k}", reduced[0], expect)
                )
                key = (p, r)
                if key in seen:
                    pairs.append((f"reduced ({p},{r}) consistent", reduced, seen[key]))
                else:
                    seen[key] = reduced
    return report_equality("tower-structure", {"n": n, "order": d}, pairs, d)


def exponent_methods_check(spec):
    """The two constructions of the regularizing exponent agree."""
    d = spec.qorder
    a = regularizing_exponent(spec, "closed_form")
    b = regularizing_exponent(spec, "residue")
    return report_equality(
        "exponent-methods-agree",
        {"n": spec.n, "order": d},
        [(f"q^{k}", a[k], b[k]) for k in range(d + 1)],
        d,
    )


def regular_kernel_checks(spec):
    """Regularity at h = 0 plus the closed forms of value and slope there."""
    d = spec.qorder
    q = regular_kernel(spec)  # raises RegularityViolation on a pole
    value = q.taylor_coeff(0)
    slope = q.taylor_coeff(1)
    reports = [
        report_equality(
            "regular-kernel-value",
            {"n": spec.n},
            [(f"q^{k}", value[k], kernel_value_at_zero(spec)[k]) for k in range(d + 1)],
            d,
        ),
        report_equality(
            "regular-kernel-slope",
            {"n": spec.n},
            [(f"q^{k}", slope[k], kernel_slope_at_zero(spec)[k]) for k in range(d + 1)],
            d,
        ),
    ]
    return merge_reports(
        "regular-kernel", {"n": spec.n, "order": d}, reports, d
    )


def ladder_identities(spec):
    """Residues of the descended ladder series against their closed forms,
    and the iterated double residue against both of its closed forms."""
    n, d = spec.n, spec.qorder
    if n < 2:
        raise ValueError("ladder identities need n >= 2")
    one = QSeries.one(d)
    big_l = linear_factor(spec)
    fs = [one / (big_l * diagonal_series(spec, p)) for p in range(n)]
    flog_deriv = [f.log().derivative() for f in fs]
    phi1 = kernel_slope_at_zero(spec)

    theta0 = []
    theta1 = []
    for p in range(n):
        theta0.append(ladder_residue(spec, p, 0))
        theta1.append(ladder_residue(spec, p, 1))

    pairs0 = []
    pairs1 = []
    for p in range(n):
        closed0 = one
        for r in range(p + 1):
            closed0 = closed0 * fs[r]
        inner = phi1
        for r in range(p):
            inner = inner + flog_deriv[r] * (p - r)
        closed1 = big_l * closed0 * inner
        pairs0.extend((f"p={p} q^{k}", theta0[p][k], closed0[k]) for k in range(d + 1))
        pairs1.extend((f"p={p} q^{k}", theta1[p][k], closed1[k]) for k in range(d + 1))

    reports = [
        report_equality("ladder-first-residue", {"n": n}, pairs0, d),
        report_equality("ladder-second-residue", {"n": n}, pairs1, d),
    ]

    # first descent step agrees with the mirror-map route
    step = one + mirror_shift(spec).derivative()
    reports.append(
        report_equality(
            "ladder-step-matches-mirror",
            {"n": n},
            [(f"q^{k}", diagonal_series(spec, 1)[k], step[k]) for k in range(d + 1)],
            d,
        )
    )

    # double residue of the paired ladder series
    descended = [_descended_regular(spec, p) for p in range(n)]
    lhs = QSeries.zero(d)
    for p in range(n - 1):
        q_idx = n - 2 - p
        lhs = lhs + double_residue_split_kernel(descended[p], descended[q_idx])
    lhs = lhs + double_residue_split_kernel(descended[n - 1], descended[n - 1])

    mid = QSeries.zero(d)
    for p in range(n - 1):
        mid = mid + theta1[p] * theta0[n - 2 - p]
    mid = mid + theta1[n - 1] * theta0[n - 1]

    tail = QSeries.zero(d)
    for p in range(n - 1):
        for r in range(p):
            tail = tail + flog_deriv[r] * (p - r)
    rhs = big_l * (phi1 * n + tail)

    reports.append(
        report_equality(
            "paired-ladder-double-residue",
            {"n": n},
            [(f"mid q^{k}", lhs[k], mid[k]) for k in range(d + 1)]
            + [(f"closed q^{k}", lhs[k], rhs[k]) for k in range(d + 1)],
            d,
        )
    )
    return merge_reports("ladder-identities", {"n": n, "order": d}, reports, d)
