"""Command-line front end: invariant tables, verification suites, series dumps.

Output is deterministic and exact; rationals are printed as "p/q" and
never decimalized in machine formats.  Exit codes: 0 on success, 1 when
a verified identity fails (the suite is the acceptance harness), 2 on
bad arguments.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import hyper, invariants
from .errors import HypergwError
from .hyper import HyperSpec
from .residues import (
    RatFunc,
    USeriesRF,
    exp_over_hbar,
    moment_closed_form_check,
    moment_identity_check,
    regularize,
    reciprocal_sum_check,
    residue_at,
    residue_at_infinity,
    residue_of_product_check,
    rising_product_check,
    vandermonde_check,
)
from .report import IdentityReport, report_equality
from .series import QSeries, format_rational

SUITES = (
    "props31",
    "props32",
    "regularize",
    "residues",
    "appendixA",
    "appendixB",
    "theorem3",
    "special",
)

DUMPABLE = ("I", "mirror", "mu", "F", "Q", "theorem2_rhs")


def _parser():
    parser = argparse.ArgumentParser(
        prog="hypergw",
        description="Exact genus-0/1 Gromov-Witten invariants of Calabi-Yau "
        "hypersurfaces and their identity suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=5, help="hypersurface degree (>= 1)")
    common.add_argument("--order", type=int, default=6, help="q-truncation (>= 1)")
    common.add_argument("--output", default=None, help="output path (default stdout)")

    p_inv = sub.add_parser("invariants", parents=[common], help="emit the invariant table")
    p_inv.add_argument("--format", choices=("json", "csv", "text"), default="text")

    p_ver = sub.add_parser("verify", parents=[common], help="run identity suites")
    p_ver.add_argument(
        "--suite",
        default=",".join(SUITES),
        help="comma-separated subset of: " + ", ".join(SUITES),
    )
    p_ver.add_argument("--format", choices=("json", "text"), default="text")

    p_dump = sub.add_parser("dump", parents=[common], help="print one series")
    p_dump.add_argument("--what", required=True, help="one of: " + ", ".join(DUMPABLE))
    return parser


# -- suites -----------------------------------------------------------------


def _suite_props31(n, order):
    spec = HyperSpec(n, order)
    return [
        hyper.diagonal_identities(spec),
        hyper.tower_structure_check(spec),
    ]


def _suite_props32(n, order):
    spec = HyperSpec(n, order)
    return [
        hyper.exponent_methods_check(spec),
        hyper.regular_kernel_checks(spec),
    ]


def _constructed_regularizable(order):
    growth = QSeries.monomial(1, order, Fraction(3, 2))
    linear = USeriesRF(
        [RatFunc.from_scalar(0), RatFunc.variable()], order
    )
    return exp_over_hbar(growth, 1) * (USeriesRF.one(order) + linear) - USeriesRF.one(order)


def _suite_regularize(n, order):
    reports = []
    z = _constructed_regularizable(order)
    for a in range(5):
        reports.append(moment_identity_check(z, a, "intrinsic"))
    for a in range(4):
        reports.append(moment_identity_check(z, a, "regularized"))
    for a in range(-3, 4):
        reports.append(moment_closed_form_check(z, a))

    zbad = USeriesRF([RatFunc.from_scalar(0), RatFunc.inv_power(1)], order)
    bad_fails = any(
        not moment_identity_check(zbad, a, "intrinsic").passed for a in range(5)
    )
    reports.append(
        IdentityReport(
            "counterexample-detected",
            {"series": "u/h"},
            order,
            passed=bad_fails,
            first_failure=None if bad_fails else "criterion did not fail",
        )
    )

    spec = HyperSpec(n, order)
    bridge = invariants.bridge_series(spec)
    reg = regularize(bridge)
    mu = hyper.regularizing_exponent(spec)
    reports.append(
        report_equality(
            "bridge-exponent-is-mu",
            {"n": n},
            [(f"q^{k}", reg.eta[k], mu[k]) for k in range(order + 1)],
            order,
        )
    )
    for a in range(3):
        rep = moment_identity_check(bridge, a, "intrinsic")
        rep.parameters["series"] = "bridge"
        reports.append(rep)
        rep = moment_identity_check(bridge, a, "regularized")
        rep.parameters["series"] = "bridge"
        reports.append(rep)
    return reports


def _random_ratfunc(rng):
    """Rational function with a few small rational poles."""
    from . import polys as P

    den = (Fraction(1),)
    for _ in range(rng.randint(1, 3)):
        a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        for _ in range(rng.randint(1, 2)):
            den = P.mul(den, (-a, Fraction(1)))
    num = tuple(Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(1, len(den))))
    return RatFunc(num, den)


def _suite_residues(n, order, samples=200, seed=20080915):
    import random

    rng = random.Random(seed)
    failures = []
    for trial in range(samples):
        f = _random_ratfunc(rng)
        finite = sum(
            (residue_at(f, a) for a in _rational_den_roots(f)), Fraction(0)
        )
        total = finite + residue_at_infinity(f)
        if total != 0:
            failures.append(f"trial {trial}: total residue {total}")
            break
    rep_sum = IdentityReport(
        "residue-sum-zero",
        {"samples": samples},
        samples,
        passed=not failures,
        first_failure=failures[0] if failures else None,
    )

    rep_prod = IdentityReport("product-residue-random", {"samples": samples}, samples)
    for trial in range(samples):
        fs = []
        for _ in range(rng.randint(0, 5)):
            num = tuple(Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 3)))
            den = (Fraction(0), Fraction(1)) if rng.random() < 0.7 else (Fraction(1),)
            fs.append(RatFunc(num, den) + Fraction(rng.randint(-3, 3)))
        sub = residue_of_product_check(fs)
        if not sub.passed:
            rep_prod.passed = False
            rep_prod.first_failure = f"trial {trial}: {sub.first_failure}"
            break
    return [rep_sum, rep_prod]


def _rational_den_roots(f):
    """All rational roots of the (monic) denominator, by exact trial division."""
    from . import polys as P

    roots = set()
    den = f.den
    # rational root candidates p/q: p | constant, q | leading (monic: q = 1)
    # after clearing denominators
    ints = P._to_int(den)
    lead = ints[-1]
    const = next((c for c in ints if c != 0), 0)
    if ints[0] == 0:
        roots.add(Fraction(0))
    for p in _divisor_candidates(const):
        for q in _divisor_candidates(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if P.eval_poly(den, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisor_candidates(m):
    m = abs(m)
    if m == 0:
        return [1]
    return [k for k in range(1, m + 1) if m % k == 0]


def _suite_appendix_a(order):
    bound = min(order, 8)
    reports = []
    ok = IdentityReport("binomial-vandermonde-exhaustive", {"bound": bound}, bound)
    for length in range(0, 5):
        for qs in _tuples(length, 5):
            for b in range(bound + 1):
                sub = vandermonde_check(b, qs)
                if not sub.passed:
                    ok.passed = False
                    ok.first_failure = sub.describe()
    reports.append(ok)

    ok = IdentityReport("alternating-reciprocal-exhaustive", {"bound": bound}, bound)
    for q in range(bound + 1):
        for a in range(1, bound + 1):
            sub = reciprocal_sum_check(q, a)
            if not sub.passed:
                ok.passed = False
                ok.first_failure = sub.describe()
    reports.append(ok)

    ok = IdentityReport("alternating-rising-exhaustive", {"bound": bound}, bound)
    for q in range(bound + 1):
        for a in range(bound + 1):
            for s in range(bound + 1):
                sub = rising_product_check(q, a, s)
                if not sub.passed:
                    ok.passed = False
                    ok.first_failure = sub.describe()
    reports.append(ok)
    return reports


def _tuples(length, top):
    if length == 0:
        yield ()
        return
    for rest in _tuples(length - 1, top):
        for v in range(top + 1):
            yield (v,) + rest


def _suite_appendix_b(order):
    _, rep = invariants.quintic_genus0(order)
    table = invariants.assemble_table(5, order)
    n0 = {d: v for d, v in enumerate(table.column("n0"), start=1)}
    n1 = {d: v for d, v in enumerate(table.column("n1"), start=1)}
    pairs = []
    for d in range(1, order + 1):
        forward0 = sum(
            n0[d // k] / Fraction(k) ** 3 for k in invariants.divisors(d)
        )
        forward1 = sum(
            n1[d // k] * Fraction(invariants.sigma(k), k)
            for k in invariants.divisors(d)
        ) + sum(n0[d // k] / Fraction(k) for k in invariants.divisors(d)) / 12
        pairs.append((f"genus-0 d={d}", forward0, table.rows[d - 1].N0))
        pairs.append((f"genus-1 d={d}", forward1, table.rows[d - 1].N1))
    round_trip = report_equality(
        "instanton-round-trips", {"n": 5, "order": order}, pairs, order
    )
    return [rep, round_trip]


def _suite_theorem3(n, order):
    spec = HyperSpec(n, order)
    return [invariants.locus_split_check(spec), hyper.ladder_identities(spec)]


def _suite_special(order):
    return [invariants.low_dimension_checks(order)]


def run_suites(names, n, order):
    reports = []
    for name in names:
        if name == "props31":
            reports.extend(_suite_props31(n, order))
        elif name == "props32":
            reports.extend(_suite_props32(n, order))
        elif name == "regularize":
            reports.extend(_suite_regularize(n, order))
        elif name == "residues":
            reports.extend(_suite_residues(n, order))
        elif name == "appendixA":
            reports.extend(_suite_appendix_a(order))
        elif name == "appendixB":
            reports.extend(_suite_appendix_b(order))
        elif name == "theorem3":
            reports.extend(_suite_theorem3(n, order))
        elif name == "special":
            reports.extend(_suite_special(order))
    return reports


# -- dumps -------------------------------------------------------------------


def render_dump(what, n, order):
    spec = HyperSpec(n, order)
    lines = []
    if what == "I":
        series = hyper.diagonal_series(spec, 0)
        lines = [f"q^{d}: {format_rational(series[d])}" for d in range(order + 1)]
    elif what == "mirror":
        series = hyper.mirror_shift(spec)
        lines = [f"q^{d}: {format_rational(series[d])}" for d in range(1, order + 1)]
    elif what == "mu":
        series = hyper.regularizing_exponent(spec)
        lines = [f"q^{d}: {format_rational(series[d])}" for d in range(1, order + 1)]
    elif what == "F":
        f = hyper.kernel(spec)
        for j in range(f.worder + 1):
            for d in range(order + 1):
                lines.append(f"w^{j} q^{d}: {format_rational(f.coeff(j)[d])}")
    elif what == "Q":
        q = hyper.regular_kernel(spec)
        lines = [f"q^{d}: {q[d].to_str()}" for d in range(order + 1)]
    elif what == "theorem2_rhs":
        series = invariants.reduced_genus1_series(spec)
        lines = [f"q^{d}: {format_rational(series[d])}" for d in range(order + 1)]
    else:
        raise ValueError(f"unknown series {what!r}")
    return "\n".join(lines) + "\n"


# -- entry point --------------------------------------------------------------


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def main(argv=None):
    parser = _parser()
    args = parser.parse_args(argv)
    if args.n < 1 or args.order < 1:
        parser.exit(2, parser.format_usage() + "error: --n and --order must be >= 1\n")

    try:
        if args.command == "invariants":
            table = invariants.assemble_table(args.n, args.order)
            if args.format == "json":
                text = json.dumps(table.to_json_obj(), indent=2) + "\n"
            elif args.format == "csv":
                text = table.to_csv_text()
            else:
                text = table.to_text()
            _write(text, args.output)
            return 0

        if args.command == "verify":
            names = [s for s in args.suite.split(",") if s]
            unknown = [s for s in names if s not in SUITES]
            if unknown:
                parser.exit(
                    2,
                    parser.format_usage()
                    + f"error: unknown suite name(s): {', '.join(unknown)}\n",
                )
            reports = run_suites(names, args.n, args.order)
            if args.format == "json":
                text = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
            else:
                text = "\n".join(r.describe() for r in reports) + "\n"
            _write(text, args.output)
            return 0 if all(r.passed for r in reports) else 1

        if args.command == "dump":
            if args.what not in DUMPABLE:
                parser.exit(
                    2,
                    parser.format_usage() + f"error: unknown series name {args.what!r}\n",
                )
            _write(render_dump(args.what, args.n, args.order), args.output)
            return 0
    except HypergwError as exc:
        sys.stderr.write(f"identity violation: {type(exc).__name__}: {exc}\n")
        return 1
    except AssertionError as exc:
        sys.stderr.write(f"identity violation: {exc}\n")
        return 1
    parser.exit(2, parser.format_usage())


if __name__ == "__main__":
    sys.exit(main())
