"""Dense univariate polynomial arithmetic over exact rationals.

A polynomial is a tuple of Fraction coefficients, lowest degree first,
with no trailing zeros; the zero polynomial is the empty tuple.  These
helpers back the rational-function and hypergeometric layers; everything
is exact.
"""

from fractions import Fraction
from math import gcd as _int_gcd

ZERO = ()
ONE = (Fraction(1),)


def norm(coeffs):
    """Coerce to Fraction and strip trailing zeros."""
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(p):
    return len(p) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return norm(out)


def neg(p):
    return tuple(-c for c in p)


def sub(a, b):
    return add(a, neg(b))


def scale(p, r):
    if r == 0:
        return ZERO
    return tuple(c * r for c in p)


def mul(a, b):
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] += x * y
    return norm(out)


def mul_xk(p, k):
    """Multiply by x**k."""
    if not p:
        return ZERO
    return (Fraction(0),) * k + tuple(p)


def divmod_poly(a, b):
    """Quotient and remainder with deg(rem) < deg(b)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    quot = [Fraction(0)] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        q = c / lb
        quot[i - db] = q
        for j in range(db + 1):
            rem[i - db + j] -= q * b[j]
    return norm(quot), norm(rem)


def exact_div(a, b):
    q, r = divmod_poly(a, b)
    if r:
        raise ArithmeticError("polynomial division was not exact")
    return q


def monic(p):
    if not p:
        return ZERO
    lc = p[-1]
    return p if lc == 1 else tuple(c / lc for c in p)


def _to_int(p):
    """Clear denominators; returns a list of ints (content not removed)."""
    den = 1
    for c in p:
        d = c.denominator
        den = den // _int_gcd(den, d) * d
    return [int(c * den) for c in p]


def _int_content(z):
    g = 0
    for c in z:
        g = _int_gcd(g, abs(c))
        if g == 1:
            break
    return g or 1


def _primitive(z):
    while z and z[-1] == 0:
        z.pop()
    if not z:
        return z
    g = _int_content(z)
    if z[-1] < 0:
        g = -g
    return [c // g for c in z]


def _pseudo_rem(a, b):
    """Remainder of lb^k * a modulo b over the integers (k as needed)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        dr = len(r) - 1
        c = r[-1]
        r = [lb * x for x in r]
        for j in range(db + 1):
            r[dr - db + j] -= c * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def gcd_poly(a, b):
    """Monic gcd.  Uses a primitive pseudo-remainder sequence over the
    integers to keep coefficient growth in check."""
    if not a:
        return monic(b)
    if not b:
        return monic(a)
    A = _primitive(_to_int(a))
    B = _primitive(_to_int(b))
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _primitive(_pseudo_rem(A, B))
        A, B = B, R
    return monic(tuple(Fraction(c) for c in A))


def eval_poly(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def shift(p, a):
    """p(x + a) by Horner on the shifted variable."""
    acc = ZERO
    for c in reversed(p):
        acc = add(mul(acc, (a, Fraction(1))), (c,))
    return acc


def reverse(p, deg):
    """x**deg * p(1/x); requires deg >= degree(p)."""
    if deg < len(p) - 1:
        raise ValueError("reversal degree below actual degree")
    out = [Fraction(0)] * (deg + 1)
    for i, c in enumerate(p):
        out[deg - i] = c
    return norm(out)


def series_inv(p, order):
    """1/p as a power series to the given order; p[0] must be nonzero."""
    if not p or p[0] == 0:
        raise ZeroDivisionError("series inverse of a non-unit")
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / p[0]
    for k in range(1, order + 1):
        s = Fraction(0)
        for j in range(1, min(k, len(p) - 1) + 1):
            s += p[j] * out[k - j]
        out[k] = -s / p[0]
    return tuple(out)


def series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            if y != 0:
                out[i + j] += x * y
    return tuple(out)
