"""Independent reference computations used to check the library.

Nothing here calls into the code under test except for MultiPoly term
access, so agreement is evidence rather than tautology.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

from incad.poly import MultiPoly


def _symbols(p: MultiPoly):
    return sympy.symbols(" ".join(p.order.names), seq=True)


def to_sympy(p: MultiPoly):
    xs = _symbols(p)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for x, k in zip(xs, e):
            term *= x**k
        expr += term
    return expr


def from_sympy(expr, like: MultiPoly) -> MultiPoly:
    xs = _symbols(like)
    poly = sympy.Poly(sympy.expand(expr), *xs)
    terms = {}
    for e, c in poly.terms():
        c = sympy.Rational(c)
        terms[tuple(e)] = Fraction(int(c.p), int(c.q))
    return MultiPoly(like.order, terms)


def sylvester_resultant(p: MultiPoly, q: MultiPoly, var: int) -> MultiPoly:
    """Determinant of the Sylvester matrix, built by hand and expanded by SymPy."""
    x = _symbols(p)[var]
    fp = sympy.Poly(to_sympy(p), x)
    fq = sympy.Poly(to_sympy(q), x)
    m, n = fp.degree(), fq.degree()
    if m == 0:
        return from_sympy(fp.as_expr() ** n, p)
    if n == 0:
        return from_sympy(fq.as_expr() ** m, p)
    a = fp.all_coeffs()
    b = fq.all_coeffs()
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (size - n - 1 - i))
    det = sympy.Matrix(rows).det(method="berkowitz")
    return from_sympy(det, p)


# -- univariate --------------------------------------------------------------


def _peval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _prem_neg(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """-(a mod b) over Q, lowest degree first."""
    a = list(a)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        t = a[-1] / b[-1]
        for i, bc in enumerate(b):
            a[i + k] -= t * bc
        _trim(a)
    return [-x for x in a]


def sturm_count(coeffs: Sequence[int], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in the half-open interval ``(lo, hi]`` by Sturm's theorem."""
    p = _trim([Fraction(c) for c in coeffs])
    dp = _trim([i * p[i] for i in range(1, len(p))])
    seq = [p, dp]
    while seq[-1] and len(seq[-1]) > 1:
        r = _trim(_prem_neg(seq[-2], seq[-1]))
        if not r:
            break
        seq.append(r)

    def changes(x: Fraction) -> int:
        signs = [s for s in (_peval(f, x) for f in seq) if s != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))

    return changes(lo) - changes(hi)


def total_real_roots(coeffs: Sequence[int]) -> int:
    c = [Fraction(a) for a in coeffs]
    big = 1 + sum(abs(a) for a in c[:-1]) / abs(c[-1])
    return sturm_count(coeffs, -big, big)
