"""Resultants, discriminants and the Lazard coefficient set."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

from ._flint import context, from_mpoly, to_mpoly
from .poly import MultiPoly

#: Call counters; ``stats["resultant"]`` counts public :func:`resultant` calls.
stats: Counter[str] = Counter()


def _coefficient_list(p: MultiPoly, i: int) -> list:
    """Coefficients of integral ``p`` in ``x_i``, highest first, as FLINT polynomials."""
    n = len(p.order)
    groups: dict[int, dict] = {}
    for e, c in p.terms.items():
        groups.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
    d = max(groups)
    zero = context(n).from_dict({})
    return [to_mpoly(groups[k], n) if k in groups else zero for k in range(d, -1, -1)]


def _strip(f: list) -> list:
    k = 0
    while k < len(f) and f[k].is_zero():
        k += 1
    return f[k:]


def _prem(f: list, g: list) -> list:
    """Pseudo-remainder ``lc(g)^(deg f - deg g + 1) * f mod g``."""
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return f
    r = list(f)
    lg = g[0]
    n = df - dg + 1
    while r and len(r) - 1 >= dg:
        lr = r[0]
        # r <- lc(g)*r - lc(r)*x^(deg r - deg g)*g, killing the leading term
        r = [c * lg for c in r]
        for j in range(dg + 1):
            r[j] = r[j] - lr * g[j]
        r = _strip(r[1:])
        n -= 1
    if n > 0 and r:
        m = lg ** n
        r = [c * m for c in r]
    return r


def subresultant_resultant(f: list, g: list, zero, one):
    """Resultant of two coefficient lists (highest first) over an integral domain.

    Fraction-free subresultant pseudo-remainder sequence with exact
    divisions.  ``res(c, g) = c^deg(g)`` for a constant ``c``; zero if either
    input is zero.
    """
    if not f or not g:
        return zero
    da, db = len(f) - 1, len(g) - 1
    s = 1
    if da < db:
        f, g = g, f
        da, db = db, da
        if da % 2 and db % 2:
            s = -s
    if db == 0:
        r = g[0] ** da
        return r if s == 1 else -r
    a, b = f, g
    gg = h = one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem(a, b)
        a = b
        if not r:
            return zero
        divisor = gg * h ** delta
        b = r if divisor.is_one() else [c / divisor for c in r]
        gg = a[0]
        if delta == 1:
            h = gg
        elif delta > 1:
            h = gg ** delta / h ** (delta - 1)
        if len(b) - 1 <= 0:
            break
    da = len(a) - 1
    lb = b[0]
    res = lb if da == 1 else lb ** da / h ** (da - 1)
    return res if s == 1 else -res


def subresultant_prs(f: list, g: list, one) -> list[list]:
    """Subresultant remainder sequence of ``f`` and ``g`` (highest first), ``f`` and ``g`` included.

    Each entry is proportional, over the fraction field of the coefficient
    ring, to the subresultant of its degree.
    """
    if len(f) < len(g):
        f, g = g, f
    out = [f, g]
    a, b = f, g
    gg = h = one
    while len(b) > 1:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        a = b
        divisor = gg * h ** delta
        b = r if divisor.is_one() else [c / divisor for c in r]
        out.append(b)
        gg = a[0]
        if delta == 1:
            h = gg
        elif delta > 1:
            h = gg ** delta / h ** (delta - 1)
    return out


def _integral(p: MultiPoly) -> tuple[Fraction, MultiPoly]:
    if p.is_integral():
        return Fraction(1), p
    return p.integer_content()


def _resultant(p: MultiPoly, q: MultiPoly, i: int) -> MultiPoly:
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    p._check(q)
    cp, p = _integral(p)
    cq, q = _integral(q)
    dp, dq = p.degree(i), q.degree(i)
    n = len(p.order)
    ctx = context(n)
    r = subresultant_resultant(_coefficient_list(p, i), _coefficient_list(q, i), ctx.from_dict({}), ctx.constant(1))
    res = MultiPoly(p.order, from_mpoly(r, n))
    scale = cp ** dq * cq ** dp
    return res if scale == 1 else res.scale(scale)


def resultant(p: MultiPoly, q: MultiPoly, v: str | int) -> MultiPoly:
    """Resultant of ``p`` and ``q`` with respect to ``v``.

    Computed by a fraction-free subresultant remainder sequence and equal to
    the Sylvester determinant.  A factor constant in ``v`` follows the
    classical rule ``res(c, q) = c^deg(q)``.
    """
    stats["resultant"] += 1
    return _resultant(p, q, p.order.index(v))


def discriminant(p: MultiPoly, v: str | int) -> MultiPoly:
    """``(-1)^(d(d-1)/2) / lc(p) * res(p, dp/dv)`` with ``d = deg_v p``.

    Polynomials of degree at most one in ``v`` have discriminant 1.
    """
    if p.is_zero():
        raise ValueError("discriminant of the zero polynomial")
    stats["discriminant"] += 1
    i = p.order.index(v)
    d = p.degree(i)
    if d <= 1:
        return MultiPoly.constant(p.order, 1)
    c, q = _integral(p)
    r = _resultant(q, q.diff(i), i)
    n = len(p.order)
    lc = to_mpoly(q.leading_coefficient(i).terms, n)
    out = MultiPoly(p.order, from_mpoly(to_mpoly(r.terms, n) / lc, n))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    scale = sign * c ** (2 * d - 2)
    return out if scale == 1 else out.scale(scale)


def lazard_coefficient_set(p: MultiPoly, v: str | int) -> frozenset[MultiPoly]:
    """Leading and trailing coefficients of ``p`` in ``v``, canonical, constants dropped.

    The trailing coefficient is the lowest nonzero one, which for the
    irreducible polynomials the projection works with is the ``v^0``
    coefficient unless ``p`` is ``v`` itself.
    """
    if p.is_zero():
        raise ValueError("coefficient set of the zero polynomial")
    return frozenset(
        c.canonical()
        for c in (p.leading_coefficient(v), p.trailing_coefficient(v))
        if not c.is_constant()
    )
