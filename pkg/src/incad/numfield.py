"""Real algebraic number fields ``Q(g)`` for lifting over irrational points.

A field is given by the minimal polynomial ``m`` of a real generator ``g``
(a :class:`RealAlgebraic`).  Elements are tuples of ``deg m`` rationals,
the coefficients of ``1, g, g^2, ...``.  Fields for points with several
algebraic coordinates are built one coordinate at a time through primitive
elements ``g + c*s``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ._flint import context, from_qpoly, from_upoly, to_qpoly, to_upoly
from .realroots import (
    RealAlgebraic,
    as_upoly,
    isolate_real_roots,
    primitive,
    sign_at,
    sign_at_rational,
    square_free,
    trim,
    upoly_gcd,
)

Elem = tuple  # tuple[Fraction, ...]
QPoly = list  # list[Fraction], lowest degree first


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q


def q_add(a: QPoly, b: QPoly) -> QPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def q_sub(a: QPoly, b: QPoly) -> QPoly:
    return q_add(a, [-x for x in b])


def q_mul(a: QPoly, b: QPoly) -> QPoly:
    if not a or not b:
        return []
    return from_qpoly(to_qpoly(a) * to_qpoly(b))


def q_divmod(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly]:
    if not trim(b):
        raise ZeroDivisionError("polynomial division by zero")
    q, r = divmod(to_qpoly(a), to_qpoly(b))
    return from_qpoly(q), from_qpoly(r)


def q_xgcd(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly, QPoly]:
    """``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    if not trim(a) and not trim(b):
        return [], [], []
    g, s, t = to_qpoly(a).xgcd(to_qpoly(b))
    return from_qpoly(g), from_qpoly(s), from_qpoly(t)


# ---------------------------------------------------------------------------
# fields


@lru_cache(maxsize=4096)
def _irreducible_factors(poly: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    _, factors = to_upoly(poly).factor()
    return tuple(tuple(primitive(from_upoly(f))) for f, _ in factors if f.degree() > 0)


def minimal_polynomial(a: RealAlgebraic) -> RealAlgebraic:
    """``a`` re-expressed with its irreducible minimal polynomial."""
    if a.is_rational:
        return a
    if len(a.poly) == 2:
        return a
    for f in _irreducible_factors(a.poly):
        if sign_at(list(f), a.lo) * sign_at(list(f), a.hi) < 0:
            r = RealAlgebraic(f, a.lo, a.hi, _check=False)
            if len(f) == 2:
                r.detect_rational()
            return r
    raise ArithmeticError("no factor of the defining polynomial vanishes in the interval")


class NumberField:
    """``Q(gen)``; ``gen.poly`` must be irreducible."""

    def __init__(self, gen: RealAlgebraic):
        self.gen = gen
        if gen.is_rational:
            self.modulus: QPoly = [Fraction(0), Fraction(1)]
        else:
            lc = gen.poly[-1]
            self.modulus = [Fraction(c, lc) for c in gen.poly]
        self.degree = len(self.modulus) - 1
        self._fmodulus = to_qpoly(self.modulus)
        self.zero: Elem = (Fraction(0),) * self.degree
        self.one: Elem = (Fraction(1),) + (Fraction(0),) * (self.degree - 1)

    @classmethod
    def rationals(cls) -> NumberField:
        return cls(RealAlgebraic.rational(0))

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __repr__(self) -> str:
        return f"NumberField({self.gen!r})"

    # -- elements --------------------------------------------------------

    def elem(self, coeffs: Sequence) -> Elem:
        c = [Fraction(x) for x in coeffs]
        if len(c) > self.degree:
            c = q_divmod(c, self.modulus)[1]
        return tuple(c) + (Fraction(0),) * (self.degree - len(c))

    def const(self, q) -> Elem:
        return (Fraction(q),) + (Fraction(0),) * (self.degree - 1)

    def generator(self) -> Elem:
        if self.degree == 1:
            return self.const(self.gen.exact)
        return self.elem([0, 1])

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: Elem, b: Elem) -> Elem:
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a: Elem) -> Elem:
        return tuple(-x for x in a)

    def mul(self, a: Elem, b: Elem) -> Elem:
        if self.degree == 1:
            return (a[0] * b[0],)
        c = from_qpoly(to_qpoly(a) * to_qpoly(b) % self._fmodulus)
        return tuple(c) + (Fraction(0),) * (self.degree - len(c))

    def scale(self, a: Elem, q: Fraction) -> Elem:
        return tuple(x * q for x in a)

    def inv(self, a: Elem) -> Elem:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.degree == 1:
            return (1 / a[0],)
        g, s, _ = q_xgcd(trim(a), self.modulus)
        if len(g) != 1:
            raise ArithmeticError("modulus is not irreducible")
        return self.elem(s)

    def div(self, a: Elem, b: Elem) -> Elem:
        return self.mul(a, self.inv(b))

    def pow(self, a: Elem, k: int) -> Elem:
        out = self.one
        while k:
            if k & 1:
                out = self.mul(out, a)
            k >>= 1
            if k:
                a = self.mul(a, a)
        return out

    @staticmethod
    def is_zero(a: Elem) -> bool:
        return not any(a)

    def sign(self, a: Elem) -> int:
        if self.degree == 1:
            return (a[0] > 0) - (a[0] < 0)
        c = trim(a)
        if not c:
            return 0
        return sign_at(list(c), self.gen)

    def to_real(self, a: Elem) -> RealAlgebraic:
        """The element as a real algebraic number over Q."""
        if self.degree == 1 or not any(a[1:]):
            return RealAlgebraic.rational(a[0])
        # minimal polynomial of a: norm of (y - a(t)) over Q(t)
        from .elim import _resultant
        from .poly import MultiPoly, VarOrder

        order = VarOrder(("_y", "_t"))
        m = MultiPoly(order, {(0, i): c for i, c in enumerate(self.modulus)})
        terms = {(1, 0): Fraction(1)}
        for i, c in enumerate(a):
            if c:
                terms[(0, i)] = terms.get((0, i), 0) - c
        res = _resultant(m, MultiPoly(order, terms), 1)
        cands = isolate_real_roots(square_free(as_upoly(res)))
        while True:
            lo, hi = self._value_box(a)
            inside = [r for r in cands if r.compare(lo) >= 0 and r.compare(hi) <= 0]
            if len(inside) == 1:
                return inside[0]
            self.gen._bisect()

    def _value_box(self, a: Elem) -> tuple[Fraction, Fraction]:
        g = self.gen
        if g.is_rational:
            v = sum(c * g.exact ** i for i, c in enumerate(a))
            return v, v
        lo, hi = Fraction(0), Fraction(0)
        plo, phi = Fraction(1), Fraction(1)
        for i, c in enumerate(a):
            if i:
                cands = [plo * g.lo, plo * g.hi, phi * g.lo, phi * g.hi]
                plo, phi = min(cands), max(cands)
            if c > 0:
                lo += c * plo
                hi += c * phi
            elif c < 0:
                lo += c * phi
                hi += c * plo
        return lo, hi

    # -- univariate polynomials over the field -----------------------------

    def p_trim(self, f: list) -> list:
        while f and self.is_zero(f[-1]):
            f = f[:-1]
        return f

    def p_divmod(self, a: list, b: list) -> tuple[list, list]:
        b = self.p_trim(b)
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.p_trim(a))
        db = len(b) - 1
        if len(r) - 1 < db:
            return [], r
        inv = self.inv(b[-1])
        q = [self.zero] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            t = self.mul(r[k], inv)
            q[k - db] = t
            if not self.is_zero(t):
                for j in range(db + 1):
                    r[k - db + j] = self.sub(r[k - db + j], self.mul(t, b[j]))
        return self.p_trim(q), self.p_trim(r[:db])

    def p_monic(self, f: list) -> list:
        inv = self.inv(f[-1])
        return [self.mul(c, inv) for c in f]

    def p_gcd(self, a: list, b: list) -> list:
        a, b = self.p_trim(a), self.p_trim(b)
        while b:
            a, b = b, self.p_divmod(a, b)[1]
        return self.p_monic(a) if a else a

    def p_deriv(self, f: list) -> list:
        return self.p_trim([self.scale(f[i], Fraction(i)) for i in range(1, len(f))])

    def p_eval(self, f: list, x: Elem) -> Elem:
        acc = self.zero
        for c in reversed(f):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def p_eval_rational(self, f: list, x: Fraction) -> Elem:
        acc = self.zero
        for c in reversed(f):
            acc = self.add(self.scale(acc, x), c)
        return acc

    def p_from_rational(self, c: Sequence) -> list:
        return self.p_trim([self.const(x) for x in c])

    def sturm_sequence(self, f: list) -> list[list]:
        seq = [self.p_trim(f), self.p_deriv(f)]
        while seq[-1] and len(seq[-1]) > 1:
            r = self.p_divmod(seq[-2], seq[-1])[1]
            if not r:
                break
            seq.append([self.neg(c) for c in r])
        return [s for s in seq if s]

    def count_roots(self, f: list, lo: Fraction, hi: Fraction, seq: list | None = None) -> int:
        """Distinct real roots of ``f`` in ``(lo, hi]`` (Sturm's theorem)."""
        seq = seq if seq is not None else self.sturm_sequence(f)

        def variations(x: Fraction) -> int:
            count, last = 0, 0
            for s in seq:
                v = self.sign(self.p_eval_rational(s, x))
                if v:
                    if last and v != last:
                        count += 1
                    last = v
            return count

        return variations(lo) - variations(hi)

    def norm(self, f: list) -> list[int]:
        """Integer polynomial over Q vanishing at every root of ``f`` (and its conjugates)."""
        if self.degree == 1:
            return as_upoly([c[0] for c in f])
        from .elim import _resultant
        from .poly import MultiPoly, VarOrder

        order = VarOrder(("_x", "_t"))
        m = MultiPoly(order, {(0, i): c for i, c in enumerate(self.modulus)})
        terms = {}
        for k, c in enumerate(f):
            for i, a in enumerate(c):
                if a:
                    terms[(k, i)] = a
        res = _resultant(m, MultiPoly(order, terms), 1)
        return as_upoly(res)

    def real_roots(self, f: list) -> list[RealAlgebraic]:
        """Sorted distinct real roots of a nonzero polynomial over the field."""
        f = self.p_trim(f)
        if not f:
            raise ValueError("real roots of the zero polynomial")
        if len(f) == 1:
            return []
        if self.degree == 1:
            return isolate_real_roots([c[0] for c in f])
        n = self.norm(f)
        cands = isolate_real_roots(n)
        if not cands:
            return []
        seq = self.sturm_sequence(f)
        out = []
        for r in cands:
            if r.is_rational:
                if self.is_zero(self.p_eval_rational(f, r.exact)):
                    out.append(r)
                continue
            if self.count_roots(f, r.lo, r.hi, seq) == 1:
                out.append(r)
        return out

    def sign_poly_at(self, f: list, x: RealAlgebraic) -> int:
        """Exact sign of ``f`` (over the field) at a real algebraic ``x``."""
        f = self.p_trim(f)
        if not f:
            return 0
        if x.is_rational:
            return self.sign(self.p_eval_rational(f, x.exact))
        # f(x) = 0 forces x to be a root of the norm of f; the gcd over the
        # field is only needed against the factor of x.poly it shares with it
        common = upoly_gcd(self.norm(f), list(x.poly))
        if len(common) > 1 and sign_at_rational(common, x.lo) * sign_at_rational(common, x.hi) < 0:
            g = self.p_gcd(f, self.p_from_rational(common))
            if len(g) > 1 and self.count_roots(g, x.lo, x.hi) == 1:
                return 0
        seq = self.sturm_sequence(f)
        while self.count_roots(f, x.lo, x.hi, seq) > 0:
            x._bisect()
            if x.is_rational:
                return self.sign(self.p_eval_rational(f, x.exact))
        return self.sign(self.p_eval_rational(f, (x.lo + x.hi) / 2))


# ---------------------------------------------------------------------------
# towers of coordinates


class PointField:
    """A field containing every coordinate of a point, plus those coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Elem, ...]):
        self.field = field
        self.coords = coords

    @classmethod
    def empty(cls) -> PointField:
        return cls(NumberField.rationals(), ())

    def extend(self, s: RealAlgebraic) -> PointField:
        """Adjoin a further coordinate ``s``."""
        K = self.field
        if s.is_rational:
            return PointField(K, self.coords + (K.const(s.exact),))
        s = minimal_polynomial(s)
        if s.is_rational:
            return PointField(K, self.coords + (K.const(s.exact),))
        if K.is_rational:
            L = NumberField(s)
            return PointField(L, tuple(L.const(c[0]) for c in self.coords) + (L.generator(),))
        for c in (1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 7, -7):
            built = _primitive_element(K, s, c)
            if built is None:
                continue
            L, g_old, s_new = built
            coords = tuple(_transport(K, L, e, g_old) for e in self.coords)
            return PointField(L, coords + (s_new,))
        raise ArithmeticError("no primitive element found")  # pragma: no cover

    def sign(self, f) -> int:
        """Sign of a rational polynomial (MultiPoly) at the point."""
        K = self.field
        acc = K.zero
        pows: dict[tuple[int, int], Elem] = {}
        for e, c in f.terms.items():
            t = K.const(c)
            for j, k in enumerate(e):
                if k:
                    key = (j, k)
                    if key not in pows:
                        pows[key] = K.pow(self.coords[j], k)
                    t = K.mul(t, pows[key])
            acc = K.add(acc, t)
        return K.sign(acc)


def _transport(K: NumberField, L: NumberField, e: Elem, g_old: Elem) -> Elem:
    """Rewrite an element of ``K = Q(g)`` inside ``L`` given ``g`` as an element of ``L``."""
    acc = L.zero
    for c in reversed(e):
        acc = L.add(L.mul(acc, g_old), L.const(c))
    return acc


def _primitive_element(K: NumberField, s: RealAlgebraic, c: int):
    from .elim import _coefficient_list, _integral, _resultant, subresultant_prs
    from .poly import MultiPoly, VarOrder

    g = K.gen
    m = K.modulus
    q = s.poly
    # R(x) = res_y(q(y), m(x - c*y)) vanishes at g + c*s
    order = VarOrder(("_x", "_y"))
    x = MultiPoly.var(order, 0)
    y = MultiPoly.var(order, 1)
    z = x - y * c
    mz = MultiPoly.constant(order, 0)
    for coef in reversed(m):
        mz = mz * z + coef
    qy = MultiPoly(order, {(0, i): a for i, a in enumerate(q)})
    R = as_upoly(_resultant(qy, mz, 1))
    if len(upoly_gcd(R, [i * R[i] for i in range(1, len(R))])) > 1:
        return None
    roots = isolate_real_roots(R)
    while True:
        if c > 0:
            lo, hi = g.lo + c * s.lo, g.hi + c * s.hi
        else:
            lo, hi = g.lo + c * s.hi, g.hi + c * s.lo
        inside = [r for r in roots if r.compare(lo) > 0 and r.compare(hi) < 0]
        if len(inside) == 1:
            break
        g._bisect()
        s._bisect()
    gamma = minimal_polynomial(inside[0])
    L = NumberField(gamma)
    # s is the common root of q(y) and m(x - c*y) at x = gamma, read off the
    # degree-one member A(x)*y + B(x) of their subresultant sequence
    chain = subresultant_prs(_coefficient_list(qy, 1), _coefficient_list(_integral(mz)[1], 1), context(2).constant(1))
    linear = [t for t in chain if len(t) == 2]
    if not linear:
        return None
    a, b = (L.elem(_x_coefficients(t)) for t in linear[0])
    if L.is_zero(a):
        return None
    s_new = L.neg(L.div(b, a))
    if not L.is_zero(L.p_eval(L.p_from_rational(q), s_new)):
        return None
    g_old = L.sub(L.generator(), L.scale(s_new, Fraction(c)))
    return L, g_old, s_new


def _x_coefficients(f) -> list[int]:
    """Coefficients of a FLINT polynomial in the first of two variables."""
    out: dict[int, int] = {}
    for e, v in f.to_dict().items():
        out[int(e[0])] = int(v)
    return [out.get(k, 0) for k in range(max(out, default=-1) + 1)]
