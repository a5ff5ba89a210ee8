from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest

from incad.numfield import NumberField, PointField, minimal_polynomial
from incad.poly import VarOrder, parse_poly
from incad.realroots import RealAlgebraic, isolate_real_roots

mpmath.mp.dps = 50

SQRT2 = RealAlgebraic([-2, 0, 1], 1, 2)
CBRT3 = RealAlgebraic([-3, 0, 0, 1], 1, 2)


def mp(x: RealAlgebraic):
    r = x.refine(Fraction(1, 10 ** 45))
    return mpmath.mpf(r.lo.numerator) / r.lo.denominator


def test_field_arithmetic_in_q_sqrt2():
    K = NumberField(SQRT2)
    t = K.generator()
    assert K.mul(t, t) == K.const(2)
    a = K.elem([1, 1])  # 1 + sqrt2
    assert K.mul(a, K.inv(a)) == K.one
    assert K.pow(a, 2) == K.elem([3, 2])
    assert K.sign(K.elem([-1, 1])) == 1
    assert K.sign(K.elem([3, -2])) == 1  # 3 - 2 sqrt2 > 0
    assert K.sign(K.elem([-3, 2])) == -1
    with pytest.raises(ZeroDivisionError):
        K.inv(K.zero)


def test_to_real_gives_minimal_polynomial_root():
    K = NumberField(SQRT2)
    r = K.to_real(K.elem([1, 1]))
    assert abs(mp(r) - 1 - mpmath.sqrt(2)) < mpmath.mpf(10) ** -40
    assert K.to_real(K.const(Fraction(5, 7))).exact == Fraction(5, 7)


def test_minimal_polynomial_drops_extra_factors():
    # (x^2 - 2)(x + 5) with the root sqrt2
    a = RealAlgebraic([-10, -2, 5, 1], 1, 2)
    m = minimal_polynomial(a)
    assert m.poly == (-2, 0, 1)
    rational = RealAlgebraic([-6, 1, 1], 1, 3)  # (x - 2)(x + 3)
    assert minimal_polynomial(rational).exact == 2


def test_real_roots_over_extension():
    K = NumberField(SQRT2)
    t = K.generator()
    # x^2 - sqrt2: roots +- 2^(1/4)
    f = [K.neg(t), K.zero, K.one]
    roots = K.real_roots(f)
    assert len(roots) == 2
    assert abs(mp(roots[1]) - mpmath.root(2, 4)) < mpmath.mpf(10) ** -40
    # x - sqrt2 - 1 has the single root 1 + sqrt2
    roots = K.real_roots([K.elem([-1, -1]), K.one])
    assert len(roots) == 1 and abs(mp(roots[0]) - 1 - mpmath.sqrt(2)) < mpmath.mpf(10) ** -40
    # x^2 + sqrt2 has none
    assert K.real_roots([t, K.zero, K.one]) == []


def test_sign_poly_at():
    K = NumberField(SQRT2)
    t = K.generator()
    f = [K.neg(t), K.zero, K.one]  # x^2 - sqrt2
    assert K.sign_poly_at(f, isolate_real_roots([-2, 0, 0, 0, 1])[1]) == 0
    assert K.sign_poly_at(f, RealAlgebraic.rational(2)) == 1
    assert K.sign_poly_at(f, CBRT3) == 1  # 3^(2/3) > 2^(1/2)


def test_point_field_tower_signs():
    order = VarOrder.parse("x < y < z")
    pf = PointField.empty().extend(SQRT2).extend(CBRT3).extend(RealAlgebraic.rational(Fraction(1, 2)))
    s2, c3 = mpmath.sqrt(2), mpmath.cbrt(3)
    rng = random.Random(7)
    for _ in range(25):
        terms = {}
        for _ in range(4):
            e = (rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 2))
            terms[e] = rng.randint(-20, 20)
        text = " + ".join(f"({c})*x^{e[0]}*y^{e[1]}*z^{e[2]}" for e, c in terms.items())
        p = parse_poly(text, order)
        value = sum(c * s2 ** e[0] * c3 ** e[1] * mpmath.mpf(0.5) ** e[2] for e, c in p.terms.items())
        expected = 0 if abs(value) < mpmath.mpf(10) ** -30 else (1 if value > 0 else -1)
        assert pf.sign(p) == expected


def test_point_field_detects_exact_zero():
    order = VarOrder.parse("x < y")
    pf = PointField.empty().extend(SQRT2).extend(isolate_real_roots([-8, 0, 1])[1])  # 2 sqrt2
    assert pf.sign(parse_poly("y - 2*x", order)) == 0
    assert pf.sign(parse_poly("x*y - 4", order)) == 0
    assert pf.sign(parse_poly("y - x - 1", order)) == 1
