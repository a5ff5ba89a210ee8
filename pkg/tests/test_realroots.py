from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incad.realroots import (
    RealAlgebraic,
    gen_sample_points,
    isolate_intervals,
    isolate_real_roots,
    merge_roots,
    sign_at,
    sign_at_rational,
    simplest_between,
    square_free,
    witness_between,
)

from oracles import sturm_count, total_real_roots

SQRT2 = RealAlgebraic([-2, 0, 1], 1, 2)


def test_sqrt2_basics():
    assert not SQRT2.is_rational
    assert SQRT2.approx(4) == "1.4142"
    assert SQRT2.floor() == 1 and SQRT2.ceil() == 2
    assert abs(float(SQRT2) - math.sqrt(2)) < 1e-12
    assert (-SQRT2).approx(3) == "-1.414"


def test_constructor_rejects_non_isolating_interval():
    with pytest.raises(ValueError):
        RealAlgebraic([-2, 0, 1], 2, 3)
    with pytest.raises(ValueError):
        RealAlgebraic([-1, 0, 1], 1, 2)
    with pytest.raises(ValueError):
        RealAlgebraic([-2, 0, 1], 2, 1)


def test_roots_of_known_polynomials():
    roots = isolate_real_roots([-2, 0, 1])
    assert [r.approx(6) for r in roots] == ["-1.414214", "1.414214"]
    assert [r.exact for r in isolate_real_roots([-6, 11, -6, 1])] == [1, 2, 3]
    assert isolate_real_roots([1, 0, 1]) == []
    assert isolate_real_roots([5]) == []
    with pytest.raises(ValueError):
        isolate_real_roots([])


def test_rational_roots_are_detected():
    roots = isolate_real_roots([-1, 0, 9])  # 9x^2 - 1
    assert [r.exact for r in roots] == [Fraction(-1, 3), Fraction(1, 3)]


def test_exact_midpoint_root_keeps_order():
    # 31x^3 - 152x - 56 has the root -2 at a bisection midpoint
    c = [-56, -152, 0, 31]
    items = isolate_intervals(c)
    assert Fraction(-2) in items
    roots = isolate_real_roots(c)
    assert len(roots) == 3
    assert all(roots[i] < roots[i + 1] for i in range(2))
    assert roots[0].exact == -2
    assert -1 <= roots[1].lo and roots[1].hi <= 0
    assert 0 <= roots[2].lo and roots[2].hi <= 8


def test_zero_root_never_on_an_interval_endpoint():
    # x * (21x^3 - 23): the factor x is split off before isolation
    items = isolate_intervals([0, -23, 0, 0, 21])
    assert items[0] == 0
    lo, hi = items[1]
    assert lo > 0 and sign_at_rational([0, -23, 0, 0, 21], lo) != 0
    roots = isolate_real_roots([0, -23, 0, 0, 21])
    assert witness_between(roots[0], roots[1]) == 1


def test_square_free():
    assert square_free([1, -2, 1]) == [-1, 1]
    assert square_free([0, 0, 1]) == [0, 1]


def test_compare_and_equality():
    a = isolate_real_roots([-2, 0, 1])[1]
    b = isolate_real_roots([0, -2, 0, 1])[2]  # x^3 - 2x
    assert a == b
    assert a.compare(Fraction(141, 100)) == 1
    assert a.compare(Fraction(142, 100)) == -1
    assert a < 2 and a > 1
    assert hash(a) == hash(b)
    c = isolate_real_roots([-3, 0, 1])[1]
    assert a < c


def test_refine_does_not_change_value():
    r = SQRT2.refine(Fraction(1, 10 ** 10))
    assert r.hi - r.lo < Fraction(1, 10 ** 10)
    assert r == SQRT2
    with pytest.raises(ValueError):
        SQRT2.refine(0)


def test_sign_at_algebraic():
    assert sign_at([-2, 0, 1], SQRT2) == 0
    assert sign_at([-1, 1], SQRT2) == 1
    assert sign_at([-3, 2], SQRT2) == -1
    assert sign_at([0, -2, 0, 1], SQRT2) == 0


def test_simplest_between():
    assert simplest_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert simplest_between(Fraction(-5, 2), Fraction(-2)) == Fraction(-7, 3)
    assert simplest_between(Fraction(-1), Fraction(3)) == 0
    assert simplest_between(Fraction(3, 2), None) == 2
    assert simplest_between(None, Fraction(-1, 2)) == -1
    with pytest.raises(ValueError):
        simplest_between(Fraction(1), Fraction(1))


def test_witness_and_sample_points():
    roots = isolate_real_roots([-2, 0, 1])
    open_pts = gen_sample_points(roots, "open")
    assert [p.exact for p in open_pts] == [-2, 0, 2]
    full = gen_sample_points(roots, "full")
    assert len(full) == 5
    assert full[1] is roots[0] and full[3] is roots[1]
    assert [p.exact for p in gen_sample_points([], "full")] == [0]
    with pytest.raises(ValueError):
        gen_sample_points(roots, "closed")


def test_merge_roots_flags():
    old = isolate_real_roots([-2, 0, 1])
    new = isolate_real_roots([0, -2, 0, 1])
    merged, is_new = merge_roots(old, new)
    assert [r.approx(2) for r in merged] == ["-1.41", "0", "1.41"]
    assert is_new == [False, True, False]


def test_json_round_trip():
    for r in [SQRT2, RealAlgebraic.rational(Fraction(-7, 3))]:
        back = RealAlgebraic.from_json(r.to_json())
        assert back == r
        assert back.to_json() == r.to_json()


# -- properties against a Sturm oracle ----------------------------------------

coeffs = st.lists(st.integers(-30, 30), min_size=2, max_size=9).filter(lambda c: c[-1] != 0)


@settings(max_examples=150, deadline=None)
@given(coeffs)
def test_root_count_matches_sturm(c):
    roots = isolate_real_roots(c)
    assert len(roots) == total_real_roots(c)
    for a, b in zip(roots, roots[1:]):
        assert a < b


@settings(max_examples=100, deadline=None)
@given(coeffs)
def test_each_interval_holds_exactly_one_root(c):
    for item in isolate_intervals(square_free(c)):
        if isinstance(item, Fraction):
            assert sign_at_rational(c, item) == 0
            continue
        lo, hi = item
        assert sign_at_rational(c, lo) != 0 and sign_at_rational(c, hi) != 0
        assert sturm_count(c, lo, hi) == 1


@settings(max_examples=100, deadline=None)
@given(coeffs)
def test_witnesses_separate_roots(c):
    roots = isolate_real_roots(c)
    pts = gen_sample_points(roots, "full")
    assert len(pts) == 2 * len(roots) + 1
    for a, b in zip(pts, pts[1:]):
        assert a < b
    for p in pts[0::2]:
        assert sign_at(c, p) != 0
