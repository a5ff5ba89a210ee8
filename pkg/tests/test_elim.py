from __future__ import annotations

import random

import pytest

from incad import elim
from incad._flint import context, from_mpoly, to_mpoly
from incad.elim import _coefficient_list, subresultant_prs
from incad.poly import MultiPoly, VarOrder, parse_poly

from oracles import sylvester_resultant

O2 = VarOrder.parse("x1 < x2")
O3 = VarOrder.parse("x < y < z")


def P(text, order=O2):
    return parse_poly(text, order)


def random_poly(rng, order, var, max_deg=4, terms=4):
    n = len(order)
    out = {}
    for _ in range(terms):
        e = [rng.randint(0, 2) for _ in range(n)]
        e[var] = rng.randint(0, max_deg)
        out[tuple(e)] = rng.randint(-9, 9)
    p = MultiPoly(order, out)
    return p if not p.is_zero() else MultiPoly.var(order, var)


def test_resultant_of_circle_and_cusp():
    r = elim.resultant(P("x1^2 + x2^2 - 1"), P("x1^3 - x2^2"), "x2")
    assert r == P("(x1^3 + x1^2 - 1)^2")


def test_resultant_of_line_and_circle():
    r = elim.resultant(P("x1^2 + x2^2 - 1"), P("x2 - x1"), "x2")
    assert r == P("2*x1^2 - 1")


def test_resultant_constant_rules():
    q = P("x2^3 + x1")
    assert elim.resultant(P("x1 + 1"), q, "x2") == P("(x1 + 1)^3")
    assert elim.resultant(q, P("x1 + 1"), "x2") == P("(x1 + 1)^3")
    with pytest.raises(ValueError):
        elim.resultant(P("0"), q, "x2")


def test_resultant_rational_coefficients_scale():
    p, q = P("x2^2/2 - x1"), P("3*x2 + 1")
    r = elim.resultant(p, q, "x2")
    assert r == sylvester_resultant(p, q, 1)


def test_discriminant_quadratic_and_cubic():
    assert elim.discriminant(P("x2^2 + x1*x2 + 3"), "x2") == P("x1^2 - 12")
    # x^3 + p x + q  ->  -4p^3 - 27q^2
    o = VarOrder.parse("p < q < x")
    assert elim.discriminant(parse_poly("x^3 + p*x + q", o), "x") == parse_poly("-4*p^3 - 27*q^2", o)
    assert elim.discriminant(P("5*x2 + x1"), "x2") == P("1")


def test_discriminant_non_monic_scaling():
    # disc(a x^2 + b x + c) = b^2 - 4ac
    o = VarOrder.parse("a < b < c < x")
    got = elim.discriminant(parse_poly("a*x^2 + b*x + c", o), "x")
    assert got == parse_poly("b^2 - 4*a*c", o)
    got = elim.discriminant(parse_poly("a*x^2/3 + b*x + c", o), "x")
    assert got == parse_poly("b^2 - 4*a*c/3", o)


def test_lazard_coefficient_set_uses_lowest_nonzero():
    p = P("x1*x2^3 + (x1 - 1)*x2")
    assert elim.lazard_coefficient_set(p, "x2") == {P("x1"), P("x1 - 1")}
    assert elim.lazard_coefficient_set(P("x2^2 - 1"), "x2") == frozenset()


def test_resultant_counter():
    before = elim.stats["resultant"]
    elim.resultant(P("x2 - x1"), P("x2 + x1"), "x2")
    elim.discriminant(P("x2^2 - x1"), "x2")
    assert elim.stats["resultant"] == before + 1


@pytest.mark.parametrize("seed", range(40))
def test_resultant_matches_sylvester_trivariate(seed):
    rng = random.Random(seed)
    var = rng.randrange(3)
    p = random_poly(rng, O3, var)
    q = random_poly(rng, O3, var)
    assert elim.resultant(p, q, var) == sylvester_resultant(p, q, var)


@pytest.mark.parametrize("seed", range(40))
def test_resultant_matches_flint(seed):
    rng = random.Random(1000 + seed)
    var = rng.randrange(3)
    p = random_poly(rng, O3, var, max_deg=6, terms=6)
    q = random_poly(rng, O3, var, max_deg=6, terms=6)
    ours = elim.resultant(p, q, var)
    pi, qi = p.integer_content()[1], q.integer_content()[1]
    cp, cq = p.integer_content()[0], q.integer_content()[0]
    theirs = to_mpoly(pi.terms, 3).resultant(to_mpoly(qi.terms, 3), f"v{var}")
    expected = MultiPoly(O3, from_mpoly(theirs, 3)).scale(cp ** q.degree(var) * cq ** p.degree(var))
    if p.degree(var) == 0 or q.degree(var) == 0:
        return
    assert ours == expected


def test_subresultant_prs_linear_member_is_the_common_factor():
    xy = VarOrder.parse("x < y")
    f = parse_poly("(y - x)*(y - 3)", xy)
    g = parse_poly("(y - x)*(y + 5)*(y + 1)", xy)
    chain = subresultant_prs(_coefficient_list(f, 1), _coefficient_list(g, 1), context(2).constant(1))
    assert [len(t) - 1 for t in chain] == [3, 2, 1]
    a, b = (MultiPoly(xy, from_mpoly(t, 2)) for t in chain[-1])
    # a*y + b is a multiple of y - x
    assert (b + a * parse_poly("x", xy)).is_zero()
