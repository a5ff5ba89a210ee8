from __future__ import annotations

import pytest

from incad.poly import VarOrder, parse_poly

ORDER = VarOrder.parse("x1 < x2")

CIRCLE = "x1^2 + x2^2 - 1"
CUSP = "x1^3 - x2^2"
LINE = "x2 - x1"
MIRRORED_CUSP = "x1^3 + x2^2"


def polys(*texts, order=ORDER):
    return [parse_poly(t, order) for t in texts]


@pytest.fixture
def order():
    return ORDER


@pytest.fixture
def f1():
    return polys(CIRCLE, CUSP)


@pytest.fixture
def f2():
    return polys(CIRCLE, CUSP, LINE)


@pytest.fixture
def f3():
    return polys(CIRCLE, CUSP, MIRRORED_CUSP)
