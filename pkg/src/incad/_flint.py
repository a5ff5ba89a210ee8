"""Conversions between :class:`MultiPoly` / integer lists and FLINT polynomials.

FLINT supplies the integer polynomial arithmetic kernels (products, exact
quotients, gcds and factorization); the algorithms built on top of them
live in the other modules.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import flint


@lru_cache(maxsize=None)
def context(n: int) -> flint.fmpz_mpoly_ctx:
    """Integer polynomial ring in ``max(n, 1)`` variables, lexicographic."""
    return flint.fmpz_mpoly_ctx.get(("v", max(n, 1)), "lex")


def _pad(e: tuple[int, ...], n: int) -> tuple[int, ...]:
    return e if n else (0,)


def to_mpoly(terms, n: int) -> flint.fmpz_mpoly:
    """FLINT image of ``{exponent: integer}`` in ``n`` variables."""
    ctx = context(n)
    if not terms:
        return ctx.from_dict({})
    return ctx.from_dict({_pad(e, n): int(c) for e, c in terms.items()})


def from_mpoly(f: flint.fmpz_mpoly, n: int) -> dict[tuple[int, ...], int]:
    out = {}
    for e, c in f.to_dict().items():
        out[tuple(int(k) for k in e[:n])] = int(c)
    return out


def to_upoly(c: Sequence[int]) -> flint.fmpz_poly:
    """From a lowest-degree-first integer list."""
    return flint.fmpz_poly([int(a) for a in c])


def from_upoly(f: flint.fmpz_poly) -> list[int]:
    return [int(a) for a in f.coeffs()]


def to_qpoly(c) -> flint.fmpq_poly:
    """From a lowest-degree-first list of rationals (Fraction or int)."""
    return flint.fmpq_poly([flint.fmpq(int(a.numerator), int(a.denominator)) for a in c])


def from_qpoly(f: flint.fmpq_poly) -> list[Fraction]:
    return [Fraction(int(a.p), int(a.q)) for a in f.coeffs()]
