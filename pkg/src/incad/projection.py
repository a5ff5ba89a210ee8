"""Lazard projection, the full projection chain and its incremental update.

Level ``i`` of a :class:`ProjectionTable` holds the canonical irreducible
polynomials whose main (highest) variable is ``x_{n-i}``: level 0 the
processed inputs, level ``n-1`` univariate polynomials in ``x1``.  A factor
free of the variable being eliminated is carried down to the level of its
own main variable.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from . import elim
from .poly import MultiPoly, VarOrder, content_primitive, factor_set, parse_poly, remove_constant_multiples, sorted_polys

PolySet = frozenset


def _check_nonzero(polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    out = list(polys)
    for p in out:
        if p.is_zero():
            raise ValueError("zero polynomial in projection input")
    return out


def _split_level(polys: Iterable[MultiPoly], v: int) -> tuple[frozenset[MultiPoly], frozenset[MultiPoly]]:
    """Primitive parts, contents and irreducible factors with respect to ``v``.

    Returns the factors with main variable ``v`` and the factors of lower
    main variable, which are carried to a later level.
    """
    pieces: list[MultiPoly] = []
    for p in polys:
        if p.is_constant():
            continue
        if p.degree(v) == 0:
            pieces.append(p)
            continue
        cont, prim = content_primitive(p, v)
        pieces.append(prim)
        if not cont.is_constant():
            pieces.append(cont)
    factors = factor_set(pieces)
    here = frozenset(f for f in factors if f.main_index() == v)
    lower = frozenset(f for f in factors if f.main_index() < v)
    return here, lower


def _own_part(p: MultiPoly, v: int) -> list[MultiPoly]:
    """Contents, coefficient set and discriminant of one polynomial."""
    out: list[MultiPoly] = []
    cont, prim = content_primitive(p, v)
    if not cont.is_constant():
        out.append(cont)
    out.extend(elim.lazard_coefficient_set(prim, v))
    out.append(elim.discriminant(prim, v))
    return out


def projection(polys: Iterable[MultiPoly], v: str | int) -> frozenset[MultiPoly]:
    """One Lazard projection step eliminating ``v``.

    The union of contents, leading and trailing coefficients, discriminants
    and pairwise resultants, canonical and free of constants.
    """
    polys = sorted_polys(_check_nonzero(polys))
    if not polys:
        return frozenset()
    i = polys[0].order.index(v)
    out: list[MultiPoly] = []
    for p in polys:
        if p.degree(i) == 0:
            out.append(p)
            continue
        out.extend(_own_part(p, i))
    members = [p for p in polys if p.degree(i) > 0]
    for p, q in combinations(members, 2):
        out.append(elim.resultant(p, q, i))
    return remove_constant_multiples(out)


def projection_add(new_polys: Iterable[MultiPoly], old_level: Iterable[MultiPoly], v: str | int) -> frozenset[MultiPoly]:
    """The projection contributions that involve at least one new polynomial.

    Old-by-old resultants and old discriminants are never recomputed, so
    ``projection(old) | projection_add(new, old) == projection(old | new)``.
    """
    new = sorted_polys(_check_nonzero(new_polys))
    old = sorted_polys(p for p in _check_nonzero(old_level) if p not in set(new))
    if not new:
        return frozenset()
    i = new[0].order.index(v)
    out: list[MultiPoly] = []
    for p in new:
        if p.degree(i) == 0:
            out.append(p)
            continue
        out.extend(_own_part(p, i))
    new_members = [p for p in new if p.degree(i) > 0]
    old_members = [p for p in old if p.degree(i) > 0]
    for p, q in combinations(new_members, 2):
        out.append(elim.resultant(p, q, i))
    for p in new_members:
        for q in old_members:
            out.append(elim.resultant(p, q, i))
    return remove_constant_multiples(out)


@dataclass(frozen=True)
class ProjectionTable:
    """Per-level canonical projection polynomials.

    ``levels[i]`` holds the polynomials whose main variable is ``x_{n-i}``.
    """

    order: VarOrder
    levels: tuple[frozenset[MultiPoly], ...]

    def __post_init__(self) -> None:
        if len(self.levels) != len(self.order):
            raise ValueError("a projection table needs one level per variable")

    @property
    def n(self) -> int:
        return len(self.order)

    def level_var(self, i: int) -> int:
        """Index in the variable order of the main variable at level ``i``."""
        return self.n - 1 - i

    def polys_in(self, var: int) -> frozenset[MultiPoly]:
        """Table polynomials whose main variable is ``var``."""
        return self.levels[self.n - 1 - var]

    @property
    def final(self) -> frozenset[MultiPoly]:
        return self.levels[-1]

    def sorted_level(self, i: int) -> list[MultiPoly]:
        return sorted_polys(self.levels[i])

    def size(self) -> int:
        return sum(len(level) for level in self.levels)

    def to_json(self) -> list[list[str]]:
        return [sorted(str(p) for p in level) for level in self.levels]

    @classmethod
    def from_json(cls, order: VarOrder, data: list[list[str]]) -> ProjectionTable:
        return cls(order, tuple(frozenset(parse_poly(s, order) for s in level) for level in data))

    def __str__(self) -> str:
        lines = []
        for i, level in enumerate(self.levels):
            lines.append(f"level {i} ({self.order.names[self.level_var(i)]}):")
            lines.extend(f"  {p}" for p in self.sorted_level(i))
        return "\n".join(lines)


@dataclass(frozen=True)
class LevelDelta:
    """Polynomials added to each table level by one incremental step."""

    levels: tuple[frozenset[MultiPoly], ...]

    def is_empty(self) -> bool:
        return not any(self.levels)

    def polys_in(self, var: int) -> frozenset[MultiPoly]:
        return self.levels[len(self.levels) - 1 - var]

    @property
    def final(self) -> frozenset[MultiPoly]:
        return self.levels[-1]

    def to_json(self) -> list[list[str]]:
        return [sorted(str(p) for p in level) for level in self.levels]

    @classmethod
    def from_json(cls, order: VarOrder, data: list[list[str]]) -> LevelDelta:
        return cls(tuple(frozenset(parse_poly(s, order) for s in level) for level in data))

    @classmethod
    def empty(cls, n: int) -> LevelDelta:
        return cls((frozenset(),) * n)


def _check_order(polys: list[MultiPoly], order: VarOrder) -> None:
    for p in polys:
        if p.order != order:
            raise ValueError(f"{p} is not over the order {order}")


def projection_polys(polyset: Iterable[MultiPoly], order: VarOrder) -> ProjectionTable:
    """The full projection chain down to univariate polynomials in ``x1``."""
    polys = _check_nonzero(polyset)
    _check_order(polys, order)
    for p in polys:
        if p.is_constant():
            raise ValueError(f"constant input polynomial {p}")
    n = len(order)
    levels: list[frozenset[MultiPoly]] = []
    pending: frozenset[MultiPoly] = frozenset(polys)
    carried: frozenset[MultiPoly] = frozenset()
    for i in range(n):
        v = n - 1 - i
        here, lower = _split_level(pending | carried, v)
        levels.append(here)
        carried = lower
        pending = projection(here, v) if v > 0 else frozenset()
    return ProjectionTable(order, tuple(levels))


def projection_polys_add(
    prev: ProjectionTable, new_polys: Iterable[MultiPoly], order: VarOrder | None = None
) -> tuple[ProjectionTable, LevelDelta]:
    """Extend ``prev`` by ``new_polys``, computing only what involves new members.

    Returns the updated table and the per-level delta (members of the
    updated table absent from ``prev``).
    """
    order = order or prev.order
    if order != prev.order:
        raise ValueError("variable order differs from the table's")
    polys = _check_nonzero(new_polys)
    _check_order(polys, order)
    n = len(order)
    levels: list[frozenset[MultiPoly]] = []
    deltas: list[frozenset[MultiPoly]] = []
    pending: frozenset[MultiPoly] = frozenset(p for p in polys if not p.is_constant())
    carried: frozenset[MultiPoly] = frozenset()
    for i in range(n):
        v = n - 1 - i
        if not pending and not carried:
            levels.extend(prev.levels[i:])
            deltas.extend([frozenset()] * (n - i))
            break
        here, lower = _split_level(pending | carried, v)
        old = prev.levels[i]
        delta = here - old
        levels.append(old | delta)
        deltas.append(delta)
        carried = lower
        pending = projection_add(delta, old, v) if v > 0 and delta else frozenset()
    return ProjectionTable(order, tuple(levels)), LevelDelta(tuple(deltas))
