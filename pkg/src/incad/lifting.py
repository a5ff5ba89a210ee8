"""Lazard evaluation and valuation, stack lifting and incremental lifting."""
from __future__ import annotations

import copy
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .cad import NEW, OLD, CadTree, Cell, IdSource, build_stack, combine
from .numfield import NumberField, PointField
from .poly import MultiPoly, VarOrder, sorted_polys
from .projection import LevelDelta, ProjectionTable
from .realroots import RealAlgebraic, isolate_real_roots, merge_root_lists, merge_roots


class LiftingError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# Lazard valuation over rational and algebraic points


@dataclass(frozen=True)
class Valuation:
    """Division counts per substituted coordinate and what is left.

    ``residual`` is a :class:`MultiPoly` when every coordinate is rational;
    otherwise it is a :class:`FieldPoly` with coefficients in the field
    generated by the coordinates.
    """

    exponents: tuple[int, ...]
    residual: object


@dataclass(frozen=True)
class FieldPoly:
    """A polynomial with coefficients in a real number field."""

    field: NumberField
    order: VarOrder
    terms: dict

    def is_zero(self) -> bool:
        return not self.terms

    def univariate(self, var: int) -> list:
        d = max((e[var] for e in self.terms), default=0)
        out = [self.field.zero] * (d + 1)
        for e, c in self.terms.items():
            out[e[var]] = c
        return self.field.p_trim(out)

    def __str__(self) -> str:
        g = "g"
        pieces = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e[::-1]), reverse=True):
            c = self.terms[e]
            coeff = " + ".join(
                f"{a}" if i == 0 else (f"{a}*{g}" if i == 1 else f"{a}*{g}^{i}")
                for i, a in enumerate(c)
                if a
            )
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.order.names[::-1], e[::-1]) if k
            )
            pieces.append(f"({coeff})" + (f"*{mono}" if mono else ""))
        where = f" with {g} = {self.field.gen}" if not self.field.is_rational else ""
        return (" + ".join(pieces) or "0") + where


def _divide_linear(f: MultiPoly, j: int, r) -> MultiPoly:
    """Quotient of ``f`` by ``x_j - r`` (synthetic division, exact by assumption)."""
    cs = f.coefficients(j)
    d = max(cs)
    xj = MultiPoly.var(f.order, j)
    zero = MultiPoly.constant(f.order, 0)
    b = cs.get(d, zero)
    q = b * xj ** (d - 1)
    for i in range(d - 1, 0, -1):
        b = cs.get(i, zero) + b * r
        q = q + b * xj ** (i - 1)
    return q


def _rational_reduce(f: MultiPoly, coords: Sequence[Fraction]) -> tuple[tuple[int, ...], MultiPoly]:
    exps = []
    for j, r in enumerate(coords):
        count = 0
        while True:
            g = f.subs(j, r)
            if g.is_zero():
                if f.degree(j) == 0:
                    raise LiftingError("polynomial vanishes identically")
                f = _divide_linear(f, j, r)
                count += 1
            else:
                f = g
                break
        exps.append(count)
    return tuple(exps), f


def _field_reduce(f: MultiPoly, pf: PointField, k: int) -> tuple[tuple[int, ...], FieldPoly]:
    K = pf.field
    terms = {e: K.const(c) for e, c in f.terms.items()}
    exps = []
    for j in range(k):
        s = pf.coords[j]
        pows = [K.one]
        count = 0
        while True:
            sub: dict = {}
            for e, c in terms.items():
                while len(pows) <= e[j]:
                    pows.append(K.mul(pows[-1], s))
                key = e[:j] + (0,) + e[j + 1:]
                sub[key] = K.add(sub.get(key, K.zero), K.mul(c, pows[e[j]]))
            sub = {e: c for e, c in sub.items() if not K.is_zero(c)}
            if sub:
                terms = sub
                break
            if all(e[j] == 0 for e in terms):
                raise LiftingError("polynomial vanishes identically")
            terms = _field_divide_linear(K, terms, j, s)
            count += 1
        exps.append(count)
    return tuple(exps), FieldPoly(K, f.order, terms)


def _field_divide_linear(K: NumberField, terms: dict, j: int, s) -> dict:
    groups: dict[int, dict] = {}
    for e, c in terms.items():
        groups.setdefault(e[j], {})[e[:j] + (0,) + e[j + 1:]] = c
    d = max(groups)
    out: dict = {}
    b: dict = dict(groups[d])
    for i in range(d, 0, -1):
        # b is the coefficient of x_j^(i-1) in the quotient
        for rest, c in b.items():
            if not K.is_zero(c):
                out[rest[:j] + (i - 1,) + rest[j + 1:]] = c
        nxt = dict(groups.get(i - 1, {}))
        for rest, c in b.items():
            nxt[rest] = K.add(nxt.get(rest, K.zero), K.mul(c, s))
        b = nxt
    return out


def point_field(point: Sequence[RealAlgebraic | Fraction | int]) -> PointField:
    pf = PointField.empty()
    for x in point:
        pf = pf.extend(RealAlgebraic.coerce(x))
    return pf


def lazard_valuation(f: MultiPoly, point: Sequence[RealAlgebraic | Fraction | int], pf: PointField | None = None) -> Valuation:
    """Lazard valuation of ``f`` at a point (or a prefix of one).

    For each coordinate in turn, divide by ``x_j - r_j`` as long as the
    substitution ``x_j = r_j`` makes the polynomial vanish, record the number
    of divisions, then substitute.
    """
    if f.is_zero():
        raise ValueError("valuation of the zero polynomial")
    pts = [RealAlgebraic.coerce(x) for x in point]
    if len(pts) > f.nvars:
        raise ValueError("point has more coordinates than variables")
    if all(x.is_rational for x in pts):
        exps, res = _rational_reduce(f, [x.exact for x in pts])
        return Valuation(exps, res)
    pf = pf or point_field(pts)
    exps, res = _field_reduce(f, pf, len(pts))
    return Valuation(exps, res)


def lazard_evaluate(f: MultiPoly, prefix: Sequence[RealAlgebraic | Fraction | int], pf: PointField | None = None) -> list[RealAlgebraic]:
    """Real roots in ``x_{k+1}`` of ``f`` after Lazard evaluation at a ``k``-point."""
    pts = [RealAlgebraic.coerce(x) for x in prefix]
    k = len(pts)
    if f.main_index() > k:
        raise ValueError(f"{f} involves variables above x{k + 1}")
    val = lazard_valuation(f, pts, pf)
    res = val.residual
    if isinstance(res, MultiPoly):
        if res.is_zero():
            raise LiftingError("Lazard residual vanished")
        return [] if res.is_constant() else isolate_real_roots(res)
    return res.field.real_roots(res.univariate(k))


def point_signs(fs: Sequence[MultiPoly], point: Sequence[RealAlgebraic], pf: PointField | None = None) -> tuple[int, ...]:
    """Exact signs of several polynomials at one point."""
    pts = [RealAlgebraic.coerce(x) for x in point]
    if all(x.is_rational for x in pts):
        vals = [x.exact for x in pts]
        out = []
        for f in fs:
            v = f.evaluate(vals + [0] * (f.nvars - len(vals)))
            out.append((v > 0) - (v < 0))
        return tuple(out)
    if pf is None and not pts[-1].is_rational:
        # substitute the prefix in its own field, then take the sign of the
        # remaining univariate polynomial at the last coordinate
        k = len(pts) - 1
        inner = point_field(pts[:-1])
        return tuple(inner.field.sign_poly_at(_substitute(f, inner, k), pts[-1]) for f in fs)
    pf = pf or point_field(pts)
    return tuple(pf.sign(f) for f in fs)


def _substitute(f: MultiPoly, pf: PointField, k: int) -> list:
    """``f`` with ``x_0..x_(k-1)`` replaced by the field's coordinates, as a polynomial in ``x_k``."""
    K = pf.field
    pows: dict[tuple[int, int], object] = {}
    out: dict[int, object] = {}
    for e, c in f.terms.items():
        if any(e[k + 1:]):
            continue
        t = K.const(c)
        for j in range(k):
            if e[j]:
                key = (j, e[j])
                if key not in pows:
                    pows[key] = K.pow(pf.coords[j], e[j])
                t = K.mul(t, pows[key])
        out[e[k]] = K.add(out.get(e[k], K.zero), t)
    return K.p_trim([out.get(i, K.zero) for i in range(max(out, default=-1) + 1)])


def point_sign(f: MultiPoly, point: Sequence[RealAlgebraic]) -> int:
    return point_signs([f], point)[0]


# ---------------------------------------------------------------------------
# lifting


class Lifter:
    """Evaluation engine with a per (polynomial, cell) cache and call counters."""

    def __init__(self, table: ProjectionTable | None, order: VarOrder, mode: str = "open"):
        self.table = table
        self.order = order
        self.mode = mode
        self.cache: dict[tuple[MultiPoly, int], list[RealAlgebraic]] = {}
        self.fields: dict[tuple[int, ...], tuple[tuple, PointField]] = {}
        self.calls: Counter[str] = Counter()
        self.evaluated_cells: Counter[int] = Counter()

    def field_for(self, sample: tuple[RealAlgebraic, ...]) -> PointField | None:
        if all(x.is_rational for x in sample):
            return None
        key = tuple(id(x) for x in sample)
        hit = self.fields.get(key)
        if hit is not None:
            return hit[1]
        base = self.field_for(sample[:-1]) if sample[:-1] else None
        base = base or point_field(sample[:-1])
        pf = base.extend(sample[-1])
        self.fields[key] = (sample, pf)
        return pf

    def evaluate(self, f: MultiPoly, cell: Cell) -> list[RealAlgebraic]:
        key = (f, cell.id)
        hit = self.cache.get(key)
        if hit is not None:
            self.calls["cached"] += 1
            return hit
        self.calls["evaluate"] += 1
        self.evaluated_cells[cell.id] += 1
        roots = lazard_evaluate(f, cell.sample, self.field_for(cell.sample))
        self.cache[key] = roots
        return roots

    def stack_roots(self, polys: Iterable[MultiPoly], cell: Cell) -> list[RealAlgebraic]:
        return merge_root_lists(self.evaluate(f, cell) for f in sorted_polys(polys))

    def level1_roots(self, polys: Iterable[MultiPoly] | None = None) -> list[RealAlgebraic]:
        if polys is None:
            polys = self.table.final if self.table is not None else ()
        return merge_root_lists(isolate_real_roots(f) for f in sorted_polys(polys))

    def roots_over(self, prefix: tuple[RealAlgebraic, ...], k: int) -> list[RealAlgebraic]:
        """Roots in ``x_k`` of the table polynomials over a ``(k-1)``-point (uncached)."""
        if self.table is None:
            return []
        pf = None if all(x.is_rational for x in prefix) else point_field(prefix)
        return merge_root_lists(lazard_evaluate(f, prefix, pf) for f in sorted_polys(self.table.polys_in(k - 1)))


def lift_setup(
    table: ProjectionTable, order: VarOrder, mode: str = "open", lifter: Lifter | None = None, ids: IdSource | None = None
) -> tuple[list[Cell], dict[int, list[RealAlgebraic]], list[RealAlgebraic]]:
    """Cells of ``R^1`` and the roots in ``x2`` over each of them.

    Returns ``(cells, lift_info, roots)``; ``lift_info`` is empty for a
    single variable.
    """
    lifter = lifter or Lifter(table, order, mode)
    ids = ids or IdSource()
    roots = lifter.level1_roots()
    cells = build_stack(None, roots, mode, ids)
    info: dict[int, list[RealAlgebraic]] = {}
    if len(order) > 1:
        polys = table.polys_in(1)
        for c in cells:
            info[c.id] = lifter.stack_roots(polys, c)
    return cells, info, roots


def lift(table: ProjectionTable, order: VarOrder, mode: str = "open", lifter: Lifter | None = None) -> CadTree:
    """Classical lifting of the whole projection table to a CAD of ``R^n``."""
    lifter = lifter or Lifter(table, order, mode)
    ids = IdSource()
    level1, info, roots = lift_setup(table, order, mode, lifter, ids)
    levels = [level1]
    lift_roots = dict(info)
    for k in range(2, len(order) + 1):
        polys = table.polys_in(k - 1)
        nxt: list[Cell] = []
        for parent in levels[-1]:
            r = lift_roots[parent.id]
            stack = build_stack(parent, r, mode, ids)
            nxt.extend(stack)
            if k < len(order):
                higher = table.polys_in(k)
                for c in stack:
                    lift_roots[c.id] = lifter.stack_roots(higher, c)
        levels.append(nxt)
    tree = CadTree(order, mode, levels, roots, lift_roots)
    return tree


def split_cells(
    old_roots: Sequence[RealAlgebraic],
    new_roots: Sequence[RealAlgebraic],
    old_level1: Sequence[Cell],
    mode: str,
    ids: IdSource,
) -> tuple[list[Cell], list[Cell], list[RealAlgebraic]]:
    """Split the level-1 cells that contain new roots.

    Returns ``(new_cells, unchanged_cells, merged_roots)``: the replacements
    (sectors around new roots and sections at them, flagged new) and copies
    of the untouched old cells (flagged old).
    """
    merged, is_new = merge_roots(old_roots, new_roots)
    candidates = build_stack(None, merged, mode, IdSource(0))
    step = 2 if mode == "full" else 1
    fresh: list[Cell] = []
    kept: list[Cell] = []
    old_pos = {}
    k_old = -1
    for i, flag in enumerate(is_new):
        if not flag:
            k_old += 1
            old_pos[i] = k_old
    for pos, cand in enumerate(candidates, start=1):
        if mode == "full" and pos % 2 == 0:
            i = pos // 2 - 1
            old_cell = None if is_new[i] else old_level1[step * old_pos[i] + 1]
        else:
            j = (pos - 1) // step  # sector between merged[j-1] and merged[j]
            left_ok = j == 0 or not is_new[j - 1]
            right_ok = j == len(merged) or not is_new[j]
            old_cell = None
            if left_ok and right_ok:
                old_j = 0 if j == 0 else old_pos[j - 1] + 1
                old_cell = old_level1[step * old_j]
        if old_cell is not None:
            kept.append(replace(old_cell, flag=OLD))
        else:
            fresh.append(replace(cand, id=ids(), flag=NEW))
    return fresh, kept, merged


def lift_add(
    delta: LevelDelta,
    full_table: ProjectionTable,
    order: VarOrder,
    old_tree: CadTree,
    mode: str | None = None,
    lifter: Lifter | None = None,
) -> CadTree:
    """Update ``old_tree`` for the polynomials in ``delta``.

    Stacks over old cells are only re-examined with the delta polynomials;
    a stack is rebuilt (and everything above it re-lifted) only when those
    contribute a root that is not already there, otherwise the old subtree
    is copied.
    """
    mode = mode or old_tree.mode
    if mode != old_tree.mode:
        raise ValueError("mode differs from the old tree's")
    if old_tree.order != order or full_table.order != order:
        raise ValueError("variable order mismatch")
    old_tree.validate()
    if delta.is_empty():
        out = copy.deepcopy(old_tree)
        out.clear_flags()
        return out
    lifter = lifter or Lifter(full_table, order, mode)
    ids = IdSource(old_tree.max_id() + 1)
    new_roots = lifter.level1_roots(delta.final)
    fresh, kept, merged = split_cells(old_tree.root_set, new_roots, old_tree.cells(1), mode, ids)
    fragments: list[list[Cell]] = [fresh + kept]
    lift_roots: dict[int, list[RealAlgebraic]] = {}
    n = len(order)
    for k in range(2, n + 1):
        full_polys = full_table.polys_in(k - 1)
        delta_polys = delta.polys_in(k - 1)
        old_children = old_tree.children(k)
        frag: list[Cell] = []
        for parent in fragments[-1]:
            if parent.flag == NEW:
                r = lifter.stack_roots(full_polys, parent)
                lift_roots[parent.id] = r
                frag.extend(build_stack(parent, r, mode, ids, NEW))
                continue
            old_r = old_tree.lift_roots[parent.id]
            extra = lifter.stack_roots(delta_polys, parent) if delta_polys else []
            both, flags = merge_roots(old_r, extra)
            if not any(flags):
                lift_roots[parent.id] = list(old_r)
                frag.extend(replace(c, flag=OLD) for c in old_children[parent.id])
            else:
                lift_roots[parent.id] = both
                frag.extend(build_stack(parent, both, mode, ids, NEW))
        fragments.append(frag)
    return combine(order, mode, fragments, merged, lift_roots)
