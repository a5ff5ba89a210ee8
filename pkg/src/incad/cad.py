"""Cells, CAD trees, stack construction, merging and exports."""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import MultiPoly, VarOrder
from .realroots import RealAlgebraic, gen_sample_points, isolate_real_roots

OLD = "old"
NEW = "new"
MODES = ("open", "full")


@dataclass(frozen=True)
class Section:
    """``x_k = value``."""

    value: RealAlgebraic

    def contains(self, x: RealAlgebraic) -> bool:
        return self.value.compare(x) == 0

    def render(self, var: str, digits: int | None = None) -> str:
        return f"{var} = {_num(self.value, digits)}"

    def to_json(self):
        return {"eq": self.value.to_json()}


@dataclass(frozen=True)
class Sector:
    """``lo < x_k < hi``; ``None`` stands for an infinite end."""

    lo: RealAlgebraic | None
    hi: RealAlgebraic | None

    def contains(self, x: RealAlgebraic) -> bool:
        return (self.lo is None or self.lo.compare(x) < 0) and (self.hi is None or self.hi.compare(x) > 0)

    def render(self, var: str, digits: int | None = None) -> str:
        parts = []
        if self.lo is not None:
            parts.append(f"{_num(self.lo, digits)} < ")
        parts.append(var)
        if self.hi is not None:
            parts.append(f" < {_num(self.hi, digits)}")
        return "".join(parts)

    def to_json(self):
        return {
            "lo": None if self.lo is None else self.lo.to_json(),
            "hi": None if self.hi is None else self.hi.to_json(),
        }


Bound = Section | Sector


def _bound_from_json(data) -> Bound:
    if "eq" in data:
        return Section(RealAlgebraic.from_json(data["eq"]))
    lo, hi = data["lo"], data["hi"]
    return Sector(
        None if lo is None else RealAlgebraic.from_json(lo),
        None if hi is None else RealAlgebraic.from_json(hi),
    )


def _num(x: RealAlgebraic, digits: int | None) -> str:
    if digits is None or x.is_rational:
        return str(x)
    return f"~{x.approx(digits)}"


@dataclass
class Cell:
    """One cell: identity, cylindrical index, description, sample, parent and flag."""

    id: int
    index: tuple[int, ...]
    description: tuple[Bound, ...]
    sample: tuple[RealAlgebraic, ...]
    source: int | None = None
    flag: str = OLD

    @property
    def level(self) -> int:
        return len(self.index)

    @property
    def is_sector(self) -> bool:
        """True when the last coordinate ranges over an open interval."""
        return isinstance(self.description[-1], Sector)

    @property
    def full_dimensional(self) -> bool:
        return all(isinstance(b, Sector) for b in self.description)

    def satisfies_description(self) -> bool:
        return all(b.contains(x) for b, x in zip(self.description, self.sample))

    def to_json(self):
        return {
            "id": self.id,
            "index": list(self.index),
            "description": [b.to_json() for b in self.description],
            "sample": [x.to_json() for x in self.sample],
            "source": self.source,
            "flag": self.flag,
        }

    @classmethod
    def from_json(cls, data) -> Cell:
        return cls(
            id=int(data["id"]),
            index=tuple(int(i) for i in data["index"]),
            description=tuple(_bound_from_json(b) for b in data["description"]),
            sample=tuple(RealAlgebraic.from_json(x) for x in data["sample"]),
            source=None if data["source"] is None else int(data["source"]),
            flag=data["flag"],
        )


class TreeError(ValueError):
    pass


@dataclass
class CadTree:
    """Cells of ``R^1 .. R^n`` arranged by level, with the roots each stack was built on.

    ``lift_roots[c]`` is the sorted list of roots in the next variable over
    cell ``c`` (the per-cell lifting information); ``root_set`` holds the
    roots the level-1 decomposition was built from.
    """

    order: VarOrder
    mode: str
    levels: list[list[Cell]]
    root_set: list[RealAlgebraic]
    lift_roots: dict[int, list[RealAlgebraic]] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.order)

    def cells(self, level: int) -> list[Cell]:
        """Cells of ``R^level`` (1-based)."""
        return self.levels[level - 1]

    def counts(self) -> list[int]:
        return [len(level) for level in self.levels]

    def all_cells(self) -> Iterable[Cell]:
        for level in self.levels:
            yield from level

    def by_id(self) -> dict[int, Cell]:
        return {c.id: c for c in self.all_cells()}

    def max_id(self) -> int:
        return max((c.id for c in self.all_cells()), default=0)

    def children(self, level: int) -> dict[int, list[Cell]]:
        """Map parent id to its stack at ``level`` (``level >= 2``)."""
        out: dict[int, list[Cell]] = {c.id: [] for c in self.cells(level - 1)}
        for c in self.cells(level):
            out.setdefault(c.source, []).append(c)
        return out

    def stack_sizes(self, level: int) -> list[int]:
        """Number of cells over each cell of the previous level, in order."""
        if level == 1:
            return [len(self.levels[0])]
        kids = self.children(level)
        return [len(kids[c.id]) for c in self.cells(level - 1)]

    def stack_roots(self, parent: Cell | None) -> list[RealAlgebraic]:
        if parent is None:
            return self.root_set
        return self.lift_roots.get(parent.id, [])

    def clear_flags(self) -> None:
        for c in self.all_cells():
            c.flag = OLD

    def validate(self) -> None:
        """Check the structural invariants; raise :class:`TreeError` on failure."""
        if self.mode not in MODES:
            raise TreeError(f"unknown mode {self.mode!r}")
        if len(self.levels) != self.n:
            raise TreeError("tree depth differs from the number of variables")
        seen: set[int] = set()
        prev: list[Cell] = []
        for k, level in enumerate(self.levels, start=1):
            ids = {c.id for c in prev}
            for c in level:
                if c.id in seen:
                    raise TreeError(f"duplicate cell id {c.id}")
                seen.add(c.id)
                if len(c.index) != k or len(c.sample) != k or len(c.description) != k:
                    raise TreeError(f"cell {c.id} has inconsistent dimension")
                if k == 1 and c.source is not None:
                    raise TreeError(f"level-1 cell {c.id} has a source")
                if k > 1 and c.source not in ids:
                    raise TreeError(f"cell {c.id} has dangling source {c.source}")
                if c.flag not in (OLD, NEW):
                    raise TreeError(f"cell {c.id} has bad flag {c.flag!r}")
            groups = [(None, level)] if k == 1 else [(p, self.children(k)[p.id]) for p in prev]
            for parent, stack in groups:
                roots = self.stack_roots(parent)
                expected = len(roots) + 1 if self.mode == "open" else 2 * len(roots) + 1
                if len(stack) != expected:
                    raise TreeError(f"stack over {None if parent is None else parent.id} has {len(stack)} cells, expected {expected}")
                for pos, c in enumerate(stack, start=1):
                    if c.index[-1] != pos or (parent is not None and c.index[:-1] != parent.index):
                        raise TreeError(f"cell {c.id} has index {c.index}")
            if sum(len(s) for _, s in groups) != len(level):
                raise TreeError(f"level {k} has cells outside any stack")
            prev = level
        for cid in self.lift_roots:
            if cid not in seen:
                raise TreeError(f"lifting information for unknown cell {cid}")

    # -- persistence -------------------------------------------------------

    def to_json(self):
        return {
            "mode": self.mode,
            "root_set": [r.to_json() for r in self.root_set],
            "levels": [[c.to_json() for c in level] for level in self.levels],
            "lift_roots": {str(k): [r.to_json() for r in v] for k, v in sorted(self.lift_roots.items())},
        }

    @classmethod
    def from_json(cls, order: VarOrder, data) -> CadTree:
        tree = cls(
            order=order,
            mode=data["mode"],
            levels=[[Cell.from_json(c) for c in level] for level in data["levels"]],
            root_set=[RealAlgebraic.from_json(r) for r in data["root_set"]],
            lift_roots={int(k): [RealAlgebraic.from_json(r) for r in v] for k, v in data["lift_roots"].items()},
        )
        return tree


# ---------------------------------------------------------------------------
# construction


class IdSource:
    """Creation-ordered cell ids."""

    def __init__(self, start: int = 1):
        self.next = start

    def __call__(self) -> int:
        i = self.next
        self.next += 1
        return i


def build_stack(
    parent: Cell | None,
    roots: Sequence[RealAlgebraic],
    mode: str,
    ids: IdSource,
    flag: str = OLD,
) -> list[Cell]:
    """Cells of the cylinder over ``parent`` cut at the sorted ``roots``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    samples = gen_sample_points(roots, mode)
    prefix_index = () if parent is None else parent.index
    prefix_desc = () if parent is None else parent.description
    prefix_sample = () if parent is None else parent.sample
    source = None if parent is None else parent.id
    bounds: list[RealAlgebraic | None] = [None, *roots, None]
    out = []
    for pos, s in enumerate(samples, start=1):
        if mode == "full" and pos % 2 == 0:
            desc: Bound = Section(roots[pos // 2 - 1])
        else:
            k = (pos - 1) // 2 if mode == "full" else pos - 1
            desc = Sector(bounds[k], bounds[k + 1])
        out.append(Cell(ids(), prefix_index + (pos,), prefix_desc + (desc,), prefix_sample + (s,), source, flag))
    return out


def _sort_key_cmp(a: Cell, b: Cell) -> int:
    return a.sample[-1].compare(b.sample[-1])


def combine(
    order: VarOrder,
    mode: str,
    level_cells: Sequence[Sequence[Cell]],
    root_set: Sequence[RealAlgebraic],
    lift_roots: dict[int, list[RealAlgebraic]],
) -> CadTree:
    """Merge per-level fragments (new and unchanged cells) into a valid tree.

    Stacks are sorted along their variable, cylindrical indices recomputed
    from 1 within every stack, and source references checked.  Cell ids are
    kept as they are.
    """
    from functools import cmp_to_key

    levels: list[list[Cell]] = []
    prev: list[Cell] = []
    for k, fragment in enumerate(level_cells, start=1):
        cells = list(fragment)
        if k == 1:
            stacks = [(None, sorted(cells, key=cmp_to_key(_sort_key_cmp)))]
        else:
            groups: dict[int, list[Cell]] = {p.id: [] for p in prev}
            for c in cells:
                if c.source not in groups:
                    raise TreeError(f"cell {c.id} refers to missing source {c.source}")
                groups[c.source].append(c)
            stacks = [(p, sorted(groups[p.id], key=cmp_to_key(_sort_key_cmp))) for p in prev]
        level: list[Cell] = []
        for parent, stack in stacks:
            for pos, c in enumerate(stack, start=1):
                index = (pos,) if parent is None else parent.index + (pos,)
                if index != c.index:
                    c = replace(c, index=index)
                level.append(c)
        levels.append(level)
        prev = level
    tree = CadTree(order, mode, levels, list(root_set), dict(lift_roots))
    tree.validate()
    return tree


# ---------------------------------------------------------------------------
# comparison and canonical text


def canonical_number(x: RealAlgebraic) -> str:
    """Representation independent of interval refinement: rational or (minimal poly, root number)."""
    from .numfield import minimal_polynomial

    if x.is_rational:
        return str(x.exact)
    m = minimal_polynomial(x)
    if m.is_rational:
        return str(m.exact)
    roots = isolate_real_roots(list(m.poly))
    k = next(i for i, r in enumerate(roots) if r.compare(m) == 0)
    return f"root[{k + 1}]({list(m.poly)})"


def canonical_text(tree: CadTree) -> str:
    """Deterministic listing of the mathematical content of ``tree`` (ids excluded)."""
    lines = [f"mode {tree.mode}", f"vars {tree.order}"]
    ids = tree.by_id()
    for level in tree.levels:
        for c in level:
            src = "" if c.source is None else ".".join(map(str, ids[c.source].index))
            sample = ", ".join(canonical_number(x) for x in c.sample)
            lines.append(f"{'.'.join(map(str, c.index))} <- {src or '-'} : ({sample})")
    return "\n".join(lines)


def cad_equal(a: CadTree, b: CadTree) -> bool:
    """Same variables, mode, level-1 roots, stack structure and exact samples."""
    if a.order != b.order or a.mode != b.mode or a.counts() != b.counts():
        return False
    if len(a.root_set) != len(b.root_set) or any(x.compare(y) for x, y in zip(a.root_set, b.root_set)):
        return False
    for k in range(2, a.n + 1):
        if a.stack_sizes(k) != b.stack_sizes(k):
            return False
    for la, lb in zip(a.levels, b.levels):
        for ca, cb in zip(la, lb):
            if ca.index != cb.index:
                return False
            if any(x.compare(y) for x, y in zip(ca.sample, cb.sample)):
                return False
    return True


# ---------------------------------------------------------------------------
# exports


def export_dot(tree: CadTree) -> str:
    """Graph description with one node per cell and an edge from each cell to its source."""
    lines = ["digraph cad {", "  rankdir=TB;", "  node [shape=box, fontname=\"monospace\"];"]
    for k, level in enumerate(tree.levels, start=1):
        lines.append(f"  subgraph level{k} {{ rank=same;")
        for c in level:
            label = f"[{','.join(map(str, c.index))}]"
            style = ", color=blue, penwidth=2" if c.flag == NEW else ""
            lines.append(f"    c{c.id} [label=\"{label}\\n{c.flag}\"{style}];")
        lines.append("  }")
    for level in tree.levels[1:]:
        for c in level:
            style = " [color=blue, penwidth=2]" if c.flag == NEW else ""
            lines.append(f"  c{c.id} -> c{c.source}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_cells(tree: CadTree, digits: int | None = None) -> str:
    """Tab separated records: index, description, sample, source index, flag."""
    names = tree.order.names
    ids = tree.by_id()
    lines = ["# index\tdescription\tsample\tsource\tflag"]
    for level in tree.levels:
        for c in level:
            desc = ", ".join(b.render(names[i], digits) for i, b in enumerate(c.description))
            sample = ", ".join(_num(x, digits) for x in c.sample)
            src = "-" if c.source is None else "[" + ",".join(map(str, ids[c.source].index)) + "]"
            lines.append(f"[{','.join(map(str, c.index))}]\t{{{desc}}}\t({sample})\t{src}\t{c.flag}")
    return "\n".join(lines) + "\n"


def export(tree: CadTree, fmt: str, digits: int | None = None) -> bytes:
    if fmt == "dot":
        return export_dot(tree).encode()
    if fmt == "cells":
        return export_cells(tree, digits).encode()
    raise ValueError(f"unknown export format {fmt!r}")


# ---------------------------------------------------------------------------
# sign-invariance spot checks


@dataclass
class SignReport:
    cells_checked: int = 0
    points_checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _random_between(lo: RealAlgebraic | None, hi: RealAlgebraic | None, rng: random.Random) -> Fraction:
    if lo is not None and hi is not None:
        while not lo.is_rational and not hi.is_rational and lo.hi > hi.lo:
            lo._bisect()
            hi._bisect()
        a = lo.exact if lo.is_rational else lo.hi
        b = hi.exact if hi.is_rational else hi.lo
        while not a < b:
            lo._bisect()
            hi._bisect()
            a = lo.exact if lo.is_rational else lo.hi
            b = hi.exact if hi.is_rational else hi.lo
        t = Fraction(rng.randint(1, 999), 1000)
        return a + t * (b - a)
    if lo is None and hi is None:
        return Fraction(rng.randint(-4000, 4000), 1000)
    step = Fraction(rng.randint(1, 3000), 1000)
    if lo is None:
        return (hi.exact if hi.is_rational else hi.lo) - step
    return (lo.exact if lo.is_rational else lo.hi) + step


def check_sign_invariance(
    tree: CadTree,
    inputs: Iterable[MultiPoly],
    trials: int = 5,
    table=None,
    seed: int = 0,
) -> SignReport:
    """Evaluate the inputs at each full-dimensional cell's sample and random interior points.

    Random points are drawn coordinate by coordinate: over a random prefix
    the stack roots are recomputed from the projection table, the count is
    checked against the cell's stack, and the next coordinate is drawn from
    the sector with the cell's position.
    """
    from .lifting import Lifter, point_sign
    from .projection import projection_polys

    inputs = [p for p in inputs]
    if table is None:
        table = projection_polys(inputs, tree.order) if inputs else None
    rng = random.Random(seed)
    report = SignReport()
    lifter = Lifter(table, tree.order, "open") if table is not None else None
    ids = tree.by_id()
    for cell in tree.levels[-1]:
        if not cell.full_dimensional:
            continue
        report.cells_checked += 1
        expected = tuple(point_sign(f, cell.sample) for f in inputs)
        if 0 in expected:
            report.violations.append(f"cell {cell.index}: an input vanishes at the sample")
        chain = [cell]
        while chain[-1].source is not None:
            chain.append(ids[chain[-1].source])
        chain.reverse()
        for _ in range(trials):
            point: list[RealAlgebraic] = []
            bad = False
            for k, c in enumerate(chain, start=1):
                if k == 1:
                    roots = tree.root_set if lifter is None else lifter.level1_roots()
                else:
                    roots = lifter.roots_over(tuple(point), k)
                parent_roots = tree.stack_roots(chain[k - 2] if k > 1 else None)
                if len(roots) != len(parent_roots):
                    report.violations.append(f"cell {cell.index}: {len(roots)} roots over a random point, expected {len(parent_roots)}")
                    bad = True
                    break
                pos = c.index[-1]
                j = (pos - 1) // 2 if tree.mode == "full" else pos - 1
                bounds = [None, *roots, None]
                point.append(RealAlgebraic.rational(_random_between(bounds[j], bounds[j + 1], rng)))
            if bad:
                continue
            report.points_checked += 1
            got = tuple(point_sign(f, point) for f in inputs)
            if got != expected:
                shown = ", ".join(str(x) for x in point)
                report.violations.append(f"cell {cell.index}: signs {got} at ({shown}) differ from {expected}")
    return report
