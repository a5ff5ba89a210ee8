from __future__ import annotations

import copy
import json
from dataclasses import replace

import pytest

from incad.cad import (
    NEW,
    OLD,
    CadTree,
    Section,
    Sector,
    TreeError,
    cad_equal,
    canonical_number,
    canonical_text,
    check_sign_invariance,
    export,
    export_cells,
    export_dot,
)
from incad.lifting import lift, lift_add
from incad.projection import projection_polys, projection_polys_add
from incad.realroots import RealAlgebraic, isolate_real_roots

from conftest import LINE, ORDER, polys


@pytest.fixture
def tree(f1):
    return lift(projection_polys(f1, ORDER), ORDER, "full")


def test_bounds_contain_and_render():
    r = isolate_real_roots([-2, 0, 1])[1]
    assert Section(r).contains(r.copy())
    assert not Section(r).contains(RealAlgebraic.rational(1))
    s = Sector(None, r)
    assert s.contains(RealAlgebraic.rational(1)) and not s.contains(RealAlgebraic.rational(2))
    assert s.render("y", 3) == "y < ~1.414"
    assert Sector(RealAlgebraic.rational(0), None).render("y") == "0 < y"
    assert Section(RealAlgebraic.rational(1)).render("x", 3) == "x = 1"


def test_cells_satisfy_their_descriptions(tree):
    for c in tree.all_cells():
        assert c.satisfies_description()
    assert sum(c.full_dimensional for c in tree.cells(2)) == 17


def test_json_round_trip(tree):
    data = json.loads(json.dumps(tree.to_json()))
    back = CadTree.from_json(ORDER, data)
    back.validate()
    assert cad_equal(back, tree)
    assert canonical_text(back) == canonical_text(tree)
    assert back.to_json() == tree.to_json()


def test_validate_catches_broken_trees(tree):
    bad = copy.deepcopy(tree)
    bad.levels[1].pop()
    with pytest.raises(TreeError):
        bad.validate()
    bad = copy.deepcopy(tree)
    bad.levels[1][0] = replace(bad.levels[1][0], source=999)
    with pytest.raises(TreeError):
        bad.validate()
    bad = copy.deepcopy(tree)
    bad.levels[0][1] = replace(bad.levels[0][1], id=bad.levels[0][0].id)
    with pytest.raises(TreeError):
        bad.validate()
    bad = copy.deepcopy(tree)
    bad.mode = "open"
    with pytest.raises(TreeError):
        bad.validate()


def test_cad_equal_ignores_ids_but_not_content(tree, f1):
    renumbered = copy.deepcopy(tree)
    shift = {c.id: c.id + 100 for c in renumbered.all_cells()}
    renumbered.levels = [
        [replace(c, id=shift[c.id], source=None if c.source is None else shift[c.source]) for c in level]
        for level in renumbered.levels
    ]
    renumbered.lift_roots = {shift[k]: v for k, v in renumbered.lift_roots.items()}
    renumbered.validate()
    assert cad_equal(renumbered, tree)
    other = lift(projection_polys(f1 + polys(LINE), ORDER), ORDER, "full")
    assert not cad_equal(other, tree)
    assert not cad_equal(lift(projection_polys(f1, ORDER), ORDER, "open"), tree)


def test_canonical_number_is_refinement_independent():
    a = isolate_real_roots([-2, 0, 1])[1]
    b = isolate_real_roots([0, -2, 0, 1])[2].refine(1e-9)
    assert canonical_number(a) == canonical_number(b) == "root[2]([-2, 0, 1])"
    assert canonical_number(RealAlgebraic.rational(3)) == "3"


def test_cells_export(tree):
    text = export_cells(tree, 4)
    lines = text.splitlines()
    assert lines[0] == "# index\tdescription\tsample\tsource\tflag"
    assert len(lines) == 1 + 9 + 51
    assert all(len(line.split("\t")) == 5 for line in lines[1:])
    assert "[1]\t{x1 < -1}\t(-2)\t-\told" in lines
    assert "[4,4]\t{x1 = 0, x2 = 0}\t(0, 0)\t[4]\told" in lines
    assert export(tree, "cells", 4) == text.encode()


def test_dot_export_marks_new_cells(tree, f1):
    table = projection_polys(f1, ORDER)
    new_table, delta = projection_polys_add(table, polys(LINE))
    out = lift_add(delta, new_table, ORDER, tree)
    dot = export_dot(out)
    assert dot.startswith("digraph cad {")
    assert dot.count("->") == len(out.cells(2))
    assert sum(1 for c in out.all_cells() if c.flag == NEW) == dot.count("\\nnew\"")
    assert any(c.flag == OLD for c in out.all_cells())
    with pytest.raises(ValueError):
        export(out, "svg")


def test_sign_invariance_detects_a_wrong_tree(tree, f1):
    assert check_sign_invariance(tree, f1).ok
    report = check_sign_invariance(tree, f1 + polys(LINE))
    assert not report.ok and report.violations
