"""Exact cylindrical algebraic decomposition with Lazard projection and incremental updates."""
from __future__ import annotations

from .cad import CadTree, Cell, Section, Sector, cad_equal, check_sign_invariance, export
from .elim import discriminant, resultant
from .lifting import Lifter, lazard_evaluate, lazard_valuation, lift, lift_add
from .poly import MultiPoly, VarOrder, parse_poly
from .projection import ProjectionTable, projection, projection_add, projection_polys, projection_polys_add
from .realroots import RealAlgebraic, isolate_real_roots

__all__ = [
    "CadTree",
    "Cell",
    "Lifter",
    "MultiPoly",
    "ProjectionTable",
    "RealAlgebraic",
    "Section",
    "Sector",
    "VarOrder",
    "cad_equal",
    "check_sign_invariance",
    "discriminant",
    "export",
    "isolate_real_roots",
    "lazard_evaluate",
    "lazard_valuation",
    "lift",
    "lift_add",
    "parse_poly",
    "projection",
    "projection_add",
    "projection_polys",
    "projection_polys_add",
    "resultant",
]
