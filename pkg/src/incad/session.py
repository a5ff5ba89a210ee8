"""Versioned JSON session files holding inputs, projection table and CAD tree."""
from __future__ import annotations

import fcntl
import json
import os
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from .cad import CadTree, TreeError
from .poly import MultiPoly, PolyError, VarOrder, parse_poly, sorted_polys
from .projection import LevelDelta, ProjectionTable
from .realroots import merge_root_lists, isolate_real_roots

FORMAT = "incad-session"
VERSION = 1


class SessionError(ValueError):
    """Unreadable, unrecognised or inconsistent session file."""


@dataclass
class SessionState:
    order: VarOrder
    inputs: list[MultiPoly]
    table: ProjectionTable
    tree: CadTree
    mode: str
    last_delta: LevelDelta | None = None

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "version": VERSION,
            "vars": list(self.order.names),
            "mode": self.mode,
            "inputs": [str(p) for p in self.inputs],
            "table": self.table.to_json(),
            "last_delta": None if self.last_delta is None else self.last_delta.to_json(),
            "tree": self.tree.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> SessionState:
        if not isinstance(data, dict) or data.get("format") != FORMAT:
            raise SessionError("not a session file")
        if data.get("version") != VERSION:
            raise SessionError(f"unsupported session version {data.get('version')!r}")
        try:
            order = VarOrder(tuple(data["vars"]))
            inputs = [parse_poly(s, order) for s in data["inputs"]]
            table = ProjectionTable.from_json(order, data["table"])
            delta = None if data.get("last_delta") is None else LevelDelta.from_json(order, data["last_delta"])
            tree = CadTree.from_json(order, data["tree"])
            mode = data["mode"]
        except (KeyError, TypeError, ValueError, PolyError) as exc:
            raise SessionError(f"malformed session: {exc}") from exc
        state = cls(order, inputs, table, tree, mode, delta)
        state.validate()
        return state

    def validate(self) -> None:
        """Cheap consistency checks between inputs, table and tree."""
        if self.mode != self.tree.mode:
            raise SessionError("session mode differs from the tree's")
        try:
            self.tree.validate()
        except TreeError as exc:
            raise SessionError(f"invalid tree: {exc}") from exc
        n = len(self.order)
        for i, level in enumerate(self.table.levels):
            for p in level:
                if p.main_index() != n - 1 - i:
                    raise SessionError(f"table level {i} holds {p}")
        if not self.inputs and self.table.size():
            raise SessionError("table is not empty but there are no inputs")
        roots = merge_root_lists(isolate_real_roots(p) for p in sorted_polys(self.table.final))
        if len(roots) != len(self.tree.root_set) or any(a.compare(b) for a, b in zip(roots, self.tree.root_set)):
            raise SessionError("tree roots do not match the projection table")


@contextmanager
def _locked(path: Path):
    lock = path.with_name(path.name + ".lock")
    with open(lock, "a") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def save(state: SessionState, path: str | os.PathLike) -> None:
    """Write atomically under an advisory lock."""
    path = Path(path)
    text = json.dumps(state.to_json(), indent=1, sort_keys=True)
    with _locked(path):
        fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
                fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def load(path: str | os.PathLike) -> SessionState:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SessionError(f"cannot read session {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SessionError(f"session {path} is not valid JSON: {exc}") from exc
    return SessionState.from_json(data)
