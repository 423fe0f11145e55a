"""JSON poset files and labeling files.

Poset files carry a ``kind`` and the fields of that construction::

    {"kind": "grid", "r": 3, "c": 4}
    {"kind": "grid-convex", "cells": [[1, 2], [1, 3], [2, 2]]}
    {"kind": "cylinder", "k": 2, "n": 5, "members": [[0, 0], [1, 0]]}
    {"kind": "explicit", "elements": ["b", "t"], "covers": [["b", "t"]],
     "rows": [["b", "t"]], "columns": [["b"], ["t"]]}

Labelings are either a JSON object ``{"element-id": label}`` or, for grid
posets, a matrix as whitespace-separated integer rows with the top row
first.
"""
import json
from pathlib import Path

from .poset import (
    CylinderSpec,
    LabelingError,
    Poset,
    PosetError,
    build_cylinder_convex,
    build_explicit,
    build_grid,
    build_grid_convex,
)
from .preimage import MatrixError, parse_matrix


def poset_from_json(data: dict) -> Poset:
    if not isinstance(data, dict) or "kind" not in data:
        raise PosetError("poset JSON must be an object with a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "grid":
            return build_grid(data["r"], data["c"])
        if kind == "grid-convex":
            return build_grid_convex(data["cells"])
        if kind == "cylinder":
            return build_cylinder_convex(CylinderSpec(data["k"], data["n"]), data["members"])
        if kind == "explicit":
            return build_explicit(data["elements"], data["covers"], data["rows"], data["columns"])
    except KeyError as exc:
        raise PosetError(f"{kind} poset is missing field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise PosetError(f"malformed {kind} poset: {exc}") from None
    raise PosetError(f"unknown poset kind {kind!r}")


def poset_to_json(p: Poset) -> dict:
    if p.backing == "grid":
        return {"kind": "grid", "r": p.params["r"], "c": p.params["c"]}
    if p.backing == "grid-convex":
        return {"kind": "grid-convex", "cells": [list(x) for x in p.coords]}
    if p.backing == "cylinder":
        return {"kind": "cylinder", "k": p.params["k"], "n": p.params["n"],
                "members": [list(x) for x in p.coords]}
    return {
        "kind": "explicit",
        "elements": list(p.ids),
        "covers": [list(e) for e in p.params.get("covers", sorted(p.covers()))],
        "rows": [[p.ids[i] for i in ch] for ch in p.rows],
        "columns": [[p.ids[i] for i in ch] for ch in p.columns],
    }


def load_poset(path) -> Poset:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PosetError(f"{path}: invalid JSON ({exc})") from None
    return poset_from_json(data)


def parse_labeling(p: Poset, text: str) -> tuple[int, ...]:
    """Read a labeling from JSON-object text or, for grids, matrix text."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise LabelingError(f"invalid labeling JSON ({exc})") from None
        return p.values({str(k): v for k, v in data.items()})
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise LabelingError(f"invalid labeling JSON ({exc})") from None
        if data and isinstance(data[0], list):
            return p.from_matrix(data)
        return p.values(data)
    try:
        rows = parse_matrix(text)
    except MatrixError as exc:
        raise LabelingError(str(exc)) from None
    if p.backing == "grid":
        return p.from_matrix(rows)
    if len(rows) == 1:
        return p.values(rows[0])
    raise LabelingError("matrix labelings need a grid poset")


def load_labeling(p: Poset, path) -> tuple[int, ...]:
    return parse_labeling(p, Path(path).read_text())
