"""Worked examples: the 3x4 matrix, the five-element non-transverse poset,
the 6x6 two-valued display and the small diamond / vee / wedge labelings."""
from .poset import build_explicit, build_grid

EXAMPLE_M = [[4, 9, 7, 8], [12, 5, 1, 10], [2, 6, 11, 3]]
EXAMPLE_C = [[2, 5, 1, 3], [4, 6, 7, 8], [12, 9, 11, 10]]
EXAMPLE_R = [[4, 7, 8, 9], [1, 5, 10, 12], [2, 3, 6, 11]]
EXAMPLE_RC = [[1, 2, 3, 5], [4, 6, 7, 8], [9, 10, 11, 12]]
EXAMPLE_CR = [[1, 3, 6, 9], [2, 5, 8, 11], [4, 7, 10, 12]]

# Five elements: bottom b, right side r1 < r2, top t, left l.
# The edge r1 < r2 lies in both a row and a column.
NONTRANSVERSE = {
    "kind": "explicit",
    "elements": ["b", "r1", "r2", "t", "l"],
    "covers": [["b", "r1"], ["r1", "r2"], ["r2", "t"], ["b", "l"], ["l", "t"]],
    "rows": [["b", "r1", "r2"], ["l", "t"]],
    "columns": [["b", "l"], ["r1", "r2", "t"]],
}
NONTRANSVERSE_LABELING = {"b": 5, "r1": 1, "r2": 3, "t": 2, "l": 4}
NONTRANSVERSE_RC = {"b": 1, "r1": 2, "r2": 4, "l": 3, "t": 5}
NONTRANSVERSE_CR = {"b": 1, "l": 2, "r1": 3, "r2": 4, "t": 5}

# Two-valued 6x6 labeling whose columns (left to right) are indexed
# c1, c6, c3, c2, c4, c5 by increasing number of 1s.
HIERARCHY_DISPLAY = [
    [2, 1, 2, 2, 1, 1],
    [2, 1, 1, 2, 1, 1],
    [2, 1, 2, 2, 2, 2],
    [2, 1, 2, 2, 2, 1],
    [2, 2, 2, 2, 2, 2],
    [2, 1, 1, 2, 1, 1],
]
HIERARCHY_ORDER = [1, 4, 3, 5, 6, 2]  # grid column holding c1, c2, ..., c6


def nontransverse_poset():
    d = NONTRANSVERSE
    return build_explicit(d["elements"], d["covers"], d["rows"], d["columns"])


def diamond():
    """The 2x2 grid, with its cells named by position in the drawing."""
    p = build_grid(2, 2)
    names = {"bottom": "1,1", "left": "1,2", "right": "2,1", "top": "2,2"}
    return p, names


def vee():
    """Two minima x, y under a common cover z."""
    return build_explicit(["x", "y", "z"], [["x", "z"], ["y", "z"]],
                          rows=[["x", "z"], ["y"]], columns=[["x"], ["y", "z"]])


def wedge():
    """Two maxima x, y over a common element z."""
    return build_explicit(["x", "y", "z"], [["z", "x"], ["z", "y"]],
                          rows=[["z", "x"], ["y"]], columns=[["x"], ["z", "y"]])
