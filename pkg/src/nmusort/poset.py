"""Finite posets carrying a gridwork of rows and columns.

Four constructions are supported: products of two chains (``build_grid``),
convex subsets of a grid (``build_grid_convex``), convex subsets of a
cylinder poset ``Z^2 / (-k, n-k)Z`` (``build_cylinder_convex``), and
posets given by cover edges with explicit chains (``build_explicit``).

Elements are addressed by string ids. Grid elements are ``"i,j"`` with
``i`` the matrix row counted from the top and ``j`` the column counted from
the left, so the top-left cell is the minimum. Cylinder elements are
``"a,b"`` for the canonical coordinate with ``0 <= a < k``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Coordinate = tuple[int, int]


class PosetError(ValueError):
    """Malformed poset input."""


class GridworkError(PosetError):
    """A construction produced (or was given) an invalid gridwork."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{v.kind}: {v.detail}" for v in self.violations))


class LabelingError(ValueError):
    """A labeling is not total, or not of the required kind."""


@dataclass(frozen=True)
class CylinderSpec:
    """The cylinder ``Z^2 / (-k, n-k)Z`` for ``0 < k < n``."""

    k: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.n, int)):
            raise PosetError("cylinder parameters must be integers")
        if not 0 < self.k < self.n:
            raise PosetError(f"cylinder needs 0 < k < n, got k={self.k}, n={self.n}")

    @property
    def vector(self) -> Coordinate:
        return (-self.k, self.n - self.k)

    def shift(self, coord: Coordinate, t: int) -> Coordinate:
        return (coord[0] - t * self.k, coord[1] + t * (self.n - self.k))

    def canonical(self, coord: Coordinate) -> Coordinate:
        a, b = coord
        return self.shift((a, b), a // self.k)

    def shifts_between(self, x: Coordinate, y: Coordinate) -> range:
        """All ``t`` with ``x <= y + t*vector`` componentwise."""
        # a_x <= a_y - t k  and  b_x <= b_y + t (n-k)
        hi = (y[0] - x[0]) // self.k
        lo = -((y[1] - x[1]) // (self.n - self.k))
        return range(lo, hi + 1)

    def leq(self, x: Coordinate, y: Coordinate) -> bool:
        return len(self.shifts_between(x, y)) > 0

    def interval(self, x: Coordinate, y: Coordinate) -> set[Coordinate]:
        """Canonical coordinates of every ``z`` with ``x <= z <= y``."""
        out = set()
        for t in self.shifts_between(x, y):
            top = self.shift(y, t)
            for a in range(x[0], top[0] + 1):
                for b in range(x[1], top[1] + 1):
                    out.add(self.canonical((a, b)))
        return out


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"kind": v.kind, "detail": v.detail} for v in self.violations],
        }


class Poset:
    """An immutable finite poset together with a gridwork.

    ``above[i]`` is the set of indices strictly greater than element ``i``.
    ``rows`` and ``columns`` are tuples of index chains listed from
    chain-minimum to chain-maximum. Builders validate; the bare constructor
    does not, so that ``validate`` can diagnose hand-built inputs.
    """

    def __init__(self, ids, above, rows, columns, *, backing="explicit",
                 coords=None, params=None):
        self.ids = tuple(ids)
        self.index = {x: i for i, x in enumerate(self.ids)}
        if len(self.index) != len(self.ids):
            raise PosetError("duplicate element ids")
        self.above = tuple(frozenset(s) for s in above)
        self.rows = tuple(tuple(r) for r in rows)
        self.columns = tuple(tuple(c) for c in columns)
        self.backing = backing
        self.coords = None if coords is None else tuple(coords)
        self.params = dict(params or {})
        self._cache = {}

        self._row_of = [None] * len(self.ids)
        self._col_of = [None] * len(self.ids)
        for r, chain in enumerate(self.rows):
            for i in chain:
                if self._row_of[i] is None:
                    self._row_of[i] = r
        for c, chain in enumerate(self.columns):
            for i in chain:
                if self._col_of[i] is None:
                    self._col_of[i] = c

    def __len__(self):
        return len(self.ids)

    def __repr__(self):
        return f"<Poset {self.backing} |P|={len(self)} rows={len(self.rows)} cols={len(self.columns)}>"

    # order queries at the index level

    def lt_index(self, i: int, j: int) -> bool:
        return j in self.above[i]

    def leq_index(self, i: int, j: int) -> bool:
        return i == j or j in self.above[i]

    def comparable_index(self, i: int, j: int) -> bool:
        return self.leq_index(i, j) or self.leq_index(j, i)

    def leq(self, x: str, y: str) -> bool:
        return self.leq_index(self.index[x], self.index[y])

    def lt(self, x: str, y: str) -> bool:
        return self.lt_index(self.index[x], self.index[y])

    @property
    def cover_pairs(self) -> frozenset[tuple[int, int]]:
        if "covers" not in self._cache:
            self._cache["covers"] = frozenset(_hasse(self.above))
        return self._cache["covers"]

    def covers(self) -> set[tuple[str, str]]:
        return {(self.ids[i], self.ids[j]) for i, j in self.cover_pairs}

    def row_index(self, i: int) -> int | None:
        return self._row_of[i]

    def column_index(self, i: int) -> int | None:
        return self._col_of[i]

    def row_of(self, x: str) -> tuple[str, ...]:
        return tuple(self.ids[i] for i in self.rows[self._row_of[self.index[x]]])

    def column_of(self, x: str) -> tuple[str, ...]:
        return tuple(self.ids[i] for i in self.columns[self._col_of[self.index[x]]])

    @property
    def transverse(self) -> bool:
        if "transverse" not in self._cache:
            self._cache["transverse"] = not _transversality_violations(self)
        return self._cache["transverse"]

    # labelings

    def values(self, labeling) -> tuple[int, ...]:
        """Normalize a labeling (id mapping or element-ordered sequence)."""
        if isinstance(labeling, Mapping):
            missing = [x for x in self.ids if x not in labeling]
            if missing:
                raise LabelingError(f"labeling misses elements: {', '.join(missing)}")
            extra = [x for x in labeling if x not in self.index]
            if extra:
                raise LabelingError(f"labeling names unknown elements: {', '.join(map(str, extra))}")
            vals = [labeling[x] for x in self.ids]
        else:
            vals = list(labeling)
            if len(vals) != len(self.ids):
                raise LabelingError(f"labeling has {len(vals)} entries, poset has {len(self.ids)}")
        for v in vals:
            if isinstance(v, bool) or not isinstance(v, int):
                raise LabelingError(f"labels must be integers, got {v!r}")
        return tuple(vals)

    def as_dict(self, values: Sequence[int]) -> dict[str, int]:
        return dict(zip(self.ids, values))

    def from_matrix(self, matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Read a grid labeling from matrix rows (top row first)."""
        if self.backing != "grid":
            raise PosetError("matrix labelings need a grid poset")
        r, c = self.params["r"], self.params["c"]
        if len(matrix) != r or any(len(row) != c for row in matrix):
            raise LabelingError(f"matrix must be {r}x{c}")
        return self.values([matrix[i][j] for i in range(r) for j in range(c)])

    def to_matrix(self, values: Sequence[int]) -> list[list[int]]:
        if self.backing != "grid":
            raise PosetError("matrix view needs a grid poset")
        c = self.params["c"]
        vals = list(values)
        return [vals[i:i + c] for i in range(0, len(vals), c)]


def _hasse(above):
    for i, ups in enumerate(above):
        for j in ups:
            if not any(j in above[m] for m in ups if m != j):
                yield (i, j)


def _above_from_leq(n, leq):
    return [frozenset(j for j in range(n) if j != i and leq(i, j)) for i in range(n)]


def _grid_id(i, j):
    return f"{i},{j}"


def build_grid(r: int, c: int) -> Poset:
    """The product of an ``r``-chain and a ``c``-chain, laid out as a matrix."""
    if not (isinstance(r, int) and isinstance(c, int)) or r < 1 or c < 1:
        raise PosetError(f"grid dimensions must be positive integers, got {r}x{c}")
    coords = [(i, j) for i in range(1, r + 1) for j in range(1, c + 1)]
    poset = _planar(coords, backing="grid", params={"r": r, "c": c})
    return poset


def build_grid_convex(cells: Iterable[Sequence[int]]) -> Poset:
    """A convex subset of ``Z^2`` under the componentwise order.

    Rows group cells with equal first coordinate, columns cells with equal
    second coordinate.
    """
    coords = sorted({(int(a), int(b)) for a, b in cells})
    if not coords:
        raise PosetError("a grid-convex poset needs at least one cell")
    poset = _planar(coords, backing="grid-convex", params={"cells": [list(x) for x in coords]})
    report = validate(poset)
    if not report.ok:
        raise GridworkError(report.violations)
    return poset


def _planar(coords, backing, params):
    n = len(coords)
    pos = {x: i for i, x in enumerate(coords)}
    above = _above_from_leq(
        n, lambda i, j: coords[i][0] <= coords[j][0] and coords[i][1] <= coords[j][1])
    rows: dict[int, list[int]] = {}
    cols: dict[int, list[int]] = {}
    for x in coords:
        rows.setdefault(x[0], []).append(pos[x])
        cols.setdefault(x[1], []).append(pos[x])
    row_chains = [sorted(ch, key=lambda i: coords[i][1]) for _, ch in sorted(rows.items())]
    col_chains = [sorted(ch, key=lambda i: coords[i][0]) for _, ch in sorted(cols.items())]
    return Poset([_grid_id(*x) for x in coords], above, row_chains, col_chains,
                 backing=backing, coords=coords, params=params)


def build_cylinder_convex(spec: CylinderSpec, members: Iterable[Sequence[int]]) -> Poset:
    """A convex subposet of the cylinder poset described by ``spec``.

    Rows are maximal runs of ``+(0,1)`` steps inside the member set and
    columns maximal runs of ``+(1,0)`` steps; both may cross the
    identification. Raises ``GridworkError`` if the set is not convex or
    the derived gridwork is invalid or not transverse.
    """
    coords = sorted({spec.canonical((int(a), int(b))) for a, b in members})
    if not coords:
        raise PosetError("a cylinder-convex poset needs at least one member")
    pos = {x: i for i, x in enumerate(coords)}
    n = len(coords)
    above = _above_from_leq(n, lambda i, j: spec.leq(coords[i], coords[j]))

    def runs(step):
        chains = []
        for x in coords:
            if spec.canonical((x[0] - step[0], x[1] - step[1])) in pos:
                continue
            chain = [pos[x]]
            y = spec.canonical((x[0] + step[0], x[1] + step[1]))
            while y in pos and pos[y] not in chain:
                chain.append(pos[y])
                y = spec.canonical((y[0] + step[0], y[1] + step[1]))
            chains.append(chain)
        return chains

    poset = Poset([_grid_id(*x) for x in coords], above, runs((0, 1)), runs((1, 0)),
                  backing="cylinder", coords=coords,
                  params={"k": spec.k, "n": spec.n, "members": [list(x) for x in coords]})
    report = validate(poset)
    if not report.ok:
        raise GridworkError(report.violations)
    return poset


def cylinder_spec(poset: Poset) -> CylinderSpec:
    if poset.backing != "cylinder":
        raise PosetError("not a cylinder-backed poset")
    return CylinderSpec(poset.params["k"], poset.params["n"])


def build_explicit(elements, covers, rows, columns, *, check: bool = True) -> Poset:
    """A poset given by cover edges, with its rows and columns listed.

    The order is the reflexive-transitive closure of ``covers``.
    Non-transverse gridworks are accepted; any other gridwork violation
    raises ``GridworkError`` unless ``check`` is false.
    """
    ids = [str(x) for x in elements]
    index = {x: i for i, x in enumerate(ids)}
    if len(index) != len(ids):
        raise PosetError("duplicate element ids")

    def lookup(x, where):
        try:
            return index[str(x)]
        except KeyError:
            raise PosetError(f"{where} names unknown element {x!r}") from None

    succ = [set() for _ in ids]
    for edge in covers:
        if len(edge) != 2:
            raise PosetError(f"cover edge must be a pair, got {edge!r}")
        u, v = lookup(edge[0], "cover"), lookup(edge[1], "cover")
        if u == v:
            raise PosetError(f"cover edge {edge!r} is a loop")
        succ[u].add(v)

    order = _topological(succ)
    if order is None:
        raise PosetError("cover edges contain a cycle")
    above = [set() for _ in ids]
    for u in reversed(order):
        for v in succ[u]:
            above[u].add(v)
            above[u] |= above[v]

    row_chains = [[lookup(x, "row") for x in ch] for ch in rows]
    col_chains = [[lookup(x, "column") for x in ch] for ch in columns]
    poset = Poset(ids, above, row_chains, col_chains, backing="explicit",
                  params={"covers": [[str(u), str(v)] for u, v in covers]})
    if check:
        bad = [v for v in validate(poset).violations if v.kind != "transversality"]
        if bad:
            raise GridworkError(bad)
    return poset


def _topological(succ):
    indeg = [0] * len(succ)
    for vs in succ:
        for v in vs:
            indeg[v] += 1
    queue = deque(i for i, d in enumerate(indeg) if d == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return order if len(order) == len(succ) else None


def _transversality_violations(p: Poset):
    out = []
    col_sets = [set(c) for c in p.columns]
    for r, row in enumerate(p.rows):
        for c, cs in enumerate(col_sets):
            shared = cs.intersection(row)
            if len(shared) > 1:
                names = ", ".join(sorted(p.ids[i] for i in shared))
                out.append(Violation("transversality", f"row {r} and column {c} share {{{names}}}"))
    return out


def validate(p: Poset) -> ValidationReport:
    """Check every gridwork axiom, plus convexity for embedded posets."""
    report = ValidationReport()
    add = report.violations.append
    n = len(p)
    ids = p.ids
    covers = p.cover_pairs

    for label, chains in (("row", p.rows), ("column", p.columns)):
        seen: dict[int, int] = {}
        for ci, chain in enumerate(chains):
            for i in chain:
                if not 0 <= i < n:
                    add(Violation("coverage", f"{label} {ci} names an unknown element"))
                    continue
                if i in seen:
                    add(Violation("disjointness",
                                  f"{ids[i]} lies in {label}s {seen[i]} and {ci}"))
                else:
                    seen[i] = ci
            for a, b in zip(chain, chain[1:]):
                if 0 <= a < n and 0 <= b < n and (a, b) not in covers:
                    add(Violation("saturation",
                                  f"{label} {ci} steps {ids[a]} -> {ids[b]}, not a cover"))
        for i in range(n):
            if i not in seen:
                add(Violation("coverage", f"{ids[i]} lies in no {label}"))

    steps = set()
    for chain in p.rows + p.columns:
        steps.update(zip(chain, chain[1:]))
    for a, b in sorted(covers):
        if (a, b) not in steps:
            add(Violation("cover-missing", f"cover {ids[a]} < {ids[b]} is in no row or column"))

    report.violations.extend(_transversality_violations(p))
    report.violations.extend(_convexity_violations(p))
    return report


def _convexity_violations(p: Poset):
    if p.backing == "grid-convex":
        members = set(p.coords)
        for x in p.coords:
            for y in p.coords:
                if x != y and x[0] <= y[0] and x[1] <= y[1]:
                    for a in range(x[0], y[0] + 1):
                        for b in range(x[1], y[1] + 1):
                            if (a, b) not in members:
                                return [Violation("convexity",
                                                  f"({a},{b}) lies between {x} and {y} but is absent")]
    elif p.backing == "cylinder":
        spec = cylinder_spec(p)
        members = set(p.coords)
        for i, j in ((i, j) for i in range(len(p)) for j in p.above[i]):
            for z in spec.interval(p.coords[i], p.coords[j]):
                if z not in members:
                    return [Violation("convexity",
                                      f"{z} lies between {p.ids[i]} and {p.ids[j]} but is absent")]
    return []


def pair_count_off_lines(p: Poset) -> int:
    """Number of unordered pairs sharing neither a row nor a column."""
    n = len(p)
    return sum(
        1
        for i in range(n)
        for j in range(i + 1, n)
        if p.row_index(i) != p.row_index(j) and p.column_index(i) != p.column_index(j)
    )


def grid_dims(p: Poset) -> tuple[int, int]:
    if p.backing != "grid":
        raise PosetError("not a grid poset")
    return p.params["r"], p.params["c"]
