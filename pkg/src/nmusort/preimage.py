"""Counting the matrices that sort to a given sorted matrix.

A sorted ``r x c`` matrix ``A`` of ``1..rc`` arises from
``h(A) * (r!)^c * c!`` matrices under column-then-row sorting and from
``h(A^T) * (c!)^r * r!`` under row-then-column sorting, where ``h`` is the
product of per-entry counts computed by ``h_value``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from . import _parallel
from .poset import build_grid
from .sorting import plan

ORDERS = ("RC", "CR")


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class SortedMatrix:
    """An ``r x c`` arrangement of ``1..rc`` increasing along rows and columns."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or not rows[0]:
            raise MatrixError("matrix must be nonempty")
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise MatrixError("matrix rows must have equal length")
        flat = sorted(v for row in rows for v in row)
        if flat != list(range(1, len(flat) + 1)):
            raise MatrixError(f"entries must be exactly 1..{len(flat)}")
        for row in rows:
            if any(a > b for a, b in zip(row, row[1:])):
                raise MatrixError(f"row {list(row)} is not increasing")
        for j in range(c):
            col = [row[j] for row in rows]
            if any(a > b for a, b in zip(col, col[1:])):
                raise MatrixError(f"column {j + 1} is not increasing")

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def c(self) -> int:
        return len(self.entries[0])

    def transpose(self) -> "SortedMatrix":
        return SortedMatrix(tuple(zip(*self.entries)))

    def position(self, value: int) -> tuple[int, int]:
        for i, row in enumerate(self.entries):
            if value in row:
                return i, row.index(value)
        raise MatrixError(f"{value} is not an entry")

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.entries for v in row)

    def __str__(self):
        width = len(str(self.r * self.c))
        return "\n".join(" ".join(f"{v:>{width}}" for v in row) for row in self.entries)


def h_value(a: SortedMatrix, value: int) -> int:
    """1 in the top row; otherwise the number of smaller entries in the row
    directly above, in the same column or to its right."""
    i, j = a.position(value)
    if i == 0:
        return 1
    return sum(1 for v in a.entries[i - 1][j:] if v < value)


def h_product(a: SortedMatrix) -> int:
    return prod(h_value(a, v) for v in a.flat())


def count_preimages(a: SortedMatrix, order: str) -> int:
    r, c = a.r, a.c
    if order == "RC":
        return h_product(a) * factorial(r) ** c * factorial(c)
    if order == "CR":
        return h_product(a.transpose()) * factorial(c) ** r * factorial(r)
    raise ValueError(f"order must be one of {ORDERS}, got {order!r}")


def preferred_probability(a: SortedMatrix) -> Fraction:
    """Chance that ``a`` came from column-then-row sorting, given a uniform
    random matrix and a fair coin choosing the sorting order."""
    r, c = a.r, a.c
    rc_weight = h_product(a) * factorial(r) ** (c - 1)
    cr_weight = h_product(a.transpose()) * factorial(c) ** (r - 1)
    return Fraction(rc_weight, rc_weight + cr_weight)


@dataclass(frozen=True)
class PreimageReport:
    matrix: SortedMatrix
    hA: int
    hAT: int
    countRC: int
    countCR: int
    probRC: Fraction

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "matrix": [list(row) for row in self.matrix.entries],
            "hA": self.hA,
            "hAT": self.hAT,
            "countRC": self.countRC,
            "countCR": self.countCR,
            "probRC": {"num": self.probRC.numerator, "den": self.probRC.denominator},
            "probRC_decimal": float(self.probRC),
        }


def preimage_report(a: SortedMatrix) -> PreimageReport:
    return PreimageReport(a, h_product(a), h_product(a.transpose()),
                          count_preimages(a, "RC"), count_preimages(a, "CR"),
                          preferred_probability(a))


def enumerate_sorted(r: int, c: int) -> Iterator[SortedMatrix]:
    """Every sorted ``r x c`` matrix, by placing 1, 2, ... in turn.

    A value may go into a cell once the cells above and to the left are
    filled, so each row is filled left to right and never ahead of the row
    above it.
    """
    if r < 1 or c < 1:
        raise MatrixError("dimensions must be positive")
    filled = [0] * r
    grid = [[0] * c for _ in range(r)]

    def place(value):
        if value > r * c:
            yield SortedMatrix(tuple(tuple(row) for row in grid))
            return
        for i in range(r):
            j = filled[i]
            if j < c and (i == 0 or filled[i - 1] > j):
                grid[i][j] = value
                filled[i] += 1
                yield from place(value + 1)
                filled[i] -= 1

    yield from place(1)


@lru_cache(maxsize=None)
def _tallies(r: int, c: int, workers: int):
    pl = plan(build_grid(r, c))
    rc_total: dict = {}
    cr_total: dict = {}
    for rc_part, cr_part in _parallel.sweep(pl, "tally", workers):
        for key, n in rc_part.items():
            rc_total[key] = rc_total.get(key, 0) + n
        for key, n in cr_part.items():
            cr_total[key] = cr_total.get(key, 0) + n
    return rc_total, cr_total


BRUTE_FORCE_LIMIT = 10


def brute_force_table(r: int, c: int, workers: int | None = 1) -> dict[str, dict]:
    """Sort every matrix of ``1..rc`` both ways and tally the results.

    Returns ``{"RC": {flat entries: count}, "CR": {...}}``.
    """
    if r * c > BRUTE_FORCE_LIMIT:
        raise MatrixError(f"brute force is limited to {BRUTE_FORCE_LIMIT} cells")
    workers = _parallel.default_workers() if workers is None else workers
    rc_total, cr_total = _tallies(r, c, workers)
    return {"RC": dict(rc_total), "CR": dict(cr_total)}


def brute_force_preimages(a: SortedMatrix, order: str, workers: int | None = 1) -> int:
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    table = brute_force_table(a.r, a.c, workers)
    return table[order].get(a.flat(), 0)


def parse_matrix(text: str) -> list[list[int]]:
    """Whitespace-separated integer rows; blank lines and ``#`` comments skipped."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise MatrixError(f"not an integer row: {line!r}") from None
    if not rows:
        raise MatrixError("no matrix rows found")
    if any(len(row) != len(rows[0]) for row in rows):
        raise MatrixError("matrix rows must have equal length")
    return rows


def format_matrix(rows: Sequence[Sequence[int]]) -> str:
    width = max(len(str(v)) for row in rows for v in row)
    return "\n".join(" ".join(f"{v:>{width}}" for v in row) for row in rows)
