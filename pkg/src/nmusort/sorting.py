"""The row and column sorting operators on gridwork labelings."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import _parallel, kernels
from .poset import LabelingError, Poset


def plan(p: Poset) -> kernels.Plan:
    """Kernel plan for ``p`` (rows and columns only), cached on the poset."""
    if "plan" not in p._cache:
        p._cache["plan"] = kernels.Plan(len(p), p.rows, p.columns)
    return p._cache["plan"]


def sort_rows(p: Poset, labeling) -> tuple[int, ...]:
    """Sort the labels within each row so each row's minimum gets its least label."""
    return tuple(plan(p).sort_rows(p.values(labeling)))


def sort_columns(p: Poset, labeling) -> tuple[int, ...]:
    return tuple(plan(p).sort_columns(p.values(labeling)))


def rc(p: Poset, labeling) -> tuple[int, ...]:
    """Sort columns, then rows."""
    return tuple(plan(p).rc(p.values(labeling)))


def cr(p: Poset, labeling) -> tuple[int, ...]:
    """Sort rows, then columns."""
    return tuple(plan(p).cr(p.values(labeling)))


def is_bijective(values) -> bool:
    return sorted(values) == list(range(1, len(values) + 1))


def require_bijective(p: Poset, labeling) -> tuple[int, ...]:
    vals = p.values(labeling)
    if not is_bijective(vals):
        raise LabelingError(f"labeling must use each of 1..{len(p)} exactly once")
    return vals


def is_sorted(p: Poset, labeling) -> bool:
    vals = p.values(labeling)
    for chain in p.rows + p.columns:
        if any(vals[a] > vals[b] for a, b in zip(chain, chain[1:])):
            return False
    return True


def is_linear_extension(p: Poset, labeling) -> bool:
    vals = require_bijective(p, labeling)
    return all(vals[i] < vals[j] for i in range(len(p)) for j in p.above[i])


def check_nmu(p: Poset, labeling) -> bool:
    """True iff column sorting fixes RC(labeling) and row sorting fixes CR(labeling)."""
    return plan(p).nmu_holds(p.values(labeling))


@dataclass(frozen=True)
class NmuReport:
    checked: int
    exhaustive: bool
    violation: Optional[tuple[int, ...]]

    @property
    def ok(self) -> bool:
        return self.violation is None


def nmu_sweep(p: Poset, workers: int | None = 1) -> NmuReport:
    """Check the non-messing-up property on every bijective labeling."""
    parts = _parallel.sweep(plan(p), "sweep_nmu", workers)
    checked = sum(c for c, _ in parts)
    violation = next((v for _, v in parts if v is not None), None)
    return NmuReport(checked, True, violation)


def nmu_sample(p: Poset, samples: int, seed: int = 0) -> NmuReport:
    rng = random.Random(seed)
    pl = plan(p)
    lab = list(range(1, len(p) + 1))
    for done in range(1, samples + 1):
        rng.shuffle(lab)
        if not pl.nmu_holds(lab):
            return NmuReport(done, False, tuple(lab))
    return NmuReport(samples, False, None)
