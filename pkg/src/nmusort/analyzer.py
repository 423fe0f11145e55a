"""Corner-sets, the bad-pattern test for sort-invariance, and its companions.

A labeling is sort-invariant when RC and CR agree on it. On a transverse
gridwork this happens exactly when no corner-set is bad, which
``predict_sort_invariant`` decides by pattern avoidance and
``direct_sort_invariant`` decides by running both sorts.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import _parallel, kernels
from .poset import (
    CylinderSpec,
    LabelingError,
    Poset,
    PosetError,
    build_grid_convex,
    cylinder_spec,
)
from .sorting import cr, plan, rc, require_bijective


@dataclass(frozen=True)
class CornerSet:
    """The diamond through ``x`` and ``y``.

    ``w`` is the meet of x's row with y's column and ``z`` the meet of x's
    column with y's row; either may be absent. An empty corner-set (x and y
    share a row or column) has ``members == frozenset()``.
    """

    x: str
    y: str
    w: Optional[str] = None
    z: Optional[str] = None
    empty: bool = False

    @property
    def members(self) -> frozenset[str]:
        if self.empty:
            return frozenset()
        return frozenset(m for m in (self.x, self.y, self.w, self.z) if m is not None)

    def __len__(self):
        return len(self.members)

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "w": self.w, "z": self.z}


@dataclass(frozen=True)
class BadnessVerdict:
    cornerset: CornerSet
    bad: bool
    witness: Optional[str] = None
    labels: Optional[dict] = None

    def to_json(self) -> dict:
        out = self.cornerset.to_json()
        out.update({"bad": self.bad, "witness": self.witness, "labels": self.labels})
        return out


def _require_transverse(p: Poset):
    if not p.transverse:
        raise PosetError("corner-sets need a transverse gridwork; use generalized_bad")


def _meet(p: Poset, row: int, col: int) -> Optional[int]:
    shared = set(p.rows[row]).intersection(p.columns[col])
    if len(shared) > 1:
        raise PosetError("row and column meet more than once")
    return next(iter(shared), None)


def _corner_indices(p: Poset, i: int, j: int):
    """(w, z) indices for the pair, or None when the corner-set is empty."""
    ri, rj = p.row_index(i), p.row_index(j)
    ci, cj = p.column_index(i), p.column_index(j)
    if ri == rj or ci == cj:
        return None
    return _meet(p, ri, cj), _meet(p, rj, ci)


def corner_set(p: Poset, x: str, y: str) -> CornerSet:
    _require_transverse(p)
    if x == y:
        raise PosetError("a corner-set needs two distinct elements")
    i, j = p.index[x], p.index[y]
    found = _corner_indices(p, i, j)
    if found is None:
        return CornerSet(x, y, empty=True)
    w, z = found
    return CornerSet(x, y,
                     None if w is None else p.ids[w],
                     None if z is None else p.ids[z])


def _third_mode(p: Poset, i: int, j: int, t: int) -> int:
    if p.lt_index(i, t) and p.lt_index(j, t):
        return kernels.THIRD_ABOVE
    if p.lt_index(t, i) and p.lt_index(t, j):
        return kernels.THIRD_BELOW
    raise PosetError(
        f"three-element corner-set {{{p.ids[i]}, {p.ids[j]}, {p.ids[t]}}} has its third "
        "corner neither above nor below both others")


def classify(p: Poset, labeling, cs: CornerSet) -> BadnessVerdict:
    """Decide whether ``cs`` is bad for the labeling (strict comparisons).

    Four-corner sets are bad when x and y are labeled on the same side of
    both w and z; three-corner sets when x, y sit below (above) the third
    corner but are labeled above (below) it.
    """
    vals = p.values(labeling)
    if cs.empty or (cs.w is None and cs.z is None):
        return BadnessVerdict(cs, False)
    lab = {m: vals[p.index[m]] for m in sorted(cs.members)}
    lx, ly = lab[cs.x], lab[cs.y]
    if cs.w is not None and cs.z is not None:
        lw, lz = lab[cs.w], lab[cs.z]
        if min(lx, ly) > max(lw, lz):
            return BadnessVerdict(cs, True, "x,y above w,z", lab)
        if max(lx, ly) < min(lw, lz):
            return BadnessVerdict(cs, True, "x,y below w,z", lab)
        return BadnessVerdict(cs, False, labels=lab)
    third = cs.w if cs.w is not None else cs.z
    lt = lab[third]
    mode = _third_mode(p, p.index[cs.x], p.index[cs.y], p.index[third])
    if mode == kernels.THIRD_ABOVE and min(lx, ly) > lt:
        return BadnessVerdict(cs, True, "x,y < corner but labeled above it", lab)
    if mode == kernels.THIRD_BELOW and max(lx, ly) < lt:
        return BadnessVerdict(cs, True, "x,y > corner but labeled below it", lab)
    return BadnessVerdict(cs, False, labels=lab)


def _use_lifted(p: Poset, lifted: bool | None) -> bool:
    if lifted is None:
        return p.backing == "cylinder"
    if lifted and p.backing != "cylinder":
        raise PosetError("lifted corner-sets are defined for cylinder posets")
    return lifted


def _literal_table(p: Poset):
    _require_transverse(p)
    table = []
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            found = _corner_indices(p, i, j)
            if found is None:
                continue
            w, z = found
            if w is not None and z is not None:
                table.append((i, j, w, z, kernels.FOUR))
            elif w is not None or z is not None:
                t = w if w is not None else z
                table.append((i, j, t, -1, _third_mode(p, i, j, t)))
    return tuple(table)


def _cover_copies(p: Poset) -> int:
    # reach of a diamond through the central copy, in translates of the lift
    spec = cylinder_spec(p)
    side = -(-3 * len(p) // spec.n) + 1
    return 2 * side + 1


def _lifted_table(p: Poset):
    """Corner-sets of the universal cover through the central copy, projected.

    Each record comes from a genuine planar diamond, so its corners are
    the cylinder images of one consistent choice of lifts.
    """
    _require_transverse(p)
    u = unroll(p, _cover_copies(p))
    q = u.poset
    proj = [p.index[u.transfer[x]] for x in q.ids]
    center = {q.index[x] for x in u.center}
    seen = set()
    table = []
    for i, j, w, z, mode in _literal_table(q):
        if i not in center and j not in center:
            continue
        x, y = sorted((proj[i], proj[j]))
        if mode == kernels.FOUR:
            a, b = sorted((proj[w], proj[z]))
            rec = (x, y, a, b, mode)
        else:
            rec = (x, y, proj[w], -1, mode)
        if rec not in seen:
            seen.add(rec)
            table.append(rec)
    return tuple(sorted(table))


def corner_table(p: Poset, lifted: bool | None = None) -> tuple[tuple[int, int, int, int, int], ...]:
    """Kernel records ``(x, y, w, z, mode)`` for every corner-set of size > 2.

    On cylinder posets the default (``lifted=None``) takes corner-sets on
    the universal cover; ``lifted=False`` gives the literal meets of rows
    and columns on the cylinder itself. Elsewhere the two coincide.
    """
    key = ("corners", _use_lifted(p, lifted))
    if key not in p._cache:
        p._cache[key] = _lifted_table(p) if key[1] else _literal_table(p)
    return p._cache[key]


def _record_to_cornerset(p: Poset, rec) -> CornerSet:
    i, j, w, z, _ = rec
    return CornerSet(p.ids[i], p.ids[j], p.ids[w], None if z < 0 else p.ids[z])


def corner_sets(p: Poset, lifted: bool | None = None) -> list[CornerSet]:
    """All corner-sets with more than two members, in pair order."""
    return [_record_to_cornerset(p, rec) for rec in corner_table(p, lifted)]


def analysis_plan(p: Poset, lifted: bool | None = None) -> kernels.Plan:
    key = ("analysis_plan", _use_lifted(p, lifted))
    if key not in p._cache:
        p._cache[key] = kernels.Plan(len(p), p.rows, p.columns, corner_table(p, lifted))
    return p._cache[key]


def find_bad_corner(p: Poset, labeling, lifted: bool | None = None) -> Optional[BadnessVerdict]:
    """First bad corner-set in pair order, or None."""
    vals = p.values(labeling)
    pos = analysis_plan(p, lifted).first_bad(vals)
    if pos < 0:
        return None
    return classify(p, vals, _record_to_cornerset(p, corner_table(p, lifted)[pos]))


def bad_corner_sets(p: Poset, labeling, lifted: bool | None = None) -> list[BadnessVerdict]:
    vals = p.values(labeling)
    return [v for v in (classify(p, vals, cs) for cs in corner_sets(p, lifted)) if v.bad]


def predict_sort_invariant(p: Poset, labeling, lifted: bool | None = None) -> bool:
    """Pattern-avoidance decision: no corner-set is bad."""
    return analysis_plan(p, lifted).first_bad(p.values(labeling)) < 0


def direct_sort_invariant(p: Poset, labeling) -> bool:
    """Oracle: RC and CR agree element by element."""
    vals = p.values(labeling)
    return rc(p, vals) == cr(p, vals)


@dataclass(frozen=True)
class InvarianceSweep:
    total: int
    direct: int
    predicted: int
    mismatch: Optional[tuple[int, ...]]
    exhaustive: bool

    @property
    def agree(self) -> bool:
        return self.mismatch is None


def invariance_sweep(p: Poset, workers: int | None = 1,
                     lifted: bool | None = None) -> InvarianceSweep:
    """Compare predictor and oracle on every bijective labeling."""
    parts = _parallel.sweep(analysis_plan(p, lifted), "sweep_invariance", workers)
    mismatch = next((m for *_, m in parts if m is not None), None)
    return InvarianceSweep(sum(t for t, *_ in parts), sum(d for _, d, *_ in parts),
                           sum(q for _, _, q, _ in parts), mismatch, True)


def invariance_sample(p: Poset, samples: int, seed: int = 0,
                      lifted: bool | None = None) -> InvarianceSweep:
    rng = random.Random(seed)
    pl = analysis_plan(p, lifted)
    lab = list(range(1, len(p) + 1))
    direct = predicted = 0
    mismatch = None
    for _ in range(samples):
        rng.shuffle(lab)
        d, q = pl.invariance(lab)
        direct += d
        predicted += q
        if d != q and mismatch is None:
            mismatch = tuple(lab)
    return InvarianceSweep(samples, direct, predicted, mismatch, False)


# two-valued machinery


def threshold(labeling, k: int) -> tuple[int, ...]:
    """Replace labels ``<= k`` by 1 and the rest by 2."""
    return tuple(1 if v <= k else 2 for v in labeling)


def shape_of_ones(p: Poset, labeling) -> frozenset[str]:
    vals = p.values(labeling)
    return frozenset(x for x, v in zip(p.ids, vals) if v == 1)


def _two_valued(vals):
    if not set(vals) <= {1, 2}:
        raise LabelingError("expected a labeling by 1s and 2s")


def column_row_sets(p: Poset, labeling) -> dict[int, frozenset[int]]:
    """For each grid column ``j``, the set of rows ``i`` holding a 1."""
    if p.backing != "grid":
        raise PosetError("the hierarchy condition is stated for grids")
    vals = p.values(labeling)
    _two_valued(vals)
    out = {j: set() for j in range(1, p.params["c"] + 1)}
    for (i, j), v in zip(p.coords, vals):
        if v == 1:
            out[j].add(i)
    return {j: frozenset(s) for j, s in out.items()}


def hierarchy_holds(p: Poset, labeling, column_order: Sequence[int] | None = None) -> bool:
    """Nested row-sets when columns are indexed by increasing count of 1s.

    With ``column_order`` (grid column numbers listed as c1, c2, ...) that
    particular indexing is checked, including that counts never decrease.
    Without it the check is whether some admissible indexing works, which
    amounts to the row-sets being pairwise comparable.
    """
    sets = column_row_sets(p, labeling)
    if column_order is None:
        column_order = sorted(sets, key=lambda j: len(sets[j]))
    else:
        if sorted(column_order) != sorted(sets):
            raise PosetError("column_order must list every grid column once")
        counts = [len(sets[j]) for j in column_order]
        if counts != sorted(counts):
            return False
    chain = [sets[j] for j in column_order]
    return all(a <= b for a, b in zip(chain, chain[1:]))


# non-transverse generalization


def find_generalized_bad(p: Poset, labeling) -> Optional[dict]:
    """Search for a generalized bad corner-set; returns a witness or None.

    Works on any gridwork. For rows ``R1 != R2`` and columns ``C1 != C2``
    the four meets ``R1&C1, R2&C2, R1&C2, R2&C1`` must all be nonempty, and
    some choice of one label from each must put the first two strictly on
    the same side of the last two.
    """
    vals = p.values(labeling)
    meets = [[set(r).intersection(c) for c in p.columns] for r in p.rows]
    nr, nc = len(p.rows), len(p.columns)
    for r1 in range(nr):
        for r2 in range(nr):
            if r1 == r2:
                continue
            for c1 in range(nc):
                for c2 in range(nc):
                    if c1 == c2:
                        continue
                    xs, ys, us, vs = meets[r1][c1], meets[r2][c2], meets[r1][c2], meets[r2][c1]
                    if not (xs and ys and us and vs):
                        continue
                    lx = [vals[i] for i in xs]
                    ly = [vals[i] for i in ys]
                    lu = [vals[i] for i in us]
                    lv = [vals[i] for i in vs]
                    if min(max(lx), max(ly)) > max(min(lu), min(lv)):
                        side = "above"
                    elif max(min(lx), min(ly)) < min(max(lu), max(lv)):
                        side = "below"
                    else:
                        continue
                    ids = p.ids
                    return {
                        "rows": [r1, r2], "columns": [c1, c2], "side": side,
                        "x": sorted(ids[i] for i in xs), "y": sorted(ids[i] for i in ys),
                        "u": sorted(ids[i] for i in us), "v": sorted(ids[i] for i in vs),
                    }
    return None


def generalized_bad(p: Poset, labeling) -> bool:
    return find_generalized_bad(p, labeling) is not None


# transfer constructions


def extend_convex(big: Poset, sub: Poset, labeling) -> tuple[int, ...]:
    """Extend a labeling of a convex piece of a grid to the whole grid.

    Elements outside ``sub`` that lie below some element of ``sub`` get a
    label strictly below every label of ``sub``; all other outside elements
    get one strictly above.
    """
    if big.backing != "grid":
        raise PosetError("extend_convex needs a grid as the ambient poset")
    if sub.coords is None:
        raise PosetError("the sub-poset must carry grid coordinates")
    vals = sub.values(labeling)
    where = {x: i for i, x in enumerate(big.coords)}
    try:
        inside = {where[x]: v for x, v in zip(sub.coords, vals)}
    except KeyError:
        raise PosetError("sub-poset is not contained in the grid") from None
    for i in inside:
        for j in inside:
            for m in big.above[i]:
                if m not in inside and j in big.above[m]:
                    raise PosetError("sub-poset is not convex in the grid")
    lo, hi = min(vals) - 1, max(vals) + 1
    out = []
    for i in range(len(big)):
        if i in inside:
            out.append(inside[i])
        elif any(j in big.above[i] for j in inside):
            out.append(lo)
        else:
            out.append(hi)
    return tuple(out)


@dataclass(frozen=True)
class Unrolled:
    """A planar piece of the universal cover of a cylinder-convex poset."""

    poset: Poset
    transfer: dict              # planar id -> cylinder id
    center: frozenset           # planar ids of the t=0 copy
    copies: int

    def lift_labeling(self, cylinder: Poset, labeling) -> tuple[int, ...]:
        vals = cylinder.as_dict(cylinder.values(labeling))
        return self.poset.values({x: vals[self.transfer[x]] for x in self.poset.ids})


def _lift(p: Poset, spec: CylinderSpec):
    """Planar coordinates for every element, following cover steps."""
    coords = p.coords
    lift = {}
    steps = {}
    for i, j in p.cover_pairs:
        steps.setdefault(i, []).append(j)
        steps.setdefault(j, []).append(i)
    for start in range(len(p)):
        if start in lift:
            continue
        lift[start] = coords[start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in steps.get(i, ()):
                if j in lift:
                    continue
                for da, db in ((1, 0), (0, 1), (-1, 0), (0, -1)):
                    cand = (lift[i][0] + da, lift[i][1] + db)
                    if spec.canonical(cand) == coords[j]:
                        lift[j] = cand
                        stack.append(j)
                        break
                else:
                    raise PosetError(f"cover {p.ids[i]} - {p.ids[j]} is not a unit step")
    return [lift[i] for i in range(len(p))]


def crossings(p: Poset) -> int:
    """Number of row/column steps that cross the identification line."""
    spec = cylinder_spec(p)
    count = 0
    for chain in p.rows + p.columns:
        for a, b in zip(chain, chain[1:]):
            x, y = p.coords[a], p.coords[b]
            if abs(x[0] - y[0]) + abs(x[1] - y[1]) != 1:
                count += 1
    return count


def default_copies(p: Poset) -> int:
    return 2 * crossings(p) + 3


def unroll(p: Poset, copies: int | None = None) -> Unrolled:
    """Glue translated copies of a cylinder-convex poset into the plane.

    The result is every preimage point inside the bounding box of
    ``copies`` consecutive translates of a connected lift, so it is a convex
    subset of the plane whatever the copy count.
    """
    spec = cylinder_spec(p)
    copies = default_copies(p) if copies is None else copies
    if copies < 1:
        raise PosetError("copies must be positive")
    lift = _lift(p, spec)
    ts = range(-((copies - 1) // 2), copies // 2 + 1)
    pts = [spec.shift(x, t) for x in lift for t in ts]
    alo, ahi = min(a for a, _ in pts), max(a for a, _ in pts)
    blo, bhi = min(b for _, b in pts), max(b for _, b in pts)
    span = (ahi - alo) // spec.k + (bhi - blo) // (spec.n - spec.k) + 2
    cells = {}
    center = set()
    for i, x in enumerate(lift):
        for t in range(min(ts) - span, max(ts) + span + 1):
            a, b = spec.shift(x, t)
            if alo <= a <= ahi and blo <= b <= bhi:
                cells[(a, b)] = p.ids[i]
        center.add(x)
    planar = build_grid_convex(cells)
    transfer = {f"{a},{b}": cyl for (a, b), cyl in cells.items()}
    return Unrolled(planar, transfer, frozenset(f"{a},{b}" for a, b in center), copies)


def unrolled_sorts(p: Poset, labeling, copies: int | None = None):
    """RC and CR on the unrolled poset, read back on the central copy.

    Returns ``(rc_labels, cr_labels)`` as dicts keyed by cylinder id.
    """
    u = unroll(p, copies)
    lifted = u.lift_labeling(p, labeling)
    a = u.poset.as_dict(rc(u.poset, lifted))
    b = u.poset.as_dict(cr(u.poset, lifted))
    return ({u.transfer[x]: a[x] for x in u.center},
            {u.transfer[x]: b[x] for x in u.center})


def stable_unrolled_sorts(p: Poset, labeling, max_copies: int = 41):
    """Grow the copy count from the default until the central labels repeat."""
    copies = default_copies(p)
    prev = unrolled_sorts(p, labeling, copies)
    while copies + 2 <= max_copies:
        copies += 2
        cur = unrolled_sorts(p, labeling, copies)
        if cur == prev:
            return cur, copies - 2
        prev = cur
    raise PosetError(f"central labels did not stabilize within {max_copies} copies")


# export


def to_dot(p: Poset, labeling=None, bad: Sequence[BadnessVerdict] = ()) -> str:
    """Graphviz text: rows dashed, columns solid, bad corner members red."""
    vals = None if labeling is None else p.values(labeling)
    hot = set()
    for v in bad:
        hot |= v.cornerset.members
    lines = ["digraph poset {", "  rankdir=BT;"]
    for i, x in enumerate(p.ids):
        text = x if vals is None else f"{x}\\n{vals[i]}"
        style = ', color=red, fontcolor=red' if x in hot else ""
        lines.append(f'  "{x}" [label="{text}"{style}];')
    for label, chains in (("row", p.rows), ("column", p.columns)):
        style = "dashed" if label == "row" else "solid"
        for chain in chains:
            for a, b in zip(chain, chain[1:]):
                lines.append(f'  "{p.ids[a]}" -> "{p.ids[b]}" [style={style}, arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def check_report(p: Poset, labeling, lifted: bool | None = None) -> dict:
    """Predicted and direct verdicts with all bad corner-sets (JSON-ready)."""
    vals = require_bijective(p, labeling)
    direct = direct_sort_invariant(p, vals)
    out = {"schema": 1, "elements": len(p), "transverse": p.transverse,
           "direct_sort_invariant": direct}
    if p.transverse:
        bad = bad_corner_sets(p, vals, lifted)
        out["predicted_sort_invariant"] = not bad
        out["bad_corner_sets"] = [v.to_json() for v in bad]
    else:
        out["predicted_sort_invariant"] = None
        out["generalized_bad"] = find_generalized_bad(p, vals)
    out["rc"] = p.as_dict(rc(p, vals))
    out["cr"] = p.as_dict(cr(p, vals))
    return out
