"""Pure-Python kernels.

Reference implementation of the hot loops; the compiled ``_ckernels``
module exposes the same ``Plan`` class and must agree with this one on
every input.
"""
from itertools import permutations

BACKEND = "python"

FOUR = 0
THIRD_ABOVE = 1
THIRD_BELOW = 2


def _sort_chains(values, chains):
    out = list(values)
    for chain in chains:
        labels = sorted(out[i] for i in chain)
        for i, v in zip(chain, labels):
            out[i] = v
    return out


def _labelings(n, first):
    if first:
        rest = [v for v in range(1, n + 1) if v != first]
        for tail in permutations(rest):
            yield (first,) + tail
    else:
        yield from permutations(range(1, n + 1))


class Plan:
    """Index-level view of a gridwork poset.

    ``rows`` and ``cols`` are sequences of index chains (chain-minimum
    first). ``corners`` holds ``(x, y, w, z, mode)`` records; for the
    three-element modes the third corner sits in ``w`` and ``z`` is -1.
    """

    def __init__(self, n, rows, cols, corners=()):
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)
        self.cols = tuple(tuple(c) for c in cols)
        self.corners = tuple(tuple(c) for c in corners)

    def _check(self, values):
        if len(values) != self.n:
            raise ValueError(f"labeling has {len(values)} entries, expected {self.n}")
        return values

    def sort_rows(self, values):
        return _sort_chains(self._check(values), self.rows)

    def sort_columns(self, values):
        return _sort_chains(self._check(values), self.cols)

    def rc(self, values):
        return _sort_chains(_sort_chains(self._check(values), self.cols), self.rows)

    def cr(self, values):
        return _sort_chains(_sort_chains(self._check(values), self.rows), self.cols)

    def first_bad(self, values):
        self._check(values)
        for pos, (x, y, w, z, mode) in enumerate(self.corners):
            lx, ly, lw = values[x], values[y], values[w]
            if mode == FOUR:
                lz = values[z]
                if min(lx, ly) > max(lw, lz) or max(lx, ly) < min(lw, lz):
                    return pos
            elif mode == THIRD_ABOVE:
                if min(lx, ly) > lw:
                    return pos
            elif max(lx, ly) < lw:
                return pos
        return -1

    def nmu_holds(self, values):
        a = self.rc(values)
        if _sort_chains(a, self.cols) != a:
            return False
        b = self.cr(values)
        return _sort_chains(b, self.rows) == b

    def invariance(self, values):
        """Return ``(rc == cr, no bad corner-set)`` for one labeling."""
        return self.rc(values) == self.cr(values), self.first_bad(values) < 0

    def sweep_nmu(self, first=0):
        checked = 0
        for lab in _labelings(self.n, first):
            checked += 1
            if not self.nmu_holds(lab):
                return checked, tuple(lab)
        return checked, None

    def sweep_invariance(self, first=0):
        total = direct = predicted = 0
        mismatch = None
        for lab in _labelings(self.n, first):
            total += 1
            d, p = self.invariance(lab)
            direct += d
            predicted += p
            if d != p and mismatch is None:
                mismatch = tuple(lab)
        return total, direct, predicted, mismatch

    def tally(self, first=0):
        rc_counts = {}
        cr_counts = {}
        for lab in _labelings(self.n, first):
            a = tuple(self.rc(lab))
            b = tuple(self.cr(lab))
            rc_counts[a] = rc_counts.get(a, 0) + 1
            cr_counts[b] = cr_counts.get(b, 0) + 1
        return rc_counts, cr_counts
