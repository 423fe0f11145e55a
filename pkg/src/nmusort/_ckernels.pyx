# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: same ``Plan`` surface as ``_pykernels``."""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

BACKEND = "cython"

cdef enum:
    FOUR = 0
    THIRD_ABOVE = 1
    THIRD_BELOW = 2

ctypedef long long lab_t


cdef struct Chains:
    int count
    int *start
    int *idx


cdef int _load(chains, Chains *out) except -1:
    cdef int total = 0, k = 0, c
    chains = [tuple(ch) for ch in chains]
    for ch in chains:
        total += len(ch)
    out.count = len(chains)
    out.start = <int *> malloc((out.count + 1) * sizeof(int))
    out.idx = <int *> malloc((total + 1) * sizeof(int))
    if out.start == NULL or out.idx == NULL:
        raise MemoryError()
    for c in range(out.count):
        out.start[c] = k
        for i in chains[c]:
            out.idx[k] = i
            k += 1
    out.start[out.count] = k
    return 0


cdef void _release(Chains *ch):
    free(ch.start)
    free(ch.idx)


cdef void _sort_into(const lab_t *src, lab_t *dst, const Chains *ch, int n,
                     lab_t *tmp) noexcept nogil:
    cdef int c, a, b, i, j, m
    cdef lab_t key
    memcpy(dst, src, n * sizeof(lab_t))
    for c in range(ch.count):
        a = ch.start[c]
        b = ch.start[c + 1]
        m = b - a
        for i in range(m):
            tmp[i] = src[ch.idx[a + i]]
        for i in range(1, m):
            key = tmp[i]
            j = i - 1
            while j >= 0 and tmp[j] > key:
                tmp[j + 1] = tmp[j]
                j -= 1
            tmp[j + 1] = key
        for i in range(m):
            dst[ch.idx[a + i]] = tmp[i]


cdef bint _same(const lab_t *a, const lab_t *b, int n) noexcept nogil:
    cdef int i
    for i in range(n):
        if a[i] != b[i]:
            return False
    return True


cdef inline lab_t _min(lab_t a, lab_t b) noexcept nogil:
    return a if a < b else b


cdef inline lab_t _max(lab_t a, lab_t b) noexcept nogil:
    return a if a > b else b


cdef bint _next_perm(lab_t *v, int lo, int n) noexcept nogil:
    # lexicographic successor of v[lo:n]; False once exhausted
    cdef int i = n - 2, j
    cdef lab_t t
    while i >= lo and v[i] >= v[i + 1]:
        i -= 1
    if i < lo:
        return False
    j = n - 1
    while v[j] <= v[i]:
        j -= 1
    t = v[i]; v[i] = v[j]; v[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = v[i]; v[i] = v[j]; v[j] = t
        i += 1
        j -= 1
    return True


cdef class Plan:
    """Index-level view of a gridwork poset backed by C arrays."""

    cdef readonly int n
    cdef readonly tuple rows, cols, corners
    cdef Chains _rows, _cols
    cdef int *_corner
    cdef int _ncorner
    cdef lab_t *_buf

    def __cinit__(self, int n, rows, cols, corners=()):
        self._corner = NULL
        self._buf = NULL
        self._rows.start = NULL
        self._rows.idx = NULL
        self._cols.start = NULL
        self._cols.idx = NULL

    def __init__(self, int n, rows, cols, corners=()):
        cdef int i, f
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)
        self.cols = tuple(tuple(c) for c in cols)
        self.corners = tuple(tuple(c) for c in corners)
        _load(self.rows, &self._rows)
        _load(self.cols, &self._cols)
        self._ncorner = len(self.corners)
        self._corner = <int *> malloc((5 * self._ncorner + 1) * sizeof(int))
        # six scratch vectors of length n, plus one for chain sorting
        self._buf = <lab_t *> malloc((7 * n + 1) * sizeof(lab_t))
        if self._corner == NULL or self._buf == NULL:
            raise MemoryError()
        for i, rec in enumerate(self.corners):
            for f in range(5):
                self._corner[5 * i + f] = rec[f]

    def __dealloc__(self):
        _release(&self._rows)
        _release(&self._cols)
        free(self._corner)
        free(self._buf)

    def __reduce__(self):
        return (Plan, (self.n, self.rows, self.cols, self.corners))

    cdef void _load_values(self, values, lab_t *dst) except *:
        cdef int i
        if len(values) != self.n:
            raise ValueError("labeling has %d entries, expected %d"
                             % (len(values), self.n))
        for i in range(self.n):
            dst[i] = values[i]

    cdef list _out(self, const lab_t *v):
        return [v[i] for i in range(self.n)]

    cdef int _first_bad(self, const lab_t *v) noexcept nogil:
        cdef int i
        cdef const int *c
        cdef lab_t lx, ly, lw, lz
        for i in range(self._ncorner):
            c = self._corner + 5 * i
            lx = v[c[0]]
            ly = v[c[1]]
            lw = v[c[2]]
            if c[4] == FOUR:
                lz = v[c[3]]
                if _min(lx, ly) > _max(lw, lz) or _max(lx, ly) < _min(lw, lz):
                    return i
            elif c[4] == THIRD_ABOVE:
                if _min(lx, ly) > lw:
                    return i
            elif _max(lx, ly) < lw:
                return i
        return -1

    cdef void _rc(self, const lab_t *v, lab_t *out, lab_t *scratch) noexcept nogil:
        cdef lab_t *tmp = self._buf + 6 * self.n
        _sort_into(v, scratch, &self._cols, self.n, tmp)
        _sort_into(scratch, out, &self._rows, self.n, tmp)

    cdef void _cr(self, const lab_t *v, lab_t *out, lab_t *scratch) noexcept nogil:
        cdef lab_t *tmp = self._buf + 6 * self.n
        _sort_into(v, scratch, &self._rows, self.n, tmp)
        _sort_into(scratch, out, &self._cols, self.n, tmp)

    def sort_rows(self, values):
        cdef lab_t *v = self._buf
        self._load_values(values, v)
        _sort_into(v, v + self.n, &self._rows, self.n, self._buf + 6 * self.n)
        return self._out(v + self.n)

    def sort_columns(self, values):
        cdef lab_t *v = self._buf
        self._load_values(values, v)
        _sort_into(v, v + self.n, &self._cols, self.n, self._buf + 6 * self.n)
        return self._out(v + self.n)

    def rc(self, values):
        cdef lab_t *v = self._buf
        self._load_values(values, v)
        self._rc(v, v + self.n, v + 2 * self.n)
        return self._out(v + self.n)

    def cr(self, values):
        cdef lab_t *v = self._buf
        self._load_values(values, v)
        self._cr(v, v + self.n, v + 2 * self.n)
        return self._out(v + self.n)

    def first_bad(self, values):
        self._load_values(values, self._buf)
        return self._first_bad(self._buf)

    cdef bint _nmu(self, const lab_t *v) noexcept nogil:
        cdef int n = self.n
        cdef lab_t *a = self._buf + n
        cdef lab_t *b = self._buf + 2 * n
        cdef lab_t *s = self._buf + 3 * n
        cdef lab_t *tmp = self._buf + 6 * n
        self._rc(v, a, s)
        _sort_into(a, b, &self._cols, n, tmp)
        if not _same(a, b, n):
            return False
        self._cr(v, a, s)
        _sort_into(a, b, &self._rows, n, tmp)
        return _same(a, b, n)

    cdef bint _direct(self, const lab_t *v) noexcept nogil:
        cdef int n = self.n
        cdef lab_t *a = self._buf + n
        cdef lab_t *b = self._buf + 2 * n
        cdef lab_t *s = self._buf + 3 * n
        self._rc(v, a, s)
        self._cr(v, b, s)
        return _same(a, b, n)

    def nmu_holds(self, values):
        self._load_values(values, self._buf)
        return bool(self._nmu(self._buf))

    def invariance(self, values):
        """Return ``(rc == cr, no bad corner-set)`` for one labeling."""
        self._load_values(values, self._buf)
        return bool(self._direct(self._buf)), self._first_bad(self._buf) < 0

    cdef int _start(self, lab_t *v, int first) except -1:
        cdef int i, k = 0
        if first:
            if first < 1 or first > self.n:
                raise ValueError("first label out of range")
            v[0] = first
            k = 1
        for i in range(1, self.n + 1):
            if i != first:
                v[k] = i
                k += 1
        return 1 if first else 0

    def sweep_nmu(self, int first=0):
        cdef lab_t *v = <lab_t *> malloc((self.n + 1) * sizeof(lab_t))
        cdef long long checked = 0
        cdef int lo
        cdef bint ok = True
        if v == NULL:
            raise MemoryError()
        try:
            lo = self._start(v, first)
            with nogil:
                while True:
                    checked += 1
                    if not self._nmu(v):
                        ok = False
                        break
                    if not _next_perm(v, lo, self.n):
                        break
            return checked, (None if ok else tuple(self._out(v)))
        finally:
            free(v)

    def sweep_invariance(self, int first=0):
        cdef lab_t *v = <lab_t *> malloc((self.n + 1) * sizeof(lab_t))
        cdef long long total = 0, direct = 0, predicted = 0
        cdef int lo
        cdef bint d, p, found = False
        mismatch = None
        if v == NULL:
            raise MemoryError()
        try:
            lo = self._start(v, first)
            while True:
                total += 1
                d = self._direct(v)
                p = self._first_bad(v) < 0
                direct += d
                predicted += p
                if d != p and not found:
                    found = True
                    mismatch = tuple(self._out(v))
                if not _next_perm(v, lo, self.n):
                    break
            return total, direct, predicted, mismatch
        finally:
            free(v)

    def tally(self, int first=0):
        cdef int n = self.n, i, lo
        cdef lab_t *v = <lab_t *> malloc((n + 1) * sizeof(lab_t))
        cdef lab_t *a = self._buf + n
        cdef lab_t *s = self._buf + 3 * n
        cdef unsigned long long key
        cdef unsigned long long base = n + 1
        cdef dict rc_keys = {}, cr_keys = {}
        if n > 15:
            raise ValueError("tally supports at most 15 elements")
        if v == NULL:
            raise MemoryError()
        try:
            lo = self._start(v, first)
            while True:
                self._rc(v, a, s)
                key = 0
                for i in range(n):
                    key = key * base + <unsigned long long> a[i]
                rc_keys[key] = rc_keys.get(key, 0) + 1
                self._cr(v, a, s)
                key = 0
                for i in range(n):
                    key = key * base + <unsigned long long> a[i]
                cr_keys[key] = cr_keys.get(key, 0) + 1
                if not _next_perm(v, lo, n):
                    break
        finally:
            free(v)
        return _decode(rc_keys, n), _decode(cr_keys, n)


cdef dict _decode(dict keys, int n):
    cdef dict out = {}
    base = n + 1
    for key, count in keys.items():
        digits = []
        for _ in range(n):
            key, d = divmod(key, base)
            digits.append(d)
        out[tuple(reversed(digits))] = count
    return out
