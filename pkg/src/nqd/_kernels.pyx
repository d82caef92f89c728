# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernel.

Same contract and same operation order as nqd._kernels_py.echelon.  Columns
still to be visited are kept in a C binary heap; the prime-field path works on
a dense C work row, the rational path on a dense list of Python objects.
"""

from libc.stdlib cimport malloc, realloc, free
from cpython.array cimport array, clone

cdef array _LL = array("q", [])
cdef array _SS = array("q", [])


cdef struct Heap:
    Py_ssize_t* data
    Py_ssize_t size
    Py_ssize_t cap


cdef int heap_init(Heap* h, Py_ssize_t cap) except -1:
    if cap < 16:
        cap = 16
    h.data = <Py_ssize_t*>malloc(cap * sizeof(Py_ssize_t))
    if h.data == NULL:
        raise MemoryError()
    h.size = 0
    h.cap = cap
    return 0


cdef int heap_push(Heap* h, Py_ssize_t x) except -1:
    cdef Py_ssize_t i, parent
    cdef Py_ssize_t* nd
    if h.size == h.cap:
        nd = <Py_ssize_t*>realloc(h.data, 2 * h.cap * sizeof(Py_ssize_t))
        if nd == NULL:
            raise MemoryError()
        h.data = nd
        h.cap *= 2
    i = h.size
    h.size += 1
    while i > 0:
        parent = (i - 1) >> 1
        if h.data[parent] <= x:
            break
        h.data[i] = h.data[parent]
        i = parent
    h.data[i] = x
    return 0


cdef Py_ssize_t heap_pop(Heap* h) nogil:
    cdef Py_ssize_t top = h.data[0]
    cdef Py_ssize_t x, i, child
    h.size -= 1
    if h.size == 0:
        return top
    x = h.data[h.size]
    i = 0
    while True:
        child = 2 * i + 1
        if child >= h.size:
            break
        if child + 1 < h.size and h.data[child + 1] < h.data[child]:
            child += 1
        if h.data[child] >= x:
            break
        h.data[i] = h.data[child]
        i = child
    h.data[i] = x
    return top


cdef inline long long _mod(long long a, long long p) nogil:
    a = a % p
    if a < 0:
        a += p
    return a


def _echelon_mod(list rows, Py_ssize_t ncols, long long p, bint reduced):
    cdef array work_a = clone(_LL, ncols, True)
    cdef long long[:] work = work_a
    cdef array piv_a = clone(_SS, ncols, False)
    cdef long long[:] pivot_of_col = piv_a
    cdef list pcols = []
    cdef list pvals = []
    cdef list kept
    cdef Py_ssize_t c, k, n, r, j, last
    cdef long long v, inv
    cdef long long[:] cols
    cdef long long[:] vals
    cdef array ca, va
    cdef dict src
    cdef Heap heap

    for c in range(ncols):
        pivot_of_col[c] = -1
    heap_init(&heap, 64)
    try:
        for src in rows:
            if not src:
                continue
            for key, val in sorted(src.items()):
                v = _mod(<long long>val, p)
                if v:
                    work[<Py_ssize_t>key] = v
                    heap_push(&heap, <Py_ssize_t>key)
            kept = []
            last = -1
            while heap.size:
                c = heap_pop(&heap)
                if c == last:
                    continue
                last = c
                v = work[c]
                if v == 0:
                    continue
                r = pivot_of_col[c]
                if r < 0:
                    kept.append(c)
                    continue
                cols = pcols[r]
                vals = pvals[r]
                n = cols.shape[0]
                for k in range(n):
                    j = <Py_ssize_t>cols[k]
                    if work[j] == 0:
                        if j != c:
                            heap_push(&heap, j)
                        work[j] = _mod(-v * vals[k], p)
                    else:
                        work[j] = _mod(work[j] - v * vals[k], p)
            n = 0
            for c in kept:
                if work[c] != 0:
                    n += 1
            if n == 0:
                continue
            ca = clone(_LL, n, False)
            va = clone(_LL, n, False)
            cols = ca
            vals = va
            k = 0
            inv = -1
            for c in kept:
                if work[c] != 0:
                    if inv < 0:
                        inv = pow(int(work[c]), -1, int(p))
                    cols[k] = c
                    vals[k] = _mod(work[c] * inv, p)
                    work[c] = 0
                    k += 1
            pivot_of_col[<Py_ssize_t>cols[0]] = len(pcols)
            pcols.append(ca)
            pvals.append(va)
    finally:
        free(heap.data)

    order = [c for c in range(ncols) if pivot_of_col[c] >= 0]

    if reduced:
        for idx in range(len(order) - 1, -1, -1):
            c = order[idx]
            r = pivot_of_col[c]
            cols = pcols[r]
            vals = pvals[r]
            touched = set()
            targets = []
            for k in range(cols.shape[0]):
                j = <Py_ssize_t>cols[k]
                work[j] = vals[k]
                touched.add(j)
                if j > c and pivot_of_col[j] >= 0:
                    targets.append(j)
            for j in targets:
                v = work[j]
                if v == 0:
                    continue
                cols = pcols[pivot_of_col[j]]
                vals = pvals[pivot_of_col[j]]
                for k in range(cols.shape[0]):
                    touched.add(<Py_ssize_t>cols[k])
                    work[<Py_ssize_t>cols[k]] = _mod(work[<Py_ssize_t>cols[k]] - v * vals[k], p)
            keys = sorted(touched)
            n = 0
            for j in keys:
                if work[j] != 0:
                    n += 1
            ca = clone(_LL, n, False)
            va = clone(_LL, n, False)
            cols = ca
            vals = va
            k = 0
            for j in keys:
                if work[j] != 0:
                    cols[k] = j
                    vals[k] = work[j]
                    k += 1
                work[j] = 0
            pcols[r] = ca
            pvals[r] = va

    out = []
    for c in order:
        r = pivot_of_col[c]
        cols = pcols[r]
        vals = pvals[r]
        out.append({int(cols[k]): int(vals[k]) for k in range(cols.shape[0])})
    return order, out


def _echelon_obj(list rows, Py_ssize_t ncols, bint reduced):
    cdef list work = [0] * ncols
    cdef array piv_a = clone(_SS, ncols, False)
    cdef long long[:] pivot_of_col = piv_a
    cdef list prows = []
    cdef list kept
    cdef dict prow, row, src
    cdef Py_ssize_t c, r, j, last
    cdef object v, w, inv
    cdef Heap heap

    for c in range(ncols):
        pivot_of_col[c] = -1
    heap_init(&heap, 64)
    try:
        for src in rows:
            if not src:
                continue
            for key, val in sorted(src.items()):
                if val:
                    work[<Py_ssize_t>key] = val
                    heap_push(&heap, <Py_ssize_t>key)
            kept = []
            last = -1
            while heap.size:
                c = heap_pop(&heap)
                if c == last:
                    continue
                last = c
                v = work[c]
                if not v:
                    continue
                r = pivot_of_col[c]
                if r < 0:
                    kept.append(c)
                    continue
                prow = <dict>prows[r]
                for key, val in prow.items():
                    j = key
                    w = work[j]
                    if not w:
                        if j != c:
                            heap_push(&heap, j)
                        work[j] = -v * val
                    else:
                        work[j] = w - v * val
            row = {}
            inv = None
            for c in kept:
                w = work[c]
                if w:
                    if inv is None:
                        inv = 1 if w == 1 else 1 / w
                    row[c] = w if inv == 1 else w * inv
                work[c] = 0
            if not row:
                continue
            pivot_of_col[kept_first(row)] = len(prows)
            prows.append(row)
    finally:
        free(heap.data)

    order = [c for c in range(ncols) if pivot_of_col[c] >= 0]

    if reduced:
        for idx in range(len(order) - 1, -1, -1):
            c = order[idx]
            row = <dict>prows[pivot_of_col[c]]
            for j in sorted([k for k in row if k > c and pivot_of_col[<Py_ssize_t>k] >= 0]):
                v = row.get(j)
                if not v:
                    continue
                for key, val in (<dict>prows[pivot_of_col[j]]).items():
                    w = row.get(key, 0) - v * val
                    if w:
                        row[key] = w
                    else:
                        row.pop(key, None)
    return order, [prows[pivot_of_col[c]] for c in order]


cdef inline Py_ssize_t kept_first(dict row):
    return min(row)


def echelon(rows, Py_ssize_t ncols, long long p, bint reduced):
    """See nqd._kernels_py.echelon."""
    if not isinstance(rows, list):
        rows = list(rows)
    if p:
        return _echelon_mod(rows, ncols, p, reduced)
    return _echelon_obj(rows, ncols, reduced)
