"""Pure-Python elimination kernel (fallback for the compiled `_kernels` module).

Both backends run the same arithmetic in the same order, so their outputs are
identical, not merely equivalent.
"""

from heapq import heappop, heappush


def _reduce_row(row, pivot_of_col, prows, p):
    heap = sorted(row)
    while heap:
        c = heappop(heap)
        v = row.get(c)
        if not v:
            continue
        r = pivot_of_col.get(c)
        if r is None:
            continue
        for col, val in prows[r].items():
            if col in row:
                nv = row[col] - v * val
                if p:
                    nv %= p
                if nv:
                    row[col] = nv
                else:
                    del row[col]
            else:
                nv = -v * val
                if p:
                    nv %= p
                row[col] = nv
                heappush(heap, col)
    return row


def echelon(rows, ncols, p, reduced):
    """Echelon form of sparse rows.

    rows: iterable of {col: value}; p = 0 for rational values, else a prime
    with int values in [0, p).  Returns (pivots, prows) sorted by pivot
    column, each row normalised to 1 at its pivot.  With reduced=True the
    result is the canonical reduced row-echelon form.
    """
    pivot_of_col = {}
    prows = []
    for src in rows:
        row = {c: v for c, v in src.items() if v}
        if p:
            row = {c: v % p for c, v in row.items() if v % p}
        if not row:
            continue
        _reduce_row(row, pivot_of_col, prows, p)
        if not row:
            continue
        lead = min(row)
        lv = row[lead]
        if p:
            inv = pow(lv, -1, p)
            row = {c: (v * inv) % p for c, v in row.items()}
        elif lv != 1:
            inv = 1 / lv
            row = {c: v * inv for c, v in row.items()}
        pivot_of_col[lead] = len(prows)
        prows.append(row)

    order = sorted(pivot_of_col)
    if reduced:
        for c in reversed(order):
            r = pivot_of_col[c]
            row = prows[r]
            for j in sorted(k for k in row if k > c and k in pivot_of_col):
                v = row.get(j)
                if not v:
                    continue
                for col, val in prows[pivot_of_col[j]].items():
                    nv = row.get(col, 0) - v * val
                    if p:
                        nv %= p
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
    return order, [prows[pivot_of_col[c]] for c in order]
