"""Exact dense matrices and canonical subspaces.

Subspaces are stored in reduced row-echelon form (pivot = leftmost nonzero
column), so two subspaces are equal exactly when their stored rows are equal.
Elimination runs through `nqd.kernels`, which picks the compiled backend when
it is available.
"""

from gmpy2 import mpq

from .field import QQ, Mod

_MPQ = type(mpq(0))
from . import kernels


class DimensionError(ValueError):
    pass


def _to_kernel(field, row):
    p = field.characteristic
    if p:
        return {c: (v.v if isinstance(v, Mod) else field(v).v) for c, v in row.items() if v}
    return {c: (v if type(v) is _MPQ else field(v)) for c, v in row.items() if v}


def _from_kernel(field, row):
    p = field.characteristic
    if p:
        return {c: Mod(v, p) for c, v in row.items()}
    return row


def sparse(vec):
    """Dense sequence or dict -> {index: nonzero value}."""
    if isinstance(vec, dict):
        return {c: v for c, v in vec.items() if v}
    return {i: v for i, v in enumerate(vec) if v}


def dense(row, n, field=QQ):
    out = [field.zero] * n
    for c, v in row.items():
        out[c] = v
    return tuple(out)


def echelon(rows, ncols, field=QQ, reduced=True):
    """Row-reduce sparse rows; returns (pivots, rows) with field-valued dicts."""
    krows = [_to_kernel(field, sparse(r)) for r in rows]
    pivots, out = kernels.echelon(krows, ncols, field.characteristic, reduced)
    return pivots, [_from_kernel(field, r) for r in out]


class Matrix:
    """Rectangular matrix with exact entries, stored as a tuple of row tuples."""

    def __init__(self, rows, ncols=None, field=QQ):
        rows = [tuple(field(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged matrix: expected %d columns" % ncols)
        self.field = field
        self.rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows, ncols, field=QQ):
        return cls([[0] * ncols for _ in range(nrows)], ncols, field)

    @classmethod
    def identity(cls, n, field=QQ):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, field)

    @classmethod
    def from_sparse(cls, rows, ncols, field=QQ):
        return cls([dense(r, ncols, field) for r in rows], ncols, field)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return "Matrix(%dx%d: [%s])" % (self.nrows, self.ncols, body)

    def transpose(self):
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)], self.nrows, self.field)

    T = property(transpose)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError("shape mismatch %s * %s" % (self.shape, other.shape))
            cols = other.transpose().rows
            zero = self.field.zero
            out = []
            for r in self.rows:
                out.append([sum((a * b for a, b in zip(r, c) if a and b), zero)
                            for c in cols])
            return Matrix(out, other.ncols, self.field)
        return self.apply(other)

    def apply(self, vec):
        if len(vec) != self.ncols:
            raise DimensionError("vector of length %d for %d columns" % (len(vec), self.ncols))
        zero = self.field.zero
        return tuple(sum((a * b for a, b in zip(r, vec) if a and b), zero) for r in self.rows)

    def sparse_rows(self):
        return [sparse(r) for r in self.rows]

    def rank(self):
        pivots, _ = echelon(self.sparse_rows(), self.ncols, self.field, reduced=False)
        return len(pivots)


def row_reduce(m):
    """Canonical reduced row-echelon form (zero rows dropped) and pivot columns."""
    pivots, rows = echelon(m.sparse_rows(), m.ncols, m.field)
    return Matrix.from_sparse(rows, m.ncols, m.field), pivots


def rank(m):
    return m.rank()


def _null_rows(pivots, rows, ncols, field):
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: field.one}
        for c, r in zip(pivots, rows):
            x = r.get(f)
            if x:
                v[c] = -x
        out.append(v)
    return out


class Subspace:
    """A subspace of field^ambient_dim in canonical reduced row-echelon form."""

    __slots__ = ("ambient_dim", "field", "pivots", "rows", "_pivot_index")

    def __init__(self, ambient_dim, vectors=(), field=QQ, _canonical=None):
        self.ambient_dim = ambient_dim
        self.field = field
        if _canonical is not None:
            self.pivots, self.rows = _canonical
        else:
            vecs = [sparse(v) for v in vectors]
            for v in vecs:
                if v and max(v) >= ambient_dim:
                    raise DimensionError("vector longer than ambient dimension %d" % ambient_dim)
            self.pivots, self.rows = echelon(vecs, ambient_dim, field)
        self._pivot_index = None

    @classmethod
    def zero(cls, n, field=QQ):
        return cls(n, (), field)

    @classmethod
    def full(cls, n, field=QQ):
        return cls(n, (), field, _canonical=(list(range(n)), [{i: field.one} for i in range(n)]))

    @property
    def dim(self):
        return len(self.pivots)

    def __len__(self):
        return self.dim

    @property
    def basis(self):
        return Matrix.from_sparse(self.rows, self.ambient_dim, self.field)

    def dense_rows(self):
        return [dense(r, self.ambient_dim, self.field) for r in self.rows]

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.pivots),
                     tuple(tuple(sorted(r.items())) for r in self.rows)))

    def __repr__(self):
        return "Subspace(dim %d in %d)" % (self.dim, self.ambient_dim)

    def reduce(self, vec):
        """Remainder of vec modulo this subspace (zero at every pivot column)."""
        row = sparse(vec)
        for c, r in zip(self.pivots, self.rows):
            x = row.get(c)
            if not x:
                continue
            for k, v in r.items():
                nv = row.get(k, self.field.zero) - x * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def __contains__(self, vec):
        return not self.reduce(vec)

    def coordinates(self, vec):
        """Coefficients of vec in the canonical basis; ValueError if vec is outside."""
        row = sparse(vec)
        if self.reduce(row):
            raise ValueError("vector is not in the subspace")
        return tuple(row.get(c, self.field.zero) for c in self.pivots)

    def combination(self, coeffs):
        out = {}
        for a, r in zip(coeffs, self.rows):
            if not a:
                continue
            for k, v in r.items():
                nv = out.get(k, self.field.zero) + a * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def __le__(self, other):
        return all(r in other for r in self.rows)

    def __add__(self, other):
        return meet_join(self, other)[1]

    def __and__(self, other):
        return meet_join(self, other)[0]

    def annihilator(self):
        return annihilator(self)


def kernel(m):
    """Subspace of all x with m x = 0."""
    pivots, rows = echelon(m.sparse_rows(), m.ncols, m.field)
    return Subspace(m.ncols, _null_rows(pivots, rows, m.ncols, m.field), m.field)


def meet_join(u, w):
    """(u & w, u + w) for subspaces of the same ambient space."""
    if u.ambient_dim != w.ambient_dim:
        raise DimensionError("ambient mismatch: %d vs %d" % (u.ambient_dim, w.ambient_dim))
    n = u.ambient_dim
    field = u.field
    total = Subspace(n, list(u.rows) + list(w.rows), field)
    # Zassenhaus: rows (u|u) and (w|0); rows with empty left half span u & w.
    rows = [dict(list(r.items()) + [(n + k, v) for k, v in r.items()]) for r in u.rows]
    rows += [dict(r) for r in w.rows]
    pivots, red = echelon(rows, 2 * n, field, reduced=False)
    meet = [{k - n: v for k, v in r.items()} for c, r in zip(pivots, red) if c >= n]
    return Subspace(n, meet, field), total


def annihilator(u):
    """Functionals vanishing on u, in dual-basis coordinates."""
    return Subspace(u.ambient_dim,
                    _null_rows(u.pivots, u.rows, u.ambient_dim, u.field), u.field)


class Quotient:
    """The quotient ambient/sub with coordinates on the non-pivot columns of sub."""

    def __init__(self, sub):
        self.sub = sub
        pivset = set(sub.pivots)
        self.free = [c for c in range(sub.ambient_dim) if c not in pivset]
        self._pos = {c: i for i, c in enumerate(self.free)}
        self.field = sub.field

    @property
    def dim(self):
        return len(self.free)

    def project(self, vec):
        row = self.sub.reduce(vec)
        out = [self.field.zero] * len(self.free)
        for c, v in row.items():
            out[self._pos[c]] = v
        return tuple(out)

    def lift(self, coords):
        return {c: a for c, a in zip(self.free, coords) if a}


def solve(columns, target, ncols_out, field=QQ):
    """Find x with sum_j x_j * columns[j] = target.

    columns: list of sparse/dense vectors in a space of dimension ncols_out.
    Returns (x, nullity) with x a tuple, or (None, nullity) if unsolvable.
    """
    n = len(columns)
    # Row-reduce [columns^T | I] so each echelon row records its combination.
    rows = []
    for j, col in enumerate(columns):
        r = sparse(col)
        r[ncols_out + j] = field.one
        rows.append(r)
    pivots, red = echelon(rows, ncols_out + n, field, reduced=True)
    nullity = sum(1 for c in pivots if c >= ncols_out)
    rem = sparse(target)
    x = {}
    for c, r in zip(pivots, red):
        if c >= ncols_out:
            break
        a = rem.get(c)
        if not a:
            continue
        for k, v in r.items():
            if k < ncols_out:
                nv = rem.get(k, field.zero) - a * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
            else:
                x[k - ncols_out] = x.get(k - ncols_out, field.zero) + a * v
    if rem:
        return None, nullity
    return tuple(x.get(j, field.zero) for j in range(n)), nullity
