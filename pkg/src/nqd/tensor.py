"""Words in the generators of T(V) and the homogeneous ideal generated by I.

A word of length n in generators 0..g-1 is indexed by reading it as a base-g
number, so the lexicographic order on words is the order of their indices.
"""

from itertools import product

from .field import QQ
from .linalg import Subspace, DimensionError


def word_index(word, gen_dim):
    idx = 0
    for a in word:
        if not 0 <= a < gen_dim:
            raise IndexError("generator index %r out of range for %d generators" % (a, gen_dim))
        idx = idx * gen_dim + a
    return idx


def index_word(idx, degree, gen_dim):
    if not 0 <= idx < gen_dim ** degree:
        raise IndexError("word index %d out of range" % idx)
    out = [0] * degree
    for k in range(degree - 1, -1, -1):
        idx, out[k] = divmod(idx, gen_dim)
    return tuple(out)


class TensorBasis:
    """Words of a fixed length, in lexicographic order."""

    def __init__(self, gen_dim, degree):
        self.gen_dim = gen_dim
        self.degree = degree
        self.size = gen_dim ** degree

    def __len__(self):
        return self.size

    def index(self, word):
        if len(word) != self.degree:
            raise IndexError("word of length %d in degree %d" % (len(word), self.degree))
        return word_index(word, self.gen_dim)

    def word(self, idx):
        return index_word(idx, self.degree, self.gen_dim)

    def words(self):
        return list(product(range(self.gen_dim), repeat=self.degree))


class FilteredTensorBasis:
    """Words of length 0..n, blocks by ascending length."""

    def __init__(self, gen_dim, n):
        self.gen_dim = gen_dim
        self.n = n
        self.offsets = []
        off = 0
        for k in range(n + 1):
            self.offsets.append(off)
            off += gen_dim ** k
        self.size = off

    def __len__(self):
        return self.size

    def block(self, k):
        return range(self.offsets[k], self.offsets[k] + self.gen_dim ** k)

    def index(self, word):
        if len(word) > self.n:
            raise DimensionError("word of length %d above bound %d" % (len(word), self.n))
        return self.offsets[len(word)] + word_index(word, self.gen_dim)

    def word(self, idx):
        for k in range(self.n, -1, -1):
            if idx >= self.offsets[k]:
                return index_word(idx - self.offsets[k], k, self.gen_dim)
        raise IndexError(idx)

    def degree_of(self, idx):
        for k in range(self.n, -1, -1):
            if idx >= self.offsets[k]:
                return k
        raise IndexError(idx)


def embed_filtered(element, n, gen_dim):
    """Coordinates of {word: coeff} in FilteredTensorBasis(gen_dim, n)."""
    fb = FilteredTensorBasis(gen_dim, n)
    out = {}
    for w, c in element.items():
        if len(w) > n:
            raise DimensionError("element has degree %d above bound %d" % (len(w), n))
        if c:
            i = fb.index(tuple(w))
            out[i] = out.get(i, 0) + c
    return {i: c for i, c in out.items() if c}


def tensor_rows(rows, left, right, gen_dim, deg):
    """Rows of V^{left} (x) r (x) V^{right} for r in `rows` (sparse, degree deg)."""
    out = []
    sl = gen_dim ** left
    sr = gen_dim ** right
    mid = gen_dim ** deg
    for a in range(sl):
        for r in rows:
            for b in range(sr):
                out.append({(a * mid + c) * sr + b: v for c, v in r.items()})
    return out


def homogeneous_ideal_component(i, n, gen_dim=None):
    """Degree-n part of the two-sided ideal generated by i in V (x) V."""
    field = i.field
    if gen_dim is None:
        gen_dim = _isqrt(i.ambient_dim)
    if gen_dim * gen_dim != i.ambient_dim:
        raise DimensionError("relation space of dim %d is not in V(x)V" % i.ambient_dim)
    if n < 2 or i.dim == 0:
        return Subspace.zero(gen_dim ** max(n, 0), field)
    cur = i
    for k in range(3, n + 1):
        # K_k = K_{k-1} (x) V + V^{k-2} (x) I
        rows = tensor_rows(cur.rows, 0, 1, gen_dim, k - 1)
        rows += tensor_rows(i.rows, k - 2, 0, gen_dim, 2)
        cur = Subspace(gen_dim ** k, rows, field)
    return cur


def _isqrt(n):
    r = int(round(n ** 0.5))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def sym_subspace(gen_dim, field=QQ):
    """Symmetric tensors in V (x) V."""
    rows = []
    for a in range(gen_dim):
        for b in range(a, gen_dim):
            r = {a * gen_dim + b: field.one}
            r[b * gen_dim + a] = r.get(b * gen_dim + a, field.zero) + field.one
            rows.append(r)
    return Subspace(gen_dim * gen_dim, rows, field)


def antisym_subspace(gen_dim, field=QQ):
    """Antisymmetric tensors a(x)b - b(x)a in V (x) V."""
    rows = []
    for a in range(gen_dim):
        for b in range(a + 1, gen_dim):
            rows.append({a * gen_dim + b: field.one, b * gen_dim + a: -field.one})
    return Subspace(gen_dim * gen_dim, rows, field)
