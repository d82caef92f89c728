"""Truncated graded algebras given by product tables on a basis.

An algebra supplies `dim(n)`, `mul_basis(m, i, n, j)` (a sparse vector in
degree m+n), a list of generators `(degree, index)` and `factor(n, i)`, which
writes basis element i of degree n as an ordered product of generators.  The
factorisation is what lets derivations and algebra maps be extended from
generators.  Elements carry their degree; the grading is cohomological, so
the sign of a homogeneous element of degree n is (-1)^n.
"""

from itertools import combinations

from .field import QQ


class GradedAlgebra:
    field = QQ
    connected = True

    def dim(self, n):
        raise NotImplementedError

    def mul_basis(self, m, i, n, j):
        raise NotImplementedError

    def generators(self):
        raise NotImplementedError

    def factor(self, n, i):
        raise NotImplementedError

    def label(self, n, i):
        return "b%d_%d" % (n, i)

    def labels(self, n):
        return [self.label(n, i) for i in range(self.dim(n))]

    # element helpers

    def zero(self, n):
        return Element(self, n, (self.field.zero,) * self.dim(n))

    def basis_element(self, n, i):
        v = [self.field.zero] * self.dim(n)
        v[i] = self.field.one
        return Element(self, n, tuple(v))

    def element(self, n, coeffs):
        coeffs = tuple(self.field(c) for c in coeffs)
        if len(coeffs) != self.dim(n):
            raise ValueError("degree %d has dimension %d, got %d coefficients"
                             % (n, self.dim(n), len(coeffs)))
        return Element(self, n, coeffs)

    def from_sparse(self, n, row):
        v = [self.field.zero] * self.dim(n)
        for k, c in row.items():
            v[k] = v[k] + c
        return Element(self, n, tuple(v))

    def unit(self):
        raise NotImplementedError

    def gen_element(self, g):
        return self.basis_element(*g)

    def multiply(self, x, y):
        m, n = x.degree, y.degree
        zero = self.field.zero
        out = [zero] * self.dim(m + n)
        for i, a in enumerate(x.vec):
            if not a:
                continue
            for j, b in enumerate(y.vec):
                if not b:
                    continue
                ab = a * b
                for k, c in self.mul_basis(m, i, n, j).items():
                    out[k] += ab * c
        return Element(self, m + n, tuple(out))

    def supercommutator(self, x, y):
        s = -1 if (x.degree * y.degree) % 2 else 1
        return x * y - (y * x) * s


class Element:
    """Homogeneous element: coefficient tuple in the algebra's degree-n basis."""

    __slots__ = ("alg", "degree", "vec")

    def __init__(self, alg, degree, vec):
        self.alg = alg
        self.degree = degree
        self.vec = vec

    def _check(self, other):
        if not isinstance(other, Element) or other.alg is not self.alg:
            raise TypeError("elements of different algebras")
        if other.degree != self.degree:
            raise ValueError("adding elements of degrees %d and %d" % (self.degree, other.degree))

    def __add__(self, other):
        self._check(other)
        return Element(self.alg, self.degree, tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other):
        self._check(other)
        return Element(self.alg, self.degree, tuple(a - b for a, b in zip(self.vec, other.vec)))

    def __neg__(self):
        return Element(self.alg, self.degree, tuple(-a for a in self.vec))

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.alg.multiply(self, other)
        c = self.alg.field(other)
        return Element(self.alg, self.degree, tuple(a * c for a in self.vec))

    def __rmul__(self, other):
        c = self.alg.field(other)
        return Element(self.alg, self.degree, tuple(c * a for a in self.vec))

    def __eq__(self, other):
        if isinstance(other, Element):
            return (other.alg is self.alg and other.degree == self.degree
                    and other.vec == self.vec)
        if other == 0:
            return not any(self.vec)
        return NotImplemented

    def __hash__(self):
        return hash((self.degree, self.vec))

    def __bool__(self):
        return any(self.vec)

    def is_zero(self):
        return not any(self.vec)

    def sparse(self):
        return {i: a for i, a in enumerate(self.vec) if a}

    def __repr__(self):
        terms = ["%s*%s" % (a, self.alg.label(self.degree, i)) for i, a in self.sparse().items()]
        return "<deg %d: %s>" % (self.degree, " + ".join(terms) if terms else "0")


def power(x, n):
    out = x.alg.unit()
    for _ in range(n):
        out = out * x
    return out


class MatrixExteriorAlgebra(GradedAlgebra):
    """Mat_r (x) Lambda(e_0..e_{m-1}); basis (i, j, S) with S a sorted subset."""

    connected = False

    def __init__(self, r, m, field=QQ):
        self.r = r
        self.m = m
        self.field = field
        self._subsets = [list(combinations(range(m), k)) for k in range(m + 1)]
        self._sidx = [{s: t for t, s in enumerate(ss)} for ss in self._subsets]
        self._table = {}

    def dim(self, n):
        if n < 0 or n > self.m:
            return 0
        return self.r * self.r * len(self._subsets[n])

    def basis_label(self, n, idx):
        ns = len(self._subsets[n])
        ij, t = divmod(idx, ns)
        i, j = divmod(ij, self.r)
        return i, j, self._subsets[n][t]

    def index(self, i, j, s):
        s = tuple(s)
        n = len(s)
        return (i * self.r + j) * len(self._subsets[n]) + self._sidx[n][s]

    def label(self, n, idx):
        i, j, s = self.basis_label(n, idx)
        form = "".join("e%d" % k for k in s)
        return "E%d%d%s" % (i, j, ("*" + form) if form else "")

    def mul_basis(self, m, a, n, b):
        key = (m, a, n, b)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        i, j, s = self.basis_label(m, a)
        k, l, t = self.basis_label(n, b)
        out = {}
        if j == k and not set(s) & set(t):
            merged = s + t
            # sign of the sorting permutation
            inv = sum(1 for x in s for y in t if x > y)
            out[self.index(i, l, tuple(sorted(merged)))] = self.field.one if inv % 2 == 0 else -self.field.one
        self._table[key] = out
        return out

    def unit(self):
        v = [self.field.zero] * self.dim(0)
        for i in range(self.r):
            v[self.index(i, i, ())] = self.field.one
        return Element(self, 0, tuple(v))

    def generators(self):
        gens = [(0, self.index(i, j, ())) for i in range(self.r) for j in range(self.r)]
        gens += [(1, self.index(j, j, (s,))) for j in range(self.r) for s in range(self.m)]
        return gens

    def factor(self, n, idx):
        i, j, s = self.basis_label(n, idx)
        return [(0, self.index(i, j, ()))] + [(1, self.index(j, j, (x,))) for x in s]

    def matrix(self, rows):
        """Degree-0 element from an r x r matrix."""
        v = [self.field.zero] * self.dim(0)
        for i in range(self.r):
            for j in range(self.r):
                v[self.index(i, j, ())] = self.field(rows[i][j])
        return Element(self, 0, tuple(v))

    def form(self, n, entries):
        """Element from {(i, j, S): coeff}."""
        v = [self.field.zero] * self.dim(n)
        for (i, j, s), c in entries.items():
            v[self.index(i, j, tuple(s))] += self.field(c)
        return Element(self, n, tuple(v))

    def scalar_form(self, n, coeffs):
        """Identity matrix times the form sum coeffs[S] e_S."""
        return self.form(n, {(i, i, s): c for s, c in coeffs.items() for i in range(self.r)})


class GradedMap:
    """Algebra map A -> A' determined by the images of A's generators."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = dict(images)
        for g in source.generators():
            if g not in self.images:
                raise ValueError("no image for generator %r" % (g,))
            if self.images[g].degree != g[0] or self.images[g].alg is not target:
                raise ValueError("bad image for generator %r" % (g,))
        self._cache = {}

    def on_basis(self, n, i):
        key = (n, i)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self.target.unit() if n == 0 else None
        factors = self.source.factor(n, i)
        for g in factors:
            out = self.images[g] if out is None else out * self.images[g]
        if out is None:
            out = self.target.unit()
        self._cache[key] = out
        return out

    def __call__(self, x):
        out = self.target.zero(x.degree)
        for i, a in enumerate(x.vec):
            if a:
                out = out + self.on_basis(x.degree, i) * a
        return out

    def multiplicative_defect(self, max_degree):
        """First (generator, basis element) where f(g b) != f(g) f(b), or None."""
        src = self.source
        for g in src.generators():
            gd = g[0]
            ge = src.gen_element(g)
            for n in range(0, max_degree - gd + 1):
                for i in range(src.dim(n)):
                    if gd + n > max_degree:
                        continue
                    b = src.basis_element(n, i)
                    lhs = self(ge * b)
                    rhs = self.images[g] * self.on_basis(n, i)
                    if lhs != rhs:
                        return (g, (n, i))
        return None

    def compose(self, inner):
        """self o inner."""
        if inner.target is not self.source:
            raise ValueError("maps are not composable")
        return GradedMap(inner.source, self.target,
                         {g: self(inner.images[g]) for g in inner.source.generators()})

    def matrix(self, n):
        """Columns = images of the degree-n basis."""
        return [self.on_basis(n, i).vec for i in range(self.source.dim(n))]

    def __eq__(self, other):
        return (isinstance(other, GradedMap) and other.source is self.source
                and other.target is self.target and other.images == self.images)

    def __hash__(self):
        return hash(tuple(sorted(self.images)))


def identity_map(alg):
    return GradedMap(alg, alg, {g: alg.gen_element(g) for g in alg.generators()})
