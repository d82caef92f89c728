"""Homogeneous quadratic algebras T(V)/(I) with normal-word bases.

Degree-n normal words are the words that are not leading (lex-first) words of
the degree-n part of the ideal.  They are computed degree by degree: every
leading word of K_{n-1} stays leading after appending a letter, so A_n is a
quotient of A_{n-1} (x) V by the images of t (x) r, t a normal word of degree
n-2 and r a relation.
"""

from .field import QQ
from .graded import GradedAlgebra, Element
from .linalg import Subspace, annihilator, DimensionError
from .tensor import word_index, index_word, homogeneous_ideal_component


class GradedComponent:
    """Degree-n piece: normal words and the projection from words."""

    def __init__(self, degree, words, relations=None):
        self.degree = degree
        self.words = words
        self.position = {w: k for k, w in enumerate(words)}
        self.relations = relations  # Subspace of A_{n-1} (x) V coordinates

    @property
    def dim(self):
        return len(self.words)

    def __repr__(self):
        return "GradedComponent(degree %d, dim %d)" % (self.degree, self.dim)


class QuadraticAlgebra(GradedAlgebra):
    """T(V)/(I) for a relation subspace I of V (x) V."""

    def __init__(self, gen_dim, relations=None, names=None, field=None):
        if relations is None:
            relations = Subspace.zero(gen_dim * gen_dim, field or QQ)
        if relations.ambient_dim != gen_dim * gen_dim:
            raise DimensionError("relations live in dim %d, expected %d"
                                 % (relations.ambient_dim, gen_dim * gen_dim))
        self.gen_dim = gen_dim
        self.relations = relations
        self.field = relations.field
        self.names = list(names) if names else ["x%d" % k for k in range(gen_dim)]
        if len(self.names) != gen_dim:
            raise ValueError("need %d generator names" % gen_dim)
        self._components = {}
        self._proj = {}
        self._table = {}

    def __eq__(self, other):
        return (isinstance(other, QuadraticAlgebra) and other.gen_dim == self.gen_dim
                and other.relations == self.relations)

    def __hash__(self):
        return hash((self.gen_dim, self.relations))

    def __repr__(self):
        return "QuadraticAlgebra(%d generators, %d relations)" % (self.gen_dim, self.relations.dim)

    # components

    def component(self, n):
        if n < 0:
            raise ValueError("negative degree")
        comp = self._components.get(n)
        if comp is not None:
            return comp
        g = self.gen_dim
        if n == 0:
            comp = GradedComponent(0, [()])
        elif n == 1:
            comp = GradedComponent(1, [(a,) for a in range(g)])
        else:
            prev = self.component(n - 1)
            if n == 2:
                rows = [dict(r) for r in self.relations.rows]
            else:
                rows = []
                for t in self.component(n - 2).words:
                    for r in self.relations.rows:
                        row = {}
                        for c, v in r.items():
                            a, b = divmod(c, g)
                            for k, x in self._project_word(t + (a,)).items():
                                key = k * g + b
                                nv = row.get(key, self.field.zero) + v * x
                                if nv:
                                    row[key] = nv
                                else:
                                    row.pop(key, None)
                        if row:
                            rows.append(row)
            rel = Subspace(prev.dim * g, rows, self.field)
            piv = set(rel.pivots)
            words = [prev.words[c // g] + (c % g,) for c in range(prev.dim * g) if c not in piv]
            comp = GradedComponent(n, words, rel)
        self._components[n] = comp
        return comp

    def _project_word(self, word):
        """Normal-form coordinates {position: coeff} of a word."""
        word = tuple(word)
        hit = self._proj.get(word)
        if hit is not None:
            return hit
        n = len(word)
        if n <= 1:
            out = {0 if n == 0 else word[0]: self.field.one}
        else:
            comp = self.component(n)
            head = self._project_word(word[:-1])
            g = self.gen_dim
            vec = {k * g + word[-1]: v for k, v in head.items()}
            if comp.relations is not None:
                vec = comp.relations.reduce(vec)
            prev = self.component(n - 1)
            out = {comp.position[prev.words[c // g] + (c % g,)]: v for c, v in vec.items()}
        self._proj[word] = out
        return out

    def project(self, n, tensor):
        """Map a sparse vector on words of length n (lex index) to A_n coordinates."""
        out = {}
        for idx, c in tensor.items():
            if not c:
                continue
            for k, v in self._project_word(index_word(idx, n, self.gen_dim)).items():
                nv = out.get(k, self.field.zero) + c * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def ideal_component(self, n):
        return homogeneous_ideal_component(self.relations, n, self.gen_dim)

    # graded-algebra protocol

    def dim(self, n):
        if n < 0:
            return 0
        return self.component(n).dim

    def mul_basis(self, m, i, n, j):
        key = (m, i, n, j)
        hit = self._table.get(key)
        if hit is None:
            hit = self._project_word(self.component(m).words[i] + self.component(n).words[j])
            self._table[key] = hit
        return hit

    def unit(self):
        return Element(self, 0, (self.field.one,))

    def generators(self):
        return [(1, a) for a in range(self.gen_dim)]

    def factor(self, n, i):
        return [(1, a) for a in self.component(n).words[i]]

    def word_label(self, word):
        return "".join(self.names[a] for a in word) if word else "1"

    def label(self, n, i):
        return self.word_label(self.component(n).words[i])

    def normal_words(self, n):
        return list(self.component(n).words)

    def word_element(self, word):
        return self.from_sparse(len(word), self._project_word(word))


def quadratic_dual(a, names=None):
    """A^! on V* with relations the annihilator of I under the untwisted pairing."""
    if names is None:
        names = [nm + "*" for nm in a.names]
    return QuadraticAlgebra(a.gen_dim, annihilator(a.relations), names)


def component(a, n):
    return a.component(n)


def multiply(a, x, y):
    return a.multiply(x, y)


def hilbert(a, max_degree):
    return [a.dim(n) for n in range(max_degree + 1)]


def relations_from_words(gen_dim, rels, field=QQ):
    """Relation subspace from a list of {word(2-tuple): coeff}."""
    rows = []
    for r in rels:
        row = {}
        for w, c in r.items():
            k = word_index(w, gen_dim)
            row[k] = row.get(k, field.zero) + field(c)
        rows.append(row)
    return Subspace(gen_dim * gen_dim, rows, field)


def symmetric_algebra(gen_dim, field=QQ, names=None):
    from .tensor import antisym_subspace
    return QuadraticAlgebra(gen_dim, antisym_subspace(gen_dim, field), names)


def exterior_algebra(gen_dim, field=QQ, names=None):
    from .tensor import sym_subspace
    return QuadraticAlgebra(gen_dim, sym_subspace(gen_dim, field), names)


def free_algebra(gen_dim, field=QQ, names=None):
    return QuadraticAlgebra(gen_dim, Subspace.zero(gen_dim * gen_dim, field), names)


def ext_table(a, max_degree):
    from .bar import ext_table as _ext
    return _ext(a, max_degree)


def koszul_verdict(a, max_degree):
    from .bar import koszul_verdict as _kv
    return _kv(a, max_degree)
