"""Independent reference computations used to check the package.

These deliberately avoid the package's own linear algebra: ranks come from
sympy's DomainMatrix over QQ, and algebra elements are plain dicts keyed by
words (tuples of generator indices).
"""

import itertools
from math import comb

import sympy
from sympy.polys.matrices import DomainMatrix
from sympy import QQ as SQQ


def rank(rows, ncols):
    if not rows:
        return 0
    dm = DomainMatrix([[SQQ(int(x.numerator), int(x.denominator)) if hasattr(x, "numerator") else SQQ(x)
                        for x in r] for r in rows], (len(rows), ncols), SQQ)
    return dm.rank()


def words_upto(g, L):
    out = []
    for k in range(L + 1):
        out.extend(itertools.product(range(g), repeat=k))
    return out


def relation_dicts(p):
    """Relations of a presentation as {word: coeff} including lower-degree parts."""
    g = p.gen_dim
    out = []
    for row, ph, h in zip(p.I.rows, p.phi, p.hc):
        d = {}
        for c, v in row.items():
            d[(c // g, c % g)] = v
        for a, v in enumerate(ph):
            if v:
                d[(a,)] = v
        if h:
            d[()] = h
        out.append(d)
    return out


def saturation_dims(g, relations, n_max, top):
    """dim(J meet T_n) for n <= n_max, J spanned by u r v with |u|+2+|v| <= top.

    Uses dim(span meet T_n) = rank(M) - rank(M restricted to words longer than n).
    """
    cols = words_upto(g, top)
    index = {w: k for k, w in enumerate(cols)}
    rows = []
    for r in relations:
        for a in range(top - 1):
            for b in range(top - 1 - a):
                for u in itertools.product(range(g), repeat=a):
                    for v in itertools.product(range(g), repeat=b):
                        vec = [0] * len(cols)
                        for w, c in r.items():
                            vec[index[u + w + v]] += c
                        rows.append(vec)
    full = rank(rows, len(cols))
    out = []
    for n in range(n_max + 1):
        long_cols = [k for k, w in enumerate(cols) if len(w) > n]
        sub = [[r[k] for k in long_cols] for r in rows]
        out.append(full - rank(sub, len(long_cols)))
    return out


def filtered_dims(g, relations, n_max, top_slack=2):
    sat = [saturation_dims(g, relations, n, n + top_slack)[n] for n in range(n_max + 1)]
    return [sum(g ** k for k in range(n + 1)) - sat[n] for n in range(n_max + 1)]


def homogeneous_dims(g, rel_words, n_max):
    """dim A_n for T(V)/(I) with relations given as {word: coeff} in degree 2."""
    out = [1]
    for n in range(1, n_max + 1):
        cols = list(itertools.product(range(g), repeat=n))
        index = {w: k for k, w in enumerate(cols)}
        rows = []
        for r in rel_words:
            for a in range(n - 1):
                for u in itertools.product(range(g), repeat=a):
                    for v in itertools.product(range(g), repeat=n - 2 - a):
                        vec = [0] * len(cols)
                        for w, c in r.items():
                            vec[index[u + w + v]] += c
                        rows.append(vec)
        out.append(len(cols) - rank(rows, len(cols)))
    return out


def lie_coinvariant_dims(dim, bracket, n_max):
    """dim (S^n g)_g via sympy polynomials; bracket(i, j) -> list of coefficients."""
    xs = sympy.symbols("t0:%d" % dim)
    out = []
    for n in range(n_max + 1):
        monos = sorted(sympy.itermonomials(xs, n, n), key=sympy.default_sort_key) if n else [sympy.Integer(1)]
        monos = [m for m in monos if sympy.Poly(m, *xs).total_degree() == n]
        index = {sympy.Poly(m, *xs).monoms()[0]: k for k, m in enumerate(monos)}
        rows = []
        for a in range(dim):
            for m in monos:
                img = 0
                for b in range(dim):
                    br = bracket(a, b)
                    lin = sum(c * xs[k] for k, c in enumerate(br))
                    img += lin * sympy.diff(m, xs[b])
                img = sympy.expand(img)
                vec = [0] * len(monos)
                if img != 0:
                    for mon, c in sympy.Poly(img, *xs).terms():
                        vec[index[mon]] += c
                rows.append(vec)
        out.append(len(monos) - rank(rows, len(monos)))
    return out


def binom_filtered(dim, n):
    return comb(n + dim, dim)


def perm_sign(p):
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s
