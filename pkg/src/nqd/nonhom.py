"""Nonhomogeneous quadratic presentations and saturation of their ideals.

A presentation stores the quadratic part I (canonical rows p_i), a linear part
phi(p_i) in V and a scalar part hc(p_i); the relations read
p + phi(p) + hc(p) = 0.  Elements of the filtered tensor algebra T_n(V) use
FilteredTensorBasis coordinates (ascending blocks).
"""

from dataclasses import dataclass, field as dc_field

from .field import QQ
from .linalg import Subspace, echelon, solve, DimensionError
from .tensor import FilteredTensorBasis, word_index, index_word
from .quadratic import QuadraticAlgebra


class PresentationError(ValueError):
    pass


class AugmentationError(PresentationError):
    pass


class NQPresentation:
    def __init__(self, gen_dim, quad, phi=None, hc=None, augmentation=None, names=None):
        """quad: canonical Subspace I of V(x)V; phi: rows phi(p_i) (length gen_dim);
        hc: scalars hc(p_i), both indexed by the canonical rows of I."""
        field = quad.field
        if quad.ambient_dim != gen_dim * gen_dim:
            raise DimensionError("I must live in V(x)V")
        self.gen_dim = gen_dim
        self.field = field
        self.I = quad
        k = quad.dim
        self.phi = tuple(tuple(field(x) for x in r) for r in (phi or [[0] * gen_dim] * k))
        self.hc = tuple(field(x) for x in (hc or [0] * k))
        if len(self.phi) != k or len(self.hc) != k or any(len(r) != gen_dim for r in self.phi):
            raise DimensionError("phi and hc must be given on the %d rows of I" % k)
        self.augmentation = None if augmentation is None else tuple(field(x) for x in augmentation)
        self.names = list(names) if names else ["x%d" % i for i in range(gen_dim)]
        self._sat = {}
        if self.augmentation is not None:
            check_augmentation(self)

    @classmethod
    def from_relations(cls, gen_dim, relations, field=QQ, augmentation=None, names=None):
        """relations: list of (quadratic {(a,b): c}, linear {a: c}, scalar c)."""
        g = gen_dim
        rows = []
        for quad, lin, sc in relations:
            row = {}
            for (a, b), c in quad.items():
                key = 1 + g + a * g + b
                row[key] = row.get(key, field.zero) + field(c)
            for a, c in lin.items():
                row[1 + a] = row.get(1 + a, field.zero) + field(c)
            if sc:
                row[0] = row.get(0, field.zero) + field(sc)
            rows.append({k: v for k, v in row.items() if v})
        return cls.from_j2_rows(gen_dim, rows, field, augmentation, names)

    @classmethod
    def from_j2_rows(cls, gen_dim, rows, field=QQ, augmentation=None, names=None):
        """Rows in FilteredTensorBasis(gen_dim, 2) coordinates."""
        g = gen_dim
        gg = g * g
        # quadratic columns first, so pivots fall on words of degree 2
        perm = lambda c: c - 1 - g if c >= 1 + g else (gg + c - 1 if c >= 1 else gg + g)
        j2 = Subspace(gg + g + 1, [{perm(c): v for c, v in r.items()} for r in rows], field)
        if any(c >= gg for c in j2.pivots):
            raise PresentationError("relations imply a relation of degree <= 1 "
                                    "(J2 meets k+V); not a quadratic presentation")
        quad_rows, phi, hc = [], [], []
        for r in j2.rows:
            quad_rows.append({c: v for c, v in r.items() if c < gg})
            phi.append([r.get(gg + a, field.zero) for a in range(g)])
            hc.append(r.get(gg + g, field.zero))
        quad = Subspace(gg, (), field, _canonical=(list(j2.pivots), quad_rows))
        return cls(gen_dim, quad, phi, hc, augmentation, names)

    def __eq__(self, other):
        return (isinstance(other, NQPresentation) and other.gen_dim == self.gen_dim
                and other.I == self.I and other.phi == self.phi and other.hc == self.hc)

    def __hash__(self):
        return hash((self.gen_dim, self.I, self.phi, self.hc))

    def __repr__(self):
        return "NQPresentation(%d generators, %d relations)" % (self.gen_dim, self.I.dim)

    @property
    def homogeneous(self):
        return not any(any(r) for r in self.phi) and not any(self.hc)

    def quadratic_part(self):
        return QuadraticAlgebra(self.gen_dim, self.I, self.names)

    def j2_rows(self):
        g = self.gen_dim
        out = []
        for p, ph, h in zip(self.I.rows, self.phi, self.hc):
            row = {1 + g + c: v for c, v in p.items()}
            for a, v in enumerate(ph):
                if v:
                    row[1 + a] = v
            if h:
                row[0] = h
            out.append(row)
        return out

    def relation_strings(self):
        g = self.gen_dim
        fb = FilteredTensorBasis(g, 2)
        out = []
        for row in self.j2_rows():
            terms = []
            for c in sorted(row, reverse=True):
                w = fb.word(c)
                terms.append("%s*%s" % (row[c], "".join(self.names[a] for a in w) or "1"))
            out.append(" + ".join(terms) + " = 0")
        return out


def check_augmentation(p):
    """eps must extend to a ring map killing J2."""
    eps = p.augmentation
    g = p.gen_dim
    for row, ph, h in zip(p.I.rows, p.phi, p.hc):
        val = h + sum((e * v for e, v in zip(eps, ph)), p.field.zero)
        for c, v in row.items():
            a, b = divmod(c, g)
            val += v * eps[a] * eps[b]
        if val:
            raise AugmentationError("augmentation does not kill relation %s" % (row,))
    return True


def j2_subspace(p):
    """J2 inside T_2(V) (FilteredTensorBasis coordinates)."""
    g = p.gen_dim
    j2 = Subspace(1 + g + g * g, p.j2_rows(), p.field)
    if j2.dim != p.I.dim or (j2 & Subspace(j2.ambient_dim, [{c: 1} for c in range(1 + g)], p.field)).dim:
        raise PresentationError("J2 is not the graph of a map I -> k+V")
    return j2


# saturation

def _desc_layout(g, top):
    """Column offsets with degree blocks in descending order."""
    offs = {}
    off = 0
    for k in range(top, -1, -1):
        offs[k] = off
        off += g ** k
    return offs, off


def _saturation_echelon(p, top):
    hit = p._sat.get(top)
    if hit is not None:
        return hit
    g = p.gen_dim
    offs, size = _desc_layout(g, top)
    jrows = []
    for quad, ph, h in zip(p.I.rows, p.phi, p.hc):
        parts = [(2, c, v) for c, v in quad.items()]
        parts += [(1, a, v) for a, v in enumerate(ph) if v]
        if h:
            parts.append((0, 0, h))
        jrows.append(parts)
    rows = []
    if top >= 2:
        for outer in range(top - 1):
            for a in range(outer + 1):
                b = outer - a
                sa, sb = g ** a, g ** b
                for x in range(sa):
                    for y in range(sb):
                        for parts in jrows:
                            row = {}
                            for deg, c, v in parts:
                                n = a + deg + b
                                idx = (x * g ** deg + c) * sb + y
                                row[offs[n] + idx] = v
                            rows.append(row)
    pivots, red = echelon(rows, size, p.field, reduced=False)
    res = (offs, size, pivots, red)
    p._sat[top] = res
    return res


def saturation_dim(p, n, top):
    """dim of span{x q y : filtered degree <= top} meet T_n."""
    offs, size, pivots, _ = _saturation_echelon(p, top)
    start = offs[n] if n <= top else 0
    return sum(1 for c in pivots if c >= start)


def saturation_subspace(p, n, top):
    g = p.gen_dim
    offs, size, pivots, red = _saturation_echelon(p, max(top, n))
    top = max(top, n)
    start = offs[n]
    fb = FilteredTensorBasis(g, n)
    rows = []
    for c, r in zip(pivots, red):
        if c < start:
            continue
        out = {}
        for col, v in r.items():
            k = _block_of(offs, col, top)
            out[fb.offsets[k] + col - offs[k]] = v
        rows.append(out)
    return Subspace(fb.size, rows, p.field)


def _block_of(offs, col, top):
    for k in range(0, top + 1):
        if col >= offs[k]:
            return k
    raise IndexError(col)


def saturate(p, n, slack=2):
    """(J meet T_n computed with words up to degree n+slack, stabilized flag)."""
    if slack < 0:
        raise ValueError("slack must be >= 0")
    sub = saturation_subspace(p, n, n + slack)
    return sub, _stabilized(p, n, slack)


def _stabilized(p, n, slack):
    if p.homogeneous:
        return True
    if slack == 0:
        return False
    dims = [saturation_dim(p, n, n + s) for s in range(max(0, slack - 2), slack + 1)]
    return len(set(dims)) == 1


def tensor_filtered_dim(g, n):
    return sum(g ** k for k in range(n + 1))


@dataclass
class FiltrationReport:
    max_degree: int
    slack: int
    f_dims: list
    gr_dims: list
    stabilized: list
    slack_table: dict = dc_field(default_factory=dict)

    def as_dict(self):
        return {"max_degree": self.max_degree, "slack": self.slack, "F": self.f_dims,
                "Gr": self.gr_dims, "stabilized": self.stabilized,
                "by_slack": {str(k): v for k, v in self.slack_table.items()}}


def filtration_dims(p, max_degree, slack=2):
    g = p.gen_dim
    f_dims, stab = [], []
    table = {}
    for s in range(slack + 1):
        table[s] = [tensor_filtered_dim(g, n) - saturation_dim(p, n, n + s)
                    for n in range(max_degree + 1)]
    f_dims = table[slack]
    for n in range(max_degree + 1):
        stab.append(_stabilized(p, n, slack))
    gr = [f_dims[0]] + [f_dims[n] - f_dims[n - 1] for n in range(1, max_degree + 1)]
    return FiltrationReport(max_degree, slack, f_dims, gr, stab, table)


@dataclass
class WeakQLSVerdict:
    gr_dims: list
    quadratic_dims: list
    quadratic_gr: bool
    pbw: bool
    first_failure: object
    j2_is_saturated: bool
    report: FiltrationReport

    def as_dict(self):
        return {"Gr": self.gr_dims, "quadratic": self.quadratic_dims,
                "quadratic_gr": self.quadratic_gr, "pbw": self.pbw,
                "first_failure": self.first_failure,
                "J2_saturated": self.j2_is_saturated, "filtration": self.report.as_dict()}


def weak_qls_check(p, max_degree, slack=2):
    rep = filtration_dims(p, max_degree, slack)
    qa = p.quadratic_part()
    qd = [qa.dim(n) for n in range(max_degree + 1)]
    fail = None
    for n in range(max_degree + 1):
        if rep.gr_dims[n] != qd[n]:
            fail = n
            break
    j2sat = saturation_dim(p, 2, 2 + slack) == p.I.dim if max_degree >= 0 else True
    ok = fail is None
    return WeakQLSVerdict(rep.gr_dims, qd, ok, ok, fail, j2sat, rep)


# complement changes

def change_complement(p, alpha):
    """Presentation of the same algebra on the generators v' = v + alpha(v)."""
    f = p.field
    g = p.gen_dim
    alpha = [f(a) for a in alpha]
    if len(alpha) != g:
        raise DimensionError("alpha must have %d entries" % g)
    phi, hc = [], []
    for row, ph, h in zip(p.I.rows, p.phi, p.hc):
        new = list(ph)
        hh = h - sum((a * v for a, v in zip(alpha, ph)), f.zero)
        for c, v in row.items():
            a, b = divmod(c, g)
            new[b] -= v * alpha[a]
            new[a] -= v * alpha[b]
            hh += v * alpha[a] * alpha[b]
        phi.append(new)
        hc.append(hh)
    aug = None
    if p.augmentation is not None:
        aug = [e + a for e, a in zip(p.augmentation, alpha)]
    return NQPresentation(g, p.I, phi, hc, aug, p.names)


def ql_shift(p):
    """Shift the complement into ker(eps); the result has hc = 0."""
    if p.augmentation is None:
        raise AugmentationError("presentation has no augmentation")
    q = change_complement(p, [-e for e in p.augmentation])
    assert not any(q.hc), "augmented presentation kept a scalar part"
    return q


def solve_complement_change(p, q):
    """alpha with change_complement(p, alpha) == q; returns (alpha or None, unique)."""
    if p.I != q.I or p.gen_dim != q.gen_dim:
        return None, False
    f = p.field
    g = p.gen_dim
    k = p.I.dim
    # unknown alpha_a; equations: (phi - phi')(p_i)_b = sum_c p_i[c] (alpha_a [b] + ...)
    cols = []
    for a in range(g):
        col = {}
        for i, row in enumerate(p.I.rows):
            for c, v in row.items():
                x, y = divmod(c, g)
                if x == a:
                    col[i * g + y] = col.get(i * g + y, f.zero) + v
                if y == a:
                    col[i * g + x] = col.get(i * g + x, f.zero) + v
        cols.append({kk: vv for kk, vv in col.items() if vv})
    target = {}
    for i in range(k):
        for b in range(g):
            d = p.phi[i][b] - q.phi[i][b]
            if d:
                target[i * g + b] = d
    x, nullity = solve(cols, target, k * g, f)
    if x is None:
        return None, nullity == 0
    x = list(x)
    if nullity:
        # On the kernel t of the linear equations the symmetrized relations vanish,
        # so p_i(x + t, x + t) = p_i(x, x) and hc is affine in t: hc(x + t) = hc(x) - <t, phi_i>.
        rows = [dict(c) for c in cols]
        for j, r in enumerate(rows):
            r[k * g + j] = f.one
        pivots, red = echelon(rows, k * g + g, f)
        kern = [{c - k * g: v for c, v in r.items()} for c, r in zip(pivots, red) if c >= k * g]
        base = change_complement(p, x)
        tcols = [[-sum((t.get(a, f.zero) * p.phi[i][a] for a in range(g)), f.zero) for i in range(k)]
                 for t in kern]
        coeff, nullity = solve(tcols, [q.hc[i] - base.hc[i] for i in range(k)], k, f)
        if coeff is None:
            return None, nullity == 0
        for c, t in zip(coeff, kern):
            for a, v in t.items():
                x[a] += c * v
    x = tuple(x)
    if change_complement(p, x) != q:
        return None, nullity == 0
    return x, nullity == 0


def substitute_generators(p, alpha, vec, n):
    """Image of a T_n(V') element under v'_a -> v_a + alpha_a (FilteredTensorBasis coords)."""
    g = p.gen_dim
    fb = FilteredTensorBasis(g, n)
    out = {}
    for idx, c in vec.items():
        w = fb.word(idx)
        terms = {(): c}
        for a in w:
            nxt = {}
            for u, v in terms.items():
                nxt[u + (a,)] = nxt.get(u + (a,), p.field.zero) + v
                if alpha[a]:
                    nxt[u] = nxt.get(u, p.field.zero) + v * alpha[a]
            terms = nxt
        for u, v in terms.items():
            j = fb.index(u)
            out[j] = out.get(j, p.field.zero) + v
    return {k: v for k, v in out.items() if v}


def reduce_in_algebra(p, vec, n, slack=2):
    """Normal form of a T_n element modulo J meet T_n."""
    sub, _ = saturate(p, n, slack)
    return sub.reduce(vec)
