"""Trace spaces, Chern forms, the transgression forms and Chern-Simons data.

Everything is exact.  The trace space C = B/[B,B] is computed degree by
degree with [B,B] spanned by supercommutators [w, b], w running over the
algebra generators.  Coordinates on C^n are the non-pivot columns of the
commutator span (see linalg.Quotient).

The forms omega_n^(i) live on the affine space B^1.  Their value at a point
alpha on tangents xi_1..xi_i is the sum, over the i-subsets P of the n factor
slots and over permutations s of the tangents, of sgn(s) times the product
with xi_{s(k)} in the k-th slot of P and h(alpha) in the others.  Since these
forms only depend on alpha through h(alpha), directional derivatives follow
from the product rule with D_xi h = d0(xi) + alpha xi + xi alpha.
"""

import itertools
import random
from dataclasses import dataclass, field as dc_field
from math import comb

from .field import CharacteristicError
from .graded import GradedMap, power
from .linalg import Subspace, Quotient, solve
from .cdg import twist, verify_morphism, CDGMorphism, MorphismError


class TraceSpace:
    """C = B/[B,B] in degrees 0..D together with T, a lift and delta_C."""

    def __init__(self, psi, max_degree):
        self.psi = psi
        self.alg = psi.alg
        self.field = psi.alg.field
        self.max_degree = max_degree
        self._comm = {}
        self._quot = {}
        self._delta = {}

    def commutators(self, n):
        hit = self._comm.get(n)
        if hit is not None:
            return hit
        alg = self.alg
        rows = []
        for g in alg.generators():
            w = alg.gen_element(g)
            m = n - g[0]
            if m < 0:
                continue
            for i in range(alg.dim(m)):
                c = alg.supercommutator(w, alg.basis_element(m, i))
                if c:
                    rows.append(c.vec)
        sub = Subspace(alg.dim(n), rows, self.field)
        self._comm[n] = sub
        return sub

    def quotient(self, n):
        hit = self._quot.get(n)
        if hit is None:
            hit = Quotient(self.commutators(n))
            self._quot[n] = hit
        return hit

    def dim(self, n):
        return self.quotient(n).dim if self.alg.dim(n) else 0

    def T(self, x):
        """Trace projection of a homogeneous element; a coordinate tuple."""
        return self.quotient(x.degree).project(x.vec)

    def lift(self, n, coords):
        return self.alg.from_sparse(n, self.quotient(n).lift(coords))

    def delta_matrix(self, n):
        """Rows: images under delta_C of the basis vectors of C^n."""
        hit = self._delta.get(n)
        if hit is not None:
            return hit
        q = self.quotient(n)
        rows = []
        for k in range(q.dim):
            e = [self.field.zero] * q.dim
            e[k] = self.field.one
            rows.append(self.T(self.psi.d(self.lift(n, e))))
        self._delta[n] = rows
        return rows

    def delta(self, n, coords):
        out = [self.field.zero] * self.dim(n + 1)
        for a, row in zip(coords, self.delta_matrix(n)):
            if a:
                for j, v in enumerate(row):
                    out[j] += a * v
        return tuple(out)

    def boundaries(self, n):
        """delta_C(C^{n-1}) as a subspace of C^n."""
        if n <= 0:
            return Subspace.zero(self.dim(n), self.field)
        return Subspace(self.dim(n), self.delta_matrix(n - 1), self.field)

    def cycles_dim(self, n):
        rows = self.delta_matrix(n)
        return self.dim(n) - Subspace(self.dim(n + 1), rows, self.field).dim

    def cohomology_dim(self, n):
        return self.cycles_dim(n) - self.boundaries(n).dim

    def class_of(self, n, coords):
        """Canonical representative of coords modulo delta_C(C^{n-1})."""
        return Quotient(self.boundaries(n)).project(coords)

    def coboundary_witness(self, n, coords):
        """x in C^{n-1} with delta_C x = coords, or None."""
        if n <= 0:
            return None if any(coords) else ()
        x, _ = solve(self.delta_matrix(n - 1), coords, self.dim(n), self.field)
        return x

    def square_zero(self, n):
        """True when delta_C o delta_C vanishes on C^n."""
        for row in self.delta_matrix(n):
            if any(self.delta(n + 1, row)):
                return False
        return True


def trace_space(psi, max_degree):
    return TraceSpace(psi, max_degree)


def chern_guard(field, n):
    p = field.characteristic
    if p and 2 * n >= p:
        raise CharacteristicError(
            "Chern forms of index %d need 2n < p, but p = %d" % (n, p))


@dataclass
class ChernForm:
    n: int
    rep: tuple
    cls: tuple
    closed_in_B: bool
    closed_in_C: bool
    trivial: bool
    witness: object = None

    def as_dict(self):
        return {"n": self.n, "representative": [str(x) for x in self.rep],
                "class": [str(x) for x in self.cls], "delta0(h^n)=0": self.closed_in_B,
                "delta_C(c_n)=0": self.closed_in_C, "class_is_zero": self.trivial,
                "coboundary_witness": None if self.witness is None else [str(x) for x in self.witness]}


def chern(psi, n, ts=None):
    """c_n = T(h^n), its closedness and its class in H^{2n}(C, delta_C)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    chern_guard(psi.field, n)
    ts = ts or TraceSpace(psi, 2 * n + 1)
    hn = power(psi.h, n)
    rep = ts.T(hn)
    closed_b = psi.d(hn).is_zero()
    closed_c = not any(ts.delta(2 * n, rep))
    cls = ts.class_of(2 * n, rep)
    trivial = not any(cls)
    witness = ts.coboundary_witness(2 * n, rep) if trivial else None
    return ChernForm(n, rep, cls, closed_b, closed_c, trivial, witness)


@dataclass
class InvarianceVerdict:
    ok: bool
    n: int
    twists: int
    seed: int
    delta_equal: bool
    first_failure: object = None

    def as_dict(self):
        return {"ok": self.ok, "n": self.n, "twists": self.twists, "seed": self.seed,
                "delta_C_unchanged": self.delta_equal, "first_failure": self.first_failure}


def random_degree1(alg, rng, lo=-3, hi=3):
    return alg.element(1, [rng.randint(lo, hi) for _ in range(alg.dim(1))])


def chern_invariance(psi, n, twists=20, seed=0):
    """Class of c_n for psi versus twist(psi, alpha), alpha seeded random."""
    chern_guard(psi.field, n)
    rng = random.Random(seed)
    ts = TraceSpace(psi, 2 * n + 1)
    base = chern(psi, n, ts)
    delta_equal = True
    for k in range(twists):
        alpha = random_degree1(psi.alg, rng)
        tw = twist(psi, alpha)
        ts2 = TraceSpace(tw, 2 * n + 1)
        for deg in range(2 * n + 1):
            if ts2.delta_matrix(deg) != ts.delta_matrix(deg):
                delta_equal = False
        c2 = chern(tw, n, ts2)
        if not (c2.closed_in_C and c2.closed_in_B) or c2.cls != base.cls:
            return InvarianceVerdict(False, n, twists, seed, delta_equal, k)
    return InvarianceVerdict(delta_equal, n, twists, seed, delta_equal)


# transgression forms

def h_at(psi0, alpha):
    return psi0.h + psi0.d(alpha) + alpha * alpha


def delta_at(psi0, alpha, x):
    return psi0.d(x) + psi0.alg.supercommutator(alpha, x)


def _perm_sign(perm):
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def _slot_sum(alg, n, slots_fill, base, tangents):
    """Sum over i-subsets P of slots and permutations of tangents, sgn-weighted.

    base(k) gives the factor in slot k when it is not in P (k indexes the
    non-tangent slots in order, so the product rule can replace one of them).
    """
    i = len(tangents)
    deg = sum(t.degree for t in tangents) + sum(base(k).degree for k in range(n - i))
    total = alg.zero(deg)
    perms = [(p, _perm_sign(p)) for p in itertools.permutations(range(i))]
    for P in itertools.combinations(range(n), i):
        for perm, sg in perms:
            out = alg.unit()
            ti = 0
            hi = 0
            for slot in range(n):
                if ti < i and P[ti] == slot:
                    out = out * tangents[perm[ti]]
                    ti += 1
                else:
                    out = out * base(hi)
                    hi += 1
            total = total + out * sg
    return total


def omega(psi0, n, i, alpha, tangents):
    """omega_n^(i) at alpha evaluated on the tangent vectors (elements of B^1)."""
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    if len(tangents) != i:
        raise ValueError("omega_n^(%d) takes %d tangents" % (i, i))
    h = h_at(psi0, alpha)
    return _slot_sum(psi0.alg, n, None, lambda k: h, list(tangents))


def d_omega(psi0, n, i, alpha, tangents):
    """de Rham differential of omega_n^(i) at alpha on i+1 tangents.

    (d w)(xi_0..xi_i) = sum_j (-1)^j (D_{xi_j} w)(xi_0..^j..xi_i), and D_xi
    hits one h factor at a time, replacing it by d0 xi + alpha xi + xi alpha.
    """
    if len(tangents) != i + 1:
        raise ValueError("d omega_n^(%d) takes %d tangents" % (i, i + 1))
    alg = psi0.alg
    h = h_at(psi0, alpha)
    m = n - i  # number of h slots
    out = None
    for j, xi in enumerate(tangents):
        dh = delta_at(psi0, alpha, xi)
        rest = list(tangents[:j]) + list(tangents[j + 1:])
        for r in range(m):
            term = _slot_sum(alg, n, None, lambda k, r=r: dh if k == r else h, rest)
            term = term if j % 2 == 0 else -term
            out = term if out is None else out + term
    if out is None:
        deg = 2 * n - i + 1
        return alg.zero(deg)
    return out


def simplex_grid(v, D):
    """All x in N^v with sum(x) <= D (unisolvent for total degree D)."""
    if v == 0:
        yield ()
        return
    for first in range(D + 1):
        for rest in simplex_grid(v - 1, D - first):
            yield (first,) + rest


@dataclass
class TransgressionVerdict:
    ok: bool
    n: int
    certified: bool
    points: dict
    first_failure: object = None
    seed: object = None

    def as_dict(self):
        return {"ok": self.ok, "n": self.n, "certified": self.certified,
                "points_per_level": {str(k): v for k, v in self.points.items()},
                "first_failure": self.first_failure, "seed": self.seed}


def verify_transgression(psi0, n, max_points=20000, seed=0):
    """Check d omega^(i) = delta omega^(i+1) (i < n) and d omega^(n) = 0.

    Both sides of level i are polynomials in alpha of total degree at most
    2(n-i)-1 and multilinear alternating in the tangents, so agreement on the
    simplex grid of that degree and on sorted basis tangents is a proof.
    Levels whose values lie in a zero component of B hold trivially.  If
    the grid exceeds max_points, seeded random points are used instead and the
    verdict is marked uncertified.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    alg = psi0.alg
    v = alg.dim(1)
    basis = [alg.basis_element(1, k) for k in range(v)]
    rng = random.Random(seed)
    certified = True
    npoints = {}
    for i in range(n + 1):
        if alg.dim(2 * n - i + 1) == 0:
            # both sides of level i live in a zero space
            npoints[i] = "vacuous"
            continue
        D = max(2 * (n - i) - 1, 0)
        tangent_sets = list(itertools.combinations(range(v), i + 1))
        if not tangent_sets:
            npoints[i] = 0
            continue
        size = comb(v + D, D)
        if size * len(tangent_sets) <= max_points:
            points = list(simplex_grid(v, D))
        else:
            certified = False
            count = max(1, max_points // len(tangent_sets))
            points = [tuple(rng.randint(-5, 5) for _ in range(v)) for _ in range(count)]
        npoints[i] = len(points)
        for x in points:
            alpha = alg.element(1, x)
            for ts in tangent_sets:
                tang = [basis[k] for k in ts]
                lhs = d_omega(psi0, n, i, alpha, tang)
                if i < n:
                    rhs = delta_at(psi0, alpha, omega(psi0, n, i + 1, alpha, tang))
                else:
                    rhs = alg.zero(lhs.degree)
                if lhs != rhs:
                    return TransgressionVerdict(False, n, certified, npoints, (i, x, ts), seed)
    return TransgressionVerdict(True, n, certified, npoints, None, seed)


# two-term complexes

class TwoTermObject:
    """delta: C1 = C^{2n-1}/delta_C C^{2n-2} -> C0 = C^{2n} meet ker delta_C, with c."""

    def __init__(self, psi, n, ts=None):
        chern_guard(psi.field, n)
        self.psi = psi
        self.n = n
        self.ts = ts or TraceSpace(psi, 2 * n + 1)
        self.c = chern(psi, n, self.ts).rep
        self.boundaries = self.ts.boundaries(2 * n - 1)
        self.q1 = Quotient(self.boundaries)

    def reduce1(self, coords):
        """Canonical representative of an element of C1."""
        return tuple(self.q1.lift(self.q1.project(coords)).get(k, self.ts.field.zero)
                     for k in range(self.ts.dim(2 * self.n - 1)))

    def delta(self, coords):
        return self.ts.delta(2 * self.n - 1, coords)

    def well_formed(self):
        """delta maps C1 into ker delta_C and kills the boundaries."""
        ts, n = self.ts, self.n
        for row in ts.delta_matrix(2 * n - 1):
            if any(ts.delta(2 * n, row)):
                return False
        for row in self.boundaries.dense_rows():
            if any(self.delta(row)):
                return False
        return not any(ts.delta(2 * n, self.c))


def cs_object(psi, n):
    return TwoTermObject(psi, n)


def induced_trace_map(f, ts_src, ts_tgt, deg):
    """f_*: C^deg -> C'^deg, as rows (images of basis vectors)."""
    rows = []
    dim = ts_src.dim(deg)
    for k in range(dim):
        e = [ts_src.field.zero] * dim
        e[k] = ts_src.field.one
        rows.append(ts_tgt.T(f(ts_src.lift(deg, e))))
    return rows


def _apply_rows(rows, coords, dim, field):
    out = [field.zero] * dim
    for a, row in zip(coords, rows):
        if a:
            for j, v in enumerate(row):
                out[j] += a * v
    return tuple(out)


class TwoTermMorphism:
    """(f0, f1; c1) from one two-term object to another, f given on coordinates."""

    def __init__(self, source, target, f0, f1, c1):
        self.source = source
        self.target = target
        self.f0 = f0  # rows: C^{2n} -> C'^{2n}
        self.f1 = f1  # rows: C^{2n-1} -> C'^{2n-1}
        self.c1 = target.reduce1(c1)

    def apply0(self, coords):
        t = self.target
        return _apply_rows(self.f0, coords, t.ts.dim(2 * t.n), t.ts.field)

    def apply1(self, coords):
        t = self.target
        return _apply_rows(self.f1, coords, t.ts.dim(2 * t.n - 1), t.ts.field)

    def defining_equation(self):
        """c' - f0(c) == delta'(c1)."""
        t = self.target
        lhs = tuple(a - b for a, b in zip(t.c, self.apply0(self.source.c)))
        return lhs == t.delta(self.c1)

    def square_commutes(self):
        s, t = self.source, self.target
        dim = s.ts.dim(2 * s.n - 1)
        for k in range(dim):
            e = [s.ts.field.zero] * dim
            e[k] = s.ts.field.one
            if t.delta(self.apply1(e)) != self.apply0(s.delta(e)):
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, TwoTermMorphism) and self.f0 == other.f0
                and self.f1 == other.f1 and self.c1 == other.c1)

    def __hash__(self):
        return hash(self.c1)


def _rows_compose(outer, inner, dim, field):
    return [_apply_rows(outer, r, dim, field) for r in inner]


def c2_compose(m2, m1):
    """(f o g, c1'' + f(c1'))."""
    if m1.target is not m2.source and (m1.target.psi is not m2.source.psi or m1.target.n != m2.source.n):
        raise MorphismError("two-term morphisms are not composable")
    t = m2.target
    fld = t.ts.field
    f0 = _rows_compose(m2.f0, m1.f0, t.ts.dim(2 * t.n), fld)
    f1 = _rows_compose(m2.f1, m1.f1, t.ts.dim(2 * t.n - 1), fld)
    c1 = tuple(a + b for a, b in zip(m2.c1, m2.apply1(m1.c1)))
    return TwoTermMorphism(m1.source, t, f0, f1, c1)


def c2_identity(obj):
    fld = obj.ts.field
    n = obj.n

    def eye(d):
        return [tuple(fld.one if i == j else fld.zero for j in range(d)) for i in range(d)]

    return TwoTermMorphism(obj, obj, eye(obj.ts.dim(2 * n)), eye(obj.ts.dim(2 * n - 1)),
                           (fld.zero,) * obj.ts.dim(2 * n - 1))


def _poly_mul(alg, p, q):
    """Product of polynomials in t with coefficients in B (lists of Elements)."""
    out = [None] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        for b, y in enumerate(q):
            z = x * y
            out[a + b] = z if out[a + b] is None else out[a + b] + z
    return out


def segment_integral(psi0, n, a, b):
    """Integral of omega_n^(1) along the straight segment from a to b (an element of B^{2n-1})."""
    alg = psi0.alg
    fld = alg.field
    v = b - a
    h_poly = [h_at(psi0, a), delta_at(psi0, a, v), v * v]
    pows = [[alg.unit()]]
    for _ in range(n - 1):
        pows.append(_poly_mul(alg, pows[-1], h_poly))
    total = None
    for k in range(n):
        term = _poly_mul(alg, _poly_mul(alg, pows[k], [v]), pows[n - 1 - k])
        total = term if total is None else [x + y for x, y in zip(total, term)]
    out = alg.zero(2 * n - 1)
    for j, coeff in enumerate(total):
        out = out + coeff * (fld.one / fld(j + 1))
    return out


def path_integral(psi0, n, vertices):
    out = psi0.alg.zero(2 * n - 1)
    for a, b in zip(vertices, vertices[1:]):
        out = out + segment_integral(psi0, n, a, b)
    return out


def _cs_setup(m, n):
    chern_guard(m.source.field, n)
    psi0 = twist(m.target, -m.alpha)
    return psi0


def cs_morphism(m, n, src_obj=None, tgt_obj=None, check=True, path=None):
    """CS_n(f, alpha) = (f_*, integral of omega_n^(1) for target(-alpha) from 0 to alpha).

    path: optional list of intermediate points in B'^1 (a polygonal path);
    the default is the straight segment.
    """
    if check:
        v = verify_morphism(m, 2 * n + 1)
        if not v.ok:
            raise MorphismError("morphism does not verify: %r" % (v.failure,))
    psi0 = _cs_setup(m, n)
    src_obj = src_obj or TwoTermObject(m.source, n)
    tgt_obj = tgt_obj or TwoTermObject(m.target, n)
    zero = m.target.alg.zero(1)
    verts = [zero] + list(path or []) + [m.alpha]
    c1 = tgt_obj.ts.T(path_integral(psi0, n, verts))
    f0 = induced_trace_map(m.f, src_obj.ts, tgt_obj.ts, 2 * n)
    f1 = induced_trace_map(m.f, src_obj.ts, tgt_obj.ts, 2 * n - 1)
    return TwoTermMorphism(src_obj, tgt_obj, f0, f1, c1)


@dataclass
class CSClass:
    n: int
    representative: tuple
    cls: tuple
    boundary_ok: bool
    zero: bool

    def as_dict(self):
        return {"n": self.n, "representative": [str(x) for x in self.representative],
                "class": [str(x) for x in self.cls], "boundary_relation": self.boundary_ok,
                "class_is_zero": self.zero}


def cs_class(m, n):
    """Class of c_n^(1) in E^{2n-1}/(f(B^{2n-1}) + [E,E] + dE^{2n-2}) for m: psi -> E, E a DG-algebra."""
    if not m.target.h.is_zero():
        raise MorphismError("target of a Chern-Simons class must be a DG-algebra (h = 0)")
    v = verify_morphism(m, 2 * n + 1)
    if not v.ok:
        raise MorphismError("morphism does not verify: %r" % (v.failure,))
    psi0 = _cs_setup(m, n)
    tsE = TraceSpace(m.target, 2 * n + 1)
    tsB = TraceSpace(m.source, 2 * n + 1)
    zero = m.target.alg.zero(1)
    rep = tsE.T(path_integral(psi0, n, [zero, m.alpha]))
    # boundary relation: delta_C c1 = -f_*(c_n)
    cn = chern(m.source, n, tsB).rep
    fc = _apply_rows(induced_trace_map(m.f, tsB, tsE, 2 * n), cn, tsE.dim(2 * n), tsE.field)
    boundary_ok = tsE.delta(2 * n - 1, rep) == tuple(-x for x in fc)
    deg = 2 * n - 1
    rows = list(tsE.boundaries(deg).rows)
    for k in range(m.source.alg.dim(deg)):
        img = tsE.T(m.f.on_basis(deg, k))
        rows.append({j: x for j, x in enumerate(img) if x})
    sub = Subspace(tsE.dim(deg), rows, tsE.field)
    cls = Quotient(sub).project(rep)
    return CSClass(n, rep, cls, boundary_ok, not any(cls))


def retwist_source(m, beta):
    """The morphism psi(beta) -> E induced by m: (f, alpha - f(beta))."""
    src = twist(m.source, beta)
    f = GradedMap(src.alg, m.target.alg, m.f.images)
    return CDGMorphism(src, m.target, f, m.alpha - m.f(beta))


# enveloping-algebra trace space

def enveloping_trace_dims(p, N, slack=2):
    """dim F_n(A/[A,A]) for n <= N, with [A,A] = [generators, A]."""
    from .nonhom import saturation_subspace, tensor_filtered_dim
    from .tensor import FilteredTensorBasis
    g = p.gen_dim
    out = []
    for n in range(N + 1):
        top = n + 1
        fb = FilteredTensorBasis(g, top)
        J = saturation_subspace(p, top, top + slack)
        jn = saturation_subspace(p, n, n + slack).dim
        rows = list(J.rows)
        for a in range(g):
            for k in range(n + 1):
                for w in itertools.product(range(g), repeat=k):
                    row = {fb.index((a,) + w): p.field.one}
                    key = fb.index(w + (a,))
                    row[key] = row.get(key, p.field.zero) - p.field.one
                    rows.append({c: x for c, x in row.items() if x})
        comm = Subspace(fb.size, rows, p.field).dim - J.dim
        out.append(tensor_filtered_dim(g, n) - jn - comm)
    return out
