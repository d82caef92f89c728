"""CDG-algebras over truncated graded algebras, their morphisms, twists and
gauge transformations, and the duality with nonhomogeneous presentations.

A CDG-algebra is (B, d, h): d is given on the generators of B and extended by
d(ab) = d(a) b + (-1)^|a| a d(b); h lies in B^2.  Axioms: d^2 = [h, .] and
d(h) = 0.  A morphism (f, a): (B, d, h) -> (B', d', h') satisfies
d' f(x) = f(dx) + [a, f(x)] and h' = f(h) + d'a - a^2.
"""

from dataclasses import dataclass

from .field import QQ
from .graded import Element, GradedMap, identity_map, power
from .linalg import Subspace, solve
from .quadratic import QuadraticAlgebra, quadratic_dual
from .tensor import word_index
from .nonhom import NQPresentation, PresentationError


class NotADerivation(ValueError):
    pass


class MorphismError(ValueError):
    pass


def sign(n):
    return -1 if n % 2 else 1


class Derivation:
    """Degree +1 derivation determined by its values on generators."""

    def __init__(self, alg, images):
        self.alg = alg
        self.images = dict(images)
        for g in alg.generators():
            if g not in self.images:
                self.images[g] = alg.zero(g[0] + 1)
            elif self.images[g].degree != g[0] + 1:
                raise ValueError("d of generator %r must have degree %d" % (g, g[0] + 1))
        self._cache = {}

    def on_basis(self, n, i):
        key = (n, i)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        factors = alg.factor(n, i)
        out = alg.zero(n + 1)
        if factors:
            gens = [alg.gen_element(g) for g in factors]
            prefix = None
            pdeg = 0
            for p, g in enumerate(factors):
                term = self.images[g]
                if prefix is not None:
                    term = prefix * term
                for q in gens[p + 1:]:
                    term = term * q
                out = out + term * sign(pdeg)
                prefix = gens[p] if prefix is None else prefix * gens[p]
                pdeg += g[0]
        self._cache[key] = out
        return out

    def __call__(self, x):
        out = self.alg.zero(x.degree + 1)
        for i, a in enumerate(x.vec):
            if a:
                out = out + self.on_basis(x.degree, i) * a
        return out

    def matrix(self, n):
        """Columns: d of the degree-n basis elements."""
        return [self.on_basis(n, i).vec for i in range(self.alg.dim(n))]

    def leibniz_defect(self, max_degree):
        """First (generator, (n, i)) with d(g b) != d(g) b + (-1)^|g| g d(b)."""
        alg = self.alg
        for g in alg.generators():
            ge = alg.gen_element(g)
            for n in range(0, max_degree - g[0]):
                for i in range(alg.dim(n)):
                    b = alg.basis_element(n, i)
                    lhs = self(ge * b)
                    rhs = self.images[g] * b + (ge * self.on_basis(n, i)) * sign(g[0])
                    if lhs != rhs:
                        return g, (n, i)
        return None


def extend_derivation(alg, images, n, check_degree=None):
    """Matrix of the Leibniz extension on degree n; NotADerivation if ill-defined."""
    der = images if isinstance(images, Derivation) else Derivation(alg, images)
    bad = der.leibniz_defect(check_degree if check_degree is not None else n + 1)
    if bad is not None:
        raise NotADerivation("Leibniz rule fails for generator %r against basis element %r"
                             % bad)
    return der.matrix(n)


def images_from_d1(alg, d1):
    """Generator images from rows d1[k] = coordinates of d(x_k) in degree 2."""
    return {(1, k): alg.element(2, row) for k, row in enumerate(d1)}


class CDGAlgebra:
    def __init__(self, alg, d_images, h=None, name=None):
        self.alg = alg
        self.field = alg.field
        self.d = d_images if isinstance(d_images, Derivation) else Derivation(alg, d_images)
        self.h = alg.zero(2) if h is None else h
        if self.h.degree != 2:
            raise ValueError("curvature must have degree 2")
        self.name = name

    @classmethod
    def quadratic(cls, alg, d1=None, h=None, name=None):
        g = alg.dim(1)
        d1 = d1 if d1 is not None else [[0] * alg.dim(2)] * g
        hv = alg.element(2, h) if h is not None else alg.zero(2)
        return cls(alg, images_from_d1(alg, d1), hv, name)

    def d1_rows(self):
        return [self.d.images[(1, k)].vec for k in range(self.alg.dim(1))]

    def bracket(self, x, y):
        return self.alg.supercommutator(x, y)

    def is_flat(self):
        return self.h.is_zero()

    def __eq__(self, other):
        return (isinstance(other, CDGAlgebra) and other.alg == self.alg
                and other.h.vec == self.h.vec
                and all(other.d.images[g].vec == self.d.images[g].vec for g in self.alg.generators()))

    def __hash__(self):
        return hash(self.h.vec)

    def __repr__(self):
        return "CDGAlgebra(%s)" % (self.name or self.alg)


@dataclass
class Verdict:
    ok: bool
    failure: object = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def as_dict(self):
        return {"ok": self.ok, "failure": repr(self.failure) if self.failure is not None else None,
                "detail": self.detail}


def verify_cdg(psi, max_degree=6):
    alg = psi.alg
    bad = psi.d.leibniz_defect(max_degree)
    if bad is not None:
        return Verdict(False, ("leibniz",) + bad, "d does not extend to a derivation")
    for n in range(0, max_degree - 1):
        for i in range(alg.dim(n)):
            b = alg.basis_element(n, i)
            lhs = psi.d(psi.d.on_basis(n, i))
            rhs = psi.bracket(psi.h, b)
            if lhs != rhs:
                return Verdict(False, ("d^2 != [h,.]", n, i), "curvature axiom fails in degree %d" % n)
    if max_degree >= 3 and not psi.d(psi.h).is_zero():
        return Verdict(False, ("d(h) != 0",), "Bianchi identity fails")
    return Verdict(True)


def twist(psi, alpha):
    """psi(alpha): d' = d + [alpha, .], h' = h + d(alpha) + alpha^2."""
    alg = psi.alg
    if alpha.degree != 1:
        raise ValueError("twist needs a degree-1 element")
    imgs = {g: psi.d.images[g] + alg.supercommutator(alpha, alg.gen_element(g))
            for g in alg.generators()}
    h = psi.h + psi.d(alpha) + alpha * alpha
    return CDGAlgebra(alg, imgs, h, psi.name)


# morphisms

class CDGMorphism:
    def __init__(self, source, target, f, alpha=None):
        if f.source is not source.alg or f.target is not target.alg:
            raise MorphismError("algebra map does not match source/target")
        self.source = source
        self.target = target
        self.f = f
        self.alpha = target.alg.zero(1) if alpha is None else alpha

    def __eq__(self, other):
        return (isinstance(other, CDGMorphism) and other.source is self.source
                and other.target is self.target and other.f == self.f
                and other.alpha == self.alpha)

    def __hash__(self):
        return hash(self.alpha.vec)

    def __repr__(self):
        return "CDGMorphism(%r -> %r, alpha=%r)" % (self.source, self.target, self.alpha)


def identity_morphism(psi):
    return CDGMorphism(psi, psi, identity_map(psi.alg))


def twist_morphism(psi, alpha):
    """(id, alpha): psi -> psi(alpha)."""
    tgt = twist(psi, alpha)
    return CDGMorphism(psi, tgt, identity_map(psi.alg), alpha), tgt


def verify_morphism(m, max_degree=6):
    src, tgt, f, a = m.source, m.target, m.f, m.alpha
    bad = f.multiplicative_defect(max_degree)
    if bad is not None:
        return Verdict(False, ("not multiplicative",) + bad, "f does not respect relations")
    for n in range(0, max_degree):
        for i in range(src.alg.dim(n)):
            fx = f.on_basis(n, i)
            lhs = tgt.d(fx)
            rhs = f(src.d.on_basis(n, i)) + tgt.alg.supercommutator(a, fx)
            if lhs != rhs:
                return Verdict(False, ("d'f != f d + [a, f]", n, i), "differentials not intertwined")
    if tgt.h != f(src.h) + tgt.d(a) - a * a:
        return Verdict(False, ("h' != f(h) + d'a - a^2",), "curvature condition fails")
    return Verdict(True)


def compose(m2, m1):
    """m2 o m1 = (f o g, alpha + f(beta))."""
    if m1.target is not m2.source:
        raise MorphismError("morphisms are not composable")
    return CDGMorphism(m1.source, m2.target, m2.f.compose(m1.f), m2.alpha + m2.f(m1.alpha))


def degree0_inverse(alg, z):
    """Two-sided inverse of a degree-0 element, or MorphismError."""
    n0 = alg.dim(0)
    cols = [(z * alg.basis_element(0, i)).vec for i in range(n0)]
    x, _ = solve(cols, alg.unit().vec, n0, alg.field)
    if x is None:
        raise MorphismError("gauge element is not invertible")
    w = alg.element(0, x)
    if w * z != alg.unit():
        raise MorphismError("gauge element has no two-sided inverse")
    return w


def gauge(m, z):
    """Conjugate (f, a) by an invertible z of degree 0 in the target."""
    tgt = m.target.alg
    if z.degree != 0 or z.alg is not tgt:
        raise MorphismError("gauge element must have degree 0 in the target")
    zi = degree0_inverse(tgt, z)
    f = GradedMap(m.f.source, tgt, {g: z * img * zi for g, img in m.f.images.items()})
    beta = z * m.alpha * zi + m.target.d(z) * zi
    return CDGMorphism(m.source, m.target, f, beta)


# matrix-coefficient CDG-algebras

def exterior_background(alg, d0_forms):
    """Flat CDG structure on Mat_r (x) Lambda_m with d(e_s) = d0_forms[s] (a {S: c} 2-form)."""
    imgs = {}
    for g in alg.generators():
        deg, idx = g
        if deg == 0:
            imgs[g] = alg.zero(1)
        else:
            i, j, s = alg.basis_label(1, idx)
            form = d0_forms.get(s[0], {}) if d0_forms else {}
            imgs[g] = alg.form(2, {(i, j, S): c for S, c in form.items()})
    return CDGAlgebra(alg, imgs, alg.zero(2), "background")


def matrix_connection(alg, d0_forms, alpha0, omega=None, name="matrix_connection"):
    """Twist of the flat background by the connection form alpha0; omega adds a
    central closed scalar 2-form to the curvature."""
    bg = exterior_background(alg, d0_forms)
    psi = twist(bg, alpha0)
    if omega:
        psi = CDGAlgebra(alg, psi.d, psi.h + alg.scalar_form(2, omega), name)
    psi.name = name
    psi.background = bg
    psi.alpha0 = alpha0
    return psi


# duality with presentations

def _pair_rows(alg2_vec, B, I_rows):
    """<lift of a B^2 element, p_i> for the canonical rows p_i of I."""
    g = B.gen_dim
    lifted = {word_index(w, g): c for w, c in zip(B.component(2).words, alg2_vec) if c}
    out = []
    for row in I_rows:
        out.append(sum((c * row.get(k, 0) for k, c in lifted.items()), B.field.zero))
    return out


def functional_to_B2(B, I, values):
    """Class in B^2 = (V(x)V)^*/I^perp of the functional p_i -> values[i]."""
    vec = {c: v for c, v in zip(I.pivots, values) if v}
    return B.from_sparse(2, B.project(2, vec))


def dualize(p, name=None):
    """The CDG-algebra (B, d, h) with B = A^(0)!, d_1 = phi^*, h = hc^*."""
    A0 = QuadraticAlgebra(p.gen_dim, p.I, p.names)
    B = quadratic_dual(A0)
    g = p.gen_dim
    imgs = {}
    for k in range(g):
        imgs[(1, k)] = functional_to_B2(B, p.I, [row[k] for row in p.phi])
    h = functional_to_B2(B, p.I, p.hc)
    return CDGAlgebra(B, imgs, h, name)


def reconstruct(psi):
    """The presentation (*) read off from a quadratic CDG-algebra."""
    B = psi.alg
    if not isinstance(B, QuadraticAlgebra):
        raise TypeError("reconstruct needs a quadratic CDG-algebra")
    I = B.relations.annihilator()
    g = B.gen_dim
    cols = [_pair_rows(psi.d.images[(1, k)].vec, B, I.rows) for k in range(g)]
    phi = [[cols[k][i] for k in range(g)] for i in range(I.dim)]
    hc = _pair_rows(psi.h.vec, B, I.rows)
    names = [n[:-1] if n.endswith("*") else n + "^" for n in B.names]
    return NQPresentation(g, I, phi, hc, None, names)


def dualize_presentation_morphism(p, q, F, a, psi_p=None, psi_q=None):
    """CDG morphism D(q) -> D(p) dual to the algebra map A(p) -> A(q) given on
    generators by v_j -> sum_k F[k][j] w_k + a[j]."""
    g, h = p.gen_dim, q.gen_dim
    fld = p.field
    F = [[fld(x) for x in row] for row in F]
    a = [fld(x) for x in a]
    if len(F) != h or any(len(r) != g for r in F) or len(a) != g:
        raise MorphismError("generator map has the wrong shape")
    # image of each J2 row of p in T_2(W), FilteredTensorBasis(h, 2) coordinates
    img_rows = []
    for row in p.j2_rows():
        out = {}

        def add(k, v):
            out[k] = out.get(k, fld.zero) + v

        for c, v in row.items():
            if c == 0:
                add(0, v)
            elif c < 1 + g:
                j = c - 1
                add(0, v * a[j])
                for k in range(h):
                    if F[k][j]:
                        add(1 + k, v * F[k][j])
            else:
                x, y = divmod(c - 1 - g, g)
                lx = [(1 + k, F[k][x]) for k in range(h) if F[k][x]] + ([(0, a[x])] if a[x] else [])
                ly = [(1 + k, F[k][y]) for k in range(h) if F[k][y]] + ([(0, a[y])] if a[y] else [])
                for cx, vx in lx:
                    for cy, vy in ly:
                        if cx and cy:
                            add(1 + h + (cx - 1) * h + (cy - 1), v * vx * vy)
                        elif cx:
                            add(cx, v * vx * vy)
                        elif cy:
                            add(cy, v * vx * vy)
                        else:
                            add(0, v * vx * vy)
        img_rows.append({k: v for k, v in out.items() if v})
    jq = Subspace(1 + h + h * h, q.j2_rows(), fld)
    for r in img_rows:
        if r not in jq:
            raise MorphismError("generator map does not carry relations into relations")
    psi_p = psi_p or dualize(p)
    psi_q = psi_q or dualize(q)
    Bp, Bq = psi_p.alg, psi_q.alg
    images = {(1, k): Bp.element(1, [F[k][j] for j in range(g)]) for k in range(h)}
    f = GradedMap(Bq, Bp, images)
    alpha = Bp.element(1, [-x for x in a])
    return CDGMorphism(psi_q, psi_p, f, alpha)
