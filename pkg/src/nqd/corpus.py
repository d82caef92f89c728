"""Builders for the standard examples: enveloping algebras, central
extensions, Clifford and Weyl algebras, cobar constructions, matrix-valued
connections and a presentation that fails PBW.
"""

import random
from dataclasses import dataclass

from .field import QQ
from .graded import MatrixExteriorAlgebra, GradedMap
from .nonhom import NQPresentation, PresentationError
from .quadratic import symmetric_algebra, exterior_algebra, free_algebra, QuadraticAlgebra
from .cdg import (CDGAlgebra, CDGMorphism, dualize, matrix_connection as _matrix_connection,
                  exterior_background, verify_cdg)


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class LieData:
    """Structure constants: brackets[(i, j)] = {k: c} for [x_i, x_j] = sum c x_k, i < j."""
    dim: int
    brackets: tuple  # ((i, j, k, c), ...)
    names: tuple = None

    @classmethod
    def from_dict(cls, dim, brackets, names=None):
        flat = []
        for (i, j), out in sorted(brackets.items()):
            if i == j:
                raise CorpusError("[x_%d, x_%d] must vanish" % (i, i))
            if i > j:
                i, j = j, i
                out = {k: -c for k, c in out.items()}
            for k, c in sorted(out.items()):
                if c:
                    flat.append((i, j, k, c))
        return cls(dim, tuple(flat), tuple(names) if names else None)

    def bracket(self, i, j, field=QQ):
        """[x_i, x_j] as a coefficient list."""
        out = [field.zero] * self.dim
        if i == j:
            return out
        s = 1
        if i > j:
            i, j, s = j, i, -1
        for a, b, k, c in self.brackets:
            if (a, b) == (i, j):
                out[k] += field(c) * s
        return out

    def jacobi_defect(self, field=QQ):
        """First triple where the cyclic Jacobi sum is nonzero (direct check), or None."""
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    tot = [field.zero] * n
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket(a, b, field)
                        for m, v in enumerate(inner):
                            if v:
                                outer = self.bracket(m, c, field)
                                for t in range(n):
                                    tot[t] += v * outer[t]
                    if any(tot):
                        return (i, j, k)
        return None


def abelian(n):
    return LieData(n, (), tuple("x%d" % i for i in range(n)))


def heis3():
    return LieData.from_dict(3, {(0, 1): {2: 1}}, ("x", "y", "z"))


def sl2():
    # e, f, h with [e,f] = h, [h,e] = 2e, [h,f] = -2f
    return LieData.from_dict(3, {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}, ("e", "f", "h"))


def non_jacobi():
    # [x,y] = y, [y,z] = x, [x,z] = 0 violates Jacobi
    return LieData.from_dict(3, {(0, 1): {1: 1}, (1, 2): {0: 1}}, ("x", "y", "z"))


def _lie_relations(g, field, cocycle=None):
    rels = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            br = g.bracket(i, j, field)
            lin = {k: -c for k, c in enumerate(br) if c}
            sc = -field(cocycle.get((i, j), 0)) if cocycle else 0
            rels.append(({(i, j): 1, (j, i): -1}, lin, sc))
    return rels


def enveloping(g, field=QQ):
    """U(g): xy - yx - [x,y] = 0, augmented by eps = 0 on generators."""
    names = list(g.names) if g.names else None
    return NQPresentation.from_relations(g.dim, _lie_relations(g, field), field,
                                         augmentation=[0] * g.dim, names=names)


def cocycle_defect(g, omega, field=QQ):
    """First triple where omega([x,y],z) + cyclic is nonzero, or None."""
    n = g.dim

    def om(a, b):
        if a == b:
            return field.zero
        if a < b:
            return field(omega.get((a, b), 0))
        return -field(omega.get((b, a), 0))

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                tot = field.zero
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    br = g.bracket(a, b, field)
                    tot += sum((v * om(m, c) for m, v in enumerate(br) if v), field.zero)
                if tot:
                    return (i, j, k)
    return None


def central_extension(g, omega, field=QQ):
    """U(g~)/(1 - c) for the central extension by a 2-cocycle omega {(i, j): c}, i < j."""
    for (i, j) in omega:
        if not 0 <= i < j < g.dim:
            raise CorpusError("cocycle keys must be pairs i < j < %d" % g.dim)
    bad = cocycle_defect(g, omega, field)
    if bad is not None:
        raise CorpusError("not a 2-cocycle: cyclic sum nonzero on %r" % (bad,))
    names = list(g.names) if g.names else None
    return NQPresentation.from_relations(g.dim, _lie_relations(g, field, omega), field,
                                         names=names)


def weyl(field=QQ):
    """xy - yx = 1."""
    g = LieData(2, (), ("x", "y"))
    return central_extension(g, {(0, 1): 1}, field)


def heis3_extension(field=QQ):
    """heis3 extended by the exact cocycle x* ^ y*: xy - yx = z + 1."""
    return central_extension(heis3(), {(0, 1): 1}, field)


@dataclass(frozen=True)
class QuadraticFormData:
    dim: int
    Q: tuple

    def __post_init__(self):
        if any(self.Q[i][j] != self.Q[j][i] for i in range(self.dim) for j in range(self.dim)):
            raise CorpusError("Q must be symmetric")


def clifford(q, field=QQ, names=None):
    """vw + wv = Q(v, w)."""
    rels = []
    for i in range(q.dim):
        for j in range(i, q.dim):
            quad = {(i, j): 1, (j, i): 1} if i != j else {(i, i): 2}
            rels.append((quad, {}, -field(q.Q[i][j])))
    return NQPresentation.from_relations(q.dim, rels, field, names=names)


def lambda_clifford(lam, field=QQ, names=None):
    """vw + wv = lam(v) w + lam(w) v, augmented by eps = 0."""
    n = len(lam)
    rels = []
    for i in range(n):
        for j in range(i, n):
            quad = {(i, j): 1, (j, i): 1} if i != j else {(i, i): 2}
            lin = {}
            lin[j] = lin.get(j, 0) - field(lam[i])
            lin[i] = lin.get(i, 0) - field(lam[j])
            rels.append((quad, lin, 0))
    return NQPresentation.from_relations(n, rels, field, augmentation=[0] * n, names=names)


def counterexample(field=QQ):
    """xy = x + y, x^2 + yz = z: consistency forces yz = zy, so PBW fails in degree 2."""
    rels = [({(0, 1): 1}, {0: -1, 1: -1}, 0),
            ({(0, 0): 1, (1, 2): 1}, {2: -1}, 0)]
    return NQPresentation.from_relations(3, rels, field, names=["x", "y", "z"])


def symmetric_presentation(n, field=QQ):
    return enveloping(abelian(n), field)


def exterior_presentation(n, field=QQ):
    return clifford(QuadraticFormData(n, tuple(tuple(0 for _ in range(n)) for _ in range(n))), field)


# cobar constructions of small augmented algebras

def check_associative(table, field=QQ):
    """table[i][j] = {k: c}: a_i a_j = sum c a_k on the augmentation ideal."""
    r = len(table)
    for i in range(r):
        for j in range(r):
            for k in range(r):
                left = {}
                for m, c in table[i][j].items():
                    for t, v in table[m][k].items():
                        left[t] = left.get(t, 0) + field(c) * field(v)
                right = {}
                for m, c in table[j][k].items():
                    for t, v in table[i][m].items():
                        right[t] = right.get(t, 0) + field(c) * field(v)
                if {a: b for a, b in left.items() if b} != {a: b for a, b in right.items() if b}:
                    return (i, j, k)
    return None


def augmented_presentation(table, field=QQ, names=None):
    """The finite-dimensional algebra k + A_+ presented by all products a_i a_j = sum c a_k."""
    r = len(table)
    bad = check_associative(table, field)
    if bad is not None:
        raise CorpusError("multiplication table is not associative at %r" % (bad,))
    rels = []
    for i in range(r):
        for j in range(r):
            rels.append(({(i, j): 1}, {k: -field(c) for k, c in table[i][j].items()}, 0))
    return NQPresentation.from_relations(r, rels, field, augmentation=[0] * r, names=names)


def cobar_of(table, field=QQ, names=None):
    """Reduced cobar construction: free algebra on A_+^* with d dual to the product."""
    r = len(table)
    if r == 0:
        return CDGAlgebra.quadratic(free_algebra(0, field))
    return dualize(augmented_presentation(table, field, names), name="cobar")


def dual_numbers_table():
    return [[{}]]


def idempotent_table():
    """k x k with A_+ spanned by an idempotent e."""
    return [[{0: 1}]]


# matrix-valued connections

def random_alpha0(alg, seed, lo=-2, hi=2):
    rng = random.Random(seed)
    entries = {}
    for i in range(alg.r):
        for j in range(alg.r):
            for s in range(alg.m):
                c = rng.randint(lo, hi)
                if c:
                    entries[(i, j, (s,))] = c
    return alg.form(1, entries)


HEIS_BACKGROUND = {2: {(0, 1): -1}}


def matrix_connection(r=2, m=3, d0=None, seed=0, alpha0=None, omega=None, field=QQ):
    """Twist of the flat background (Mat_r (x) Lambda_m, d0) by a matrix-valued 1-form."""
    alg = MatrixExteriorAlgebra(r, m, field)
    d0 = HEIS_BACKGROUND if d0 is None and m == 3 else (d0 or {})
    bg = exterior_background(alg, d0)
    v = bg.d.leibniz_defect(m)
    if v is not None or not verify_cdg(bg, m + 1).ok:
        raise CorpusError("background differential is not a flat CDG structure")
    if alpha0 is None:
        alpha0 = random_alpha0(alg, seed)
    elif not hasattr(alpha0, "degree"):
        alpha0 = alg.form(1, alpha0)
    return _matrix_connection(alg, d0, alpha0, omega)


def matrix_connection_symplectic(seed=0, field=QQ):
    """r = 2, m = 4, d0 = 0, curvature shifted by omega = e0e1 + e2e3."""
    return matrix_connection(2, 4, {}, seed, omega={(0, 1): 1, (2, 3): 1}, field=field)


def rank1_total_space(psi):
    """For a rank-1 matrix connection with scalar curvature h, the DG-algebra
    Lambda(e_0..e_m) with d e_m = -h and the morphism (inclusion, e_m) into it."""
    src = psi.alg
    if not isinstance(src, MatrixExteriorAlgebra) or src.r != 1:
        raise CorpusError("needs a rank-1 matrix connection")
    m = src.m
    E = MatrixExteriorAlgebra(1, m + 1, src.field)
    forms = {}
    for s in range(m):
        img = psi.d.images[(1, src.index(0, 0, (s,)))]
        forms[s] = {S: c for (i, j, S), c in _form_entries(src, img).items()}
    forms[m] = {S: -c for (i, j, S), c in _form_entries(src, psi.h).items()}
    tgt = exterior_background(E, forms)
    images = {(0, src.index(0, 0, ())): E.unit()}
    for s in range(m):
        images[(1, src.index(0, 0, (s,)))] = E.basis_element(1, E.index(0, 0, (s,)))
    f = GradedMap(src, E, images)
    alpha = E.basis_element(1, E.index(0, 0, (m,)))
    return CDGMorphism(psi, tgt, f, alpha)


def _form_entries(alg, x):
    return {alg.basis_label(x.degree, k): c for k, c in enumerate(x.vec) if c}


def weyl_total_space():
    """The Weyl dual (Lambda(x*, y*), 0, h) mapped into Lambda(x*, y*, z*) with d z* = -h, alpha = z*."""
    psi = dualize(weyl())
    B = psi.alg
    E = exterior_algebra(3, B.field, ["x*", "y*", "z*"])
    # h in B^2 is c * (normal word of B^2); copy it to E through the word
    hw = {B.component(2).words[k]: c for k, c in enumerate(psi.h.vec) if c}
    h_in_E = E.zero(2)
    for w, c in hw.items():
        h_in_E = h_in_E + E.word_element(w) * c
    imgs = {(1, 0): E.zero(2), (1, 1): E.zero(2), (1, 2): -h_in_E}
    tgt = CDGAlgebra(E, imgs, None, "weyl_total_space")
    f = GradedMap(B, E, {(1, 0): E.basis_element(1, 0), (1, 1): E.basis_element(1, 1)})
    return CDGMorphism(psi, tgt, f, E.basis_element(1, 2))


def heis3_ce_morphism():
    """The heis3-extension dual mapped into the Chevalley-Eilenberg algebra of heis3."""
    src = dualize(heis3_extension())
    tgt = dualize(enveloping(heis3()))
    f = GradedMap(src.alg, tgt.alg, {(1, k): tgt.alg.basis_element(1, k) for k in range(3)})
    # solve d alpha = -f(h) within span(z*)
    dz = tgt.d.images[(1, 2)]
    fh = f(src.h)
    ratio = None
    for a, b in zip(fh.vec, dz.vec):
        if b:
            ratio = -a / b
            break
    alpha = tgt.alg.basis_element(1, 2) * ratio
    return CDGMorphism(src, tgt, f, alpha)


# registry used by fixtures, the CLI and the tests

PRESENTATIONS = {
    "clifford2": lambda fld=QQ: clifford(QuadraticFormData(2, ((1, 0), (0, 1))), fld),
    "clifford3": lambda fld=QQ: clifford(QuadraticFormData(3, ((1, 0, 0), (0, 1, 0), (0, 0, -1))), fld),
    "lambda_clifford2": lambda fld=QQ: lambda_clifford([1, 2], fld),
    "u_abelian3": lambda fld=QQ: enveloping(abelian(3), fld),
    "u_heis3": lambda fld=QQ: enveloping(heis3(), fld),
    "u_sl2": lambda fld=QQ: enveloping(sl2(), fld),
    "weyl": weyl,
    "heis3_ext": heis3_extension,
    "counterexample": counterexample,
    "sym2": lambda fld=QQ: symmetric_presentation(2, fld),
    "ext3": lambda fld=QQ: exterior_presentation(3, fld),
    "dual_numbers": lambda fld=QQ: augmented_presentation(dual_numbers_table(), fld),
    "idempotent": lambda fld=QQ: augmented_presentation(idempotent_table(), fld),
}

KOSZUL_PRESENTATIONS = ["clifford2", "clifford3", "lambda_clifford2", "u_abelian3", "u_heis3",
                        "u_sl2", "weyl", "heis3_ext", "sym2", "ext3"]

MATRIX_CONNECTIONS = {
    "matrix_connection": lambda fld=QQ: matrix_connection(2, 3, seed=0, field=fld),
    "matrix_connection_symplectic": lambda fld=QQ: matrix_connection_symplectic(0, fld),
}


def presentation(name, field=QQ):
    try:
        build = PRESENTATIONS[name]
    except KeyError:
        raise CorpusError("unknown corpus presentation %r" % name) from None
    return build(field)


def connection(name, field=QQ):
    try:
        build = MATRIX_CONNECTIONS[name]
    except KeyError:
        raise CorpusError("unknown matrix connection %r" % name) from None
    return build(field)


def quadratic_corpus():
    return {
        "S2": symmetric_algebra(2),
        "S3": symmetric_algebra(3),
        "L3": exterior_algebra(3),
        "free2": free_algebra(2),
        "xx": QuadraticAlgebra(2, _rel_subspace(2, [{(0, 0): 1}]), ["a", "b"]),
    }


def _rel_subspace(g, rels):
    from .quadratic import relations_from_words
    return relations_from_words(g, rels)
