import random

import pytest

from nqd import corpus
from nqd.cdg import (CDGAlgebra, CDGMorphism, NotADerivation, MorphismError, dualize, reconstruct,
                     verify_cdg, verify_morphism, twist, twist_morphism, identity_morphism, compose,
                     gauge, dualize_presentation_morphism, extend_derivation)
from nqd.field import QQ
from nqd.graded import GradedMap
from nqd.nonhom import change_complement
from nqd.quadratic import exterior_algebra, symmetric_algebra

from conftest import presentation, dual, connection


def cyclic_jacobi_nonzero(dim, brackets):
    """Direct Jacobi check on structure constants {(i, j): {k: c}} (antisymmetric completion)."""
    def br(i, j):
        if (i, j) in brackets:
            return brackets[(i, j)]
        if (j, i) in brackets:
            return {k: -c for k, c in brackets[(j, i)].items()}
        return {}

    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                tot = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, v in br(a, b).items():
                        for t, w in br(m, c).items():
                            tot[t] = tot.get(t, 0) + v * w
                if any(tot.values()):
                    return True
    return False


@pytest.mark.parametrize("name", sorted(corpus.PRESENTATIONS))
def test_corpus_duals_are_cdg(name):
    assert verify_cdg(dual(name), 5).ok


@pytest.mark.parametrize("name", sorted(corpus.PRESENTATIONS))
def test_reconstruct_roundtrip(name):
    p = presentation(name)
    q = reconstruct(dual(name))
    assert (q.I, q.phi, q.hc) == (p.I, p.phi, p.hc)


def test_non_jacobi_rejected():
    g = corpus.non_jacobi()
    assert cyclic_jacobi_nonzero(3, {(0, 1): {1: 1}, (1, 2): {0: 1}})
    assert g.jacobi_defect() is not None
    v = verify_cdg(dualize(corpus.enveloping(g)), 5)
    assert not v.ok and "d^2" in v.failure[0]


@pytest.mark.parametrize("seed", range(12))
def test_random_brackets_cdg_iff_jacobi(seed):
    rng = random.Random(seed)
    br = {}
    for (i, j) in [(0, 1), (0, 2), (1, 2)]:
        out = {k: rng.randint(-1, 1) for k in range(3)}
        br[(i, j)] = {k: c for k, c in out.items() if c}
    if seed % 3 == 0:
        br = {(0, 1): {2: rng.randint(1, 2)}}   # nilpotent, always Lie
    g = corpus.LieData.from_dict(3, br)
    ok = verify_cdg(dualize(corpus.enveloping(g)), 4).ok
    assert ok == (not cyclic_jacobi_nonzero(3, br))


def test_matrix_connections_are_cdg():
    for name in corpus.MATRIX_CONNECTIONS:
        assert verify_cdg(connection(name), 5).ok


def test_leibniz_violation_detected():
    L = exterior_algebra(2)
    extend_derivation(L, {(1, 0): L.basis_element(2, 0), (1, 1): L.zero(2)}, 1)
    # in S(2), d(x) = x^2 gives d(xy) = x^2 y but d(yx) = -y x^2
    S = symmetric_algebra(2)
    imgs = {(1, 0): S.word_element((0, 0)), (1, 1): S.zero(2)}
    with pytest.raises(NotADerivation):
        extend_derivation(S, imgs, 1, check_degree=3)


@pytest.mark.parametrize("seed", range(6))
def test_twist_and_compose(seed):
    rng = random.Random(seed)
    psi = dual(rng.choice(["u_heis3", "weyl", "clifford2", "u_sl2"]))
    B = psi.alg
    a = B.element(1, [rng.randint(-2, 2) for _ in range(B.dim(1))])
    b = B.element(1, [rng.randint(-2, 2) for _ in range(B.dim(1))])
    m1, t1 = twist_morphism(psi, a)
    m2, t2 = twist_morphism(t1, b)
    assert verify_cdg(t1, 4).ok and verify_morphism(m1, 4).ok
    c = compose(m2, m1)
    assert verify_morphism(c, 4).ok
    assert c.alpha == a + b
    assert t2 == twist(psi, a + b)


def test_compose_rejects_mismatch():
    psi = dual("weyl")
    m, t = twist_morphism(psi, psi.alg.basis_element(1, 0))
    with pytest.raises(MorphismError):
        compose(m, m)


def test_gauge_preserves_morphisms():
    psi = connection("matrix_connection")
    alg = psi.alg
    m = identity_morphism(psi)
    # z = 1 + E_01 is invertible in Mat_2
    z = alg.unit() + alg.form(0, {(0, 1, ()): 1})
    g = gauge(m, z)
    assert verify_morphism(g, 4).ok
    with pytest.raises(MorphismError):
        gauge(m, alg.form(0, {(0, 1, ()): 1}))


def test_dual_morphism_sign():
    # heis3 -> S(2) killing z, with constant shifts on x and y
    m = dualize_presentation_morphism(presentation("u_heis3"), presentation("sym2"),
                                      [[1, 0, 0], [0, 1, 0]], [1, 2, 0])
    assert verify_morphism(m, 4).ok
    with pytest.raises(MorphismError):
        dualize_presentation_morphism(presentation("u_heis3"), presentation("sym2"),
                                      [[1, 0, 0], [0, 1, 0]], [0, 0, 1])
    # xy - yx = z + 1 maps to xy - yx = z under z -> z - 1; here the sign of alpha matters
    p, q = presentation("heis3_ext"), presentation("u_heis3")
    I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    m = dualize_presentation_morphism(p, q, I3, [0, 0, -1])
    assert verify_morphism(m, 4).ok
    flipped = CDGMorphism(m.source, m.target, m.f, -m.alpha)
    assert not verify_morphism(flipped, 4).ok


@pytest.mark.parametrize("name", ["u_heis3", "clifford2", "weyl", "u_sl2"])
def test_complement_change_is_twist(name):
    p = presentation(name)
    alpha = [QQ(k + 1) for k in range(p.gen_dim)]
    lhs = dualize(change_complement(p, alpha))
    B = lhs.alg
    rhs = twist(dual(name), dual(name).alg.element(1, [-x for x in alpha]))
    assert lhs.h.vec == rhs.h.vec
    assert all(lhs.d.images[g].vec == rhs.d.images[g].vec for g in B.generators())


def test_complement_change_morphism():
    p = presentation("weyl")
    alpha = [QQ(2), QQ(-1)]
    q = change_complement(p, alpha)
    # the identity on V with constants alpha carries p's relations to q's
    m = dualize_presentation_morphism(q, p, [[1, 0], [0, 1]], [-x for x in alpha])
    assert verify_morphism(m, 4).ok


def test_corpus_morphisms():
    for m in (corpus.weyl_total_space(), corpus.heis3_ce_morphism()):
        assert verify_morphism(m, 4).ok
