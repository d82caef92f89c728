import itertools
import random
from math import comb

import pytest

from nqd import corpus
from nqd.cdg import twist_morphism, compose, gauge, identity_morphism, MorphismError
from nqd.charclasses import (TraceSpace, chern, chern_invariance, chern_guard, omega, d_omega,
                             verify_transgression, simplex_grid, cs_morphism, cs_object, c2_compose,
                             c2_identity, cs_class, retwist_source, enveloping_trace_dims,
                             random_degree1, segment_integral)
from nqd.field import CharacteristicError, PrimeField

from conftest import presentation, dual, connection
from oracles import lie_coinvariant_dims


def test_trace_space_of_exterior_is_everything():
    psi = dual("weyl")
    ts = TraceSpace(psi, 3)
    for n in range(3):
        assert ts.dim(n) == psi.alg.dim(n)


def test_trace_space_of_matrix_forms():
    psi = connection("matrix_connection")
    alg = psi.alg
    ts = TraceSpace(psi, 3)
    for n in range(4):
        assert ts.dim(n) == comb(alg.m, n)
    # the trace of a 0-form is its matrix trace
    x = alg.form(0, {(0, 0, ()): 3, (1, 1, ()): 4, (0, 1, ()): 7})
    assert ts.T(x) == ts.T(alg.form(0, {(1, 1, ()): 7}))


@pytest.mark.parametrize("name", ["matrix_connection", "matrix_connection_symplectic"])
def test_trace_kills_squares_of_odd_elements(name):
    psi = connection(name)
    ts = TraceSpace(psi, 3)
    rng = random.Random(1)
    for _ in range(5):
        a = random_degree1(psi.alg, rng)
        assert not any(ts.T(a * a))


@pytest.mark.parametrize("name", ["matrix_connection", "matrix_connection_symplectic"])
def test_trace_differential_squares_to_zero(name):
    ts = TraceSpace(connection(name), 5)
    for n in range(connection(name).alg.m - 1):
        assert ts.square_zero(n)


def test_chern_matrix_connection():
    psi = connection("matrix_connection")
    c1 = chern(psi, 1)
    assert c1.closed_in_B and c1.closed_in_C
    assert any(c1.rep) and c1.trivial
    c2 = chern(psi, 2)
    assert not any(c2.rep)


def test_chern_symplectic_nontrivial():
    psi = connection("matrix_connection_symplectic")
    for n in (1, 2):
        c = chern(psi, n)
        assert c.closed_in_C and not c.trivial


def test_chern_weyl_curvature():
    c = chern(dual("weyl"), 1)
    assert c.closed_in_C and not c.trivial


@pytest.mark.parametrize("name,n", [("matrix_connection", 1), ("matrix_connection_symplectic", 1),
                                    ("matrix_connection_symplectic", 2)])
def test_chern_twist_invariance(name, n):
    v = chern_invariance(connection(name), n, twists=6, seed=3)
    assert v.ok and v.delta_equal


def test_characteristic_guard():
    chern_guard(PrimeField(5), 2)
    with pytest.raises(CharacteristicError):
        chern_guard(PrimeField(5), 3)
    with pytest.raises(CharacteristicError):
        chern(corpus.dualize(corpus.weyl(PrimeField(5))), 3)


def test_omega_small_cases():
    psi = connection("matrix_connection")
    alg = psi.alg
    rng = random.Random(2)
    a = random_degree1(alg, rng)
    xi = random_degree1(alg, rng)
    h = psi.h + psi.d(a) + a * a
    assert omega(psi, 2, 0, a, []) == h * h
    assert omega(psi, 1, 1, a, [xi]) == xi
    assert omega(psi, 2, 1, a, [xi]) == xi * h + h * xi


def test_omega_alternating():
    psi = connection("matrix_connection_symplectic")
    rng = random.Random(4)
    a, x, y = (random_degree1(psi.alg, rng) for _ in range(3))
    assert omega(psi, 2, 2, a, [x, y]) == -omega(psi, 2, 2, a, [y, x])


def test_simplex_grid_size():
    for v, D in [(2, 3), (3, 1), (4, 2), (0, 5)]:
        pts = list(simplex_grid(v, D))
        assert len(pts) == comb(v + D, D) == len(set(pts))


@pytest.mark.parametrize("name,n", [("matrix_connection", 1), ("matrix_connection", 2),
                                    ("matrix_connection_symplectic", 1)])
def test_transgression_matrix(name, n):
    v = verify_transgression(connection(name), n)
    assert v.ok and v.certified


@pytest.mark.parametrize("name", ["weyl", "u_heis3", "clifford2"])
def test_transgression_corpus(name):
    for n in (1, 2):
        v = verify_transgression(dual(name), n)
        assert v.ok and v.certified


def test_d_omega_lowest_level():
    # at alpha = 0 the derivative of h(alpha) along xi is d0(xi)
    psi = dual("weyl")
    a = psi.alg.zero(1)
    xi = psi.alg.basis_element(1, 0)
    assert d_omega(psi, 1, 0, a, [xi]) == psi.d(xi)


def _twist_gauge_pairs(psi, rng):
    a = random_degree1(psi.alg, rng, -1, 1)
    m1, t1 = twist_morphism(psi, a)
    b = random_degree1(psi.alg, rng, -1, 1)
    m2, t2 = twist_morphism(t1, b)
    if rng.random() < 0.5:
        z = psi.alg.unit() + psi.alg.form(0, {(0, 1, ()): rng.choice([1, -1])})
        m2 = gauge(m2, z)
    return m1, m2


@pytest.mark.parametrize("seed", range(25))
def test_cs_functorial(seed):
    rng = random.Random(seed)
    psi = connection("matrix_connection")
    n = 1 + seed % 2
    m1, m2 = _twist_gauge_pairs(psi, rng)
    c1 = cs_morphism(m1, n)
    c2 = cs_morphism(m2, n, src_obj=c1.target)
    c12 = cs_morphism(compose(m2, m1), n, src_obj=c1.source, tgt_obj=c2.target)
    assert c1.defining_equation() and c2.defining_equation() and c12.defining_equation()
    assert c1.square_commutes()
    assert c2_compose(c2, c1) == c12


def test_cs_identity():
    psi = connection("matrix_connection_symplectic")
    obj = cs_object(psi, 2)
    assert obj.well_formed()
    assert cs_morphism(identity_morphism(psi), 2, obj, obj) == c2_identity(obj)


def test_cs_path_independence_up_to_boundary():
    psi = connection("matrix_connection")
    rng = random.Random(9)
    m, _ = twist_morphism(psi, random_degree1(psi.alg, rng, -1, 1))
    mid = random_degree1(psi.alg, rng)
    for n in (1, 2):
        straight = cs_morphism(m, n)
        bent = cs_morphism(m, n, straight.source, straight.target, path=[mid])
        assert straight == bent


def test_segment_integral_degree_one():
    psi = dual("weyl")
    a = psi.alg.zero(1)
    b = psi.alg.basis_element(1, 1)
    assert segment_integral(psi, 1, a, b) == b


def test_cs_classes():
    w = cs_class(corpus.weyl_total_space(), 1)
    assert w.boundary_ok and not w.zero
    h = cs_class(corpus.heis3_ce_morphism(), 1)
    assert h.boundary_ok and h.zero
    with pytest.raises(MorphismError):
        cs_class(identity_morphism(dual("weyl")), 1)


@pytest.mark.parametrize("seed", range(4))
def test_cs_class_retwist_invariant(seed):
    m = corpus.weyl_total_space()
    rng = random.Random(seed)
    beta = random_degree1(m.source.alg, rng)
    r = retwist_source(m, beta)
    a, b = cs_class(m, 1), cs_class(r, 1)
    assert b.boundary_ok and a.cls == b.cls


@pytest.mark.parametrize("lie,name", [(corpus.heis3(), "u_heis3"), (corpus.sl2(), "u_sl2"),
                                      (corpus.abelian(3), "u_abelian3")])
def test_enveloping_trace_dims(lie, name):
    coinv = lie_coinvariant_dims(3, lambda a, b: [int(x) for x in lie.bracket(a, b)], 3)
    assert enveloping_trace_dims(presentation(name), 3) == list(itertools.accumulate(coinv))
