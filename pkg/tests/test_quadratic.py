import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from nqd.field import QQ
from nqd.linalg import Subspace
from nqd.quadratic import (QuadraticAlgebra, quadratic_dual, symmetric_algebra, exterior_algebra,
                           free_algebra, hilbert, relations_from_words, ext_table, koszul_verdict)
from nqd.tensor import homogeneous_ideal_component, index_word

from oracles import homogeneous_dims


def random_quadratic(rng, g, k):
    rows = [[rng.randint(-2, 2) for _ in range(g * g)] for _ in range(k)]
    return QuadraticAlgebra(g, Subspace(g * g, rows))


def test_hilbert_classical():
    assert hilbert(symmetric_algebra(3), 5) == [comb(n + 2, 2) for n in range(6)]
    assert hilbert(exterior_algebra(3), 5) == [1, 3, 3, 1, 0, 0]
    assert hilbert(free_algebra(2), 5) == [2 ** n for n in range(6)]


def test_dual_pairs():
    assert quadratic_dual(symmetric_algebra(3)) == exterior_algebra(3)
    assert quadratic_dual(free_algebra(2)).dim(2) == 0


@pytest.mark.parametrize("seed", range(8))
def test_dims_match_bruteforce(seed):
    rng = random.Random(seed)
    g = rng.randint(2, 3)
    a = random_quadratic(rng, g, rng.randint(1, g * g - 1))
    rels = [{index_word(c, 2, g): v for c, v in r.items()} for r in a.relations.rows]
    assert hilbert(a, 4) == homogeneous_dims(g, rels, 4)


@pytest.mark.parametrize("seed", range(5))
def test_normal_words_complement_ideal(seed):
    rng = random.Random(100 + seed)
    g = 2
    a = random_quadratic(rng, g, 2)
    for n in range(2, 5):
        K = homogeneous_ideal_component(a.relations, n, g)
        assert K.dim + a.dim(n) == g ** n
        # normal words are exactly the non-leading words of the ideal component
        lead = {index_word(c, n, g) for c in K.pivots}
        assert set(a.normal_words(n)) == set(itertools.product(range(g), repeat=n)) - lead


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_associativity(seed):
    rng = random.Random(seed)
    a = random_quadratic(rng, 2, rng.randint(1, 3))
    for (m, n, k) in [(1, 1, 1), (1, 2, 1), (2, 1, 1)]:
        if not (a.dim(m) and a.dim(n) and a.dim(k)):
            continue
        x = a.basis_element(m, rng.randrange(a.dim(m)))
        y = a.basis_element(n, rng.randrange(a.dim(n)))
        z = a.basis_element(k, rng.randrange(a.dim(k)))
        assert (x * y) * z == x * (y * z)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_double_dual(seed):
    rng = random.Random(seed)
    g = rng.randint(1, 4)
    a = random_quadratic(rng, g, rng.randint(0, g * g))
    assert quadratic_dual(quadratic_dual(a)) == a


def test_ext_symmetric_two():
    t = ext_table(symmetric_algebra(2), 4)
    assert [t[(i, i)] for i in range(5)] == [1, 2, 1, 0, 0]
    assert all(v == 0 for (i, j), v in t.items() if i != j)


def test_ext_two_two_is_relation_count():
    rng = random.Random(5)
    a = random_quadratic(rng, 3, 4)
    assert ext_table(a, 2)[(2, 2)] == a.relations.dim


def test_koszul_verdicts():
    assert koszul_verdict(exterior_algebra(3), 4).koszul
    assert koszul_verdict(symmetric_algebra(3), 4).koszul
    # monomial relations are Koszul
    assert koszul_verdict(QuadraticAlgebra(2, relations_from_words(2, [{(0, 0): 1}])), 4).koszul
    # the weak flag is exactly vanishing of the first off-diagonal
    nk = QuadraticAlgebra(2, relations_from_words(2, [{(0, 0): 1, (1, 1): 1}, {(0, 1): 1}]))
    v = koszul_verdict(nk, 4)
    assert v.weak == all(v.table[(i, i + 1)] == 0 for i in range(4))


def test_relations_from_words_and_labels():
    a = QuadraticAlgebra(2, relations_from_words(2, [{(0, 1): 1, (1, 0): -1}]), ["x", "y"])
    assert a.labels(2) == ["xx", "yx", "yy"]
    assert a.word_element((0, 1)) == a.word_element((1, 0))
