import random
from math import comb

import pytest

from nqd import corpus
from nqd.field import QQ
from nqd.linalg import Subspace
from nqd.nonhom import (NQPresentation, PresentationError, AugmentationError, filtration_dims,
                        weak_qls_check, change_complement, ql_shift, solve_complement_change,
                        saturation_dim, substitute_generators, reduce_in_algebra)
from nqd.tensor import FilteredTensorBasis

from conftest import presentation
from oracles import relation_dicts, filtered_dims, saturation_dims


@pytest.mark.parametrize("name", ["u_heis3", "clifford2", "weyl", "lambda_clifford2", "heis3_ext"])
def test_filtration_matches_oracle(name):
    p = presentation(name)
    n_max = 3 if p.gen_dim <= 2 else 2
    rep = filtration_dims(p, n_max, slack=2)
    assert rep.f_dims == filtered_dims(p.gen_dim, relation_dicts(p), n_max, top_slack=2)


def test_filtration_closed_forms():
    assert filtration_dims(presentation("u_heis3"), 3).f_dims == [comb(n + 3, 3) for n in range(4)]
    assert filtration_dims(presentation("weyl"), 4).f_dims == [comb(n + 2, 2) for n in range(5)]
    assert filtration_dims(presentation("clifford2"), 4).f_dims == [1, 3, 4, 4, 4]
    assert filtration_dims(presentation("clifford3"), 4).f_dims[-1] == 8


def test_counterexample_by_slack():
    p = presentation("counterexample")
    rels = relation_dicts(p)
    f2 = []
    for s in range(4):
        f2.append(1 + 3 + 9 - saturation_dim(p, 2, 2 + s))
        assert f2[-1] == 1 + 3 + 9 - saturation_dims(3, rels, 2, 2 + s)[2]
    assert f2 == [11, 11, 9, 9]


def test_counterexample_pbw_failure_degree():
    p = presentation("counterexample")
    assert weak_qls_check(p, 3, slack=1).first_failure == 3
    for s in (2, 3):
        v = weak_qls_check(p, 3, slack=s)
        assert not v.pbw and v.first_failure == 2
        assert not v.j2_is_saturated


@pytest.mark.parametrize("name", corpus.KOSZUL_PRESENTATIONS)
def test_koszul_corpus_is_pbw(name):
    p = presentation(name)
    assert weak_qls_check(p, 3 if p.gen_dim <= 2 else 2).pbw


def test_low_degree_relation_rejected():
    # x^2 = x and x^2 = 1 together force x = 1
    with pytest.raises(PresentationError):
        NQPresentation.from_relations(1, [({(0, 0): 1}, {0: -1}, 0), ({(0, 0): 1}, {}, -1)])


def test_augmentation_checked():
    with pytest.raises(AugmentationError):
        NQPresentation.from_relations(1, [({(0, 0): 1}, {}, -1)], augmentation=[0])
    p = NQPresentation.from_relations(1, [({(0, 0): 1}, {}, -1)], augmentation=[1])
    q = ql_shift(p)
    assert not any(q.hc)
    with pytest.raises(AugmentationError):
        ql_shift(presentation("weyl"))


def test_lambda_clifford_is_a_complement_change():
    lam = [QQ(1), QQ(2)]
    q = corpus.QuadraticFormData(2, tuple(tuple(lam[i] * lam[j] / 2 for j in range(2)) for i in range(2)))
    cl = corpus.clifford(q)
    assert change_complement(cl, [x / 2 for x in lam]) == corpus.lambda_clifford(lam)


@pytest.mark.parametrize("seed", range(10))
def test_complement_change_roundtrip(seed):
    rng = random.Random(seed)
    name = rng.choice(["u_heis3", "clifford2", "weyl", "u_sl2", "counterexample"])
    p = presentation(name)
    alpha = [QQ(rng.randint(-3, 3)) for _ in range(p.gen_dim)]
    q = change_complement(p, alpha)
    assert change_complement(q, [-a for a in alpha]) == p
    found, unique = solve_complement_change(p, q)
    assert found is not None
    assert change_complement(p, found) == q
    # complement changes do not alter the filtered algebra
    assert filtration_dims(q, 2).f_dims == filtration_dims(p, 2).f_dims


def test_complement_change_substitution_kills_relations():
    p = presentation("u_heis3")
    alpha = [QQ(1), QQ(-2), QQ(3)]
    q = change_complement(p, alpha)
    # q's relations, read in the old generators, lie in p's ideal
    g = p.gen_dim
    for row in q.j2_rows():
        old = substitute_generators(p, alpha, row, 2)
        assert not reduce_in_algebra(p, old, 2)


def test_unsolvable_complement_change():
    p = presentation("clifford2")
    q = NQPresentation(2, p.I, [[1, 0]] + [[0, 0]] * (p.I.dim - 1), p.hc, None, p.names)
    assert solve_complement_change(p, q)[0] is None


def test_relation_strings():
    s = presentation("weyl").relation_strings()
    assert len(s) == 1 and s[0].endswith("= 0")


@pytest.mark.parametrize("name,unique", [("clifford2", True), ("u_sl2", True), ("counterexample", True),
                                         ("weyl", False), ("u_heis3", False)])
def test_complement_change_uniqueness(name, unique):
    # relations alone pin alpha down only when no shift leaves them unchanged;
    # for Weyl any constant shift of x or y preserves xy - yx = 1
    p = presentation(name)
    alpha = [QQ(k + 1) for k in range(p.gen_dim)]
    found, is_unique = solve_complement_change(p, change_complement(p, alpha))
    assert is_unique == unique
    if unique:
        assert list(found) == alpha
