from math import comb

import pytest

from nqd import corpus
from nqd.bar import (BarComplex, build_bar, square_zero_report, bar_cohomology, h0_filtered_dims,
                     h0_compare, ext_table, pbw_check, IDENTITIES)
from nqd.cdg import CDGAlgebra, twist, verify_cdg
from nqd.quadratic import QuadraticAlgebra, relations_from_words, symmetric_algebra, exterior_algebra

from conftest import presentation, dual, connection


def noncommutative_curved():
    """k<a,b>/(aa) twisted by b: d = [b, .], h = bb, which is not central."""
    B = QuadraticAlgebra(2, relations_from_words(2, [{(0, 0): 1}]), ["a", "b"])
    return twist(CDGAlgebra.quadratic(B), B.basis_element(1, 1))


@pytest.mark.parametrize("name", ["weyl", "u_heis3", "clifford2", "lambda_clifford2", "counterexample",
                                  "heis3_ext", "idempotent"])
def test_square_zero(name):
    rep, checked = square_zero_report(build_bar(dual(name), 5))
    assert all(v is None for v in rep.values()), rep
    assert all(checked[k] > 0 for k in IDENTITIES)


def test_square_zero_noncommutative_and_literal_sign():
    psi = noncommutative_curved()
    assert verify_cdg(psi, 5).ok
    rep, _ = square_zero_report(build_bar(psi, 5))
    assert all(v is None for v in rep.values())
    lit, _ = square_zero_report(build_bar(psi, 5, literal_sign=True))
    assert lit["(2,0) d^2 + partial delta + delta partial"] is not None
    assert lit["(0,-2) partial^2"] is None


def test_bar_needs_connected_algebra():
    with pytest.raises(ValueError):
        build_bar(connection("matrix_connection"), 3)


@pytest.mark.parametrize("name", ["weyl", "u_heis3", "clifford2", "sym2", "idempotent"])
def test_h0_matches_presentation(name):
    v = h0_compare(dual(name), 3)
    assert v.ok, (v.left, v.right)


def test_h0_closed_forms():
    assert h0_filtered_dims(dual("u_heis3"), 3) == [comb(n + 3, 3) for n in range(4)]
    assert h0_filtered_dims(dual("clifford2"), 3) == [1, 3, 4, 4]


def test_cobar_of_small_algebras():
    # H_0 of the cobar construction of k + A_+ recovers the algebra: dims 1, 1 + dim A_+, ...
    for table in (corpus.dual_numbers_table(), corpus.idempotent_table()):
        psi = corpus.cobar_of(table)
        assert h0_filtered_dims(psi, 3) == [1, 2, 2, 2]
    # the dual numbers have d = 0, the idempotent gives d(x*) = +-x* x*
    assert corpus.cobar_of(corpus.dual_numbers_table()).d.images[(1, 0)].is_zero()
    assert not corpus.cobar_of(corpus.idempotent_table()).d.images[(1, 0)].is_zero()


def test_bar_cohomology_symmetric_dual():
    psi = CDGAlgebra.quadratic(exterior_algebra(2))
    res = bar_cohomology(psi, 0, 4)
    assert res.filtered == [1, 3, 6, 10, 15]
    assert not any(res.edge)


@pytest.mark.parametrize("alg", [symmetric_algebra(2), exterior_algebra(3),
                                 QuadraticAlgebra(2, relations_from_words(2, [{(0, 1): 1}]))])
def test_bar_cohomology_agrees_with_ext(alg):
    N = 4
    table = ext_table(alg, N)
    psi = CDGAlgebra.quadratic(alg)
    for k in range(0, 2):
        res = bar_cohomology(psi, k, N)
        for j in range(k, N + 1):
            assert res.graded[j] == table[(j - k, j)]


def test_bar_cohomology_window_too_small():
    with pytest.raises(ValueError):
        bar_cohomology(dual("weyl"), 3, 3)


def test_curved_margin_flags_edge():
    res = bar_cohomology(dual("weyl"), 0, 4)
    assert res.edge == [False, False, False, True, True]
    assert res.filtered[:3] == [1, 3, 6]


def test_pbw_check():
    assert pbw_check(dual("u_heis3"), 3).holds
    bad = pbw_check(dual("counterexample"), 3, slack=2)
    assert not bad.holds and bad.first_failure == 2
    assert bad.koszul.koszul
