import logging

import pytest

from pfrees.diagonal import (
    DiagonalPresentation,
    diagonal_dimension_check,
    diagonal_presentation_11,
    diagonal_reduce,
    segre_minors,
    t_ring_for,
)
from pfrees.groebner import IdealHandle, dimension, ideal_equal
from pfrees.matalg import skew_generic
from pfrees.pfideal import pf_ideal_maximal
from pfrees.polyring import ring_make
from pfrees.rees import explicit_generic_relations, rees_by_elimination, tridiagonal_taylor_relations


def _keys(polys):
    return {p.content_normalized() for p in polys}


@pytest.fixture(scope="module")
def generic_three():
    return rees_by_elimination(pf_ideal_maximal(skew_generic(3)).ideal())


def test_segre_minors():
    T = t_ring_for(3, 3)
    assert T.nvars == 9
    assert len(segre_minors(T, 3, 3)) == 9
    assert len(segre_minors(t_ring_for(2, 4), 2, 4)) == 6
    # the Segre ring of a 3x3 grid has dimension 5
    assert dimension(IdealHandle(T, segre_minors(T, 3, 3)))[0] == 5


def test_generic_three_identifications(generic_three):
    D = diagonal_presentation_11(generic_three)
    t = D.t
    assert D.shape == (3, 3)
    assert _keys(D.extra_gens) == _keys([t(1, 2) - t(2, 3), t(2, 1) - t(3, 2), t(1, 1) - t(3, 3)])
    assert D.identification() == {"t2_3": "t1_2", "t3_2": "t2_1", "t3_3": "t1_1"}
    assert all(D.back_substitute(g).is_zero() for g in D.segre_gens)


def test_generic_three_reduction(generic_three):
    reduced = diagonal_reduce(diagonal_presentation_11(generic_three))
    T = reduced.ring
    assert list(T.vars) == ["t1_1", "t1_2", "t1_3", "t2_1", "t2_2", "t3_1"]
    v = T.var
    assert _keys(reduced.gens) == _keys([
        v("t1_1") * v("t2_2") - v("t1_2") * v("t2_1"),
        v("t1_1") * v("t1_2") - v("t1_3") * v("t2_1"),
        v("t1_2") ** 2 - v("t1_3") * v("t2_2"),
        v("t1_1") * v("t2_1") - v("t1_2") * v("t3_1"),
        v("t1_1") ** 2 - v("t1_3") * v("t3_1"),
        v("t2_1") ** 2 - v("t2_2") * v("t3_1"),
    ])


@pytest.mark.parametrize("r", [2, 3])
def test_tridiagonal_identifications(r):
    D = diagonal_presentation_11(tridiagonal_taylor_relations(r))
    expected = [D.t(2 * j - 1, j) - D.t(2 * j, j + 1) for j in range(1, r + 1)]
    assert _keys(D.extra_gens) == _keys(expected)


def test_diagonal_dimension_generic_three():
    R = explicit_generic_relations(3)
    assert diagonal_dimension_check(R, 3)
    assert not diagonal_dimension_check(R, 4, method="presentation")
    assert diagonal_dimension_check(R, 3, method="jacobian")


def test_diagonal_dimension_tridiagonal_five():
    assert diagonal_dimension_check(tridiagonal_taylor_relations(2), 4)


def test_minimal_presentation_keeps_the_linear_relations(generic_three):
    D = diagonal_presentation_11(generic_three)
    minimal = D.minimal_ideal()
    assert ideal_equal(minimal, D.ideal())
    assert _keys(D.extra_gens) <= _keys(minimal.gens)
    assert len(minimal.gens) <= len(D.segre_gens) + len(D.extra_gens)


def test_implied_identifications_are_reported(caplog):
    T = t_ring_for(2, 2)
    a, b = T.var("t1_1"), T.var("t2_2")
    D = DiagonalPresentation(T, ring_make(["x1", "x2", "y1", "y2"], 2, 2, 0), segre_minors(T, 2, 2), [a - b, b - a])
    with caplog.at_level(logging.WARNING, logger="pfrees"):
        reduced = diagonal_reduce(D)
    assert list(reduced.ring.vars) == ["t1_1", "t1_2", "t2_1"]
    assert "identified variables already equal" in caplog.text
