import pytest

from pfrees.error_handler import ValidationError
from pfrees.groebner import IdealHandle, ideal_equal
from pfrees.matalg import skew_blockX4, skew_custom, skew_generic, skew_tridiagonal
from pfrees.pfideal import (
    blockX4_generators,
    closed_form_matches,
    pf_ideal_general,
    pf_ideal_maximal,
    pfaffian_ideal_summary,
    tridiagonal_generators_closed_form,
    tridiagonal_ideal,
)


def test_generic_three_is_the_variables():
    P = pf_ideal_maximal(skew_generic(3))
    v = P.ring.var
    assert P.gens == [v("x2_3"), v("x1_3"), v("x1_2")]
    assert [e.deleted for e in P.provenance] == [(1,), (2,), (3,)]


def test_generic_five():
    P = pf_ideal_maximal(skew_generic(5))
    assert len(P.gens) == 5
    assert {g.total_degree() for g in P.gens} == {2}
    assert P.check_squares()
    summary = pfaffian_ideal_summary(P)
    assert summary["generators"] == 5 and summary["degrees"] == [2]


def test_even_order_rejected():
    with pytest.raises(ValidationError):
        pf_ideal_maximal(skew_custom(4, [(1, 2), (3, 4)]))


def test_general_order_two_gives_entries():
    P = pf_ideal_general(skew_generic(5), 2)
    assert len(P.gens) == 10
    assert P.metadata["principal_only"]
    with pytest.raises(ValidationError):
        pf_ideal_general(skew_generic(5), 3)
    with pytest.raises(ValidationError):
        pf_ideal_general(skew_generic(5), 6)


def test_tridiagonal_closed_form_r2():
    p1, p2, p3 = tridiagonal_generators_closed_form(2)
    v = p1.ring.var
    assert p1 == v("x2_3") * v("x4_5")
    assert p2 == v("x1_2") * v("x4_5")
    assert p3 == v("x1_2") * v("x3_4")


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_closed_form_generates_the_tridiagonal_ideal(r):
    assert closed_form_matches(r)


def test_tridiagonal_ideal_drops_zero_pfaffians():
    P = tridiagonal_ideal(7)
    assert len(P.gens) == 4
    assert len(P.provenance) == 7
    assert sum(1 for e in P.provenance if e.pfaffian.is_zero()) == 3
    assert all(g.is_term() for g in P.gens)


def test_blockx4_minors_match_pfaffians():
    gens = blockX4_generators(2)
    assert len(gens) == 3
    assert {g.total_degree() for g in gens} == {2}
    P = pf_ideal_maximal(skew_tridiagonal(5))
    assert len(P.gens) == 3


def test_blockx4_ideal_is_the_minor_ideal():
    X = skew_blockX4(3)
    P = pf_ideal_maximal(X)
    assert ideal_equal(P.ideal(), IdealHandle(X.ring, blockX4_generators(3, check=False)))
