from itertools import permutations

import pytest

from pfrees.error_handler import ValidationError
from pfrees.groebner import IdealHandle, Regularity, ideal_equal, is_regular_sequence
from pfrees.matalg import PolyMatrix, minors, skew_generic
from pfrees.pfideal import blockX4_generators, pf_ideal_maximal, tridiagonal_generators_closed_form, tridiagonal_ideal
from pfrees.polyring import parse_polynomial, ring_make
from pfrees.rees import (
    LinearType,
    ReesMethod,
    SequenceKind,
    SequenceVerdict,
    VerdictStatus,
    blockx4_order,
    blockx4_relations,
    colon_identities_check,
    d_sequence_check,
    explicit_generic_relations,
    is_almost_complete_intersection,
    is_interval_type,
    linear_type_verdict,
    m_sequence_check,
    minimal_bigraded_generators,
    rees_by_elimination,
    regular_subsequence_search,
    taylor_rees,
    tridiagonal_taylor_relations,
)


def test_generic_three_rees_ideal_is_two_minors():
    P = pf_ideal_maximal(skew_generic(3))
    R = rees_by_elimination(IdealHandle(P.ring, list(reversed(P.gens))))
    S = R.ring
    M = PolyMatrix(S, [[S.var("x1_2"), S.var("x1_3"), S.var("x2_3")], [S.var(y) for y in R.y_vars]])
    assert ideal_equal(R.ideal(), IdealHandle(S, minors(M, 2)))
    assert R.census() == {(1, 1): 3}
    assert R.substitution_check()
    assert R.method is ReesMethod.ELIMINATION


def test_explicit_relations_vanish_and_match_elimination_for_three():
    explicit = explicit_generic_relations(3)
    assert explicit.substitution_check()
    assert len(explicit.defining_gens) == 3
    assert all(g.bidegree() == (1, 1) for g in explicit.defining_gens)
    R = rees_by_elimination(IdealHandle(explicit.base_ring, explicit.base_gens))
    assert ideal_equal(R.ideal(), explicit.ideal())


@pytest.mark.heavy
def test_explicit_relations_match_elimination_for_five():
    explicit = explicit_generic_relations(5)
    R = rees_by_elimination(IdealHandle(explicit.base_ring, explicit.base_gens))
    assert ideal_equal(R.ideal(), explicit.ideal())


def test_rees_by_elimination_needs_one_degree(xyz):
    x, y, z = xyz.gens()
    with pytest.raises(ValidationError):
        rees_by_elimination(IdealHandle(xyz, [x, y * z]))


@pytest.mark.parametrize("r", [2, 3])
def test_tridiagonal_taylor_relations(r):
    closed = tridiagonal_generators_closed_form(r)
    R = rees_by_elimination(IdealHandle(closed[0].ring, closed))
    explicit = tridiagonal_taylor_relations(r)
    assert ideal_equal(explicit.ideal(), R.ideal())
    assert ideal_equal(taylor_rees(closed, 1).ideal(), R.ideal())
    assert linear_type_verdict(R).status is LinearType.GROEBNER_LINEAR_TYPE


def test_linear_type_verdict_serializes_its_order():
    R = tridiagonal_taylor_relations(3)
    verdict = linear_type_verdict(R)
    assert verdict.is_linear_type
    data = verdict.to_json(R.ring)
    assert data["status"] == "groebner_linear_type"


def test_taylor_rees_rejects_binomials(xyz):
    x, y, z = xyz.gens()
    with pytest.raises(ValidationError):
        taylor_rees([x * y, x * z + y * z])


def test_blockx4_relations_generate_the_rees_ideal():
    explicit = blockx4_relations(2)
    assert explicit.substitution_check()
    R = rees_by_elimination(IdealHandle(explicit.base_ring, explicit.base_gens))
    assert ideal_equal(R.ideal(), explicit.ideal())
    order = blockx4_order(explicit)
    assert [explicit.ring.vars[i] for i in order.permutation[:2]] == ["x1_5", "x2_4"]


def test_minimal_bigraded_generators_drop_redundant():
    R = tridiagonal_taylor_relations(2)
    J = R.ideal()
    padded = IdealHandle(R.ring, list(J.gens) + [J.gens[0] * R.y(1), J.gens[0] + J.gens[1]])
    census, gens = minimal_bigraded_generators(padded)
    assert census == {(1, 1): 2}
    assert len(gens) == 2


def test_colon_identities_three():
    report = colon_identities_check(3)
    assert report.passed, report.to_json()
    assert len(report.results) == 5


@pytest.mark.heavy
def test_colon_identities_five():
    assert colon_identities_check(5).passed


def test_regular_subsequence_search_three():
    found = regular_subsequence_search(3)
    assert set(found) == {1, 2, 3}
    assert 0 in found[3]


def test_generic_three_is_almost_complete_intersection():
    assert is_almost_complete_intersection(explicit_generic_relations(3).ideal())


def test_blockx4_unconditioned_d_sequence():
    verdict = d_sequence_check(blockX4_generators(2), unconditioned=True)
    assert verdict.kind is SequenceKind.UNCONDITIONED_D_SEQUENCE
    assert verdict.status is VerdictStatus.PROVED
    assert verdict.witness["permutations_checked"] == 6
    replayed = SequenceVerdict.from_json(verdict.to_json()).replay(blockX4_generators(2))
    assert replayed.status is VerdictStatus.PROVED


def test_d_sequence_rejects_redundant_element(xyz):
    x, y, z = xyz.gens()
    verdict = d_sequence_check([x, y, x * y])
    assert verdict.status is VerdictStatus.FAILED
    assert verdict.witness["failure"]["condition"] == "redundant"
    with pytest.raises(ValidationError):
        d_sequence_check([])


def test_monomial_sequences():
    ring = ring_make(["x", "y"], 2, 0, 0)
    x, y = ring.gens()
    assert is_interval_type([x * y, x * x])
    forward = m_sequence_check([x * y, x * x])
    assert forward.kind is SequenceKind.INTERVAL_TYPE and forward.holds
    backward = m_sequence_check([x * x, x * y])
    assert backward.status is VerdictStatus.FAILED


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_tridiagonal_generators_are_of_interval_type(r):
    assert m_sequence_check(tridiagonal_generators_closed_form(r)).kind is SequenceKind.INTERVAL_TYPE


@pytest.mark.parametrize("P", [pf_ideal_maximal(skew_generic(3)), tridiagonal_ideal(5)], ids=["generic3", "tridiagonal5"])
def test_linear_type_verdict_ignores_generator_order(P):
    statuses = {linear_type_verdict(rees_by_elimination(IdealHandle(P.ring, list(gens)))).status
                for gens in permutations(P.gens)}
    # the linear relations form a Groebner basis for both, the stronger of the two tiers
    assert statuses == {LinearType.GROEBNER_LINEAR_TYPE}


@pytest.mark.parametrize("texts", [
    ("x", "y*z"),
    ("x^2 - y^2", "x*y"),
    ("x", "y", "z"),
    ("x*y", "z^2", "x^2 + y^2"),
])
def test_regular_sequences_are_d_sequences(xyz, texts):
    fs = [parse_polynomial(t, xyz) for t in texts]
    assert is_regular_sequence(fs).status is not Regularity.NO
    assert d_sequence_check(fs).holds
    assert d_sequence_check(fs, unconditioned=True).holds
