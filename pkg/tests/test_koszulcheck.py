import pytest

from pfrees.error_handler import ParseError
from pfrees.groebner import IdealHandle
from pfrees.koszulcheck import (
    CertificateKind,
    KoszulStatus,
    KoszulVerdict,
    koszul_certify,
    koszul_refute_via_powers,
    order_pool,
    quadratic_generation_check,
    replay_verdict,
)
from pfrees.matalg import skew_generic
from pfrees.pfideal import pf_ideal_maximal
from pfrees.polyring import MonomialOrder, OrderKind, ring_make
from pfrees.rees import blockx4_order, blockx4_relations, explicit_generic_relations, tridiagonal_taylor_relations


def test_generic_three_is_g_quadratic():
    R = explicit_generic_relations(3)
    named = MonomialOrder.from_names(R.ring, OrderKind.GREVLEX, ["x1_2", "x1_3", "x2_3"] + list(R.y_vars))
    verdict = koszul_certify(R, [named], sample=0)
    assert verdict.status is KoszulStatus.CERTIFIED_KOSZUL
    assert verdict.kind is CertificateKind.G_QUADRATIC
    assert replay_verdict(KoszulVerdict.from_json(verdict.to_json()), R)


@pytest.mark.parametrize("r", [2, 3])
def test_tridiagonal_is_a_complete_intersection_of_quadrics(r):
    R = tridiagonal_taylor_relations(r)
    verdict = koszul_certify(R, [MonomialOrder.grevlex(R.ring)], sample=0)
    assert verdict.kind is CertificateKind.CI_OF_QUADRICS
    assert replay_verdict(verdict, R)


def test_blockx4_is_a_complete_intersection_of_quadrics():
    R = blockx4_relations(2)
    verdict = koszul_certify(R, [blockx4_order(R)], sample=0)
    assert verdict.status is KoszulStatus.CERTIFIED_KOSZUL
    assert verdict.kind is CertificateKind.CI_OF_QUADRICS


def test_refutation_by_a_nonlinear_power():
    ring = ring_make(["x", "y"], 2, 0, 0)
    x, y = ring.gens()
    I = IdealHandle(ring, [x * x, y * y])
    verdict = koszul_refute_via_powers(I, 2)
    assert verdict.status is KoszulStatus.CERTIFIED_NOT_KOSZUL
    assert verdict.certificate["j"] == 1
    assert verdict.certificate["betti"] == [2, 4, 1]
    assert replay_verdict(verdict, I)


def test_linear_powers_give_no_verdict():
    I = pf_ideal_maximal(skew_generic(3)).ideal()
    verdict = koszul_refute_via_powers(I, 2)
    assert verdict.status is KoszulStatus.UNKNOWN
    assert verdict.certificate["linear_powers"] == [1, 2]


def test_order_pool_is_seeded():
    ring = ring_make(["a", "b", "c"], 3, 0, 0)
    first = order_pool(ring, sample=5, seed=1)
    assert len(first) == 3 + 5
    assert first == order_pool(ring, sample=5, seed=1)


def test_quadratic_generation():
    assert quadratic_generation_check(explicit_generic_relations(3))


def test_malformed_verdict():
    with pytest.raises(ParseError):
        KoszulVerdict.from_json({"status": "probably"})
