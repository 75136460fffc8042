import pytest

from pfrees.certificates import CertificateManager
from pfrees.claims import (
    BUDGET,
    CHECKS,
    ERROR,
    PASS,
    ClaimRecord,
    ClaimRegistry,
    build_target,
    family_matrix,
    replay_certificate,
    run_claim,
    run_claims,
)
from pfrees.error_handler import ValidationError

REGISTRY = ClaimRegistry()
LIGHT = REGISTRY.ids(skip_heavy=True)
HEAVY = [i for i in REGISTRY.ids() if i not in LIGHT]


def test_registry_is_consistent():
    assert len(LIGHT) >= 20
    assert {"census-sparse7", "betti-generic-n5", "be-complex-n7"} <= set(HEAVY)
    for claim_id in REGISTRY.ids():
        assert REGISTRY.get(claim_id).check in CHECKS
    with pytest.raises(ValidationError):
        REGISTRY.get("no-such-claim")


@pytest.mark.parametrize("claim_id", LIGHT)
def test_light_claims_pass(claim_id):
    result = run_claim(REGISTRY.get(claim_id))
    assert result.status == PASS, result.detail


@pytest.mark.heavy
@pytest.mark.parametrize("claim_id", HEAVY)
def test_heavy_claims_pass(claim_id):
    result = run_claim(REGISTRY.get(claim_id))
    assert result.status == PASS, result.detail


def test_budget_overrun_is_reported():
    record = REGISTRY.get("groebner-properties")
    result = run_claim(record, budget_seconds=1e-6)
    assert result.status == BUDGET
    assert result.to_json()["schema"] == 1


def test_error_status_for_bad_parameters():
    record = ClaimRecord("bad", "even generic order", "colon_identities", ["rees"], 5, PASS, "", params={"n": 4})
    assert run_claim(record).status == ERROR


def test_certificates_replay(tmp_path):
    certs = str(tmp_path / "certs")
    for claim_id in ("blockx4-d-sequence-r2", "koszul-certificates", "be-complex-n3"):
        result = run_claim(REGISTRY.get(claim_id), certificate_dir=certs)
        assert result.status == PASS
        assert result.certificate_paths
    manager = CertificateManager(certs)
    files = manager.get_certificate_files()
    assert {f["kind"] for f in files} == {"sequence", "koszul", "be_complex"}
    for entry in files:
        assert replay_certificate(manager.load(str(tmp_path / "certs" / entry["filename"])))


def test_run_claims_keeps_order():
    records = [REGISTRY.get("tridiagonal-determinant-product"), REGISTRY.get("alternate-five-pattern")]
    results = run_claims(records, jobs=2)
    assert [r.id for r in results] == ["tridiagonal-determinant-product", "alternate-five-pattern"]
    assert all(r.status == PASS for r in results)


def test_targets():
    assert family_matrix("sparse7").n == 7
    assert len(build_target({"kind": "pf_ideal", "family": "tridiagonal", "size": 5}).gens) == 3
    with pytest.raises(ValidationError):
        build_target({"kind": "nothing"})
    with pytest.raises(ValidationError):
        family_matrix("dense")
