"""
Koszul certificate system for pfrees.
Sufficient certificates (quadratic Groebner bases, complete intersections of
quadrics) and necessary-condition refutations (non-linear resolutions of
powers) for presented algebras, with JSON round trip and replay.
"""
import json
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Union

from .budget import Budget
from .error_handler import BudgetExceededError, ParseError, ValidationError
from .groebner import (
    BudgetLike,
    IdealHandle,
    Regularity,
    groebner_basis,
    ideal_power,
    is_regular_sequence,
    minimal_generators,
)
from .polyring import MonomialOrder, OrderKind, Polynomial, RingDescriptor, exps_coprime
from .rees import ReesPresentation, minimal_bigraded_generators
from .resolution import betti_table
from .validation import Validator

logger = logging.getLogger("pfrees.koszulcheck")

ORDER_POOL_SEED = 0xC0FFEE
ORDER_POOL_SAMPLE = 50

Presented = Union[ReesPresentation, IdealHandle]


class KoszulStatus(Enum):
    CERTIFIED_KOSZUL = "certified_koszul"
    CERTIFIED_NOT_KOSZUL = "certified_not_koszul"
    UNKNOWN = "unknown"


class CertificateKind(Enum):
    G_QUADRATIC = "g_quadratic"
    CI_OF_QUADRICS = "ci_of_quadrics"
    NONLINEAR_POWER = "nonlinear_power"
    NONE = "none"


@dataclass
class KoszulVerdict:
    status: KoszulStatus
    kind: CertificateKind = CertificateKind.NONE
    certificate: Dict[str, Any] = field(default_factory=dict)
    tried_orders: List[str] = field(default_factory=list)
    elapsed_ms: int = 0

    def to_json(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "kind": self.kind.value,
            "certificate": self.certificate,
            "tried_orders": self.tried_orders,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "KoszulVerdict":
        try:
            return cls(KoszulStatus(data["status"]), CertificateKind(data.get("kind", "none")),
                       dict(data.get("certificate", {})), list(data.get("tried_orders", [])),
                       int(data.get("elapsed_ms", 0)))
        except (KeyError, ValueError) as e:
            raise ParseError(f"malformed Koszul verdict: {e}") from None


def _ideal_of(P: Presented) -> IdealHandle:
    return P.ideal() if isinstance(P, ReesPresentation) else P


def order_pool(ring: RingDescriptor, named: Sequence[MonomialOrder] = (), sample: int = ORDER_POOL_SAMPLE,
               seed: int = ORDER_POOL_SEED) -> List[MonomialOrder]:
    """Named orders, then grevlex under every cyclic shift of the variables, then a seeded random sample."""
    pool = list(named)
    base = list(range(ring.nvars))
    for s in range(ring.nvars):
        pool.append(MonomialOrder(OrderKind.GREVLEX, tuple(base[s:] + base[:s])))
    rng = random.Random(seed)
    for _ in range(sample):
        perm = base[:]
        rng.shuffle(perm)
        pool.append(MonomialOrder(OrderKind.GREVLEX, tuple(perm)))
    return pool


def _coprime_witness(gens: Sequence[Polynomial], order: MonomialOrder) -> bool:
    leads = [g.leading_exps(order) for g in gens]
    return all(exps_coprime(a, b) for a, b in combinations(leads, 2))


def koszul_certify(P: Presented, orders: Sequence[MonomialOrder] = (), budget: BudgetLike = None,
                   sample: int = ORDER_POOL_SAMPLE, seed: int = ORDER_POOL_SEED) -> KoszulVerdict:
    """Look for a sufficient Koszul certificate.

    Quadric generators with pairwise coprime leading terms under some order in
    the pool form a complete intersection (CI_OF_QUADRICS). Otherwise a pool
    order giving a Groebner basis of quadrics is a G_QUADRATIC certificate.
    Budget exhaustion yields UNKNOWN.
    """
    budget = Budget.coerce(budget)
    I = _ideal_of(P)
    ring = I.ring
    gens = list(I.gens)
    Validator.validate_homogeneous(gens)
    tried: List[str] = []
    if not gens:
        return KoszulVerdict(KoszulStatus.CERTIFIED_KOSZUL, CertificateKind.G_QUADRATIC,
                             {"order": None, "basis_degrees": []}, tried)
    pool = order_pool(ring, orders, sample, seed)
    quadrics = all(g.total_degree() == 2 for g in gens)
    verdict = None
    try:
        if quadrics:
            for order in pool:
                budget.check(what="complete intersection search")
                if _coprime_witness(gens, order):
                    verdict = KoszulVerdict(KoszulStatus.CERTIFIED_KOSZUL, CertificateKind.CI_OF_QUADRICS,
                                            {"order": order.to_json(ring), "witness": "coprime leading terms"},
                                            tried + [order.describe(ring)])
                    break
        if verdict is None:
            for order in pool:
                tried.append(order.describe(ring))
                basis = groebner_basis(I, order, budget)
                degrees = sorted({g.total_degree() for g in basis})
                if degrees and max(degrees) <= 2:
                    verdict = KoszulVerdict(KoszulStatus.CERTIFIED_KOSZUL, CertificateKind.G_QUADRATIC,
                                            {"order": order.to_json(ring), "basis_degrees": degrees,
                                             "basis_size": len(basis)}, tried)
                    break
        if verdict is None and quadrics:
            check = is_regular_sequence(gens, budget=budget)
            if check.status is Regularity.YES_BY_CODIM:
                verdict = KoszulVerdict(KoszulStatus.CERTIFIED_KOSZUL, CertificateKind.CI_OF_QUADRICS,
                                        {"order": None, "witness": "codimension"}, tried)
    except BudgetExceededError as e:
        logger.warning(json.dumps({"event": "koszul_certify", "budget_exceeded": str(e),
                                   "tried_orders": len(tried)}))
    if verdict is None:
        verdict = KoszulVerdict(KoszulStatus.UNKNOWN, CertificateKind.NONE, {}, tried)
    verdict.elapsed_ms = budget.elapsed_ms()
    logger.info(json.dumps({"event": "koszul_certify", "status": verdict.status.value,
                            "kind": verdict.kind.value, "tried_orders": len(verdict.tried_orders)}))
    return verdict


def _nonlinear_entry(table, d: int) -> Optional[List[int]]:
    for i, j, rank in table.nonzero():
        if i >= 1 and j != i + d - 1:
            return [i, j, rank]
    return None


def koszul_refute_via_powers(I: IdealHandle, j_max: int = 3, budget: BudgetLike = None) -> KoszulVerdict:
    """CERTIFIED_NOT_KOSZUL for the Rees algebra of I when some I^j, j <= j_max,
    has a non-linear resolution; UNKNOWN otherwise."""
    Validator.validate_integer(j_max, "j_max")
    if j_max < 1:
        raise ValidationError("j_max must be at least 1")
    d = Validator.validate_equigenerated(I.gens)
    budget = Budget.coerce(budget)
    checked = []
    try:
        for j in range(1, j_max + 1):
            power = minimal_generators(ideal_power(I, j), budget)
            table = betti_table(power, budget=budget)
            witness = _nonlinear_entry(table, j * d)
            checked.append(j)
            if witness is not None:
                verdict = KoszulVerdict(KoszulStatus.CERTIFIED_NOT_KOSZUL, CertificateKind.NONLINEAR_POWER,
                                        {"j": j, "betti": witness, "table": table.to_json()})
                break
        else:
            verdict = KoszulVerdict(KoszulStatus.UNKNOWN, CertificateKind.NONE, {"linear_powers": checked})
    except BudgetExceededError:
        verdict = KoszulVerdict(KoszulStatus.UNKNOWN, CertificateKind.NONE,
                                {"linear_powers": checked, "budget_exceeded": True})
    verdict.elapsed_ms = budget.elapsed_ms()
    logger.info(json.dumps({"event": "koszul_refute_via_powers", "status": verdict.status.value,
                            "checked": checked}))
    return verdict


def quadratic_generation_check(P: Presented, budget: BudgetLike = None) -> bool:
    """True iff every minimal generator has total degree 2."""
    if isinstance(P, ReesPresentation):
        _, gens = minimal_bigraded_generators(P.ideal(), budget)
    else:
        gens = list(minimal_generators(P, budget).gens) if not P.is_zero() else []
    return all(g.total_degree() == 2 for g in gens)


def replay_verdict(verdict: KoszulVerdict, P: Presented, budget: BudgetLike = None) -> bool:
    """Re-derive the certificate of ``verdict`` for ``P`` (the base ideal for refutations)."""
    I = _ideal_of(P)
    ring = I.ring
    cert = verdict.certificate
    if verdict.kind is CertificateKind.CI_OF_QUADRICS:
        if not all(g.total_degree() == 2 for g in I.gens):
            return False
        if cert.get("order") is None:
            return is_regular_sequence(I.gens, budget=budget).status is not Regularity.NO
        return _coprime_witness(I.gens, MonomialOrder.from_json(cert["order"], ring))
    if verdict.kind is CertificateKind.G_QUADRATIC:
        if cert.get("order") is None:
            return I.is_zero()
        basis = groebner_basis(I, MonomialOrder.from_json(cert["order"], ring), budget)
        return all(g.total_degree() <= 2 for g in basis)
    if verdict.kind is CertificateKind.NONLINEAR_POWER:
        power = minimal_generators(ideal_power(I, cert["j"]), budget)
        i, j, _ = cert["betti"]
        return betti_table(power, budget=budget).rank(i, j) > 0
    return verdict.status is KoszulStatus.UNKNOWN
