"""
Claim registry for pfrees.
Loads claim records from the packaged registry, runs their checks under a
budget, writes certificates and replays stored ones.
"""
import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from .budget import Budget
from .certificates import CertificateManager
from .covergraph import build_G, check_cover_census, cover_ideal, is_unmixed, minimal_vertex_covers
from .data_manager import DataManager
from .diagonal import diagonal_dimension_check, diagonal_presentation_11, diagonal_reduce
from .error_handler import BudgetExceededError, PfreesError, ValidationError, error_handler
from .groebner import (
    IdealHandle,
    dimension,
    groebner_basis,
    ideal_equal,
    ideal_power,
    is_groebner_basis,
    minimal_generators,
    normal_form,
)
from .koszulcheck import (
    CertificateKind,
    KoszulStatus,
    KoszulVerdict,
    koszul_certify,
    koszul_refute_via_powers,
    quadratic_generation_check,
    replay_verdict,
)
from .matalg import (
    ALTERNATE_FIVE_PATTERN,
    SPARSE_SEVEN_PATTERN,
    PolyMatrix,
    SkewMatrix,
    determinant,
    entry_name,
    minors,
    pfaffian,
    skew_blockX4,
    skew_custom,
    skew_generic,
    skew_tridiagonal,
)
from .pfideal import (
    blockX4_generators,
    closed_form_matches,
    pf_ideal_general,
    pf_ideal_maximal,
    tridiagonal_generators_closed_form,
    tridiagonal_ideal,
)
from .polyring import Cmp, MonomialOrder, OrderKind, Polynomial, exps_add, order_compare, ring_make
from .rees import (
    LinearType,
    ReesPresentation,
    SequenceKind,
    SequenceVerdict,
    VerdictStatus,
    blockx4_order,
    blockx4_relations,
    colon_identities_check,
    d_sequence_check,
    explicit_generic_relations,
    is_almost_complete_intersection,
    linear_type_verdict,
    m_sequence_check,
    minimal_bigraded_generators,
    rees_by_elimination,
    regular_subsequence_search,
    taylor_rees,
    tridiagonal_taylor_relations,
)
from .resolution import (
    BettiTable,
    be_complex,
    be_verify,
    betti_table,
    find_verifying_conventions,
    has_linear_resolution,
    minimalize,
    schreyer_resolve,
)

logger = logging.getLogger("pfrees.claims")

PASS = "PASS"
FAIL = "FAIL"
BUDGET = "BUDGET"
ERROR = "ERROR"

FAMILIES = ("generic", "tridiagonal", "blockx4", "sparse7", "alternate5")


def family_matrix(family: str, size: Optional[int] = None) -> SkewMatrix:
    """Skew matrix of a named family; ``size`` is the order, or r for the block family."""
    if family == "generic":
        return skew_generic(size)
    if family == "tridiagonal":
        return skew_tridiagonal(size)
    if family == "blockx4":
        return skew_blockX4(size)
    if family == "sparse7":
        return skew_custom(7, SPARSE_SEVEN_PATTERN)
    if family == "alternate5":
        return skew_custom(5, ALTERNATE_FIVE_PATTERN)
    raise ValidationError(f"unknown matrix family {family!r}; expected one of {', '.join(FAMILIES)}")


def build_target(desc: Dict[str, Any]) -> Union[IdealHandle, ReesPresentation, List[Polynomial]]:
    """Rebuild the object a certificate speaks about from its JSON descriptor."""
    kind = desc.get("kind")
    size = desc.get("size")
    if kind == "pf_ideal":
        X = family_matrix(desc["family"], size)
        t = desc.get("t")
        P = pf_ideal_maximal(X) if t is None else pf_ideal_general(X, t)
        return P.ideal()
    if kind == "power":
        base = build_target(desc["base"])
        return minimal_generators(ideal_power(base, desc["j"]))
    if kind == "cover_ideal":
        return cover_ideal(build_G(size))
    if kind == "rees":
        method = desc["method"]
        if method == "explicit":
            return explicit_generic_relations(size)
        if method == "taylor":
            return tridiagonal_taylor_relations(size)
        if method == "blockx4":
            return blockx4_relations(size)
        if method == "elimination":
            return rees_by_elimination(build_target({"kind": "pf_ideal", "family": desc["family"], "size": size}))
    if kind == "sequence":
        source = desc["source"]
        if source == "blockx4_generators":
            return blockX4_generators(size)
        if source == "tridiagonal_closed_form":
            return tridiagonal_generators_closed_form(size)
        if source == "generic_relations":
            return explicit_generic_relations(size).defining_gens
    raise ValidationError(f"unknown target descriptor {desc!r}")


@dataclass
class ClaimRecord:
    id: str
    description: str
    check: str
    modules: List[str]
    budget_seconds: float
    expected: str
    provenance: str
    heavy: bool = False
    params: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ClaimRecord":
        return cls(
            id=data["id"],
            description=data["description"],
            check=data["check"],
            modules=list(data.get("modules", [])),
            budget_seconds=float(data.get("budget_seconds", 60)),
            expected=data.get("expected", PASS),
            provenance=data.get("provenance", ""),
            heavy=bool(data.get("heavy", False)),
            params=dict(data.get("params", {})),
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "id": self.id, "description": self.description, "check": self.check,
            "modules": self.modules, "budget_seconds": self.budget_seconds, "expected": self.expected,
            "provenance": self.provenance, "heavy": self.heavy, "params": self.params,
        }


@dataclass
class ClaimOutcome:
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)
    certificates: List[Tuple[str, Dict[str, Any]]] = field(default_factory=list)


@dataclass
class ClaimResult:
    id: str
    status: str
    wall_ms: int
    detail: Dict[str, Any] = field(default_factory=dict)
    certificate_paths: List[str] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": 1,
            "id": self.id,
            "status": self.status,
            "wall_ms": self.wall_ms,
            "certificate_path": self.certificate_paths[0] if self.certificate_paths else None,
            "certificate_paths": self.certificate_paths,
            "detail": self.detail,
        }


CHECKS: Dict[str, Callable[..., ClaimOutcome]] = {}


def check(name: str):
    def register(fn):
        CHECKS[name] = fn
        return fn
    return register


def _keys(polys) -> set:
    return {p.content_normalized() for p in polys}


@check("pf_squared_det")
def _pf_squared_det(budget: Budget, cases: int = 300, seed: int = 2024) -> ClaimOutcome:
    rng = random.Random(seed)
    ring = ring_make(["z"], 1, 0, 0)
    failures = []
    for case in range(cases):
        budget.check(what="Pfaffian-determinant cases")
        n = rng.randint(2, 8)
        upper = {(i, j): Polynomial.constant(ring, rng.randint(-9, 9))
                 for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        M = SkewMatrix.from_upper(ring, n, upper)
        if pfaffian(M) ** 2 != determinant(M):
            failures.append(case)
    return ClaimOutcome(not failures, {"cases": cases, "failures": failures})


@check("tridiagonal_determinant")
def _tridiagonal_determinant(budget: Budget, orders: Sequence[int] = (2, 4, 6, 8, 10)) -> ClaimOutcome:
    bad = []
    for n in orders:
        budget.check(what="tridiagonal determinants")
        M = skew_custom(n, [(i, i + 1) for i in range(1, n)])
        expected = Polynomial.one(M.ring)
        for i in range(1, n, 2):
            expected = expected * M.ring.var(entry_name(i, i + 1)) ** 2
        if determinant(M) != expected:
            bad.append(n)
    return ClaimOutcome(not bad, {"orders": list(orders), "failures": bad})


@check("rees_generic_n3")
def _rees_generic_n3(budget: Budget) -> ClaimOutcome:
    X = skew_generic(3)
    P = pf_ideal_maximal(X)
    I = IdealHandle(P.ring, list(reversed(P.gens)))
    R = rees_by_elimination(I, budget)
    S = R.ring
    M = PolyMatrix(S, [[S.var("x1_2"), S.var("x1_3"), S.var("x2_3")],
                       [S.var(y) for y in R.y_vars]])
    expected = IdealHandle(S, minors(M, 2))
    return ClaimOutcome(ideal_equal(R.ideal(), expected, budget=budget) and R.substitution_check(),
                        {"relations": [str(g) for g in R.defining_gens]})


@check("rees_explicit_vs_elimination")
def _rees_explicit_vs_elimination(budget: Budget, n: int = 5) -> ClaimOutcome:
    explicit = explicit_generic_relations(n)
    R = rees_by_elimination(IdealHandle(explicit.base_ring, explicit.base_gens), budget)
    same = ideal_equal(R.ideal(), explicit.ideal(), budget=budget)
    return ClaimOutcome(same and explicit.substitution_check(),
                        {"n": n, "census": {str(k): v for k, v in R.census().items()}})


@check("betti_generic")
def _betti_generic(budget: Budget, n: int = 5) -> ClaimOutcome:
    I = pf_ideal_maximal(skew_generic(n)).ideal()
    table = betti_table(I, budget=budget)
    expected = {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}
    linear = has_linear_resolution(I, budget)
    verdict = koszul_refute_via_powers(I, 1, budget)
    target = {"kind": "pf_ideal", "family": "generic", "size": n}
    return ClaimOutcome(
        table.entries == expected and not linear and verdict.status is KoszulStatus.CERTIFIED_NOT_KOSZUL,
        {"table": table.render(), "linear": linear, "koszul": verdict.status.value},
        [("betti", {"target": target, "table": table.to_json()}),
         ("koszul", {"target": target, "verdict": verdict.to_json()})])


@check("koszul_certificates")
def _koszul_certificates(budget: Budget, tridiagonal_r: Sequence[int] = (2, 3), blockx4_r: Sequence[int] = (2, 3)
                         ) -> ClaimOutcome:
    results = {}
    certificates = []
    R1 = explicit_generic_relations(3)
    named = MonomialOrder.from_names(R1.ring, OrderKind.GREVLEX, ["x1_2", "x1_3", "x2_3"] + list(R1.y_vars))
    jobs = [("generic-3", R1, [named], CertificateKind.G_QUADRATIC, {"kind": "rees", "method": "explicit", "size": 3})]
    for r in tridiagonal_r:
        R = tridiagonal_taylor_relations(r)
        jobs.append((f"tridiagonal-{2 * r + 1}", R, [MonomialOrder.grevlex(R.ring)], CertificateKind.CI_OF_QUADRICS,
                     {"kind": "rees", "method": "taylor", "size": r}))
    for r in blockx4_r:
        R = blockx4_relations(r)
        jobs.append((f"blockx4-{r}", R, [blockx4_order(R)], CertificateKind.CI_OF_QUADRICS,
                     {"kind": "rees", "method": "blockx4", "size": r}))
    ok = True
    for name, R, orders, kind, target in jobs:
        verdict = koszul_certify(R, orders, budget, sample=0)
        results[name] = [verdict.status.value, verdict.kind.value]
        ok = ok and verdict.status is KoszulStatus.CERTIFIED_KOSZUL and verdict.kind is kind
        certificates.append(("koszul", {"target": target, "verdict": verdict.to_json()}))
    return ClaimOutcome(ok, results, certificates)


@check("colon_identities")
def _colon_identities(budget: Budget, n: int = 3) -> ClaimOutcome:
    report = colon_identities_check(n, budget)
    return ClaimOutcome(report.passed, report.to_json())


@check("be_complex")
def _be_complex(budget: Budget, n: int = 5) -> ClaimOutcome:
    conventions = find_verifying_conventions(n)
    if not conventions:
        return ClaimOutcome(False, {"n": n, "conventions": []})
    sign, order = conventions[0]
    report = be_verify(be_complex(n, sign, order), budget)
    detail = {"n": n, "conventions": [[s.value, o.value] for s, o in conventions], "report": report.to_json()}
    ok = report.passed and report.codims[2] == 3 and report.codim_exact[2]
    return ClaimOutcome(ok, detail, [("be_complex", {"n": n, "sign": sign.value, "order": order.value})])


@check("tridiagonal_family")
def _tridiagonal_family(budget: Budget, orders: Sequence[int] = (5, 7, 9, 11)) -> ClaimOutcome:
    detail = {}
    ok = True
    for n in orders:
        r = (n - 1) // 2
        closed = tridiagonal_generators_closed_form(r)
        matches = closed_form_matches(r, budget)
        R = rees_by_elimination(IdealHandle(closed[0].ring, closed), budget)
        taylor = taylor_rees(closed, 1, budget)
        explicit = tridiagonal_taylor_relations(r)
        taylor_ok = (ideal_equal(taylor.ideal(), R.ideal(), budget=budget)
                     and ideal_equal(explicit.ideal(), R.ideal(), budget=budget))
        verdict = linear_type_verdict(R, budget=budget)
        covers = ideal_equal(cover_ideal(build_G(n)), tridiagonal_ideal(n).ideal(), budget=budget)
        detail[str(n)] = {"closed_form": matches, "taylor": taylor_ok, "verdict": verdict.status.value,
                          "cover_ideal": covers}
        ok = ok and matches and taylor_ok and covers and verdict.status is LinearType.GROEBNER_LINEAR_TYPE
    return ClaimOutcome(ok, detail)


@check("census")
def _census(budget: Budget, family: str = "sparse7", t: int = 4) -> ClaimOutcome:
    P = pf_ideal_general(family_matrix(family), t)
    R = rees_by_elimination(P.ideal(), budget)
    census, _ = minimal_bigraded_generators(R.ideal(), budget)
    expected = {(1, 1): 52, (0, 2): 14, (0, 3): 3}
    quadratic = quadratic_generation_check(R, budget)
    return ClaimOutcome(census == expected and not quadratic,
                        {"census": {str(k): v for k, v in census.items()}, "quadratic": quadratic})


@check("diagonal_generic_n3")
def _diagonal_generic_n3(budget: Budget) -> ClaimOutcome:
    R = rees_by_elimination(pf_ideal_maximal(skew_generic(3)).ideal(), budget)
    D = diagonal_presentation_11(R)
    t = D.t
    expected = _keys([t(1, 2) - t(2, 3), t(2, 1) - t(3, 2), t(1, 1) - t(3, 3)])
    reduced = diagonal_reduce(D)
    T = reduced.ring
    v = T.var
    quadrics = _keys([
        v("t1_1") * v("t2_2") - v("t1_2") * v("t2_1"),
        v("t1_1") * v("t1_2") - v("t1_3") * v("t2_1"),
        v("t1_2") ** 2 - v("t1_3") * v("t2_2"),
        v("t1_1") * v("t2_1") - v("t1_2") * v("t3_1"),
        v("t1_1") ** 2 - v("t1_3") * v("t3_1"),
        v("t2_1") ** 2 - v("t2_2") * v("t3_1"),
    ])
    ok = _keys(D.extra_gens) == expected and _keys(reduced.gens) == quadrics
    return ClaimOutcome(ok, {"extra": [str(g) for g in D.extra_gens], "survivors": list(T.vars),
                             "reduced": [str(g) for g in reduced.gens]})


@check("diagonal_tridiagonal")
def _diagonal_tridiagonal(budget: Budget, r_values: Sequence[int] = (2, 3)) -> ClaimOutcome:
    detail = {}
    ok = True
    for r in r_values:
        D = diagonal_presentation_11(tridiagonal_taylor_relations(r))
        expected = _keys([D.t(2 * j - 1, j) - D.t(2 * j, j + 1) for j in range(1, r + 1)])
        same = _keys(D.extra_gens) == expected
        detail[str(2 * r + 1)] = same
        ok = ok and same
    return ClaimOutcome(ok, detail)


@check("diagonal_dimension")
def _diagonal_dimension(budget: Budget, family: str = "generic", size: int = 3, expected: int = 3,
                        method: str = "auto") -> ClaimOutcome:
    if family == "generic":
        R = explicit_generic_relations(size)
    else:
        R = tridiagonal_taylor_relations((size - 1) // 2)
    return ClaimOutcome(diagonal_dimension_check(R, expected, method=method, budget=budget),
                        {"family": family, "size": size, "expected": expected})


@check("groebner_properties")
def _groebner_properties(budget: Budget, cases: int = 100, seed: int = 7) -> ClaimOutcome:
    rng = random.Random(seed)
    ring = ring_make(["a", "b", "c", "d"], 4, 0, 0)
    failures = []
    for case in range(cases):
        budget.check(what="Groebner property cases")
        gens = []
        for _ in range(rng.randint(1, 3)):
            p = Polynomial.zero(ring)
            for _ in range(rng.randint(1, 3)):
                exps = [0, 0, 0, 0]
                for _ in range(2):
                    exps[rng.randrange(4)] += 1
                p = p + Polynomial.monomial(ring, exps, rng.randint(-3, 3))
            gens.append(p)
        I = IdealHandle(ring, gens)
        if I.is_zero():
            continue
        basis = groebner_basis(I, budget=budget)
        shuffled = list(I.gens)
        rng.shuffle(shuffled)
        other = groebner_basis(IdealHandle(ring, shuffled), budget=budget)
        f = gens[0] * ring.var("a") + ring.var("b") ** 3
        nf = normal_form(f, I, budget=budget)
        if (not is_groebner_basis(basis) or set(basis) != set(other)
                or normal_form(nf, I, budget=budget) != nf):
            failures.append(case)
    return ClaimOutcome(not failures, {"cases": cases, "failures": failures})


def _random_polynomial(rng: random.Random, ring, terms: int, degree: int, homogeneous: bool = False) -> Polynomial:
    p = Polynomial.zero(ring)
    for _ in range(terms):
        exps = [0] * ring.nvars
        for _ in range(degree if homogeneous else rng.randint(0, degree)):
            exps[rng.randrange(ring.nvars)] += 1
        p = p + Polynomial.monomial(ring, exps, Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)))
    return p


@check("ring_axioms")
def _ring_axioms(budget: Budget, cases: int = 500, seed: int = 17) -> ClaimOutcome:
    rng = random.Random(seed)
    ring = ring_make(["a", "b", "c"], 3, 0, 0)
    one, zero = Polynomial.one(ring), Polynomial.zero(ring)
    failures = []
    for case in range(cases):
        budget.check(what="ring axiom cases")
        p, q, r = (_random_polynomial(rng, ring, rng.randint(1, 3), 2) for _ in range(3))
        holds = (p + q == q + p and p * q == q * p
                 and (p + q) + r == p + (q + r) and (p * q) * r == p * (q * r)
                 and p * (q + r) == p * q + p * r
                 and p * one == p and p + zero == p and (p - p).is_zero()
                 and p.content_normalized().content_normalized() == p.content_normalized())
        if not holds:
            failures.append(case)
    return ClaimOutcome(not failures, {"cases": cases, "failures": failures})


def _property_orders(ring) -> List[MonomialOrder]:
    return [MonomialOrder.lex(ring), MonomialOrder.grlex(ring), MonomialOrder.grevlex(ring),
            MonomialOrder.grevlex(ring, ["c", "a"]), MonomialOrder.elimination(ring, ["a"])]


@check("order_properties")
def _order_properties(budget: Budget, max_degree: int = 4) -> ClaimOutcome:
    ring = ring_make(["a", "b", "c"], 3, 0, 0)
    monomials = [e for e in product(range(max_degree + 1), repeat=3) if sum(e) <= max_degree]
    steps = [e for e in monomials if sum(e) == 1]
    failures = []
    checked = 0
    for order in _property_orders(ring):
        budget.check(what="monomial order cases")
        chain = sorted(monomials, key=order.key)
        total = all(order_compare(order, a, b) is Cmp.LT for a, b in combinations(chain, 2))
        least = chain[0] == (0, 0, 0)
        compatible = all(order_compare(order, exps_add(a, m), exps_add(b, m)) is Cmp.LT
                         for a, b in combinations(chain, 2) for m in steps)
        checked += len(chain) * (len(chain) - 1) // 2
        if not (total and least and compatible):
            failures.append(order.describe(ring))
    return ClaimOutcome(not failures, {"orders": len(_property_orders(ring)), "pairs": checked,
                                       "failures": failures})


@check("euler_invariance")
def _euler_invariance(budget: Budget, cases: int = 25, seed: int = 23) -> ClaimOutcome:
    rng = random.Random(seed)
    ring = ring_make(["a", "b", "c"], 3, 0, 0)
    failures = []
    for case in range(cases):
        budget.check(what="Euler characteristic cases")
        gens = [_random_polynomial(rng, ring, rng.randint(1, 3), 2, homogeneous=True)
                for _ in range(rng.randint(2, 3))]
        if rng.random() < 0.5:
            gens.append(gens[0] + gens[1])
        gens = [g for g in gens if not g.is_zero()]
        C = schreyer_resolve(IdealHandle(ring, gens), budget=budget)
        M = minimalize(C)
        if (M.graded_euler_characteristic() != C.graded_euler_characteristic()
                or not M.is_complex() or M.has_unit_entries()):
            failures.append(case)
    return ClaimOutcome(not failures, {"cases": cases, "failures": failures})


def _subset_search_dimension(supports: Sequence[frozenset], nvars: int) -> int:
    """Largest set of variables containing no generator support."""
    best = 0
    for mask in range(1 << nvars):
        chosen = {i for i in range(nvars) if mask >> i & 1}
        if len(chosen) > best and not any(s <= chosen for s in supports):
            best = len(chosen)
    return best


@check("dimension_subsets")
def _dimension_subsets(budget: Budget, cases: int = 300, nvars: int = 9, seed: int = 29) -> ClaimOutcome:
    rng = random.Random(seed)
    ring = ring_make([f"v{i}" for i in range(1, nvars + 1)], nvars, 0, 0)
    failures = []
    for case in range(cases):
        budget.check(what="dimension cases")
        gens, supports = [], []
        for _ in range(rng.randint(1, 5)):
            support = rng.sample(range(nvars), rng.randint(1, 3))
            exps = [0] * nvars
            for i in support:
                exps[i] = rng.randint(1, 2)
            gens.append(Polynomial.monomial(ring, exps))
            supports.append(frozenset(support))
        if dimension(IdealHandle(ring, gens), budget)[0] != _subset_search_dimension(supports, nvars):
            failures.append(case)
    return ClaimOutcome(not failures, {"cases": cases, "nvars": nvars, "failures": failures})


@check("power_linearity")
def _power_linearity(budget: Budget, source: str = "maximal_n3", j_max: int = 3) -> ClaimOutcome:
    if source == "maximal_n3":
        I = pf_ideal_maximal(skew_generic(3)).ideal()
        js = range(1, j_max + 1)
    else:
        I = cover_ideal(build_G(5))
        js = [j_max]
    linear = {}
    for j in js:
        linear[str(j)] = has_linear_resolution(minimal_generators(ideal_power(I, j), budget), budget)
    return ClaimOutcome(all(linear.values()), {"source": source, "linear": linear})


@check("blockx4_d_sequence")
def _blockx4_d_sequence(budget: Budget, r: int = 2) -> ClaimOutcome:
    verdict = d_sequence_check(blockX4_generators(r), unconditioned=True, budget=budget)
    return ClaimOutcome(verdict.status is VerdictStatus.PROVED, verdict.to_json(),
                        [("sequence", {"target": {"kind": "sequence", "source": "blockx4_generators", "size": r},
                                       "verdict": verdict.to_json()})])


@check("blockx4_relations")
def _blockx4_relations(budget: Budget, r: int = 2) -> ClaimOutcome:
    explicit = blockx4_relations(r)
    R = rees_by_elimination(IdealHandle(explicit.base_ring, explicit.base_gens), budget)
    ok = explicit.substitution_check() and ideal_equal(R.ideal(), explicit.ideal(), budget=budget)
    return ClaimOutcome(ok, {"r": r, "relations": [str(g) for g in explicit.defining_gens]})


@check("almost_complete_intersection")
def _almost_complete_intersection(budget: Budget, n: int = 3) -> ClaimOutcome:
    R = explicit_generic_relations(n)
    return ClaimOutcome(is_almost_complete_intersection(R.ideal(), budget), {"n": n})


@check("alternate_pattern")
def _alternate_pattern(budget: Budget) -> ClaimOutcome:
    ring = skew_generic(5).ring
    alternate = IdealHandle(ring, [g.to_ring(ring) for g in pf_ideal_maximal(family_matrix("alternate5")).gens])
    tri = IdealHandle(ring, [g.to_ring(ring) for g in tridiagonal_ideal(5).gens])
    return ClaimOutcome(ideal_equal(alternate, tri, budget=budget),
                        {"alternate": [str(g) for g in alternate.gens], "tridiagonal": [str(g) for g in tri.gens]})


@check("interval_type")
def _interval_type(budget: Budget, r_values: Sequence[int] = (2, 3, 4, 5)) -> ClaimOutcome:
    ring = ring_make(["x", "y"], 2, 0, 0)
    x, y = ring.var("x"), ring.var("y")
    forward = m_sequence_check([x * y, x * x])
    backward = m_sequence_check([x * x, x * y])
    ok = forward.kind is SequenceKind.INTERVAL_TYPE and backward.status is VerdictStatus.FAILED
    detail = {"xy,x^2": forward.to_json(), "x^2,xy": backward.to_json()}
    for r in r_values:
        verdict = m_sequence_check(tridiagonal_generators_closed_form(r))
        detail[f"tridiagonal-{2 * r + 1}"] = verdict.kind.value
        ok = ok and verdict.kind is SequenceKind.INTERVAL_TYPE
    return ClaimOutcome(ok, detail)


@check("regular_subsequence")
def _regular_subsequence(budget: Budget, n: int = 3) -> ClaimOutcome:
    found = regular_subsequence_search(n, budget)
    return ClaimOutcome(0 in found[n], {"n": n, "rotations": {str(k): v for k, v in found.items()}})


@check("cover_census")
def _cover_census(budget: Budget, orders: Sequence[int] = (3, 5, 7, 9, 11)) -> ClaimOutcome:
    detail = {}
    ok = True
    for n in orders:
        covers = minimal_vertex_covers(build_G(n))
        agrees = check_cover_census(n)
        detail[str(n)] = {"covers": len(covers), "unmixed": is_unmixed(covers), "agrees": agrees}
        ok = ok and agrees and is_unmixed(covers)
    return ClaimOutcome(ok, detail)


class ClaimRegistry:
    """The packaged claim registry, one executable check per id."""

    def __init__(self, data_manager: Optional[DataManager] = None):
        self.data_manager = data_manager or DataManager()
        self.claims: Dict[str, ClaimRecord] = {}
        self.load_claims()

    def load_claims(self) -> None:
        data = self.data_manager.load_claims()
        for entry in data["claims"]:
            record = ClaimRecord.from_json(entry)
            if record.check not in CHECKS:
                raise ValidationError(f"claim {record.id} names unknown check {record.check!r}")
            if record.id in self.claims:
                raise ValidationError(f"duplicate claim id {record.id}")
            self.claims[record.id] = record
        logger.debug(json.dumps({"event": "claims_loaded", "count": len(self.claims)}))

    def get(self, claim_id: str) -> ClaimRecord:
        try:
            return self.claims[claim_id]
        except KeyError:
            raise ValidationError(f"unknown claim id {claim_id!r}") from None

    def ids(self, skip_heavy: bool = False) -> List[str]:
        return [c.id for c in self.claims.values() if not (skip_heavy and c.heavy)]


def run_claim(record: ClaimRecord, budget_seconds: Optional[float] = None,
              certificate_dir: Optional[str] = None) -> ClaimResult:
    """Run one claim; failures, budget overruns and errors become statuses."""
    seconds = record.budget_seconds if budget_seconds is None else budget_seconds
    budget = Budget(seconds)
    start = time.monotonic()
    paths: List[str] = []
    try:
        outcome = CHECKS[record.check](budget, **record.params)
        status = PASS if outcome.passed else FAIL
        detail = outcome.detail
        if certificate_dir and outcome.certificates:
            manager = CertificateManager(certificate_dir)
            paths = [manager.save(record.id, kind, payload) for kind, payload in outcome.certificates]
    except BudgetExceededError as e:
        status, detail = BUDGET, {"message": str(e), "elapsed_s": e.elapsed_s}
    except PfreesError as e:
        status, detail = ERROR, {"message": error_handler.handle_error(e, {"claim": record.id})}
    wall_ms = int((time.monotonic() - start) * 1000)
    result = ClaimResult(record.id, status, wall_ms, detail, paths)
    logger.info(json.dumps({"event": "claim", "id": record.id, "status": status, "wall_ms": wall_ms}))
    return result


def _run_claim_json(args: Tuple[Dict[str, Any], Optional[float], Optional[str]]) -> Dict[str, Any]:
    record, seconds, certificate_dir = args
    return run_claim(ClaimRecord.from_json(record), seconds, certificate_dir).to_json()


def run_claims(records: Sequence[ClaimRecord], jobs: int = 1, budget_seconds: Optional[float] = None,
               certificate_dir: Optional[str] = None) -> List[ClaimResult]:
    """Run claims in a process pool of ``jobs`` workers, results in input order."""
    if jobs <= 1 or len(records) <= 1:
        return [run_claim(r, budget_seconds, certificate_dir) for r in records]
    args = [(r.to_json(), budget_seconds, certificate_dir) for r in records]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        payloads = list(pool.map(_run_claim_json, args))
    return [ClaimResult(p["id"], p["status"], p["wall_ms"], p["detail"], p["certificate_paths"]) for p in payloads]


def replay_certificate(data: Dict[str, Any], budget_seconds: Optional[float] = None) -> bool:
    """Recompute a stored certificate and confirm it reproduces."""
    budget = Budget(budget_seconds)
    kind = data["kind"]
    payload = data["payload"]
    if kind == "koszul":
        verdict = KoszulVerdict.from_json(payload["verdict"])
        target = build_target(payload["target"])
        return replay_verdict(verdict, target, budget)
    if kind == "sequence":
        verdict = SequenceVerdict.from_json(payload["verdict"])
        fresh = verdict.replay(build_target(payload["target"]), budget)
        return fresh.status is verdict.status and fresh.kind is verdict.kind
    if kind == "betti":
        table = betti_table(build_target(payload["target"]), budget=budget)
        return table.entries == BettiTable.from_json(payload["table"]).entries
    if kind == "be_complex":
        C = be_complex(payload["n"], payload["sign"], payload["order"])
        return C.is_complex()
    raise ValidationError(f"unknown certificate kind {kind!r}")
