"""
Rees algebra system for pfrees.
Presentations of Rees algebras (elimination, explicit generic relations,
Taylor relations, block family relations), linear type verdicts, colon
identities, d-sequence and monomial sequence checks.
"""
import json
import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, combinations_with_replacement, permutations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .budget import Budget
from .error_handler import BudgetExceededError, SearchSpaceExceededError, ValidationError
from .groebner import (
    BudgetLike,
    IdealHandle,
    Regularity,
    colon,
    dimension,
    eliminate,
    fresh_name,
    ideal_contains,
    ideal_equal,
    is_groebner_basis,
    is_regular_sequence,
    module_minimal_generators,
)
from .matalg import skew_generic
from .pfideal import blockX4_generators, pf_ideal_maximal, tridiagonal_generators_closed_form
from .polyring import (
    Block,
    DegreeMarker,
    MonomialOrder,
    OrderKind,
    Polynomial,
    RingDescriptor,
    exps_lcm,
    exps_sub,
)
from .resolution import be_complex
from .validation import Validator

logger = logging.getLogger("pfrees.rees")

D_SEQUENCE_SAMPLE_SEED = 0x5EED
D_SEQUENCE_SAMPLE_SIZE = 200
D_SEQUENCE_EXHAUSTIVE_LENGTH = 6
M_SEQUENCE_EXHAUSTIVE_VARS = 8


class ReesMethod(Enum):
    ELIMINATION = "elimination"
    EXPLICIT_D2 = "explicit_d2"
    TAYLOR = "taylor"
    BLOCK_X4 = "block_x4"


class LinearType(Enum):
    LINEAR_TYPE = "linear_type"
    GROEBNER_LINEAR_TYPE = "groebner_linear_type"
    NOT_LINEAR_TYPE = "not_linear_type"


class SequenceKind(Enum):
    REGULAR = "regular"
    D_SEQUENCE = "d_sequence"
    UNCONDITIONED_D_SEQUENCE = "unconditioned_d_sequence"
    M_SEQUENCE = "m_sequence"
    INTERVAL_TYPE = "interval_type"


class VerdictStatus(Enum):
    PROVED = "proved"
    FAILED = "failed"
    BUDGET = "budget"
    SAMPLED = "sampled"


def rees_ring(base: RingDescriptor, count: int) -> RingDescriptor:
    """K[X, y_1..y_count] with the y's in the Y-block."""
    names = []
    grown = base
    for k in range(1, count + 1):
        name = fresh_name(grown, f"y{k}")
        names.append(name)
        grown = grown.extend([name], Block.Y)
    return base.extend(names, Block.Y)


@dataclass
class ReesPresentation:
    """S/J with S = K[X, Y] and y_k paired with ``base_gens[k-1]``."""
    ring: RingDescriptor
    base_ring: RingDescriptor
    defining_gens: List[Polynomial]
    method: ReesMethod
    base_gens: List[Polynomial]
    metadata: Dict[str, Any] = field(default_factory=dict)
    _ideal: Optional[IdealHandle] = field(default=None, repr=False, compare=False)

    def ideal(self) -> IdealHandle:
        if self._ideal is None:
            self._ideal = IdealHandle(self.ring, self.defining_gens)
        return self._ideal

    @property
    def y_vars(self) -> Tuple[str, ...]:
        return self.ring.names(Block.Y)

    def y(self, k: int) -> Polynomial:
        return self.ring.var(self.y_vars[k - 1])

    def substitution_check(self) -> bool:
        """Every defining generator vanishes under y_k -> f_k * t."""
        t_name = fresh_name(self.base_ring, "t")
        target = self.base_ring.extend([t_name], Block.E)
        t = target.var(t_name)
        ys = {name: k for k, name in enumerate(self.y_vars)}
        images = []
        for name in self.ring.vars:
            if name in ys:
                images.append(self.base_gens[ys[name]].to_ring(target) * t)
            else:
                images.append(target.var(name))
        return all(g.substitute(images, target).is_zero() for g in self.defining_gens)

    def census(self) -> Dict[Tuple[int, int], int]:
        return dict(Counter(g.bidegree() for g in self.defining_gens))

    def to_json(self) -> Dict[str, Any]:
        return {
            "method": self.method.value,
            "ring": list(self.ring.vars),
            "base_gens": [g.to_json() for g in self.base_gens],
            "defining_gens": [g.to_json() for g in self.defining_gens],
            "census": [{"bidegree": list(b), "count": c} for b, c in sorted(self.census().items())],
            "metadata": self.metadata,
        }


def minimal_bigraded_generators(J: IdealHandle, budget: BudgetLike = None
                                ) -> Tuple[Dict[Tuple[int, int], int], List[Polynomial]]:
    """Minimal bihomogeneous generators of J and their bidegree census.

    Candidates are processed by total degree; one is dropped iff it lies in the
    ideal of those already kept.
    """
    for g in J.gens:
        if isinstance(g.bidegree(), DegreeMarker):
            raise ValidationError(f"generator {g} is not bihomogeneous")
    if J.is_zero():
        return {}, []
    keep = module_minimal_generators(J.ring, [[g] for g in J.gens], [0], None, budget)
    gens = [J.gens[i] for i in keep]
    census = dict(sorted(Counter(g.bidegree() for g in gens).items()))
    logger.debug(json.dumps({"event": "minimal_bigraded_generators", "candidates": len(J.gens),
                             "kept": len(gens), "census": {str(k): v for k, v in census.items()}}))
    return census, gens


def rees_by_elimination(I: IdealHandle, budget: BudgetLike = None) -> ReesPresentation:
    """Kernel of y_k -> f_k * t, computed by eliminating t from <y_k - f_k t>.

    Raises:
        ValidationError: If the generators do not share one degree
    """
    degree = Validator.validate_equigenerated(I.gens)
    budget = Budget.coerce(budget)
    base = I.ring
    S = rees_ring(base, len(I.gens))
    t_name = fresh_name(S, "t")
    T = S.extend([t_name], Block.E)
    t = T.var(t_name)
    ys = S.names(Block.Y)
    gens = [T.var(y) - f.to_ring(T) * t for y, f in zip(ys, I.gens)]
    contracted = eliminate(IdealHandle(T, gens), [t_name], budget)
    J = IdealHandle(S, [g.to_ring(S) for g in contracted.gens])
    _, minimal = minimal_bigraded_generators(J, budget)
    logger.info(json.dumps({"event": "rees_by_elimination", "generators": len(I.gens),
                            "degree": degree, "relations": len(minimal),
                            "elapsed_ms": budget.elapsed_ms()}))
    return ReesPresentation(S, base, minimal, ReesMethod.ELIMINATION, list(I.gens),
                            {"pairing": "generator order"})


def explicit_generic_relations(n: int) -> ReesPresentation:
    """g_j = sum_i y_i a_ij with a_ij = (-1)^(i+j) x_{n+1-i, n+1-j}.

    y_k is paired with the Pfaffian deleting row n+1-k, the pairing under
    which the relations vanish.
    """
    Validator.validate_odd(n, "n", 3)
    X = skew_generic(n)
    base = X.ring
    pfs = {e.deleted[0]: e.pfaffian for e in pf_ideal_maximal(X).provenance}
    S = rees_ring(base, n)
    ys = [S.var(name) for name in S.names(Block.Y)]
    d2 = be_complex(n).differentials[1]
    relations = []
    for j in range(n):
        g = Polynomial.zero(S)
        for i in range(n):
            entry = d2[(i, j)]
            if not entry.is_zero():
                g = g + ys[i] * entry.to_ring(S)
        relations.append(g)
    base_gens = [pfs[n + 1 - k] for k in range(1, n + 1)]
    return ReesPresentation(S, base, relations, ReesMethod.EXPLICIT_D2, base_gens,
                            {"pairing": "reversed", "n": n})


def _require_monomials(gens: Sequence[Polynomial]) -> List[Polynomial]:
    out = []
    for g in gens:
        if not g.is_term():
            raise ValidationError(f"Taylor relations need monomial generators, got {g}")
        out.append(Polynomial.monomial(g.ring, g.leading_exps()))
    return out


def taylor_rees(gens: Sequence[Polynomial], r_max: int = 2, budget: BudgetLike = None) -> ReesPresentation:
    """Relations t_{a,b} = (lcm(u_a,u_b)/u_b) y_b - (lcm(u_a,u_b)/u_a) y_a for
    multi-indices a, b of size r <= r_max, minimalized.

    Raises:
        ValidationError: If a generator is not a monomial
    """
    if not gens:
        raise ValidationError("taylor_rees needs at least one generator")
    Validator.validate_integer(r_max, "r_max")
    if r_max < 1:
        raise ValidationError("r_max must be at least 1")
    us = _require_monomials(gens)
    base = us[0].ring
    S = rees_ring(base, len(us))
    ys = [S.var(name) for name in S.names(Block.Y)]
    lifted = [u.to_ring(S) for u in us]
    relations = []
    seen = set()
    for r in range(1, r_max + 1):
        multis = list(combinations_with_replacement(range(len(us)), r))
        products = {}
        for a in multis:
            u, y = Polynomial.one(S), Polynomial.one(S)
            for k in a:
                u, y = u * lifted[k], y * ys[k]
            products[a] = (u.leading_exps(), y)
        for a, b in combinations(multis, 2):
            ua, ya = products[a]
            ub, yb = products[b]
            L = exps_lcm(ua, ub)
            rel = Polynomial.monomial(S, exps_sub(L, ub)) * yb - Polynomial.monomial(S, exps_sub(L, ua)) * ya
            if rel.is_zero():
                continue
            key = rel.content_normalized()
            if key not in seen:
                seen.add(key)
                relations.append(rel)
    _, minimal = minimal_bigraded_generators(IdealHandle(S, relations), budget)
    return ReesPresentation(S, base, minimal, ReesMethod.TAYLOR, list(us),
                            {"r_max": r_max, "candidates": len(relations)})


def tridiagonal_taylor_relations(r: int) -> ReesPresentation:
    """x_{i,i+1} y_j - x_{i+1,i+2} y_{j+1} for i = 2j-1, the linear relations of the tridiagonal family."""
    gens = tridiagonal_generators_closed_form(r)
    base = gens[0].ring
    S = rees_ring(base, len(gens))
    ys = [S.var(name) for name in S.names(Block.Y)]
    relations = []
    for j in range(1, r + 1):
        i = 2 * j - 1
        a = S.var(f"x{i}_{i + 1}")
        b = S.var(f"x{i + 1}_{i + 2}")
        relations.append(a * ys[j - 1] - b * ys[j])
    return ReesPresentation(S, base, relations, ReesMethod.TAYLOR, gens, {"r": r, "closed_form": True})


def blockx4_relations(r: int) -> ReesPresentation:
    """g_i = sum_k (-1)^(k+1) x_{k, n-i+1} y_k for i = 1..r, with y_k paired to the minor deleting row k."""
    gens = blockX4_generators(r)
    n = 2 * r + 1
    base = gens[0].ring
    S = rees_ring(base, r + 1)
    ys = [S.var(name) for name in S.names(Block.Y)]
    relations = []
    for i in range(1, r + 1):
        col = n - (i - 1)
        g = Polynomial.zero(S)
        for k in range(1, r + 2):
            term = S.var(f"x{k}_{col}") * ys[k - 1]
            g = g + term if k % 2 == 1 else g - term
        relations.append(g)
    return ReesPresentation(S, base, relations, ReesMethod.BLOCK_X4, gens, {"r": r})


def blockx4_order(R: ReesPresentation) -> MonomialOrder:
    """grlex with x_{1,n} > x_{2,n-1} > ... > x_{r,n-r+1}, then the rest."""
    r = R.metadata["r"]
    n = 2 * r + 1
    return MonomialOrder.from_names(R.ring, OrderKind.GRLEX, [f"x{k}_{n - k + 1}" for k in range(1, r + 1)])


def generic_chain_order(ring: RingDescriptor, n: int, shift: int = 0) -> MonomialOrder:
    """grlex induced by the chain x_{1,2} > x_{2,3} > ... > x_{n-1,n} (indices rotated by ``shift`` mod n)."""
    names = []
    for k in range(n - 1):
        a = (k + shift) % n + 1
        b = (k + 1 + shift) % n + 1
        names.append(f"x{min(a, b)}_{max(a, b)}")
    return MonomialOrder.from_names(ring, OrderKind.GRLEX, names)


def _cyclic_orders(ring: RingDescriptor, kind: OrderKind) -> List[MonomialOrder]:
    xs = list(ring.names(Block.X))
    rest = [v for v in ring.vars if v not in set(xs)]
    orders = []
    for s in range(len(xs)):
        orders.append(MonomialOrder.from_names(ring, kind, xs[s:] + xs[:s] + rest))
    return orders


@dataclass
class LinearTypeVerdict:
    status: LinearType
    order: Optional[MonomialOrder]
    linear_gens: List[Polynomial]
    tried_orders: int = 0

    @property
    def is_linear_type(self) -> bool:
        return self.status is not LinearType.NOT_LINEAR_TYPE

    def to_json(self, ring: RingDescriptor) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "order": self.order.to_json(ring) if self.order else None,
            "linear_gens": [g.to_json() for g in self.linear_gens],
            "tried_orders": self.tried_orders,
        }


def linear_type_verdict(R: ReesPresentation, orders: Optional[Sequence[MonomialOrder]] = None,
                        budget: BudgetLike = None) -> LinearTypeVerdict:
    """Decide linear type, and Groebner linear type over a pool of orders.

    The pool is the supplied orders, then grevlex, grlex and lex on the ring,
    then grevlex under every cyclic rotation of the X-variables.
    """
    budget = Budget.coerce(budget)
    J = R.ideal()
    linear = [g for g in R.defining_gens if not isinstance(g.bidegree(), DegreeMarker) and g.bidegree()[1] == 1]
    if not ideal_equal(IdealHandle(R.ring, linear), J, budget=budget):
        return LinearTypeVerdict(LinearType.NOT_LINEAR_TYPE, None, linear)
    pool = list(orders or []) + [MonomialOrder.grevlex(R.ring), MonomialOrder.grlex(R.ring),
                                 MonomialOrder.lex(R.ring)] + _cyclic_orders(R.ring, OrderKind.GREVLEX)
    tried = 0
    for order in pool:
        budget.check(what="linear type order search")
        tried += 1
        if is_groebner_basis(linear, order):
            verdict = LinearTypeVerdict(LinearType.GROEBNER_LINEAR_TYPE, order, linear, tried)
            break
    else:
        verdict = LinearTypeVerdict(LinearType.LINEAR_TYPE, None, linear, tried)
    logger.info(json.dumps({"event": "linear_type_verdict", "method": R.method.value,
                            "status": verdict.status.value, "tried_orders": tried}))
    return verdict


def is_almost_complete_intersection(J: IdealHandle, budget: BudgetLike = None) -> bool:
    """Minimal number of generators equals codim + 1."""
    _, minimal = minimal_bigraded_generators(J, budget)
    _, codim = dimension(J, budget)
    return len(minimal) == codim + 1


@dataclass
class IdentityResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> Dict[str, Any]:
        return {"identity": self.name, "status": "PASS" if self.passed else "FAIL", "detail": self.detail}


@dataclass
class ColonReport:
    n: int
    results: List[IdentityResult]
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "passed": self.passed, "results": [r.to_json() for r in self.results],
                "elapsed_ms": self.elapsed_ms}


def colon_identities_check(n: int, budget: BudgetLike = None) -> ColonReport:
    """The four colon identities of the generic relations g_1..g_n, plus
    (J' : g_n) = (J' : g_n^2) with J' = <g_1..g_{n-1}>."""
    budget = Budget.coerce(budget)
    R = explicit_generic_relations(n)
    S = R.ring
    g = R.defining_gens
    y_n = R.y(n)
    pf_first = R.base_gens[n - 1].to_ring(S)
    J_prime = IdealHandle(S, g[:n - 1])
    J = IdealHandle(S, g)
    results = []
    regular = is_regular_sequence(g[:n - 1], [generic_chain_order(S, n)], budget)
    results.append(IdentityResult("g_1..g_{n-1} regular", bool(regular), regular.status.value))
    by_gn = colon(J_prime, g[n - 1], budget)
    expected = IdealHandle(S, list(g[:n - 1]) + [y_n, pf_first])
    results.append(IdentityResult("(J' : g_n) = J' + <y_n, Pf_1>", ideal_equal(by_gn, expected, budget=budget)))
    results.append(IdentityResult("(J' : y_n) = J", ideal_equal(colon(J_prime, y_n, budget), J, budget=budget)))
    with_y = IdealHandle(S, [y_n] + list(g[:n - 1]))
    all_y = IdealHandle(S, [R.y(k) for k in range(1, n + 1)])
    results.append(IdentityResult("(<y_n> + J' : Pf_1) = <y_1..y_n>",
                                  ideal_equal(colon(with_y, pf_first, budget), all_y, budget=budget)))
    squared = colon(J_prime, g[n - 1] * g[n - 1], budget)
    results.append(IdentityResult("(J' : g_n) = (J' : g_n^2)", ideal_equal(by_gn, squared, budget=budget)))
    report = ColonReport(n, results, budget.elapsed_ms())
    logger.info(json.dumps({"event": "colon_identities", **report.to_json()}))
    return report


def regular_subsequence_search(n: int, budget: BudgetLike = None) -> Dict[int, List[int]]:
    """For each omitted relation m, the cyclic rotations of the chain order under
    which the other n-1 generic relations have pairwise coprime leading terms."""
    R = explicit_generic_relations(n)
    budget = Budget.coerce(budget)
    found: Dict[int, List[int]] = {}
    for m in range(1, n + 1):
        rest = [g for k, g in enumerate(R.defining_gens, start=1) if k != m]
        found[m] = []
        for shift in range(n):
            budget.check(what="regular subsequence search")
            order = generic_chain_order(R.ring, n, shift)
            check = is_regular_sequence(rest, [order], budget)
            if check.status is Regularity.YES_BY_LT and check.order == order:
                found[m].append(shift)
    logger.info(json.dumps({"event": "regular_subsequence_search", "n": n,
                            "rotations": {str(k): v for k, v in found.items()}}))
    return found


@dataclass
class SequenceVerdict:
    """Outcome of a sequence check, with enough witness data to replay it."""
    kind: SequenceKind
    status: VerdictStatus
    witness: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def holds(self) -> bool:
        return self.status in (VerdictStatus.PROVED, VerdictStatus.SAMPLED)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "status": self.status.value, "witness": self.witness,
                "elapsed_ms": self.elapsed_ms}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "SequenceVerdict":
        return cls(SequenceKind(data["kind"]), VerdictStatus(data["status"]),
                   dict(data.get("witness", {})), int(data.get("elapsed_ms", 0)))

    def replay(self, fs: Sequence[Polynomial], budget: BudgetLike = None) -> "SequenceVerdict":
        if self.kind in (SequenceKind.D_SEQUENCE, SequenceKind.UNCONDITIONED_D_SEQUENCE):
            return d_sequence_check(fs, self.kind is SequenceKind.UNCONDITIONED_D_SEQUENCE, budget)
        if self.kind is SequenceKind.REGULAR:
            check = is_regular_sequence(fs, budget=budget)
            return SequenceVerdict(SequenceKind.REGULAR,
                                   VerdictStatus.PROVED if check else VerdictStatus.FAILED,
                                   {"method": check.status.value})
        return m_sequence_check(fs)


class _ColonCache:
    """Colon ideals of prefix ideals, keyed by the prefix index set and the divisor."""

    def __init__(self, fs: Sequence[Polynomial], budget: Budget):
        self.fs = list(fs)
        self.ring = fs[0].ring
        self.budget = budget
        self.cache: Dict[Tuple[frozenset, Tuple[int, ...]], IdealHandle] = {}

    def get(self, prefix: frozenset, factors: Tuple[int, ...]) -> IdealHandle:
        key = (prefix, tuple(sorted(factors)))
        if key not in self.cache:
            base = IdealHandle(self.ring, [self.fs[i] for i in sorted(prefix)])
            divisor = Polynomial.one(self.ring)
            for k in factors:
                divisor = divisor * self.fs[k]
            self.cache[key] = colon(base, divisor, self.budget)
        return self.cache[key]


def _d_sequence_failure(order: Sequence[int], cache: _ColonCache, fs: Sequence[Polynomial]) -> Optional[Dict[str, Any]]:
    budget = cache.budget
    for i in order:
        others = IdealHandle(cache.ring, [fs[k] for k in order if k != i])
        if ideal_contains(others, fs[i], budget=budget):
            return {"condition": "redundant", "element": i + 1}
    for i in range(len(order)):
        prefix = frozenset(order[:i])
        nxt = order[i]
        for k in order[i:]:
            if not prefix:
                # colons of the zero ideal in a domain are zero
                continue
            left = cache.get(prefix, (nxt, k))
            right = cache.get(prefix, (k,))
            if not ideal_equal(left, right, budget=budget):
                return {"condition": "colon", "prefix": sorted(p + 1 for p in prefix),
                        "next": nxt + 1, "k": k + 1}
    return None


def d_sequence_check(fs: Sequence[Polynomial], unconditioned: bool = False,
                     budget: BudgetLike = None) -> SequenceVerdict:
    """Check the d-sequence conditions directly by colon computations.

    Unconditioned mode checks every permutation, or 200 permutations sampled with
    seed 0x5EED for sequences longer than 6 (status SAMPLED).
    """
    if not fs:
        raise ValidationError("d_sequence_check needs a nonempty sequence")
    for f in fs:
        Validator.validate_same_ring(fs[0], f)
        if f.is_zero():
            raise ValidationError("a d-sequence cannot contain zero")
    budget = Budget.coerce(budget)
    kind = SequenceKind.UNCONDITIONED_D_SEQUENCE if unconditioned else SequenceKind.D_SEQUENCE
    cache = _ColonCache(fs, budget)
    identity = list(range(len(fs)))
    status = VerdictStatus.PROVED
    witness: Dict[str, Any] = {}
    if not unconditioned:
        orders = [identity]
    elif len(fs) <= D_SEQUENCE_EXHAUSTIVE_LENGTH:
        orders = [list(p) for p in permutations(identity)]
    else:
        rng = random.Random(D_SEQUENCE_SAMPLE_SEED)
        orders = []
        for _ in range(D_SEQUENCE_SAMPLE_SIZE):
            p = identity[:]
            rng.shuffle(p)
            orders.append(p)
        status = VerdictStatus.SAMPLED
        witness["seed"] = D_SEQUENCE_SAMPLE_SEED
    witness["permutations_checked"] = 0
    try:
        for order in orders:
            failure = _d_sequence_failure(order, cache, fs)
            witness["permutations_checked"] += 1
            if failure is not None:
                failure["permutation"] = [k + 1 for k in order]
                witness["failure"] = failure
                status = VerdictStatus.FAILED
                break
    except BudgetExceededError:
        status = VerdictStatus.BUDGET
    verdict = SequenceVerdict(kind, status, witness, budget.elapsed_ms())
    logger.info(json.dumps({"event": "d_sequence_check", **verdict.to_json()}))
    return verdict


def _exps_list(ms: Sequence[Polynomial]) -> List[Tuple[int, ...]]:
    out = []
    for m in ms:
        if not m.is_term():
            raise ValidationError(f"expected a monomial, got {m}")
        out.append(m.leading_exps())
    return out


def is_interval_type(ms: Sequence[Polynomial]) -> bool:
    """For i < j and x dividing gcd(m_i, m_j): O_x(m_i) <= O_x(m_k) for i <= k <= j."""
    es = _exps_list(ms)
    for i, j in combinations(range(len(es)), 2):
        for x in range(len(es[i])):
            if es[i][x] and es[j][x]:
                if any(es[i][x] > es[k][x] for k in range(i, j + 1)):
                    return False
    return True


def _m_condition(es: List[Tuple[int, ...]], i: int, chain: Sequence[int]) -> bool:
    """``chain`` lists the support of m_i from smallest to largest variable."""
    for j in range(i + 1, len(es)):
        for pos, x in enumerate(chain):
            if es[j][x]:
                if any(es[j][y] < es[i][y] for y in chain[pos:]):
                    return False
    return True


def _m_order_for(es: List[Tuple[int, ...]], i: int) -> Optional[List[int]]:
    support = [x for x, v in enumerate(es[i]) if v]
    later = range(i + 1, len(es))
    guess = sorted(support, key=lambda x: (sum(1 for j in later if es[j][x]), x))
    if _m_condition(es, i, guess):
        return guess
    if len(support) > M_SEQUENCE_EXHAUSTIVE_VARS:
        raise SearchSpaceExceededError(
            f"M-sequence search over {len(support)} variables exceeds {M_SEQUENCE_EXHAUSTIVE_VARS}")
    for chain in permutations(support):
        if _m_condition(es, i, chain):
            return list(chain)
    return None


def m_sequence_check(ms: Sequence[Polynomial]) -> SequenceVerdict:
    """INTERVAL_TYPE if the interval condition holds, else M_SEQUENCE with per-index orders.

    Raises:
        SearchSpaceExceededError: If a support needs exhaustive search over more than 8 variables
    """
    if not ms:
        raise ValidationError("m_sequence_check needs a nonempty sequence")
    ring = ms[0].ring
    if is_interval_type(ms):
        return SequenceVerdict(SequenceKind.INTERVAL_TYPE, VerdictStatus.PROVED, {"condition": "interval"})
    es = _exps_list(ms)
    orders = []
    for i in range(len(es)):
        chain = _m_order_for(es, i)
        if chain is None:
            return SequenceVerdict(SequenceKind.M_SEQUENCE, VerdictStatus.FAILED, {"index": i + 1})
        orders.append([ring.vars[x] for x in chain])
    return SequenceVerdict(SequenceKind.M_SEQUENCE, VerdictStatus.PROVED, {"orders": orders})
