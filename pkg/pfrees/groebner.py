"""
Groebner basis engine for pfrees.
Buchberger's algorithm with the sugar strategy and the Gebauer-Moeller
criteria, working on ideals and on submodules of free modules (position over
term). Normal forms, elimination, colon and intersection ideals, syzygies with
lifting, minimal generators and combinatorial dimension are built on it.
"""
import heapq
import json
import logging
import operator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .budget import Budget
from .error_handler import InvariantError, UnitIdealError, ValidationError
from .polyring import (
    Block,
    Exps,
    MonomialOrder,
    Polynomial,
    RingDescriptor,
    exps_coprime,
    exps_divides,
    exps_lcm,
    exps_sub,
)
from .validation import Validator

logger = logging.getLogger("pfrees.groebner")

Term = Tuple[int, Exps]
Vec = Dict[Term, Fraction]
PolyDict = Dict[Exps, Fraction]
Rep = Dict[int, PolyDict]
BudgetLike = Union[Budget, float, int, None]

_add = operator.add


def _vec_sub_scaled(p: Vec, g: Vec, coef: Fraction, shift: Exps) -> None:
    """p -= coef * x^shift * g, in place."""
    for (comp, e), a in g.items():
        t = (comp, tuple(map(_add, e, shift)))
        v = p.get(t, 0) - coef * a
        if v:
            p[t] = v
        else:
            p.pop(t, None)


def _pd_add_scaled(p: PolyDict, g: PolyDict, coef: Fraction, shift: Exps) -> None:
    """p += coef * x^shift * g, in place."""
    for e, a in g.items():
        t = tuple(map(_add, e, shift))
        v = p.get(t, 0) + coef * a
        if v:
            p[t] = v
        else:
            p.pop(t, None)


def _pd_mul_add(p: PolyDict, a: PolyDict, b: PolyDict) -> None:
    """p += a * b, in place."""
    for e, c in a.items():
        _pd_add_scaled(p, b, c, e)


def _rep_add_scaled(rep: Rep, other: Rep, coef: Fraction, shift: Exps) -> None:
    for k, pd in other.items():
        target = rep.setdefault(k, {})
        _pd_add_scaled(target, pd, coef, shift)
        if not target:
            del rep[k]


def _to_vec(p: Polynomial, comp: int = 0) -> Vec:
    return {(comp, e): c for e, c in p.items()}


def _column_to_vec(column: Sequence[Polynomial]) -> Vec:
    vec: Vec = {}
    for comp, p in enumerate(column):
        for e, c in p.items():
            vec[(comp, e)] = c
    return vec


def _from_vec(ring: RingDescriptor, vec: Vec) -> Polynomial:
    return Polynomial._raw(ring, {e: c for (_, e), c in vec.items()})


def _vec_to_column(ring: RingDescriptor, vec: Vec, rank: int) -> List[Polynomial]:
    parts: List[PolyDict] = [{} for _ in range(rank)]
    for (comp, e), c in vec.items():
        parts[comp][e] = c
    return [Polynomial._raw(ring, d) for d in parts]


class _Element:
    __slots__ = ("vec", "lm", "sugar", "rep", "active")

    def __init__(self, vec: Vec, lm: Term, sugar: int, rep: Optional[Rep]):
        self.vec = vec
        self.lm = lm
        self.sugar = sugar
        self.rep = rep
        self.active = True


def _reduce(vec: Vec, reducers: Sequence[Tuple[int, _Element]], tkey,
            rep: Optional[Rep] = None, quotients: Optional[Dict[int, PolyDict]] = None) -> Vec:
    """Full reduction of ``vec`` by monic ``reducers``; updates ``rep`` and ``quotients`` in place."""
    p = dict(vec)
    remainder: Vec = {}
    by_comp: Dict[int, List[Tuple[int, _Element]]] = {}
    for idx, g in reducers:
        by_comp.setdefault(g.lm[0], []).append((idx, g))
    while p:
        m = max(p, key=tkey)
        c = p[m]
        comp, e = m
        for idx, g in by_comp.get(comp, ()):
            ge = g.lm[1]
            if exps_divides(ge, e):
                shift = exps_sub(e, ge)
                _vec_sub_scaled(p, g.vec, c, shift)
                if rep is not None and g.rep:
                    _rep_add_scaled(rep, g.rep, -c, shift)
                if quotients is not None:
                    q = quotients.setdefault(idx, {})
                    q[shift] = q.get(shift, 0) + c
                break
        else:
            remainder[m] = c
            del p[m]
    return remainder


class _Engine:
    """Buchberger completion over a free module of rank ``rank``."""

    def __init__(self, order: MonomialOrder, ring: RingDescriptor, rank: int = 1,
                 shifts: Optional[Sequence[int]] = None, budget: BudgetLike = None,
                 track: bool = False, what: str = "groebner basis"):
        self.okey = order.key
        self.ring = ring
        self.rank = rank
        self.shifts = list(shifts) if shifts is not None else [0] * rank
        self.budget = Budget.coerce(budget)
        self.track = track
        self.what = what
        self.basis: List[_Element] = []
        self.pairs: Dict[Tuple[int, int], Tuple[int, Term]] = {}
        self.heap: List[Tuple[int, int, int]] = []
        self.product_criterion = rank == 1
        self._keys: Dict[Term, tuple] = {}
        self.stats = {"pairs_reduced": 0, "zero_reductions": 0, "pairs_skipped": 0}

    def tkey(self, t: Term):
        k = self._keys.get(t)
        if k is None:
            k = (-t[0], self.okey(t[1]))
            self._keys[t] = k
        return k

    def degree(self, t: Term) -> int:
        return sum(t[1]) + self.shifts[t[0]]

    def vec_degree(self, vec: Vec) -> int:
        return max(self.degree(t) for t in vec)

    def reducers(self) -> List[Tuple[int, _Element]]:
        return [(i, g) for i, g in enumerate(self.basis) if g.active]

    def partial(self) -> List[Any]:
        if self.rank == 1:
            return [_from_vec(self.ring, g.vec) for g in self.basis]
        return [_vec_to_column(self.ring, g.vec, self.rank) for g in self.basis]

    def _check_budget(self):
        if self.budget.exhausted():
            self.budget.check(partial=self.partial(), what=self.what)

    def add_generators(self, vecs: Sequence[Vec], labels: Optional[Sequence[int]] = None) -> None:
        for pos, vec in enumerate(vecs):
            if not vec:
                continue
            rep = None
            if self.track:
                label = labels[pos] if labels is not None else pos
                rep = {label: {self.ring.zero_exps: Fraction(1)}}
            self._insert(dict(vec), rep, self.vec_degree(vec))

    def _insert(self, vec: Vec, rep: Optional[Rep], sugar: int) -> None:
        lm = max(vec, key=self.tkey)
        lc = vec[lm]
        if lc != 1:
            inv = 1 / Fraction(lc)
            vec = {t: c * inv for t, c in vec.items()}
            if rep is not None:
                rep = {k: {e: c * inv for e, c in pd.items()} for k, pd in rep.items()}
        new = _Element(vec, lm, sugar, rep)
        self._update(new)
        for g in self.basis:
            if g.active and g.lm[0] == lm[0] and exps_divides(lm[1], g.lm[1]):
                g.active = False
        self.basis.append(new)

    def _update(self, new: _Element) -> None:
        """Gebauer-Moeller update of the pair set for ``new``."""
        k = len(self.basis)
        comp, lf = new.lm
        for (i, j), (sugar, L) in list(self.pairs.items()):
            if L[0] == comp and exps_divides(lf, L[1]):
                lik = exps_lcm(self.basis[i].lm[1], lf)
                ljk = exps_lcm(self.basis[j].lm[1], lf)
                if L[1] != lik and L[1] != ljk:
                    del self.pairs[(i, j)]
                    self.stats["pairs_skipped"] += 1
        groups: Dict[Exps, List[int]] = {}
        for i, g in enumerate(self.basis):
            if g.lm[0] == comp:
                groups.setdefault(exps_lcm(g.lm[1], lf), []).append(i)
        minimal: List[Exps] = []
        for L in sorted(groups, key=lambda L: self.tkey((comp, L))):
            if any(exps_divides(M, L) for M in minimal):
                self.stats["pairs_skipped"] += len(groups[L])
                continue
            minimal.append(L)
        for L in minimal:
            members = groups[L]
            if self.product_criterion and any(exps_coprime(self.basis[i].lm[1], lf) for i in members):
                self.stats["pairs_skipped"] += len(members)
                continue
            i = min(members)
            g = self.basis[i]
            deg_l = sum(L)
            sugar = max(g.sugar + deg_l - sum(g.lm[1]), new.sugar + deg_l - sum(lf))
            self.pairs[(i, k)] = (sugar, (comp, L))
            heapq.heappush(self.heap, (sugar, k, i))

    def _next_pair(self, max_degree: Optional[int]) -> Optional[Tuple[int, int, int]]:
        while self.heap:
            sugar, j, i = self.heap[0]
            entry = self.pairs.get((i, j))
            if entry is None or entry[0] != sugar:
                heapq.heappop(self.heap)
                continue
            if max_degree is not None and sugar > max_degree:
                return None
            heapq.heappop(self.heap)
            del self.pairs[(i, j)]
            return (i, j, sugar)
        return None

    def spoly(self, i: int, j: int) -> Tuple[Vec, Optional[Rep]]:
        gi, gj = self.basis[i], self.basis[j]
        L = exps_lcm(gi.lm[1], gj.lm[1])
        si = exps_sub(L, gi.lm[1])
        sj = exps_sub(L, gj.lm[1])
        vec: Vec = {}
        _vec_sub_scaled(vec, gi.vec, Fraction(-1), si)
        _vec_sub_scaled(vec, gj.vec, Fraction(1), sj)
        rep = None
        if self.track:
            rep = {}
            _rep_add_scaled(rep, gi.rep, Fraction(1), si)
            _rep_add_scaled(rep, gj.rep, Fraction(-1), sj)
        return vec, rep

    def complete(self, max_degree: Optional[int] = None) -> None:
        """Process pairs until none (of sugar at most ``max_degree``) remain."""
        while True:
            self._check_budget()
            pair = self._next_pair(max_degree)
            if pair is None:
                return
            i, j, sugar = pair
            vec, rep = self.spoly(i, j)
            self.stats["pairs_reduced"] += 1
            if not vec:
                self.stats["zero_reductions"] += 1
                continue
            remainder = _reduce(vec, self.reducers(), self.tkey, rep)
            if not remainder:
                self.stats["zero_reductions"] += 1
                continue
            deg = self.vec_degree(remainder)
            self._insert(remainder, rep, max(deg, sugar))

    def normal_form(self, vec: Vec) -> Vec:
        return _reduce(vec, self.reducers(), self.tkey)

    def minimal_indices(self) -> List[int]:
        keep = []
        for i, g in enumerate(self.basis):
            dominated = False
            for j, h in enumerate(self.basis):
                if j == i or h.lm[0] != g.lm[0]:
                    continue
                if exps_divides(h.lm[1], g.lm[1]) and (h.lm != g.lm or j < i):
                    dominated = True
                    break
            if not dominated:
                keep.append(i)
        return keep

    def reduced(self) -> List[Vec]:
        """The reduced basis, sorted by leading term, largest first."""
        chosen = [(i, self.basis[i]) for i in self.minimal_indices()]
        result = []
        for i, g in chosen:
            others = [(j, h) for j, h in chosen if j != i]
            tail = {t: c for t, c in g.vec.items() if t != g.lm}
            reduced = _reduce(tail, others, self.tkey)
            reduced[g.lm] = Fraction(1)
            result.append(reduced)
        result.sort(key=lambda v: self.tkey(max(v, key=self.tkey)), reverse=True)
        return result


class IdealHandle:
    """An ideal given by generators, with reduced Groebner bases cached per order."""

    def __init__(self, ring: RingDescriptor, gens: Iterable[Polynomial] = ()):
        kept = []
        for g in gens:
            if g.ring is not ring and g.ring != ring:
                raise ValidationError(f"generator {g} does not belong to {ring}")
            if not g.is_zero():
                kept.append(g)
        self.ring = ring
        self.gens: Tuple[Polynomial, ...] = tuple(kept)
        self.gb_cache: Dict[MonomialOrder, Tuple[Polynomial, ...]] = {}

    def is_zero(self) -> bool:
        return not self.gens

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        return f"IdealHandle({', '.join(str(g) for g in self.gens) or '0'})"

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        return ideal_sum(self, other)

    def to_json(self) -> Dict[str, Any]:
        return {"ring": list(self.ring.vars), "gens": [g.to_json() for g in self.gens]}

    @classmethod
    def from_json(cls, data: Dict[str, Any], ring: RingDescriptor) -> "IdealHandle":
        return cls(ring, [Polynomial.from_json(g, ring) for g in data["gens"]])


class Regularity(Enum):
    YES_BY_LT = "yes_by_lt"
    YES_BY_CODIM = "yes_by_codim"
    NO = "no"


@dataclass(frozen=True)
class RegularityCheck:
    status: Regularity
    order: Optional[MonomialOrder] = None

    def __bool__(self):
        return self.status is not Regularity.NO


@dataclass
class SyzygyMatrix:
    """Columns generating the syzygies of an ordered generator list."""
    ring: RingDescriptor
    generators: Tuple[Polynomial, ...]
    columns: List[Tuple[Polynomial, ...]]
    shifts: List[int]

    def as_matrix(self):
        from .matalg import PolyMatrix
        return PolyMatrix.from_columns(self.ring, len(self.generators), self.columns)

    def annihilates(self) -> bool:
        for col in self.columns:
            total = Polynomial.zero(self.ring)
            for g, c in zip(self.generators, col):
                total = total + g * c
            if not total.is_zero():
                return False
        return True


def _default_order(ring: RingDescriptor, order: Optional[MonomialOrder]) -> MonomialOrder:
    if order is None:
        return ring.canonical_order
    if order.nvars != ring.nvars:
        raise ValidationError("monomial order does not match the ring")
    return order


def groebner_basis(I: IdealHandle, order: Optional[MonomialOrder] = None,
                   budget: BudgetLike = None) -> List[Polynomial]:
    """Reduced Groebner basis of ``I``.

    Args:
        I: The ideal
        order: Monomial order, grevlex on the ring's variable list by default
        budget: Wall-clock budget

    Raises:
        BudgetExceededError: With the partial basis attached
    """
    order = _default_order(I.ring, order)
    cached = I.gb_cache.get(order)
    if cached is not None:
        return list(cached)
    if I.is_zero():
        I.gb_cache[order] = ()
        return []
    engine = _Engine(order, I.ring, budget=budget)
    engine.add_generators([_to_vec(g) for g in I.gens])
    engine.complete()
    basis = tuple(_from_vec(I.ring, v) for v in engine.reduced())
    logger.debug(json.dumps({
        "event": "groebner_basis",
        "order": order.describe(I.ring),
        "generators": len(I.gens),
        "basis": len(basis),
        "elapsed_ms": engine.budget.elapsed_ms(),
        **engine.stats,
    }))
    I.gb_cache[order] = basis
    return list(basis)


def _reducers_from(basis: Sequence[Polynomial], engine: _Engine) -> List[Tuple[int, _Element]]:
    out = []
    for i, g in enumerate(basis):
        vec = _to_vec(g)
        lm = max(vec, key=engine.tkey)
        lc = vec[lm]
        if lc != 1:
            vec = {t: c / lc for t, c in vec.items()}
        out.append((i, _Element(vec, lm, 0, None)))
    return out


def normal_form(f: Polynomial, I: IdealHandle, order: Optional[MonomialOrder] = None,
                budget: BudgetLike = None) -> Polynomial:
    """Remainder of ``f`` modulo the reduced Groebner basis of ``I``."""
    Validator.validate_same_ring(f, I)
    order = _default_order(I.ring, order)
    basis = groebner_basis(I, order, budget)
    engine = _Engine(order, I.ring)
    return _from_vec(I.ring, _reduce(_to_vec(f), _reducers_from(basis, engine), engine.tkey))


def ideal_contains(I: IdealHandle, f: Polynomial, order: Optional[MonomialOrder] = None,
                   budget: BudgetLike = None) -> bool:
    return normal_form(f, I, order, budget).is_zero()


def ideal_equal(I1: IdealHandle, I2: IdealHandle, order: Optional[MonomialOrder] = None,
                budget: BudgetLike = None) -> bool:
    """True iff each generator of one ideal reduces to zero modulo the other."""
    Validator.validate_same_ring(I1, I2)
    budget = Budget.coerce(budget)
    return (all(ideal_contains(I1, g, order, budget) for g in I2.gens)
            and all(ideal_contains(I2, g, order, budget) for g in I1.gens))


def ideal_sum(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    Validator.validate_same_ring(I, J)
    return IdealHandle(I.ring, I.gens + J.gens)


def ideal_product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    Validator.validate_same_ring(I, J)
    return IdealHandle(I.ring, _dedupe([f * g for f in I.gens for g in J.gens]))


def ideal_power(I: IdealHandle, j: int) -> IdealHandle:
    """I^j generated by all j-fold products of the generators."""
    Validator.validate_nonnegative(j, "j")
    if j == 0:
        return IdealHandle(I.ring, [Polynomial.one(I.ring)])
    products = []
    for combo in combinations_with_replacement(range(len(I.gens)), j):
        p = Polynomial.one(I.ring)
        for k in combo:
            p = p * I.gens[k]
        products.append(p)
    return IdealHandle(I.ring, _dedupe(products))


def _dedupe(polys: Iterable[Polynomial]) -> List[Polynomial]:
    seen = set()
    out = []
    for p in polys:
        if p.is_zero():
            continue
        key = p.content_normalized()
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def fresh_name(ring: RingDescriptor, base: str) -> str:
    name, k = base, 0
    while ring.has_var(name):
        k += 1
        name = f"{base}_{k}"
    return name


def eliminate(I: IdealHandle, drop: Iterable[Union[str, int]], budget: BudgetLike = None) -> IdealHandle:
    """Contraction of ``I`` to the ring on the variables not in ``drop``."""
    ring = I.ring
    drop_idx = sorted({ring.index(v) if isinstance(v, str) else int(v) for v in drop})
    if not drop_idx:
        return IdealHandle(ring, I.gens)
    order = MonomialOrder.elimination(ring, drop_idx)
    basis = groebner_basis(I, order, budget)
    sub = ring.drop(drop_idx)
    gone = set(drop_idx)
    kept = [g.to_ring(sub) for g in basis if gone.isdisjoint(g.variables())]
    return IdealHandle(sub, kept)


def intersect(I: IdealHandle, J: IdealHandle, budget: BudgetLike = None) -> IdealHandle:
    """I ∩ J via elimination of a fresh variable w from w*I + (1-w)*J."""
    Validator.validate_same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return IdealHandle(ring, [])
    w_name = fresh_name(ring, "w")
    ext = ring.extend([w_name], Block.E)
    w = Polynomial.variable(ext, w_name)
    one_minus_w = 1 - w
    gens = [w * g.to_ring(ext) for g in I.gens] + [one_minus_w * h.to_ring(ext) for h in J.gens]
    result = eliminate(IdealHandle(ext, gens), [w_name], budget)
    return IdealHandle(ring, [g.to_ring(ring) for g in result.gens])


def colon(I: IdealHandle, f: Polynomial, budget: BudgetLike = None) -> IdealHandle:
    """(I : f) as (I ∩ <f>) / f.

    Raises:
        ValidationError: If ``f`` is zero
    """
    Validator.validate_same_ring(f, I)
    if f.is_zero():
        raise ValidationError("colon by the zero polynomial")
    if I.is_zero():
        return IdealHandle(I.ring, [])
    if f.is_constant():
        return IdealHandle(I.ring, I.gens)
    meet = intersect(I, IdealHandle(I.ring, [f]), budget)
    return IdealHandle(I.ring, [g.divide_exact(f) for g in meet.gens])


def leading_ideal(I: IdealHandle, order: Optional[MonomialOrder] = None,
                  budget: BudgetLike = None) -> List[Polynomial]:
    order = _default_order(I.ring, order)
    return [Polynomial.monomial(I.ring, g.leading_exps(order)) for g in groebner_basis(I, order, budget)]


def _min_hitting_set(sets: List[frozenset]) -> int:
    best = len(frozenset().union(*sets)) if sets else 0

    def search(chosen: frozenset, pending: List[frozenset]) -> None:
        nonlocal best
        unhit = [s for s in pending if not (s & chosen)]
        if not unhit:
            best = min(best, len(chosen))
            return
        if len(chosen) + 1 >= best:
            return
        pivot = min(unhit, key=len)
        for v in sorted(pivot):
            search(chosen | {v}, unhit)

    search(frozenset(), sets)
    return best


def dimension(I: IdealHandle, budget: BudgetLike = None) -> Tuple[int, int]:
    """(Krull dimension of ring/I, codimension of I) from the initial ideal.

    Raises:
        UnitIdealError: If I is the unit ideal
    """
    n = I.ring.nvars
    if I.is_zero():
        return (n, 0)
    basis = groebner_basis(I, None, budget)
    supports = []
    for g in basis:
        lead = g.leading_exps()
        if not any(lead):
            raise UnitIdealError("dimension of the unit ideal")
        supports.append(frozenset(i for i, v in enumerate(lead) if v))
    supports = [s for s in set(supports) if not any(t < s for t in supports)]
    supports.sort(key=lambda s: (len(s), sorted(s)))
    codim = _min_hitting_set(supports)
    return (n - codim, codim)


def is_regular_sequence(fs: Sequence[Polynomial], orders: Optional[Sequence[MonomialOrder]] = None,
                        budget: BudgetLike = None) -> RegularityCheck:
    """Decide regularity of a homogeneous sequence by coprime leading terms or by codimension."""
    if not fs:
        return RegularityCheck(Regularity.YES_BY_LT, None)
    ring = fs[0].ring
    for f in fs:
        Validator.validate_same_ring(fs[0], f)
        if f.is_zero():
            raise ValidationError("a regular sequence cannot contain zero")
    Validator.validate_homogeneous(fs)
    pool = list(orders or []) + [MonomialOrder.grevlex(ring), MonomialOrder.grlex(ring), MonomialOrder.lex(ring)]
    for order in pool:
        leads = [f.leading_exps(order) for f in fs]
        if all(exps_coprime(a, b) for a, b in combinations(leads, 2)):
            if any(not any(lead) for lead in leads):
                break
            return RegularityCheck(Regularity.YES_BY_LT, order)
    try:
        _, codim = dimension(IdealHandle(ring, fs), budget)
    except UnitIdealError:
        return RegularityCheck(Regularity.NO, None)
    if codim == len(fs):
        return RegularityCheck(Regularity.YES_BY_CODIM, None)
    return RegularityCheck(Regularity.NO, None)


def is_groebner_basis(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero modulo ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return True
    ring = gens[0].ring
    order = _default_order(ring, order)
    engine = _Engine(order, ring)
    reducers = _reducers_from(gens, engine)
    for (i, gi), (j, gj) in combinations(reducers, 2):
        if exps_coprime(gi.lm[1], gj.lm[1]):
            continue
        L = exps_lcm(gi.lm[1], gj.lm[1])
        vec: Vec = {}
        _vec_sub_scaled(vec, gi.vec, Fraction(-1), exps_sub(L, gi.lm[1]))
        _vec_sub_scaled(vec, gj.vec, Fraction(1), exps_sub(L, gj.lm[1]))
        if vec and _reduce(vec, reducers, engine.tkey):
            return False
    return True


def _column_degree(column: Sequence[Polynomial], shifts: Sequence[int]) -> int:
    return max(p.total_degree() + s for p, s in zip(column, shifts) if not p.is_zero())


def module_syzygies(ring: RingDescriptor, columns: Sequence[Sequence[Polynomial]], shifts: Sequence[int],
                    order: Optional[MonomialOrder] = None, budget: BudgetLike = None) -> List[List[Polynomial]]:
    """Generators of the syzygies of ``columns`` (vectors in a free module with
    degree ``shifts``) by Schreyer's construction on a lifted Groebner basis."""
    order = _default_order(ring, order)
    rank = len(shifts)
    m = len(columns)
    vecs = [_column_to_vec(col) for col in columns]
    engine = _Engine(order, ring, rank, shifts, budget, track=True, what="syzygies")
    engine.add_generators(vecs, list(range(m)))
    engine.complete()
    chosen = [(i, engine.basis[i]) for i in engine.minimal_indices()]
    zero = ring.zero_exps
    found: List[Rep] = []

    def lift(sigma: Dict[int, PolyDict]) -> Rep:
        out: Rep = {}
        for idx, coef in sigma.items():
            if not coef:
                continue
            for k, pd in engine.basis[idx].rep.items():
                target = out.setdefault(k, {})
                _pd_mul_add(target, coef, pd)
                if not target:
                    del out[k]
        return out

    for (a, ga), (b, gb) in combinations(chosen, 2):
        engine._check_budget()
        if ga.lm[0] != gb.lm[0]:
            continue
        L = exps_lcm(ga.lm[1], gb.lm[1])
        sa, sb = exps_sub(L, ga.lm[1]), exps_sub(L, gb.lm[1])
        vec: Vec = {}
        _vec_sub_scaled(vec, ga.vec, Fraction(-1), sa)
        _vec_sub_scaled(vec, gb.vec, Fraction(1), sb)
        quotients: Dict[int, PolyDict] = {}
        if _reduce(vec, chosen, engine.tkey, quotients=quotients):
            raise InvariantError("S-vector of a Groebner basis did not reduce to zero")
        sigma: Dict[int, PolyDict] = {}
        for idx, q in quotients.items():
            sigma[idx] = {e: -c for e, c in q.items()}
        sigma.setdefault(a, {})
        sigma[a][sa] = sigma[a].get(sa, 0) + 1
        sigma.setdefault(b, {})
        sigma[b][sb] = sigma[b].get(sb, 0) - 1
        lifted = lift({k: {e: c for e, c in v.items() if c} for k, v in sigma.items()})
        if lifted:
            found.append(lifted)
    for k, vec in enumerate(vecs):
        if not vec:
            found.append({k: {zero: Fraction(1)}})
            continue
        quotients = {}
        if _reduce(vec, chosen, engine.tkey, quotients=quotients):
            raise InvariantError("a generator is not reduced to zero by its own Groebner basis")
        column: Rep = {k: {zero: Fraction(1)}}
        lifted = lift(quotients)
        for kk, pd in lifted.items():
            target = column.setdefault(kk, {})
            _pd_add_scaled(target, pd, Fraction(-1), zero)
            if not target:
                del column[kk]
        if column:
            found.append(column)
    result = []
    for rep in found:
        result.append([Polynomial._raw(ring, dict(rep.get(k, {}))) for k in range(m)])
    logger.debug(json.dumps({"event": "module_syzygies", "rank": rank, "generators": m,
                             "basis": len(chosen), "syzygies": len(result)}))
    return result


def module_minimal_generators(ring: RingDescriptor, columns: Sequence[Sequence[Polynomial]],
                              shifts: Sequence[int], order: Optional[MonomialOrder] = None,
                              budget: BudgetLike = None) -> List[int]:
    """Indices of a minimal generating subset of homogeneous ``columns`` (graded
    Nakayama: by degree, keep a column iff it is outside the span of those kept)."""
    order = _default_order(ring, order)
    rank = len(shifts)
    engine = _Engine(order, ring, rank, shifts, budget, what="minimal generators")
    candidates = []
    for idx, col in enumerate(columns):
        if any(not p.is_zero() for p in col):
            candidates.append((_column_degree(col, shifts), idx))
    candidates.sort()
    kept = []
    for deg, idx in candidates:
        engine.complete(max_degree=deg)
        remainder = engine.normal_form(_column_to_vec(columns[idx]))
        if remainder:
            kept.append(idx)
            engine._insert(remainder, None, deg)
    return sorted(kept)


def minimal_generators(I: IdealHandle, budget: BudgetLike = None,
                       order: Optional[MonomialOrder] = None) -> IdealHandle:
    """A minimal homogeneous generating set, processed by degree then input position."""
    Validator.validate_homogeneous(I.gens)
    keep = module_minimal_generators(I.ring, [[g] for g in I.gens], [0], order, budget)
    return IdealHandle(I.ring, [I.gens[i] for i in keep])


def syzygies(fs: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
             budget: BudgetLike = None, minimal: bool = False) -> SyzygyMatrix:
    """Syzygy module generators of the ordered list ``fs``."""
    if not fs:
        raise ValidationError("syzygies of an empty list")
    ring = fs[0].ring
    for f in fs:
        Validator.validate_same_ring(fs[0], f)
    Validator.validate_homogeneous(fs)
    shifts = [max(f.total_degree(), 0) for f in fs]
    columns = module_syzygies(ring, [[f] for f in fs], [0], order, budget)
    # columns live in the free module on fs, graded by the generator degrees
    if minimal and columns:
        keep = module_minimal_generators(ring, columns, shifts, order, budget)
        columns = [columns[i] for i in keep]
    return SyzygyMatrix(ring, tuple(fs), [tuple(c) for c in columns],
                        [_column_degree(c, shifts) for c in columns])
