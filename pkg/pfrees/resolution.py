"""
Free resolution system for pfrees.
Schreyer syzygy iteration, minimalization by unit cancellation, Betti tables
and the length three complex resolving a maximal Pfaffian ideal.
"""
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .budget import Budget
from .error_handler import BudgetExceededError, InvariantError, ParseError, UnitIdealError, ValidationError
from .groebner import BudgetLike, IdealHandle, dimension, module_minimal_generators, module_syzygies
from .matalg import PolyMatrix, determinant, skew_generic
from .pfideal import pf_ideal_maximal
from .polyring import DegreeMarker, MonomialOrder, Polynomial, RingDescriptor
from .validation import Validator

logger = logging.getLogger("pfrees.resolution")

BiShift = Optional[Tuple[int, int]]


@dataclass
class GradedFreeComplex:
    """0 <- F_0 <- F_1 <- ... <- F_k with ``differentials[i-1]`` the map F_i -> F_{i-1}.

    ``shifts[i]`` lists the degrees of the basis elements of F_i, so F_i is the
    direct sum of R(-s) over s in ``shifts[i]``.
    """
    ring: RingDescriptor
    differentials: List[PolyMatrix]
    shifts: List[List[int]]
    bishifts: List[List[BiShift]] = field(default_factory=list)
    minimal: bool = False

    @property
    def length(self) -> int:
        return len(self.differentials)

    @property
    def ranks(self) -> List[int]:
        return [len(s) for s in self.shifts]

    def is_complex(self) -> bool:
        """Consecutive differentials compose to zero."""
        for left, right in zip(self.differentials, self.differentials[1:]):
            if left.ncols != right.nrows or not (left @ right).is_zero():
                return False
        return True

    def has_unit_entries(self) -> bool:
        return any(d.unit_positions() for d in self.differentials)

    def graded_euler_characteristic(self) -> Dict[int, int]:
        chi: Counter = Counter()
        for i, degrees in enumerate(self.shifts):
            for d in degrees:
                chi[d] += (-1) ** i
        return {d: v for d, v in sorted(chi.items()) if v}

    def to_json(self) -> Dict[str, Any]:
        return {
            "ring": list(self.ring.vars),
            "shifts": self.shifts,
            "minimal": self.minimal,
            "differentials": [d.to_json() for d in self.differentials],
        }


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j}, optionally refined by bidegree."""
    entries: Dict[Tuple[int, int], int]
    bigraded: Dict[Tuple[int, Tuple[int, int]], int] = field(default_factory=dict)

    @classmethod
    def from_complex(cls, C: GradedFreeComplex) -> "BettiTable":
        entries: Counter = Counter()
        bigraded: Counter = Counter()
        for i, degrees in enumerate(C.shifts):
            for j in degrees:
                entries[(i, j)] += 1
        for i, bidegrees in enumerate(C.bishifts):
            if all(b is not None for b in bidegrees):
                for b in bidegrees:
                    bigraded[(i, b)] += 1
        return cls(dict(entries), dict(bigraded))

    def rank(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)

    @property
    def projective_dimension(self) -> int:
        return max((i for (i, _), v in self.entries.items() if v), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for (i, j), v in self.entries.items() if v), default=0)

    def nonzero(self) -> List[Tuple[int, int, int]]:
        return sorted((i, j, v) for (i, j), v in self.entries.items() if v)

    def is_linear(self, d: int) -> bool:
        """The quotient by an ideal generated in degree d has a linear resolution."""
        return all(j == i + d - 1 for i, j, _ in self.nonzero() if i >= 1)

    def render(self) -> str:
        """Macaulay-style layout: row k holds beta_{i,i+k}."""
        width = self.projective_dimension + 1
        rows = range(0, self.regularity + 1)
        cells = [[str(i) for i in range(width)]]
        cells.append([str(self.total(i)) for i in range(width)])
        for k in rows:
            cells.append([str(self.rank(i, i + k)) if self.rank(i, i + k) else "." for i in range(width)])
        labels = ["", "total:"] + [f"{k}:" for k in rows]
        col_w = max(len(c) for row in cells for c in row)
        lab_w = max(len(l) for l in labels)
        lines = []
        for label, row in zip(labels, cells):
            lines.append(label.rjust(lab_w) + " " + " ".join(c.rjust(col_w) for c in row))
        return "\n".join(lines)

    def __str__(self):
        return self.render()

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": 1,
            "entries": [{"i": i, "j": j, "rank": v} for i, j, v in self.nonzero()],
            "bigraded": [{"i": i, "bidegree": list(b), "rank": v}
                         for (i, b), v in sorted(self.bigraded.items()) if v],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "BettiTable":
        try:
            entries = {(int(e["i"]), int(e["j"])): int(e["rank"]) for e in data["entries"]}
            bigraded = {(int(e["i"]), tuple(int(x) for x in e["bidegree"])): int(e["rank"])
                        for e in data.get("bigraded", [])}
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed Betti table JSON: {e}") from None
        return cls(entries, bigraded)


def _column_bidegree(column, bishifts: List[BiShift]) -> BiShift:
    found = None
    for p, b in zip(column, bishifts):
        if p.is_zero():
            continue
        bd = p.bidegree()
        if b is None or isinstance(bd, DegreeMarker):
            return None
        value = (bd[0] + b[0], bd[1] + b[1])
        if found is not None and found != value:
            return None
        found = value
    return found


def _column_degree(column, shifts: List[int]) -> int:
    return max(p.total_degree() + s for p, s in zip(column, shifts) if not p.is_zero())


def schreyer_resolve(I: IdealHandle, max_len: Optional[int] = None, budget: BudgetLike = None,
                     prune: bool = False, order: Optional[MonomialOrder] = None) -> GradedFreeComplex:
    """Free resolution of ring/I by iterated module syzygies.

    With ``prune`` every step keeps only a minimal generating subset of the
    syzygies, which makes the result minimal up to unit entries left by the
    first step.

    Raises:
        BudgetExceededError: With the complex built so far attached
    """
    Validator.validate_homogeneous(I.gens)
    ring = I.ring
    budget = Budget.coerce(budget)
    max_len = ring.nvars + 1 if max_len is None else max_len
    Validator.validate_nonnegative(max_len, "max_len")
    gens = list(I.gens)
    if prune and gens:
        keep = module_minimal_generators(ring, [[g] for g in gens], [0], order, budget)
        gens = [gens[i] for i in keep]
    shifts: List[List[int]] = [[0]]
    bishifts: List[List[BiShift]] = [[(0, 0)]]
    differentials: List[PolyMatrix] = []
    if not gens or max_len == 0:
        return GradedFreeComplex(ring, differentials, shifts, bishifts, minimal=not gens)
    differentials.append(PolyMatrix(ring, [gens]))
    shifts.append([g.total_degree() for g in gens])
    bishifts.append([_column_bidegree([g], [(0, 0)]) for g in gens])
    while len(differentials) < max_len:
        d = differentials[-1]
        source = shifts[-1]
        try:
            columns = module_syzygies(ring, d.columns(), shifts[-2], order, budget)
            columns = [c for c in columns if any(not p.is_zero() for p in c)]
            if prune and columns:
                keep = module_minimal_generators(ring, columns, source, order, budget)
                columns = [columns[i] for i in keep]
        except BudgetExceededError as e:
            raise BudgetExceededError(str(e), partial=GradedFreeComplex(ring, differentials, shifts, bishifts),
                                      elapsed_s=e.elapsed_s) from None
        if not columns:
            break
        differentials.append(PolyMatrix.from_columns(ring, len(source), columns))
        shifts.append([_column_degree(c, source) for c in columns])
        bishifts.append([_column_bidegree(c, bishifts[-1]) for c in columns])
        logger.debug(json.dumps({"event": "schreyer_step", "step": len(differentials),
                                 "rank": len(columns), "elapsed_ms": budget.elapsed_ms()}))
    return GradedFreeComplex(ring, differentials, shifts, bishifts)


def _first_unit(C: GradedFreeComplex) -> Optional[Tuple[int, int, int]]:
    for k, d in enumerate(C.differentials):
        units = d.unit_positions()
        if units:
            i, j = min(units)
            return k, i, j
    return None


def minimalize(C: GradedFreeComplex) -> GradedFreeComplex:
    """Cancel unit entries until no differential has a nonzero constant entry.

    The pivot is the first differential holding a unit, at its smallest
    (row, column) position.

    Raises:
        InvariantError: If the graded Euler characteristic changed
    """
    chi = C.graded_euler_characteristic()
    diffs = [[list(row) for row in d.entries] for d in C.differentials]
    ncols = [d.ncols for d in C.differentials]
    shifts = [list(s) for s in C.shifts]
    bishifts = [list(b) for b in C.bishifts] if C.bishifts else []
    ring = C.ring
    current = GradedFreeComplex(ring, list(C.differentials), shifts, bishifts)
    while True:
        pivot = _first_unit(current)
        if pivot is None:
            break
        k, i, j = pivot
        d = diffs[k]
        u = d[i][j].constant_term()
        pivot_row = d[i]
        new_d = []
        for p, row in enumerate(d):
            if p == i:
                continue
            factor = row[j]
            if factor.is_zero():
                new_row = [row[q] for q in range(ncols[k]) if q != j]
            else:
                scaled = factor.scale(1 / u)
                new_row = [row[q] - scaled * pivot_row[q] if not pivot_row[q].is_zero() else row[q]
                           for q in range(ncols[k]) if q != j]
            new_d.append(new_row)
        diffs[k] = new_d
        ncols[k] -= 1
        # basis element j of F_{k+1} and basis element i of F_k disappear
        if k + 1 < len(diffs):
            diffs[k + 1] = [row for p, row in enumerate(diffs[k + 1]) if p != j]
        if k > 0:
            diffs[k - 1] = [[e for q, e in enumerate(row) if q != i] for row in diffs[k - 1]]
            ncols[k - 1] -= 1
        del shifts[k + 1][j]
        del shifts[k][i]
        if bishifts:
            del bishifts[k + 1][j]
            del bishifts[k][i]
        matrices = [PolyMatrix(ring, rows, nc) for rows, nc in zip(diffs, ncols)]
        current = GradedFreeComplex(ring, matrices, shifts, bishifts)
    # trailing free modules of rank zero carry no information
    while current.differentials and not current.shifts[-1]:
        current.differentials.pop()
        current.shifts.pop()
        if current.bishifts:
            current.bishifts.pop()
    if current.graded_euler_characteristic() != chi:
        raise InvariantError("minimalization changed the graded Euler characteristic")
    current.minimal = True
    return current


def betti_table(I: IdealHandle, max_len: Optional[int] = None, budget: BudgetLike = None,
                order: Optional[MonomialOrder] = None) -> BettiTable:
    """Graded Betti numbers of ring/I from a pruned Schreyer resolution, minimalized."""
    C = minimalize(schreyer_resolve(I, max_len, budget, prune=True, order=order))
    table = BettiTable.from_complex(C)
    logger.info(json.dumps({"event": "betti_table", "entries": table.to_json()["entries"]}))
    return table


def has_linear_resolution(I: IdealHandle, budget: BudgetLike = None) -> bool:
    """True iff ring/I has beta_{i,j} = 0 unless j = i + d - 1 for i >= 1 (I generated in degree d)."""
    d = Validator.validate_equigenerated(I.gens)
    return betti_table(I, budget=budget).is_linear(d)


class SignConvention(Enum):
    UNSIGNED = "unsigned"
    ALTERNATING_PLUS = "alternating_plus"
    ALTERNATING_MINUS = "alternating_minus"

    def sign(self, position: int) -> int:
        if self is SignConvention.UNSIGNED:
            return 1
        if self is SignConvention.ALTERNATING_PLUS:
            return 1 if position % 2 == 1 else -1
        return -1 if position % 2 == 1 else 1


class IndexOrder(Enum):
    NATURAL = "natural"
    REVERSED = "reversed"


def be_complex(n: int, sign_convention: SignConvention = SignConvention.UNSIGNED,
               index_order: IndexOrder = IndexOrder.REVERSED) -> GradedFreeComplex:
    """The length three complex of the generic skew matrix of odd order n.

    d_1 is the row of sub-Pfaffians, d_3 the same entries as a column, and
    d_2 has entries (-1)^(i+j) x_{n+1-i, n+1-j}. The sign convention multiplies
    position l of d_1 and d_3; the index order puts Pf_l̄ (NATURAL) or
    Pf_{n+1-l}̄ (REVERSED) at position l.
    """
    Validator.validate_odd(n, "n", 3)
    sign_convention = SignConvention(sign_convention)
    index_order = IndexOrder(index_order)
    X = skew_generic(n)
    ring = X.ring
    r = (n - 1) // 2
    pfs = {e.deleted[0]: e.pfaffian for e in pf_ideal_maximal(X).provenance}
    entries = []
    for l in range(1, n + 1):
        source = l if index_order is IndexOrder.NATURAL else n + 1 - l
        entries.append(pfs[source].scale(sign_convention.sign(l)))
    d1 = PolyMatrix(ring, [entries])
    d2_rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            entry = X[(n - i, n - j)]
            row.append(entry if (i + j) % 2 == 0 else -entry)
        d2_rows.append(row)
    d2 = PolyMatrix(ring, d2_rows)
    d3 = PolyMatrix(ring, [[e] for e in entries])
    shifts = [[0], [r] * n, [r + 1] * n, [2 * r + 1]]
    bishifts = [[(0, 0)], [(r, 0)] * n, [(r + 1, 0)] * n, [(2 * r + 1, 0)]]
    return GradedFreeComplex(ring, [d1, d2, d3], shifts, bishifts)


def find_verifying_conventions(n: int) -> List[Tuple[SignConvention, IndexOrder]]:
    """Every (sign convention, index order) pair whose complex composes to zero."""
    found = []
    for sign in SignConvention:
        for order in IndexOrder:
            if be_complex(n, sign, order).is_complex():
                found.append((sign, order))
    logger.info(json.dumps({"event": "be_conventions", "n": n,
                            "verifying": [[s.value, o.value] for s, o in found]}))
    return found


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    PARTIAL = "partial"


@dataclass
class BEReport:
    is_complex: bool
    is_minimal: bool
    ranks_ok: bool
    codims: List[Optional[int]]
    codim_exact: List[bool]
    acyclicity: CheckStatus
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.is_complex and self.is_minimal and self.ranks_ok and self.acyclicity is CheckStatus.PASS

    def to_json(self) -> Dict[str, Any]:
        return {
            "is_complex": self.is_complex,
            "is_minimal": self.is_minimal,
            "ranks_ok": self.ranks_ok,
            "codims": self.codims,
            "codim_exact": self.codim_exact,
            "acyclicity": self.acyclicity.value,
            "notes": self.notes,
        }


def _iter_minors(M: PolyMatrix, t: int) -> Iterator[Polynomial]:
    for rows in combinations(range(M.nrows), t):
        for cols in combinations(range(M.ncols), t):
            yield determinant(M.submatrix(rows, cols))


def _codim_lower_bound(M: PolyMatrix, t: int, target: int, budget: Budget) -> Tuple[int, bool]:
    """A lower bound for codim I_t(M), stopping once ``target`` is reached.

    Sub-ideals of the minor ideal have no larger codimension, so the minors are
    fed in batches of doubling size. The flag is True when every minor was used.
    """
    gens: List[Polynomial] = []
    best = 0
    batch = max(target, 1)
    exhausted = True
    for minor in _iter_minors(M, t):
        budget.check(what="minor ideal codimension")
        if minor.is_zero():
            continue
        gens.append(minor)
        if len(gens) >= batch:
            best = max(best, dimension(IdealHandle(M.ring, gens), budget)[1])
            if best >= target:
                exhausted = False
                break
            batch *= 2
    else:
        if gens:
            best = max(best, dimension(IdealHandle(M.ring, gens), budget)[1])
    return best, exhausted


def be_verify(C: GradedFreeComplex, budget: BudgetLike = None) -> BEReport:
    """Check the complex property, minimality and the Buchsbaum-Eisenbud acyclicity criterion.

    Over a polynomial ring grade equals codimension, so the criterion is checked
    as codim I_{r_i}(d_i) >= i with expected ranks r = (1, n-1, 1).
    """
    budget = Budget.coerce(budget)
    notes: List[str] = []
    if C.length != 3 or C.ranks[0] != 1 or C.ranks[3] != 1 or C.ranks[1] != C.ranks[2]:
        raise ValidationError(f"expected a complex of ranks (1, n, n, 1), got {C.ranks}")
    n = C.ranks[1]
    expected = [1, n - 1, 1]
    is_complex = C.is_complex()
    is_minimal = not C.has_unit_entries()
    d1, d2, d3 = C.differentials
    ranks_ok = (not d1.is_zero() and not d3.is_zero() and determinant(d2).is_zero()
                and expected[0] + expected[1] == n and expected[1] + expected[2] == n)
    codims: List[Optional[int]] = [None, None, None]
    exact = [False, False, False]
    status = CheckStatus.PASS
    try:
        for idx, (d, t) in enumerate(zip((d1, d2, d3), expected)):
            target = idx + 1
            try:
                if t == 1:
                    codims[idx] = dimension(IdealHandle(C.ring, [e for row in d.entries for e in row]), budget)[1]
                    exact[idx] = True
                else:
                    codims[idx], exact[idx] = _codim_lower_bound(d, t, target, budget)
            except UnitIdealError:
                # the unit ideal has infinite grade; nvars + 1 stands in for it
                codims[idx], exact[idx] = C.ring.nvars + 1, True
                notes.append(f"the minor ideal of d{target} is the unit ideal")
            if codims[idx] < target:
                status = CheckStatus.FAIL
    except BudgetExceededError:
        status = CheckStatus.PARTIAL
        notes.append("budget exhausted during minor ideal codimension")
    if not exact[1] and codims[1] is not None:
        notes.append("codim of the d2 minor ideal is a lower bound from a sub-ideal")
    report = BEReport(is_complex, is_minimal, ranks_ok, codims, exact, status, notes)
    logger.info(json.dumps({"event": "be_verify", "n": n, **report.to_json()}))
    return report
