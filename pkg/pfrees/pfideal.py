"""
Pfaffian ideal system for pfrees.
Builds ideals of sub-Pfaffians of skew-symmetric matrices and the closed-form
generator families of the tridiagonal and block matrices.
"""
import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

from .error_handler import InvariantError, ValidationError
from .groebner import IdealHandle, ideal_equal
from .matalg import SkewMatrix, determinant, minors, pfaffian, skew_blockX4, skew_tridiagonal
from .polyring import Polynomial
from .validation import Validator

logger = logging.getLogger("pfrees.pfideal")


@dataclass(frozen=True)
class PfaffianEntry:
    """Provenance of one sub-Pfaffian: the kept (1-based) indices of the principal submatrix."""
    kept: Tuple[int, ...]
    deleted: Tuple[int, ...]
    pfaffian: Polynomial

    def to_json(self) -> Dict[str, Any]:
        return {"kept": list(self.kept), "deleted": list(self.deleted), "pfaffian": self.pfaffian.to_json()}


@dataclass
class PfaffianIdeal:
    """Ideal generated by the principal sub-Pfaffians of order ``t``.

    ``gens`` has zero Pfaffians dropped and duplicates (up to sign) merged;
    ``provenance`` keeps every principal submatrix, zeros included.
    """
    source: SkewMatrix
    t: int
    gens: List[Polynomial]
    provenance: List[PfaffianEntry]
    generator_sources: List[PfaffianEntry] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def ring(self):
        return self.source.ring

    def ideal(self) -> IdealHandle:
        return IdealHandle(self.ring, self.gens)

    def check_squares(self) -> bool:
        """Every recorded Pfaffian squares to the determinant of its submatrix."""
        for entry in self.provenance:
            sub = self.source.principal([i - 1 for i in entry.kept])
            if entry.pfaffian * entry.pfaffian != determinant(sub):
                return False
        return True

    def to_json(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "n": self.source.n,
            "ring": list(self.ring.vars),
            "gens": [g.to_json() for g in self.gens],
            "sources": [e.to_json() for e in self.generator_sources],
            "provenance": [e.to_json() for e in self.provenance],
            "metadata": self.metadata,
        }


def _collect(X: SkewMatrix, t: int, subsets) -> PfaffianIdeal:
    provenance: List[PfaffianEntry] = []
    gens: List[Polynomial] = []
    sources: List[PfaffianEntry] = []
    seen = set()
    everything = set(range(1, X.n + 1))
    for kept in subsets:
        kept = tuple(kept)
        pf = pfaffian(X.principal([i - 1 for i in kept]))
        entry = PfaffianEntry(kept, tuple(sorted(everything - set(kept))), pf)
        provenance.append(entry)
        if pf.is_zero():
            continue
        key = pf.content_normalized()
        if key in seen:
            continue
        seen.add(key)
        gens.append(pf)
        sources.append(entry)
    return PfaffianIdeal(X, t, gens, provenance, sources)


def pf_ideal_maximal(X: SkewMatrix) -> PfaffianIdeal:
    """Pf_{n-1}(X) with generators Pf_l̄(X) for l = 1..n, deleted index ascending.

    Raises:
        ValidationError: If the order of X is even
    """
    Validator.validate_odd(X.n, "matrix order", 1)
    n = X.n
    subsets = [tuple(i for i in range(1, n + 1) if i != l) for l in range(1, n + 1)]
    result = _collect(X, n - 1, subsets)
    result.metadata["principal_only"] = True
    logger.debug(json.dumps({"event": "pf_ideal_maximal", "n": n, "generators": len(result.gens)}))
    return result


def pf_ideal_general(X: SkewMatrix, t: int) -> PfaffianIdeal:
    """Pf_t(X): Pfaffians of all principal t x t submatrices.

    Only principal submatrices (row set equal to column set) are used, and the
    result's metadata says so.

    Raises:
        ValidationError: If t is odd or out of range
    """
    Validator.validate_even(t, "t")
    Validator.validate_range(t, 0, X.n, "t")
    result = _collect(X, t, combinations(range(1, X.n + 1), t))
    result.metadata["principal_only"] = True
    logger.debug(json.dumps({"event": "pf_ideal_general", "n": X.n, "t": t,
                             "submatrices": len(result.provenance), "generators": len(result.gens)}))
    return result


def tridiagonal_generators_closed_form(r: int) -> List[Polynomial]:
    """The r+1 monomials p_1..p_{r+1} of the order 2r+1 tridiagonal matrix.

    p_i is the Pfaffian with row 2i-1 deleted: the product of the superdiagonal
    entries x_{2k-1,2k} for k < i and x_{2k,2k+1} for k >= i.
    """
    Validator.validate_integer(r, "r")
    if r < 1:
        raise ValidationError(f"r must be at least 1, got {r}")
    X = skew_tridiagonal(2 * r + 1)
    ring = X.ring
    result = []
    for i in range(1, r + 2):
        p = Polynomial.one(ring)
        for k in range(1, i):
            p = p * ring.var(f"x{2 * k - 1}_{2 * k}")
        for k in range(i, r + 1):
            p = p * ring.var(f"x{2 * k}_{2 * k + 1}")
        result.append(p)
    return result


def blockX4_generators(r: int, check: bool = True) -> List[Polynomial]:
    """The r+1 maximal minors of the A-block of the block matrix, one per deleted row.

    With ``check`` each minor is compared (up to sign) with the Pfaffian with the
    same row deleted, and the remaining Pfaffians are confirmed to vanish.

    Raises:
        InvariantError: If the minors and the Pfaffians disagree
    """
    Validator.validate_integer(r, "r")
    if r < 1:
        raise ValidationError(f"r must be at least 1, got {r}")
    X = skew_blockX4(r)
    top = list(range(r + 1))
    cols = list(range(r + 1, 2 * r + 1))
    gens = []
    for k in range(r + 1):
        rows = [i for i in top if i != k]
        gens.append(minors(X, r, rows, cols)[0])
    if check:
        pf = pf_ideal_maximal(X)
        by_deleted = {e.deleted[0]: e.pfaffian for e in pf.provenance}
        for l in range(1, 2 * r + 2):
            p = by_deleted[l]
            if l <= r + 1:
                g = gens[l - 1]
                if p != g and p != -g:
                    raise InvariantError(f"minor {l} does not match the Pfaffian with row {l} deleted")
            elif not p.is_zero():
                raise InvariantError(f"Pfaffian with row {l} deleted should vanish")
    return gens


def tridiagonal_ideal(n: int) -> PfaffianIdeal:
    return pf_ideal_maximal(skew_tridiagonal(n))


def pfaffian_ideal_summary(P: PfaffianIdeal) -> Dict[str, Any]:
    degrees = sorted({g.total_degree() for g in P.gens})
    return {
        "n": P.source.n,
        "t": P.t,
        "generators": len(P.gens),
        "degrees": degrees,
        "zero_pfaffians": sum(1 for e in P.provenance if e.pfaffian.is_zero()),
        "principal_only": P.metadata.get("principal_only", True),
    }


def closed_form_matches(r: int, budget: Optional[float] = None) -> bool:
    """Closed-form tridiagonal generators generate the recursion-built ideal."""
    P = tridiagonal_ideal(2 * r + 1)
    closed = tridiagonal_generators_closed_form(r)
    return ideal_equal(P.ideal(), IdealHandle(P.ring, closed), budget=budget)
