"""
Matrix algebra for pfrees.
Polynomial matrices, determinants, minors, Pfaffians and the skew-symmetric
matrix families (generic, tridiagonal, block and custom patterns).
"""
import logging
import re
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from sympy.parsing.sympy_parser import parse_expr

from .error_handler import ParseError, RingMismatchError, ValidationError
from .polyring import Polynomial, RingDescriptor, _TRANSFORMS, parse_polynomial, ring_make
from .validation import Validator

logger = logging.getLogger("pfrees.matalg")

Entry = Union[Polynomial, int]
Pattern = Iterable[Tuple[int, int]]

# Sparse 7x7 pattern whose order-4 Pfaffian ideal is not of linear type.
SPARSE_SEVEN_PATTERN = frozenset({
    (1, 2), (1, 4), (2, 3), (2, 5), (3, 4), (3, 6), (4, 5), (4, 7), (5, 6), (6, 7),
})

# A 5x5 pattern with the same maximal Pfaffian ideal as the tridiagonal 5x5 matrix.
ALTERNATE_FIVE_PATTERN = frozenset({(1, 2), (2, 3), (2, 4), (3, 4), (4, 5)})


class PolyMatrix:
    """Dense matrix of polynomials over one ring."""

    def __init__(self, ring: RingDescriptor, rows: Sequence[Sequence[Entry]], ncols: Optional[int] = None):
        grid = []
        for row in rows:
            grid.append(tuple(self._coerce_entry(ring, e) for e in row))
        widths = {len(r) for r in grid}
        if len(widths) > 1:
            raise ValidationError("matrix rows must have equal length")
        width = widths.pop() if widths else (ncols or 0)
        if ncols is not None and width != ncols:
            raise ValidationError(f"expected {ncols} columns, got {width}")
        self.ring = ring
        self.entries: Tuple[Tuple[Polynomial, ...], ...] = tuple(grid)
        self.nrows = len(grid)
        self.ncols = width

    @staticmethod
    def _coerce_entry(ring: RingDescriptor, e: Entry) -> Polynomial:
        if isinstance(e, Polynomial):
            if e.ring is not ring and e.ring != ring:
                raise RingMismatchError("matrix entry from a different ring")
            return e
        return Polynomial.constant(ring, e)

    @classmethod
    def zeros(cls, ring: RingDescriptor, nrows: int, ncols: int) -> "PolyMatrix":
        zero = Polynomial.zero(ring)
        return cls(ring, [[zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, ring: RingDescriptor, nrows: int,
                     columns: Sequence[Sequence[Polynomial]]) -> "PolyMatrix":
        rows = [[col[i] for col in columns] for i in range(nrows)]
        return cls(ring, rows, len(columns))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, pos: Tuple[int, int]) -> Polynomial:
        i, j = pos
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[Polynomial, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[Polynomial, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[Polynomial, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_columns(self.ring, self.ncols, [list(r) for r in self.entries])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows], len(cols))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValidationError(f"cannot multiply {self.shape} by {other.shape}")
        zero = Polynomial.zero(self.ring)
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return PolyMatrix(self.ring, rows, other.ncols)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValidationError("shape mismatch")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                          self.ncols)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.entries], self.ncols)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def scale_rows(self, factors: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[a * f for a in r] for r, f in zip(self.entries, factors)], self.ncols)

    def scale_columns(self, factors: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[a * f for a, f in zip(r, factors)] for r in self.entries], self.ncols)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def unit_positions(self) -> List[Tuple[int, int]]:
        """Positions whose entry has a nonzero constant term."""
        return [(i, j) for i, r in enumerate(self.entries) for j, e in enumerate(r) if e.constant_term()]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"

    def to_text(self) -> str:
        return "\n".join("; ".join(str(e) for e in row) for row in self.entries)

    def to_json(self) -> List[List[Dict[str, Any]]]:
        return [[e.to_json() for e in row] for row in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[Mapping[str, Any]]], ring: Optional[RingDescriptor] = None) -> "PolyMatrix":
        if ring is None:
            first = next((e for row in data for e in row), None)
            if first is None:
                raise ParseError("cannot infer the ring of an empty JSON matrix")
            names = list(first["ring"])
            ring = ring_make(names, len(names), 0, 0)
        return cls(ring, [[Polynomial.from_json(e, ring) for e in row] for row in data])


class SkewMatrix(PolyMatrix):
    """Square polynomial matrix with entry(j,i) = -entry(i,j) and zero diagonal."""

    def __init__(self, ring: RingDescriptor, rows: Sequence[Sequence[Entry]]):
        super().__init__(ring, rows, len(rows))
        if self.nrows != self.ncols:
            raise ValidationError("a skew-symmetric matrix must be square")
        for i in range(self.nrows):
            if not self.entries[i][i].is_zero():
                raise ValidationError(f"diagonal entry ({i + 1},{i + 1}) is not zero")
            for j in range(i + 1, self.nrows):
                if self.entries[j][i] != -self.entries[i][j]:
                    raise ValidationError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")

    @property
    def n(self) -> int:
        return self.nrows

    def principal(self, indices: Sequence[int]) -> "SkewMatrix":
        """Principal submatrix on 0-based ``indices``."""
        return SkewMatrix(self.ring, [[self.entries[i][j] for j in indices] for i in indices])

    def delete(self, l: int) -> "SkewMatrix":
        """Remove row and column ``l`` (1-based)."""
        Validator.validate_range(l, 1, self.n, "deleted index")
        return self.principal([i for i in range(self.n) if i != l - 1])

    @classmethod
    def from_upper(cls, ring: RingDescriptor, n: int, upper: Mapping[Tuple[int, int], Polynomial]) -> "SkewMatrix":
        """Build from 1-based upper-triangular entries."""
        zero = Polynomial.zero(ring)
        rows = [[zero] * n for _ in range(n)]
        for (i, j), value in upper.items():
            rows[i - 1][j - 1] = value
            rows[j - 1][i - 1] = -value
        return cls(ring, rows)


def entry_name(i: int, j: int) -> str:
    return f"x{i}_{j}"


def _validate_pattern(n: int, pattern: Pattern) -> List[Tuple[int, int]]:
    pairs = sorted({(int(i), int(j)) for i, j in pattern})
    for i, j in pairs:
        if not (1 <= i < j <= n):
            raise ValidationError(f"pair ({i},{j}) out of range for order {n}")
    return pairs


def skew_custom(n: int, pattern: Pattern, ring: Optional[RingDescriptor] = None) -> SkewMatrix:
    """Skew matrix with fresh variables x{i}_{j} exactly at the 1-based ``pattern`` positions.

    Raises:
        ValidationError: If a pair is out of range
    """
    Validator.validate_nonnegative(n, "n")
    pairs = _validate_pattern(n, pattern)
    if ring is None:
        names = [entry_name(i, j) for i, j in pairs]
        ring = ring_make(names, len(names), 0, 0)
    upper = {(i, j): Polynomial.variable(ring, entry_name(i, j)) for i, j in pairs}
    return SkewMatrix.from_upper(ring, n, upper)


def skew_generic(n: int) -> SkewMatrix:
    """Generic skew-symmetric matrix of odd order ``n``."""
    Validator.validate_odd(n, "n", 1)
    return skew_custom(n, combinations(range(1, n + 1), 2))


def skew_tridiagonal(n: int) -> SkewMatrix:
    """Skew matrix with x{i}_{i+1} on the superdiagonal and zeros elsewhere."""
    Validator.validate_odd(n, "n", 3)
    return skew_custom(n, [(i, i + 1) for i in range(1, n)])


def blockx4_pattern(r: int) -> List[Tuple[int, int]]:
    n = 2 * r + 1
    a_block = [(k, r + 1 + m) for k in range(1, r + 2) for m in range(1, r + 1)]
    b_block = list(combinations(range(r + 2, n + 1), 2))
    return a_block + b_block


def skew_blockX4(r: int) -> SkewMatrix:
    """The order 2r+1 matrix [[O, A], [-A^T, B]] with a zero (r+1)x(r+1) corner,
    A generic (r+1)x r and B generic skew r x r."""
    Validator.validate_nonnegative(r, "r")
    return skew_custom(2 * r + 1, blockx4_pattern(r))


def pfaffian(M: SkewMatrix) -> Polynomial:
    """Pfaffian by expansion along the first row; zero for odd order, one for the empty matrix."""
    zero = Polynomial.zero(M.ring)
    if M.n % 2:
        return zero
    memo: Dict[Tuple[int, ...], Polynomial] = {}

    def pf(idx: Tuple[int, ...]) -> Polynomial:
        if not idx:
            return Polynomial.one(M.ring)
        if idx in memo:
            return memo[idx]
        first = idx[0]
        total = zero
        for pos in range(1, len(idx)):
            entry = M.entries[first][idx[pos]]
            if entry.is_zero():
                continue
            sub = pf(idx[1:pos] + idx[pos + 1:])
            if sub.is_zero():
                continue
            # position pos+1 in 1-based terms carries the sign (-1)^(pos+1)
            total = total + entry * sub if pos % 2 == 1 else total - entry * sub
        memo[idx] = total
        return total

    return pf(tuple(range(M.n)))


def _cofactor(rows: Sequence[Sequence[Polynomial]], ring: RingDescriptor) -> Polynomial:
    n = len(rows)
    zero = Polynomial.zero(ring)
    memo: Dict[Tuple[int, ...], Polynomial] = {}

    def det(cols: Tuple[int, ...]) -> Polynomial:
        if not cols:
            return Polynomial.one(ring)
        if cols in memo:
            return memo[cols]
        r = n - len(cols)
        total = zero
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            sub = det(cols[:pos] + cols[pos + 1:])
            if sub.is_zero():
                continue
            total = total + entry * sub if pos % 2 == 0 else total - entry * sub
        memo[cols] = total
        return total

    return det(tuple(range(n)))


def determinant(M: PolyMatrix, method: str = "bareiss") -> Polynomial:
    """Exact determinant.

    Bareiss fraction-free elimination with exact division; when a pivot is the
    zero polynomial the trailing block is expanded by cofactors and Sylvester's
    identity recovers the determinant. ``method="cofactor"`` expands directly.

    Raises:
        ValidationError: If the matrix is not square or the method is unknown
    """
    if M.nrows != M.ncols:
        raise ValidationError(f"determinant of a non-square {M.nrows}x{M.ncols} matrix")
    n = M.nrows
    ring = M.ring
    if n == 0:
        return Polynomial.one(ring)
    if method == "cofactor":
        return _cofactor(M.entries, ring)
    if method != "bareiss":
        raise ValidationError(f"unknown determinant method {method!r}")
    a = [list(row) for row in M.entries]
    prev = Polynomial.one(ring)
    for k in range(n - 1):
        if a[k][k].is_zero():
            trailing = [row[k:] for row in a[k:]]
            block_det = _cofactor(trailing, ring)
            if block_det.is_zero() or k == 0:
                return block_det
            return block_det.divide_exact(prev ** (n - k - 1))
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                value = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = value if k == 0 else value.divide_exact(prev)
        prev = pivot
    return a[n - 1][n - 1]


def minors(M: PolyMatrix, t: int, rows: Optional[Sequence[int]] = None,
           cols: Optional[Sequence[int]] = None) -> List[Polynomial]:
    """All t x t minors of the selected (0-based) rows and columns, in
    lexicographic order of (row subset, column subset).

    Raises:
        ValidationError: If t is out of range
    """
    rows = list(range(M.nrows)) if rows is None else list(rows)
    cols = list(range(M.ncols)) if cols is None else list(cols)
    Validator.validate_integer(t, "t")
    if not 1 <= t <= min(len(rows), len(cols)):
        raise ValidationError(f"minor size {t} out of range for a {len(rows)}x{len(cols)} selection")
    result = []
    for rsub in combinations(rows, t):
        for csub in combinations(cols, t):
            result.append(determinant(M.submatrix(rsub, csub)))
    return result


def _natural_key(name: str):
    return [int(part) if part.isdigit() else part for part in re.findall(r"\d+|\D+", name)]


def parse_matrix_text(text: str, ring: Optional[RingDescriptor] = None) -> PolyMatrix:
    """Parse the ``;``-separated row format; blank lines and ``#`` comments are skipped.

    Without ``ring`` the variables found in the entries form an X-block ring in
    natural name order.

    Raises:
        ParseError: On malformed entries or ragged rows
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    cells = [[c.strip() for c in ln.split(";")] for ln in lines]
    if ring is None:
        names: Set[str] = set()
        for row in cells:
            for c in row:
                try:
                    expr = parse_expr(c, transformations=_TRANSFORMS)
                except Exception as e:
                    raise ParseError(f"cannot parse matrix entry {c!r}: {e}") from None
                names.update(str(s) for s in getattr(expr, "free_symbols", ()))
        ordered = sorted(names, key=_natural_key)
        ring = ring_make(ordered, len(ordered), 0, 0)
    try:
        return PolyMatrix(ring, [[parse_polynomial(c, ring) for c in row] for row in cells])
    except ValidationError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e)) from None


def parse_skew_text(text: str, ring: Optional[RingDescriptor] = None) -> SkewMatrix:
    M = parse_matrix_text(text, ring)
    try:
        return SkewMatrix(M.ring, M.entries)
    except ValidationError as e:
        raise ParseError(f"not a skew-symmetric matrix: {e}") from None
