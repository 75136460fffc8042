"""
Polynomial ring system for pfrees.
Exact sparse multivariate polynomials over the rationals, monomial orders and
the bigraded bookkeeping every other module builds on.
"""
import logging
import operator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from .error_handler import ParseError, RingMismatchError, ValidationError
from .validation import Validator

logger = logging.getLogger("pfrees.polyring")

Exps = Tuple[int, ...]
Scalar = Union[int, Fraction]

_TRANSFORMS = standard_transformations + (implicit_multiplication, convert_xor)


class Block(Enum):
    """Variable blocks of a ring descriptor."""
    X = "x"
    Y = "y"
    E = "e"


class DegreeMarker(Enum):
    """Markers returned by bidegree_of when no single bidegree exists."""
    NON_HOMOGENEOUS = "non_homogeneous"
    BOTTOM = "bottom"


class Cmp(Enum):
    LT = -1
    EQ = 0
    GT = 1


class OrderKind(Enum):
    LEX = "lex"
    GRLEX = "grlex"
    GREVLEX = "grevlex"


class ArithOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"


_DEFAULT_BIDEGREE = {Block.X: (1, 0), Block.Y: (0, 1), Block.E: (0, 0)}


@dataclass(frozen=True)
class RingDescriptor:
    """Ordered variables with a block partition and per-variable bidegrees."""
    vars: Tuple[str, ...]
    blocks: Tuple[Block, ...]
    bidegrees: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "bidegrees", tuple(tuple(b) for b in self.bidegrees))
        if not (len(self.vars) == len(self.blocks) == len(self.bidegrees)):
            raise ValidationError("vars, blocks and bidegrees must have equal length")
        if len(set(self.vars)) != len(self.vars):
            dupes = sorted({v for v in self.vars if self.vars.count(v) > 1})
            raise ValidationError(f"duplicate variable names: {dupes}")
        for name, block, bideg in zip(self.vars, self.blocks, self.bidegrees):
            if not isinstance(name, str) or not name.isidentifier():
                raise ValidationError(f"invalid variable name: {name!r}")
            if block is Block.X and bideg != (1, 0):
                raise ValidationError(f"X-block variable {name} must have bidegree (1,0)")
            if block is Block.Y and (bideg[0] != 0 or bideg[1] < 1):
                raise ValidationError(f"Y-block variable {name} must have bidegree (0,d) with d >= 1")

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.vars)}

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise ValidationError(f"unknown variable {name!r}") from None

    def has_var(self, name: str) -> bool:
        return name in self._positions

    def indices(self, block: Block) -> Tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.blocks) if b is block)

    def names(self, block: Block) -> Tuple[str, ...]:
        return tuple(self.vars[i] for i in self.indices(block))

    def extend(self, names: Sequence[str], block: Block = Block.E,
               bidegree: Optional[Tuple[int, int]] = None) -> "RingDescriptor":
        """Append variables to the ring."""
        bideg = bidegree if bidegree is not None else _DEFAULT_BIDEGREE[block]
        return RingDescriptor(
            self.vars + tuple(names),
            self.blocks + (block,) * len(names),
            self.bidegrees + (bideg,) * len(names),
        )

    def drop(self, indices: Iterable[int]) -> "RingDescriptor":
        """The ring on the variables not listed in ``indices``."""
        gone = set(indices)
        keep = [i for i in range(self.nvars) if i not in gone]
        return RingDescriptor(
            tuple(self.vars[i] for i in keep),
            tuple(self.blocks[i] for i in keep),
            tuple(self.bidegrees[i] for i in keep),
        )

    @cached_property
    def canonical_order(self) -> "MonomialOrder":
        return MonomialOrder.grevlex(self)

    @property
    def zero_exps(self) -> Exps:
        return (0,) * self.nvars

    def var(self, name: str) -> "Polynomial":
        return Polynomial.variable(self, name)

    def gens(self) -> List["Polynomial"]:
        return [Polynomial.variable(self, i) for i in range(self.nvars)]

    def __str__(self):
        return "QQ[" + ", ".join(self.vars) + "]"


def ring_make(names: Sequence[str], x_count: int, y_count: int, e_count: int,
              y_degree: int = 1) -> RingDescriptor:
    """Build a ring descriptor whose variables are listed X-block first, then Y, then E.

    Args:
        names: Variable names, X-block first, then Y-block, then E-block
        x_count: Number of X-block variables
        y_count: Number of Y-block variables
        e_count: Number of elimination helper variables
        y_degree: Second bidegree slot of the Y-block variables

    Raises:
        ValidationError: On duplicate names, negative counts or a count mismatch
    """
    for value, label in ((x_count, "x_count"), (y_count, "y_count"), (e_count, "e_count")):
        Validator.validate_nonnegative(value, label)
    if x_count + y_count + e_count != len(names):
        raise ValidationError(
            f"block counts {x_count}+{y_count}+{e_count} do not match {len(names)} names"
        )
    blocks = (Block.X,) * x_count + (Block.Y,) * y_count + (Block.E,) * e_count
    bidegrees = ((1, 0),) * x_count + ((0, y_degree),) * y_count + ((0, 0),) * e_count
    return RingDescriptor(tuple(names), blocks, bidegrees)


@dataclass(frozen=True)
class Monomial:
    exps: Exps
    totdeg: int
    bideg: Tuple[int, int]

    @classmethod
    def of(cls, ring: RingDescriptor, exps: Sequence[int]) -> "Monomial":
        exps = tuple(exps)
        if len(exps) != ring.nvars:
            raise ValidationError(f"exponent row of length {len(exps)} in a ring of {ring.nvars} variables")
        return cls(exps, sum(exps), _bidegree(ring, exps))


def _bidegree(ring: RingDescriptor, exps: Exps) -> Tuple[int, int]:
    a = b = 0
    for e, block, (da, db) in zip(exps, ring.blocks, ring.bidegrees):
        if e and block is not Block.E:
            a += e * da
            b += e * db
    return (a, b)


class _OrderKey:
    """Sort key of a monomial order: larger key means larger monomial."""
    __slots__ = ("parts", "identity")

    def __init__(self, kind: OrderKind, groups: Sequence[Tuple[int, ...]], nvars: int):
        self.parts = [(kind, tuple(g), tuple(reversed(g))) for g in groups]
        self.identity = (len(groups) == 1 and tuple(groups[0]) == tuple(range(nvars))
                         and kind is OrderKind.LEX)

    @staticmethod
    def _part(kind, idx, rev, e):
        if kind is OrderKind.LEX:
            return tuple([e[i] for i in idx])
        if kind is OrderKind.GRLEX:
            values = [e[i] for i in idx]
            return (sum(values), tuple(values))
        return (sum([e[i] for i in idx]), tuple([-e[i] for i in rev]))

    def __call__(self, e):
        if self.identity:
            return e
        if len(self.parts) == 1:
            kind, idx, rev = self.parts[0]
            return self._part(kind, idx, rev, e)
        return tuple(self._part(kind, idx, rev, e) for kind, idx, rev in self.parts)


@dataclass(frozen=True)
class MonomialOrder:
    """A lex, grlex or grevlex order on a variable priority list, optionally by blocks.

    ``permutation[0]`` is the most significant variable. With ``blocks`` set the
    order compares block by block, the first block dominant, each block by ``kind``.
    """
    kind: OrderKind
    permutation: Tuple[int, ...]
    blocks: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "permutation", tuple(self.permutation))
        if sorted(self.permutation) != list(range(len(self.permutation))):
            raise ValidationError("order permutation must be a bijection on variable indices")
        if self.blocks is not None:
            blocks = tuple(tuple(b) for b in self.blocks)
            object.__setattr__(self, "blocks", blocks)
            flat = sorted(i for b in blocks for i in b)
            if flat != list(range(len(self.permutation))):
                raise ValidationError("order blocks must partition the variables")

    @cached_property
    def key(self) -> _OrderKey:
        if self.blocks is None:
            groups = [self.permutation]
        else:
            rank = {v: pos for pos, v in enumerate(self.permutation)}
            groups = [tuple(sorted(b, key=rank.__getitem__)) for b in self.blocks]
        return _OrderKey(self.kind, groups, len(self.permutation))

    @property
    def nvars(self) -> int:
        return len(self.permutation)

    @classmethod
    def of_kind(cls, kind: OrderKind, ring: RingDescriptor,
                priority: Optional[Sequence[str]] = None) -> "MonomialOrder":
        if priority is None:
            return cls(kind, tuple(range(ring.nvars)))
        return cls.from_names(ring, kind, priority)

    @classmethod
    def lex(cls, ring: RingDescriptor, priority: Optional[Sequence[str]] = None) -> "MonomialOrder":
        return cls.of_kind(OrderKind.LEX, ring, priority)

    @classmethod
    def grlex(cls, ring: RingDescriptor, priority: Optional[Sequence[str]] = None) -> "MonomialOrder":
        return cls.of_kind(OrderKind.GRLEX, ring, priority)

    @classmethod
    def grevlex(cls, ring: RingDescriptor, priority: Optional[Sequence[str]] = None) -> "MonomialOrder":
        return cls.of_kind(OrderKind.GREVLEX, ring, priority)

    @classmethod
    def from_names(cls, ring: RingDescriptor, kind: OrderKind,
                   priority: Sequence[str]) -> "MonomialOrder":
        """Order induced by ``priority[0] > priority[1] > ...`` followed by the
        remaining variables in ring order."""
        head = [ring.index(name) for name in priority]
        if len(set(head)) != len(head):
            raise ValidationError("order priority lists a variable twice")
        seen = set(head)
        tail = [i for i in range(ring.nvars) if i not in seen]
        return cls(kind, tuple(head + tail))

    @classmethod
    def elimination(cls, ring: RingDescriptor, drop: Iterable[Union[str, int]],
                    kind: OrderKind = OrderKind.GREVLEX) -> "MonomialOrder":
        """Block order (drop | rest) eliminating the ``drop`` variables."""
        drop_idx = sorted({ring.index(v) if isinstance(v, str) else int(v) for v in drop})
        gone = set(drop_idx)
        rest = [i for i in range(ring.nvars) if i not in gone]
        if not drop_idx or not rest:
            return cls(kind, tuple(drop_idx + rest))
        return cls(kind, tuple(drop_idx + rest), (tuple(drop_idx), tuple(rest)))

    def describe(self, ring: RingDescriptor) -> str:
        names = ">".join(ring.vars[i] for i in self.permutation)
        if self.blocks is None:
            return f"{self.kind.value}:{names}"
        blocks = "|".join(",".join(ring.vars[i] for i in b) for b in self.blocks)
        return f"{self.kind.value}:{names}[{blocks}]"

    @classmethod
    def parse(cls, text: str, ring: RingDescriptor) -> "MonomialOrder":
        """Parse ``kind`` or ``kind:a>b>c`` (remaining variables follow in ring order)."""
        kind_text, _, rest = text.strip().partition(":")
        try:
            kind = OrderKind(kind_text.strip().lower())
        except ValueError:
            raise ParseError(f"unknown monomial order {kind_text!r}") from None
        if not rest.strip():
            return cls(kind, tuple(range(ring.nvars)))
        names = [n.strip() for n in rest.split(">") if n.strip()]
        return cls.from_names(ring, kind, names)

    def to_json(self, ring: RingDescriptor) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "priority": [ring.vars[i] for i in self.permutation],
            "blocks": None if self.blocks is None else [[ring.vars[i] for i in b] for b in self.blocks],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any], ring: RingDescriptor) -> "MonomialOrder":
        try:
            kind = OrderKind(data["kind"])
            perm = tuple(ring.index(n) for n in data["priority"])
            blocks = data.get("blocks")
            if blocks is not None:
                blocks = tuple(tuple(ring.index(n) for n in b) for b in blocks)
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed order JSON: {e}") from None
        return cls(kind, perm, blocks)


def order_compare(o: MonomialOrder, m1: Union[Monomial, Exps], m2: Union[Monomial, Exps]) -> Cmp:
    """Compare two monomials under ``o``."""
    e1 = m1.exps if isinstance(m1, Monomial) else tuple(m1)
    e2 = m2.exps if isinstance(m2, Monomial) else tuple(m2)
    if len(e1) != o.nvars or len(e2) != o.nvars:
        raise ValidationError("monomials do not match the order's ring")
    k1, k2 = o.key(e1), o.key(e2)
    if k1 == k2:
        return Cmp.EQ
    return Cmp.GT if k1 > k2 else Cmp.LT


def exps_add(a: Exps, b: Exps) -> Exps:
    return tuple(map(operator.add, a, b))


def exps_sub(a: Exps, b: Exps) -> Exps:
    return tuple(map(operator.sub, a, b))


def exps_divides(a: Exps, b: Exps) -> bool:
    """True when the monomial with exponents ``a`` divides the one with ``b``."""
    return all(map(operator.le, a, b))


def exps_lcm(a: Exps, b: Exps) -> Exps:
    return tuple(map(max, a, b))


def exps_coprime(a: Exps, b: Exps) -> bool:
    return not any(x and y for x, y in zip(a, b))


class Polynomial:
    """Sparse polynomial with exact rational coefficients over a RingDescriptor."""
    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingDescriptor,
                 terms: Union[Mapping[Sequence[int], Scalar], Iterable[Tuple[Sequence[int], Scalar]], None] = None):
        collected: Dict[Exps, Fraction] = {}
        if terms:
            pairs = terms.items() if isinstance(terms, Mapping) else terms
            for exps, coef in pairs:
                exps = tuple(int(e) for e in exps)
                if len(exps) != ring.nvars:
                    raise ValidationError(
                        f"exponent row of length {len(exps)} in a ring of {ring.nvars} variables"
                    )
                if any(e < 0 for e in exps):
                    raise ValidationError("negative exponent")
                collected[exps] = collected.get(exps, 0) + Fraction(coef)
        self.ring = ring
        self._terms = {e: c for e, c in collected.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingDescriptor, terms: Dict[Exps, Fraction]) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "Polynomial":
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, ring: RingDescriptor, value: Scalar) -> "Polynomial":
        value = Fraction(value)
        return cls._raw(ring, {ring.zero_exps: value} if value else {})

    @classmethod
    def one(cls, ring: RingDescriptor) -> "Polynomial":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: RingDescriptor, var: Union[str, int]) -> "Polynomial":
        i = ring.index(var) if isinstance(var, str) else int(var)
        if not 0 <= i < ring.nvars:
            raise ValidationError(f"variable index {i} out of range")
        exps = [0] * ring.nvars
        exps[i] = 1
        return cls._raw(ring, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, ring: RingDescriptor, exps: Sequence[int], coef: Scalar = 1) -> "Polynomial":
        return cls(ring, {tuple(exps): coef})

    # -- inspection -------------------------------------------------------

    def items(self):
        return self._terms.items()

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def sorted_exps(self, order: Optional[MonomialOrder] = None) -> List[Exps]:
        key = (order or self.ring.canonical_order).key
        return sorted(self._terms, key=key, reverse=True)

    @property
    def terms(self) -> List[Tuple[Fraction, Monomial]]:
        return [(self._terms[e], Monomial.of(self.ring, e)) for e in self.sorted_exps()]

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_term(self) -> Fraction:
        return self._terms.get(self.ring.zero_exps, Fraction(0))

    def is_monomial(self) -> bool:
        """A single term with coefficient one."""
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def is_term(self) -> bool:
        return len(self._terms) == 1

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def bidegree(self):
        return bidegree_of(self)

    def variables(self) -> Tuple[int, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, v in enumerate(e) if v)
        return tuple(sorted(used))

    def leading_exps(self, order: Optional[MonomialOrder] = None) -> Exps:
        if not self._terms:
            raise ValidationError("the zero polynomial has no leading term")
        return max(self._terms, key=(order or self.ring.canonical_order).key)

    def leading_term(self, order: Optional[MonomialOrder] = None) -> Tuple[Exps, Fraction]:
        e = self.leading_exps(order)
        return e, self._terms[e]

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Monomial:
        return Monomial.of(self.ring, self.leading_exps(order))

    def leading_coefficient(self, order: Optional[MonomialOrder] = None) -> Fraction:
        return self.leading_term(order)[1]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: Any) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(
                    f"ring mismatch: {list(self.ring.vars)} vs {list(other.ring.vars)}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._terms)
        for e, c in other._terms.items():
            v = result.get(e, 0) + c
            if v:
                result[e] = v
            else:
                result.pop(e, None)
        return Polynomial._raw(self.ring, result)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._terms)
        for e, c in other._terms.items():
            v = result.get(e, 0) - c
            if v:
                result[e] = v
            else:
                result.pop(e, None)
        return Polynomial._raw(self.ring, result)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(self.ring, {e: c * factor for e, c in self._terms.items()})

    def mul_term(self, exps: Exps, coef: Scalar = 1) -> "Polynomial":
        """Multiply by the single term ``coef * x^exps``."""
        coef = Fraction(coef)
        if not coef:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(
            self.ring, {exps_add(e, exps): c * coef for e, c in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) < len(self._terms):
            left, right = other._terms, self._terms
        else:
            left, right = self._terms, other._terms
        result: Dict[Exps, Fraction] = {}
        get = result.get
        add = operator.add
        for e1, c1 in left.items():
            for e2, c2 in right.items():
                e = tuple(map(add, e1, e2))
                result[e] = get(e, 0) + c1 * c2
        return Polynomial._raw(self.ring, {e: c for e, c in result.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        Validator.validate_nonnegative(k, "exponent")
        result = Polynomial.one(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient ``self / divisor``.

        Raises:
            ZeroDivisionError: If the divisor is zero
            ValueError: If the division leaves a remainder
        """
        divisor = self._coerce(divisor)
        if not divisor._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        key = self.ring.canonical_order.key
        lead = max(divisor._terms, key=key)
        lead_coef = divisor._terms[lead]
        rem = dict(self._terms)
        quotient: Dict[Exps, Fraction] = {}
        while rem:
            m = max(rem, key=key)
            shift = exps_sub(m, lead)
            if any(v < 0 for v in shift):
                raise ValueError(f"{divisor} does not divide {self}")
            c = rem[m] / lead_coef
            quotient[shift] = quotient.get(shift, 0) + c
            for e, a in divisor._terms.items():
                e2 = exps_add(e, shift)
                v = rem.get(e2, 0) - c * a
                if v:
                    rem[e2] = v
                else:
                    rem.pop(e2, None)
        return Polynomial._raw(self.ring, {e: c for e, c in quotient.items() if c})

    def derivative(self, var: Union[str, int]) -> "Polynomial":
        i = self.ring.index(var) if isinstance(var, str) else int(var)
        result: Dict[Exps, Fraction] = {}
        for e, c in self._terms.items():
            if e[i]:
                lowered = list(e)
                lowered[i] -= 1
                result[tuple(lowered)] = c * e[i]
        return Polynomial._raw(self.ring, result)

    def substitute(self, images: Sequence["Polynomial"],
                   target: Optional[RingDescriptor] = None) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]`` (all images in ``target``)."""
        if len(images) != self.ring.nvars:
            raise ValidationError("one image per variable is required")
        target = target or (images[0].ring if images else self.ring)
        powers: Dict[Tuple[int, int], Polynomial] = {}
        total = Polynomial.zero(target)
        for e, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = images[i] ** k
                    term = term * powers[(i, k)]
            total = total + term
        return total

    def to_ring(self, target: RingDescriptor) -> "Polynomial":
        """Re-express the polynomial in ``target`` by matching variable names."""
        if target is self.ring or target == self.ring:
            return self
        used = self.variables()
        mapping = []
        for i in range(self.ring.nvars):
            name = self.ring.vars[i]
            if target.has_var(name):
                mapping.append(target.index(name))
            elif i in used:
                raise RingMismatchError(f"variable {name} does not exist in {target}")
            else:
                mapping.append(None)
        result: Dict[Exps, Fraction] = {}
        for e, c in self._terms.items():
            row = [0] * target.nvars
            for i, k in enumerate(e):
                if k:
                    row[mapping[i]] = k
            result[tuple(row)] = c
        return Polynomial._raw(target, result)

    def content_normalized(self) -> "Polynomial":
        """Primitive integer multiple with positive leading coefficient."""
        if not self._terms:
            return self
        coefs = list(self._terms.values())
        den = lcm(*[c.denominator for c in coefs])
        num = gcd(*[(c * den).numerator for c in coefs])
        factor = Fraction(den, num)
        if self._terms[self.leading_exps()] < 0:
            factor = -factor
        return self.scale(factor)

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(Fraction(1) / self.leading_coefficient(order))

    # -- comparison and output -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (other.ring is self.ring or other.ring == self.ring) and other._terms == self._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(self.ring, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.vars, frozenset(self._terms.items())))
        return self._hash

    def canonical_key(self) -> tuple:
        """Deterministic sort key (canonical term order, then coefficients)."""
        key = self.ring.canonical_order.key
        return tuple((key(e), self._terms[e]) for e in self.sorted_exps())

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e in self.sorted_exps():
            c = self._terms[e]
            mono = _format_monomial(self.ring, e)
            magnitude = abs(c)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({self})"

    def to_json(self) -> Dict[str, Any]:
        return {
            "ring": list(self.ring.vars),
            "terms": [
                [self._terms[e].numerator, self._terms[e].denominator, list(e)]
                for e in self.sorted_exps()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any], ring: Optional[RingDescriptor] = None) -> "Polynomial":
        """Load the JSON form; without ``ring`` an X-block ring on the listed names is used."""
        try:
            names = list(data["ring"])
            terms = [(tuple(e), Fraction(int(num), int(den))) for num, den, e in data["terms"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise ParseError(f"malformed polynomial JSON: {e}") from None
        if ring is None:
            ring = ring_make(names, len(names), 0, 0)
        elif list(ring.vars) != names:
            raise RingMismatchError(f"JSON ring {names} does not match {list(ring.vars)}")
        return cls(ring, terms)


def _format_monomial(ring: RingDescriptor, exps: Exps) -> str:
    parts = []
    for name, e in zip(ring.vars, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def parse_polynomial(text: str, ring: RingDescriptor) -> Polynomial:
    """Parse the text grammar (``*`` optional, ``^`` for powers) into ``ring``.

    Raises:
        ParseError: On malformed text, unknown variables or non-rational coefficients
    """
    symbols = {name: sympy.Symbol(name) for name in ring.vars}
    try:
        expr = parse_expr(text, local_dict=dict(symbols), transformations=_TRANSFORMS)
    except Exception as e:
        raise ParseError(f"cannot parse polynomial {text!r}: {e}") from None
    if not isinstance(expr, sympy.Expr):
        raise ParseError(f"not a polynomial expression: {text!r}")
    unknown = {str(s) for s in expr.free_symbols} - set(ring.vars)
    if unknown:
        raise ParseError(f"unknown variables {sorted(unknown)} in {text!r}")
    if expr.atoms(sympy.Float):
        raise ParseError(f"floating point coefficient in {text!r}")
    return _from_sympy(expr, ring, [symbols[n] for n in ring.vars], text)


def _from_sympy(expr, ring: RingDescriptor, gens: List[sympy.Symbol], text: str = "") -> Polynomial:
    if not gens:
        if not expr.is_Rational:
            raise ParseError(f"expected a rational constant, got {text or expr}")
        return Polynomial.constant(ring, Fraction(int(expr.p), int(expr.q)))
    try:
        poly = sympy.Poly(expr, *gens, domain=sympy.QQ)
    except Exception as e:
        raise ParseError(f"not a polynomial over QQ: {text or expr} ({e})") from None
    terms = []
    for monom, coef in poly.terms():
        coef = sympy.Rational(coef)
        if coef:
            terms.append((monom, Fraction(int(coef.p), int(coef.q))))
    return Polynomial(ring, terms)


def to_sympy(p: Polynomial) -> sympy.Expr:
    """Convert to a sympy expression on symbols named after the ring variables."""
    syms = [sympy.Symbol(n) for n in p.ring.vars]
    expr = sympy.Integer(0)
    for e, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            if k:
                term = term * s ** k
        expr = expr + term
    return expr


def from_sympy(expr, ring: RingDescriptor) -> Polynomial:
    return _from_sympy(sympy.expand(expr), ring, [sympy.Symbol(n) for n in ring.vars])


def poly_arith(a: Polynomial, b: Polynomial, op: Union[ArithOp, str]) -> Polynomial:
    """Add, subtract or multiply two polynomials of one ring.

    Raises:
        RingMismatchError: If the operands live in different rings
    """
    Validator.validate_same_ring(a, b)
    op = ArithOp(op) if not isinstance(op, ArithOp) else op
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.SUB:
        return a - b
    return a * b


def bidegree_of(p: Polynomial) -> Union[Tuple[int, int], DegreeMarker]:
    """Common bidegree of all terms of ``p``.

    Returns DegreeMarker.NON_HOMOGENEOUS when terms disagree and
    DegreeMarker.BOTTOM for the zero polynomial.
    """
    if p.is_zero():
        return DegreeMarker.BOTTOM
    degrees = {_bidegree(p.ring, e) for e, _ in p.items()}
    if len(degrees) > 1:
        return DegreeMarker.NON_HOMOGENEOUS
    return degrees.pop()
