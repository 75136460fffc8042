"""
Diagonal subalgebra system for pfrees.
Presents the (1,1)-diagonal of a bigraded quotient as K[T]/I_2(T) plus the
linearized defining ideal, reduces variable identifications, and checks the
dimension of the (d+1,1)-diagonal.
"""
import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import ceil
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from .budget import Budget
from .error_handler import InvariantError, ValidationError, error_handler
from .groebner import BudgetLike, IdealHandle, _dedupe, dimension, minimal_generators
from .polyring import Block, DegreeMarker, Exps, Polynomial, RingDescriptor, ring_make, to_sympy
from .rees import ReesPresentation
from .validation import Validator

logger = logging.getLogger("pfrees.diagonal")

PRESENTATION_VARIABLE_LIMIT = 24
JACOBIAN_SEED = 0xD1A6


def _rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


@dataclass
class DiagonalPresentation:
    """K[T]/(segre_gens + extra_gens) presenting the (1,1)-diagonal of S/J."""
    t_ring: RingDescriptor
    source_ring: RingDescriptor
    segre_gens: List[Polynomial]
    extra_gens: List[Polynomial]
    provenance: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.source_ring.indices(Block.X)), len(self.source_ring.indices(Block.Y))

    def t(self, i: int, j: int) -> Polynomial:
        return self.t_ring.var(f"t{i}_{j}")

    def ideal(self) -> IdealHandle:
        return IdealHandle(self.t_ring, self.segre_gens + self.extra_gens)

    def back_substitute(self, p: Polynomial) -> Polynomial:
        """t_ij -> x_i y_j."""
        xs = self.source_ring.names(Block.X)
        ys = self.source_ring.names(Block.Y)
        images = []
        for name in self.t_ring.vars:
            i, j = (int(v) for v in name[1:].split("_"))
            images.append(self.source_ring.var(xs[i - 1]) * self.source_ring.var(ys[j - 1]))
        return p.substitute(images, self.source_ring)

    def identification(self) -> Dict[str, str]:
        return _identify(self.extra_gens)[0]

    def minimal_ideal(self, budget: BudgetLike = None) -> IdealHandle:
        """The presentation ideal on a minimal subset of segre_gens + extra_gens."""
        return minimal_generators(self.ideal(), budget)

    def to_json(self) -> Dict[str, Any]:
        return {
            "t_ring": list(self.t_ring.vars),
            "segre_gens": [g.to_json() for g in self.segre_gens],
            "extra_gens": [g.to_json() for g in self.extra_gens],
            "provenance": self.provenance,
        }


def t_ring_for(nx: int, ny: int) -> RingDescriptor:
    names = [f"t{i}_{j}" for i in range(1, nx + 1) for j in range(1, ny + 1)]
    return ring_make(names, len(names), 0, 0)


def segre_minors(T: RingDescriptor, nx: int, ny: int) -> List[Polynomial]:
    """2-minors t_ij t_kl - t_il t_kj of the nx x ny grid."""
    t = {(i, j): T.var(f"t{i}_{j}") for i in range(1, nx + 1) for j in range(1, ny + 1)}
    out = []
    for i, k in combinations(range(1, nx + 1), 2):
        for j, l in combinations(range(1, ny + 1), 2):
            out.append(t[i, j] * t[k, l] - t[i, l] * t[k, j])
    return out


def _monomials(indices: Sequence[int], degree: int, nvars: int) -> List[Exps]:
    out = []
    for combo in combinations_with_replacement(indices, degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def _padding(ring: RingDescriptor, bideg: Tuple[int, int], c: int, e: int) -> Tuple[int, List[Exps]]:
    """Multiplier count q and the padding monomials of degree (q*c - a, q*e - b)."""
    a, b = bideg
    q = max(ceil(a / c), ceil(b / e))
    xs = ring.indices(Block.X)
    ys = ring.indices(Block.Y)
    pads = []
    for mx in _monomials(xs, q * c - a, ring.nvars):
        for my in _monomials(ys, q * e - b, ring.nvars):
            pads.append(tuple(u + v for u, v in zip(mx, my)))
    return q, pads


def _linearize_11(p: Polynomial, T: RingDescriptor) -> Polynomial:
    """Rewrite a polynomial of bidegree (q,q) in the t_ij = x_i y_j, pairing sorted x and y factors."""
    ring = p.ring
    xpos = {v: k + 1 for k, v in enumerate(ring.indices(Block.X))}
    ypos = {v: k + 1 for k, v in enumerate(ring.indices(Block.Y))}
    out = Polynomial.zero(T)
    for exps, coef in p.items():
        xi = [xpos[v] for v in sorted(xpos) for _ in range(exps[v])]
        yj = [ypos[v] for v in sorted(ypos) for _ in range(exps[v])]
        if len(xi) != len(yj):
            raise InvariantError(f"term of {p} is off the diagonal")
        term = Polynomial.constant(T, coef)
        for i, j in zip(xi, yj):
            term = term * T.var(f"t{i}_{j}")
        out = out + term
    return out


def diagonal_presentation_11(R: ReesPresentation) -> DiagonalPresentation:
    """Segre presentation of the (1,1)-diagonal plus the linearized g*m over padding monomials m.

    Raises:
        ValidationError: If a defining generator is not bihomogeneous
    """
    S = R.ring
    nx, ny = len(S.indices(Block.X)), len(S.indices(Block.Y))
    T = t_ring_for(nx, ny)
    segre = segre_minors(T, nx, ny)
    extras: List[Polynomial] = []
    provenance: List[Dict[str, Any]] = []
    index: Dict[Polynomial, int] = {}
    for source, g in enumerate(R.defining_gens):
        bideg = g.bidegree()
        if isinstance(bideg, DegreeMarker):
            raise ValidationError(f"defining generator {g} is not bihomogeneous")
        _, pads = _padding(S, bideg, 1, 1)
        for m in pads:
            lin = _linearize_11(g.mul_term(m), T)
            if lin.is_zero():
                continue
            key = lin.content_normalized()
            if key in index:
                provenance[index[key]]["sources"].append(source)
                continue
            index[key] = len(extras)
            extras.append(lin)
            provenance.append({"sources": [source], "padding": list(m)})
    logger.debug(json.dumps({"event": "diagonal_presentation_11", "grid": [nx, ny],
                             "segre": len(segre), "extra": len(extras)}))
    return DiagonalPresentation(T, S, segre, extras, provenance)


def _t_key(name: str) -> Tuple[int, ...]:
    return tuple(int(v) for v in name[1:].split("_"))


def _identify(extras: Sequence[Polynomial]) -> Tuple[Dict[str, str], List[Polynomial], List[str]]:
    """Union-find over the variable differences in ``extras``.

    Returns the map eliminated -> representative, the non-difference extras,
    and the differences already implied by earlier ones.
    """
    parent: Dict[str, str] = {}

    def find(v: str) -> str:
        while parent.get(v, v) != v:
            parent[v] = parent.get(parent[v], parent[v])
            v = parent[v]
        return v

    rest, cycles = [], []
    for g in extras:
        items = list(g.items())
        if len(items) == 2 and all(sum(e) == 1 for e, _ in items) and items[0][1] == -items[1][1]:
            a, b = (g.ring.vars[e.index(1)] for e, _ in items)
            ra, rb = find(a), find(b)
            if ra == rb:
                cycles.append(str(g))
                continue
            keep, gone = sorted((ra, rb), key=_t_key)
            parent[gone] = keep
        else:
            rest.append(g)
    mapping = {v: find(v) for v in list(parent) if find(v) != v}
    return mapping, rest, cycles


def diagonal_reduce(D: DiagonalPresentation) -> IdealHandle:
    """Eliminate identified variables, the lexicographically last of each
    difference, and return the ideal in the surviving t-variables."""
    mapping, rest, cycles = _identify(D.extra_gens)
    if cycles:
        error_handler.log_warning("identified variables already equal", {"implied_differences": cycles})
    T = D.t_ring
    survivors = T.drop([T.index(v) for v in mapping])
    images = [survivors.var(mapping.get(name, name)) for name in T.vars]
    reduced = [g.substitute(images, survivors) for g in D.segre_gens + rest]
    return IdealHandle(survivors, _dedupe(reduced))


def _x_monomials(ring: RingDescriptor, degree: int) -> List[Exps]:
    return _monomials(ring.indices(Block.X), degree, ring.nvars)


def _generator_degree(R: ReesPresentation) -> int:
    if not R.base_gens:
        return 1
    return Validator.validate_equigenerated(R.base_gens)


def _presentation_dimension(R: ReesPresentation, c: int, budget: Budget) -> int:
    """dim of (S/J)_(c,1) from the Segre-Veronese presentation with linear relations solved exactly."""
    S = R.ring
    ys = S.indices(Block.Y)
    xmons = _x_monomials(S, c)
    cells = [(a, k) for a in range(len(xmons)) for k in range(len(ys))]
    names = [f"u{a + 1}_{k + 1}" for a, k in cells]
    T = ring_make(names, len(names), 0, 0)
    cell_exps = []
    for a, k in cells:
        e = list(xmons[a])
        e[ys[k]] += 1
        cell_exps.append(tuple(e))
    by_exps = {e: pos for pos, e in enumerate(cell_exps)}
    # toric part: equal products of two cells
    groups: Dict[Exps, List[Tuple[int, int]]] = {}
    for p, q in combinations_with_replacement(range(len(cells)), 2):
        key = tuple(u + v for u, v in zip(cell_exps[p], cell_exps[q]))
        groups.setdefault(key, []).append((p, q))
    toric = []
    tv = T.gens()
    for pairs in groups.values():
        p0, q0 = pairs[0]
        for p, q in pairs[1:]:
            toric.append(tv[p0] * tv[q0] - tv[p] * tv[q])
    linear, nonlinear = [], []
    for g in R.defining_gens:
        bideg = g.bidegree()
        if isinstance(bideg, DegreeMarker):
            raise ValidationError(f"defining generator {g} is not bihomogeneous")
        q, pads = _padding(S, bideg, c, 1)
        for m in pads:
            budget.check(what="diagonal presentation")
            lin = _linearize(g.mul_term(m), T, xmons, ys, by_exps, c, q)
            if lin.is_zero():
                continue
            (linear if q == 1 else nonlinear).append(lin)
    images = list(tv)
    if linear:
        matrix = sympy.Matrix([[_rational(g.coefficient(tuple(1 if i == v else 0 for i in range(T.nvars))))
                                for v in range(T.nvars)] for g in linear])
        reduced, pivots = matrix.rref()
        for row, p in enumerate(pivots):
            image = Polynomial.zero(T)
            for v in range(T.nvars):
                if v != p and reduced[row, v] != 0:
                    image = image - tv[v].scale(Fraction(int(reduced[row, v].p), int(reduced[row, v].q)))
            images[p] = image
        survivors = T.drop(pivots)
        images = [img.to_ring(survivors) for img in images]
        target = survivors
    else:
        target = T
    gens = [g.substitute(images, target) for g in toric + nonlinear]
    dim, _ = dimension(IdealHandle(target, _dedupe(gens)), budget)
    logger.debug(json.dumps({"event": "presentation_dimension", "cells": len(cells),
                             "linear": len(linear), "dimension": dim}))
    return dim


def _linearize(p: Polynomial, T: RingDescriptor, xmons: List[Exps], ys: Sequence[int],
               by_exps: Dict[Exps, int], c: int, q: int) -> Polynomial:
    """Rewrite a polynomial of bidegree (q*c, q) as a form of degree q in the cell variables."""
    ring = p.ring
    xs = ring.indices(Block.X)
    tv = T.gens()
    out = Polynomial.zero(T)
    for exps, coef in p.items():
        xi = [v for v in xs for _ in range(exps[v])]
        yj = [v for v in ys for _ in range(exps[v])]
        if len(xi) != q * c or len(yj) != q:
            raise InvariantError(f"term of {p} is off the ({c},1) diagonal")
        term = Polynomial.constant(T, coef)
        for k in range(q):
            e = [0] * ring.nvars
            for v in xi[k * c:(k + 1) * c]:
                e[v] += 1
            e[yj[k]] += 1
            term = term * tv[by_exps[tuple(e)]]
        out = out + term
    return out


def _jacobian_dimension(R: ReesPresentation, c: int, budget: Budget) -> int:
    """Transcendence degree of the generators x^a * f_k of the (c,1)-diagonal (characteristic zero)."""
    if R.defining_gens:
        ring = R.base_ring
        fs = list(R.base_gens)
    else:
        ring = R.ring
        fs = [ring.var(name) for name in ring.names(Block.Y)]
    xmons = _x_monomials(ring, c)
    gens = [f.mul_term(m) for m in xmons for f in fs]
    jac = [[g.derivative(v) for v in range(ring.nvars)] for g in gens]
    rng = random.Random(JACOBIAN_SEED)
    point = [Polynomial.constant(ring, rng.randint(1, 997)) for _ in range(ring.nvars)]
    numeric = sympy.Matrix([[_rational(p.substitute(point, ring).constant_term()) for p in row]
                            for row in jac])
    rank = numeric.rank()
    budget.check(what="jacobian rank")
    if rank < min(len(gens), ring.nvars):
        rank = sympy.Matrix([[to_sympy(p) for p in row] for row in jac]).rank(simplify=True)
    return rank


def diagonal_dimension_check(R: ReesPresentation, expected_n: int, d: Optional[int] = None,
                             method: str = "auto", budget: BudgetLike = None) -> bool:
    """Compare the dimension of the (d+1,1)-diagonal with ``expected_n``.

    Args:
        R: The Rees presentation
        expected_n: Expected Krull dimension
        d: Generator degree of the ideal, read from the presentation by default
        method: "presentation", "jacobian" or "auto"
        budget: Wall-clock budget
    """
    budget = Budget.coerce(budget)
    d = _generator_degree(R) if d is None else d
    c = d + 1
    if method == "auto":
        cells = len(_x_monomials(R.ring, c)) * len(R.ring.indices(Block.Y))
        method = "presentation" if cells <= PRESENTATION_VARIABLE_LIMIT else "jacobian"
    if method == "presentation":
        dim = _presentation_dimension(R, c, budget)
    elif method == "jacobian":
        dim = _jacobian_dimension(R, c, budget)
    else:
        raise ValidationError(f"unknown dimension method {method!r}")
    logger.info(json.dumps({"event": "diagonal_dimension_check", "diagonal": [c, 1], "method": method,
                            "dimension": dim, "expected": expected_n}))
    return dim == expected_n
