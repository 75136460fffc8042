import random
from itertools import combinations

import pytest
import sympy

from pfrees.budget import Budget
from pfrees.error_handler import BudgetExceededError, UnitIdealError, ValidationError
from pfrees.groebner import (
    IdealHandle,
    Regularity,
    colon,
    dimension,
    eliminate,
    groebner_basis,
    ideal_contains,
    ideal_equal,
    ideal_power,
    intersect,
    is_groebner_basis,
    is_regular_sequence,
    minimal_generators,
    normal_form,
    syzygies,
)
from pfrees.polyring import MonomialOrder, Polynomial, parse_polynomial, ring_make, to_sympy


def _ideal(ring, *texts):
    return IdealHandle(ring, [parse_polynomial(t, ring) for t in texts])


@pytest.mark.parametrize("order", ["lex", "grlex", "grevlex"])
@pytest.mark.parametrize("texts", [
    ("x^2 - y", "x*y - z", "y^2 - x*z"),
    ("x*y - z^2", "x^2*z - y", "y*z - 1"),
    ("x + y + z", "x*y + y*z + z*x", "x*y*z - 1"),
])
def test_reduced_basis_matches_sympy(xyz, order, texts):
    I = _ideal(xyz, *texts)
    basis = groebner_basis(I, MonomialOrder.parse(order, xyz))
    oracle = sympy.groebner([sympy.sympify(t.replace("^", "**")) for t in texts],
                            *sympy.symbols("x y z"), order=order)
    assert {sympy.expand(to_sympy(g)) for g in basis} == {sympy.expand(g) for g in oracle.exprs}


def test_basis_is_closed_and_permutation_invariant(xyz):
    rng = random.Random(5)
    x, y, z = xyz.gens()
    for _ in range(15):
        gens = [rng.randint(1, 3) * rng.choice([x, y, z]) * rng.choice([x, y, z])
                + rng.randint(-2, 2) * rng.choice([x, y, z]) for _ in range(3)]
        basis = groebner_basis(IdealHandle(xyz, gens))
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert is_groebner_basis(basis)
        assert set(groebner_basis(IdealHandle(xyz, shuffled))) == set(basis)


def test_normal_form_is_idempotent_and_decides_membership(xyz):
    I = _ideal(xyz, "x^2 - y", "x*y - z")
    f = parse_polynomial("x^3*y + z^2 + 1", xyz)
    nf = normal_form(f, I)
    assert normal_form(nf, I) == nf
    assert ideal_contains(I, f - nf)
    assert not ideal_contains(I, parse_polynomial("x", xyz))


def test_ideal_equal_and_power(xyz):
    x, y, z = xyz.gens()
    I = IdealHandle(xyz, [x, y])
    assert ideal_equal(I, IdealHandle(xyz, [x + y, x - y]))
    assert not ideal_equal(I, IdealHandle(xyz, [x]))
    assert ideal_equal(ideal_power(I, 2), IdealHandle(xyz, [x * x, x * y, y * y]))
    assert ideal_power(I, 0).gens == (Polynomial.one(xyz),)


def test_eliminate_twisted_cubic():
    ring = ring_make(["t", "x", "y", "z"], 4, 0, 0)
    I = _ideal(ring, "x - t", "y - t^2", "z - t^3")
    J = eliminate(I, ["t"])
    assert list(J.ring.vars) == ["x", "y", "z"]
    expected = _ideal(J.ring, "y - x^2", "z - x*y", "x*z - y^2")
    assert ideal_equal(J, expected)


def test_intersect_and_colon(xyz):
    x, y, z = xyz.gens()
    assert ideal_equal(intersect(IdealHandle(xyz, [x]), IdealHandle(xyz, [y])), IdealHandle(xyz, [x * y]))
    assert ideal_equal(colon(IdealHandle(xyz, [x * y, x * z]), x), IdealHandle(xyz, [y, z]))
    assert ideal_equal(colon(IdealHandle(xyz, [x * x]), x), IdealHandle(xyz, [x]))
    with pytest.raises(ValidationError):
        colon(IdealHandle(xyz, [x]), Polynomial.zero(xyz))


def test_dimension(xyz):
    x, y, z = xyz.gens()
    assert dimension(IdealHandle(xyz, [x * y])) == (2, 1)
    assert dimension(IdealHandle(xyz, [x, y * z])) == (1, 2)
    assert dimension(IdealHandle(xyz, [])) == (3, 0)
    with pytest.raises(UnitIdealError):
        dimension(IdealHandle(xyz, [x + 1, x]))


@pytest.mark.parametrize("seed", range(3))
def test_dimension_agrees_with_subset_search(seed):
    rng = random.Random(seed)
    ring = ring_make([f"v{i}" for i in range(9)], 9, 0, 0)
    for _ in range(100):
        supports = [frozenset(rng.sample(range(9), rng.randint(1, 3))) for _ in range(rng.randint(1, 5))]
        gens = [Polynomial.monomial(ring, [rng.randint(1, 2) if i in s else 0 for i in range(9)]) for s in supports]
        free = max(len(S) for k in range(10) for S in combinations(range(9), k)
                   if not any(s <= set(S) for s in supports))
        assert dimension(IdealHandle(ring, gens)) == (free, 9 - free)


def test_regular_sequences(xyz):
    x, y, z = xyz.gens()
    assert is_regular_sequence([x, y * z]).status is Regularity.YES_BY_LT
    assert is_regular_sequence([x * y, x * z]).status is Regularity.NO
    assert is_regular_sequence([x * x - y * y, x * y])


def test_syzygies_and_minimal_generators(xyz):
    x, y, z = xyz.gens()
    syz = syzygies([x, y, z], minimal=True)
    assert syz.annihilates()
    assert len(syz.columns) == 3
    assert syz.shifts == [2, 2, 2]
    assert len(minimal_generators(IdealHandle(xyz, [x, x * y, y * y, x + y])).gens) == 2


def test_budget_exhaustion_raises_with_partial_basis():
    ring = ring_make(["a", "b", "c", "d"], 4, 0, 0)
    I = _ideal(ring, "a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1")
    with pytest.raises(BudgetExceededError) as info:
        groebner_basis(I, budget=Budget(1e-9))
    assert info.value.partial is not None


def test_foreign_generator_rejected(xyz):
    other = ring_make(["u"], 1, 0, 0)
    with pytest.raises(ValidationError):
        IdealHandle(xyz, [other.var("u")])
