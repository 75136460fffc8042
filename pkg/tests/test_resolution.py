import random

import pytest

from pfrees.error_handler import ValidationError
from pfrees.groebner import IdealHandle, ideal_power, minimal_generators
from pfrees.matalg import PolyMatrix, skew_generic
from pfrees.pfideal import pf_ideal_maximal
from pfrees.polyring import Polynomial, ring_make
from pfrees.resolution import (
    BettiTable,
    CheckStatus,
    GradedFreeComplex,
    IndexOrder,
    SignConvention,
    be_complex,
    be_verify,
    betti_table,
    find_verifying_conventions,
    has_linear_resolution,
    minimalize,
    schreyer_resolve,
)


@pytest.fixture
def xy():
    return ring_make(["x", "y"], 2, 0, 0)


def test_koszul_complex_of_three_variables():
    I = pf_ideal_maximal(skew_generic(3)).ideal()
    table = betti_table(I)
    assert table.entries == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}
    assert table.is_linear(1)
    assert has_linear_resolution(I)


def test_monomial_oracles(xy):
    x, y = xy.gens()
    square = betti_table(IdealHandle(xy, [x * x, x * y, y * y]))
    assert square.entries == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    assert square.is_linear(2)
    ci = betti_table(IdealHandle(xy, [x * x, y * y]))
    assert ci.entries == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    assert not ci.is_linear(2)


def test_resolution_is_a_minimal_complex(xyz):
    x, y, z = xyz.gens()
    C = minimalize(schreyer_resolve(IdealHandle(xyz, [x * y, y * z, x * z])))
    assert C.is_complex()
    assert not C.has_unit_entries()
    assert C.ranks == [1, 3, 2]


def test_betti_table_render_and_json():
    table = BettiTable({(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1})
    text = table.render()
    assert "total:" in text
    assert text.splitlines()[1].split() == ["total:", "1", "5", "5", "1"]
    assert BettiTable.from_json(table.to_json()).entries == table.entries
    assert table.projective_dimension == 3
    assert table.regularity == 2


def test_powers_of_the_generic_three_ideal_are_linear():
    I = pf_ideal_maximal(skew_generic(3)).ideal()
    for j in (2, 3):
        assert has_linear_resolution(minimal_generators(ideal_power(I, j)))


@pytest.mark.heavy
def test_generic_five_betti_table():
    I = pf_ideal_maximal(skew_generic(5)).ideal()
    table = betti_table(I)
    assert table.entries == {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}
    assert not has_linear_resolution(I)


@pytest.mark.parametrize("n", [3, 5])
def test_be_complex_composes_to_zero(n):
    C = be_complex(n)
    assert C.is_complex()
    assert C.ranks == [1, n, n, 1]
    assert (SignConvention.UNSIGNED, IndexOrder.REVERSED) in find_verifying_conventions(n)


def test_be_verify_three():
    report = be_verify(be_complex(3))
    assert report.passed, report.to_json()
    assert report.codims[2] == 3


def test_be_verify_rejects_other_shapes(xy):
    x, y = xy.gens()
    C = minimalize(schreyer_resolve(IdealHandle(xy, [x, y])))
    with pytest.raises(ValidationError):
        be_verify(C)


def test_be_verify_unit_minor_ideals_have_infinite_grade():
    C = be_complex(3)
    images = [Polynomial.one(C.ring) if name == "x1_2" else C.ring.var(name) for name in C.ring.vars]
    split = GradedFreeComplex(
        C.ring,
        [PolyMatrix(C.ring, [[e.substitute(images) for e in row] for row in d.entries], d.ncols)
         for d in C.differentials],
        C.shifts,
    )
    assert split.is_complex()
    report = be_verify(split)
    assert report.acyclicity is CheckStatus.PASS, report.to_json()
    assert report.codims[0] == C.ring.nvars + 1
    assert not report.is_minimal


@pytest.mark.parametrize("seed", range(5))
def test_minimalization_keeps_the_euler_characteristic(xyz, seed):
    rng = random.Random(seed)
    for _ in range(5):
        gens = []
        for _ in range(rng.randint(2, 3)):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                exps = [0, 0, 0]
                exps[rng.randrange(3)] += 1
                exps[rng.randrange(3)] += 1
                terms[tuple(exps)] = rng.choice([-2, -1, 1, 3])
            gens.append(Polynomial(xyz, terms))
        gens.append(gens[0] + gens[-1])
        C = schreyer_resolve(IdealHandle(xyz, [g for g in gens if not g.is_zero()]))
        M = minimalize(C)
        assert M.graded_euler_characteristic() == C.graded_euler_characteristic()
        assert M.is_complex() and not M.has_unit_entries()
