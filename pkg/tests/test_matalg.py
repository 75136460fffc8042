import random
from itertools import combinations

import pytest
import sympy

from pfrees.error_handler import ParseError, ValidationError
from pfrees.matalg import (
    PolyMatrix,
    SkewMatrix,
    determinant,
    minors,
    parse_skew_text,
    pfaffian,
    skew_blockX4,
    skew_custom,
    skew_generic,
    skew_tridiagonal,
)
from pfrees.polyring import Polynomial, ring_make, to_sympy


def _random_skew(rng, ring, n):
    upper = {(i, j): Polynomial.constant(ring, rng.randint(-9, 9))
             for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return SkewMatrix.from_upper(ring, n, upper)


def test_pfaffian_squares_to_determinant_random_integers():
    rng = random.Random(300)
    ring = ring_make(["z"], 1, 0, 0)
    for _ in range(300):
        M = _random_skew(rng, ring, rng.randint(2, 8))
        assert pfaffian(M) ** 2 == determinant(M)


def test_pfaffian_of_generic_four():
    M = skew_custom(4, combinations(range(1, 5), 2))
    v = M.ring.var
    expected = v("x1_2") * v("x3_4") - v("x1_3") * v("x2_4") + v("x1_4") * v("x2_3")
    assert pfaffian(M) == expected
    assert pfaffian(M) ** 2 == determinant(M)


def test_odd_and_empty_pfaffians():
    assert pfaffian(skew_generic(3)).is_zero()
    ring = ring_make(["a"], 1, 0, 0)
    assert pfaffian(SkewMatrix(ring, [])) == 1


def test_bareiss_agrees_with_cofactor_and_sympy():
    M = skew_custom(6, [(1, 2), (1, 4), (2, 3), (2, 5), (3, 6), (4, 5), (5, 6)])
    det = determinant(M)
    assert det == determinant(M, method="cofactor")
    S = sympy.Matrix([[to_sympy(M[(i, j)]) for j in range(6)] for i in range(6)])
    assert sympy.expand(S.det() - to_sympy(det)) == 0


def test_bareiss_zero_pivot():
    ring = ring_make(["a", "b"], 2, 0, 0)
    a, b = ring.gens()
    M = PolyMatrix(ring, [[0, a, 1], [b, 0, 0], [1, 1, a]])
    assert determinant(M) == determinant(M, method="cofactor")


def test_tridiagonal_determinant_is_product_of_odd_superdiagonal_squares():
    for n in (2, 4, 6, 8):
        M = skew_custom(n, [(i, i + 1) for i in range(1, n)])
        expected = Polynomial.one(M.ring)
        for i in range(1, n, 2):
            expected = expected * M.ring.var(f"x{i}_{i + 1}") ** 2
        assert determinant(M) == expected


def test_family_shapes():
    assert skew_tridiagonal(7).ring.nvars == 6
    X = skew_blockX4(2)
    assert X.n == 5
    # zero 3x3 corner, generic 3x2 A-block, generic 2x2 skew B-block
    assert all(X[(i, j)].is_zero() for i in range(3) for j in range(3))
    assert X.ring.nvars == 3 * 2 + 1
    with pytest.raises(ValidationError):
        skew_generic(4)
    with pytest.raises(ValidationError):
        skew_custom(3, [(2, 4)])


def test_minors_of_two_by_three():
    ring = ring_make(["a", "b", "c", "d", "e", "f"], 6, 0, 0)
    a, b, c, d, e, f = ring.gens()
    M = PolyMatrix(ring, [[a, b, c], [d, e, f]])
    assert minors(M, 2) == [a * e - b * d, a * f - c * d, b * f - c * e]
    with pytest.raises(ValidationError):
        minors(M, 3)


def test_parse_skew_text():
    X = parse_skew_text("0; a; b\n-a; 0; c\n-b; -c; 0\n")
    assert X.n == 3
    assert list(X.ring.vars) == ["a", "b", "c"]
    assert pfaffian(X.delete(3)) == X.ring.var("a")


@pytest.mark.parametrize("text", ["0; 1\n1; 0", "0; a\n-a", "0; a b\n-a; 0", "1; 0\n0; -1"])
def test_parse_skew_text_rejects(text):
    with pytest.raises(ParseError):
        parse_skew_text(text)
