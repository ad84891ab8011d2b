import numpy as np
import pytest

from kurepa_search.verify.fieldops import U64
from kurepa_search.verify.multipoint import SubproductTree, linear_products, multipoint_eval
from kurepa_search.verify.poly import ModulusMismatchError, PolyModP

P = 22_370_028_691


def test_linear_products():
    roots = np.array([[1, 2], [3, 0]], dtype=U64)
    # (x - 1)(x - 2) and (x - 3) x over F_7
    assert linear_products(roots, 7).tolist() == [[2, 4, 1], [0, 4, 1]]


@pytest.mark.parametrize("chunk", [1, 3, 16, 64])
def test_multipoint_matches_horner(chunk, rng):
    for _ in range(5):
        f = PolyModP.from_coefficients([rng.randrange(P) for _ in range(rng.randrange(1, 300))], P)
        points = [rng.randrange(P) for _ in range(rng.randrange(1, 200))]
        tree = SubproductTree(points, P, chunk)
        assert tree.evaluate_many([f.coeffs])[0].tolist() == [f(x) for x in points]


def test_evaluate_many_shares_the_tree(rng):
    polys = [PolyModP.from_coefficients([rng.randrange(P) for _ in range(120)], P) for _ in range(3)]
    points = list(range(0, 5000, 37))
    values = SubproductTree(points, P, 8).evaluate_many([f.coeffs for f in polys])
    for f, got in zip(polys, values):
        assert got.tolist() == [f(x) for x in points]


def test_repeated_points_and_constants():
    f = PolyModP.from_coefficients([5], P)
    assert multipoint_eval(f, [3, 3, 3]) == [5, 5, 5]
    g = PolyModP.from_coefficients([], P)
    assert multipoint_eval(g, [1, 2]) == [0, 0]
    assert multipoint_eval(f, []) == []


def test_multipoint_rejects_other_modulus():
    f = PolyModP.from_coefficients([1, 2], 7)
    with pytest.raises(ModulusMismatchError):
        multipoint_eval(f, [1], p=11)
