from __future__ import annotations

import random
from fractions import Fraction

import pytest

from branchkit import linalg
from branchkit.forms import WedgeForm, compound_matrix, wedge_basis

L = ("a", "b", "c", "d")


def one_form(coeffs):
    return WedgeForm.from_vector(L, 1, coeffs)


def test_anticommutation():
    a = WedgeForm.basis_form(L, "a")
    b = WedgeForm.basis_form(L, "b")
    assert a.wedge(b) == -(b.wedge(a))
    assert (a ^ a).is_zero()


def test_basis_order_is_lexicographic():
    assert wedge_basis(4, 2) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    f = WedgeForm(L, 2, {(2, 0): 5})
    assert f.to_vector() == [0, -5, 0, 0, 0, 0]


def test_roundtrip_vector():
    vec = [1, 0, -2, 3, 0, 7]
    assert WedgeForm.from_vector(L, 2, vec).to_vector() == vec


def test_pullback_of_top_form_is_determinant():
    rng = random.Random(2)
    m = [[Fraction(rng.randint(-4, 4)) for _ in range(4)] for _ in range(4)]
    images = [one_form(row) for row in m]
    top = WedgeForm.basis_form(L, *L).pullback(images)
    assert top.to_vector() == [linalg.det(m)]


def test_pullback_matches_compound():
    rng = random.Random(7)
    m = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(4)]
    images = [one_form(row) for row in m]
    c2 = compound_matrix(linalg.to_matrix(m), 2, linalg.det)
    for k, key in enumerate(wedge_basis(4, 2)):
        f = WedgeForm(L, 2, {key: 1}).pullback(images)
        assert f.to_vector() == c2[k]


def test_errors():
    with pytest.raises(ValueError):
        WedgeForm(L, 2, {(0,): 1})
    with pytest.raises(ValueError):
        WedgeForm.basis_form(L, "a") + WedgeForm.basis_form(("x",), "x")
