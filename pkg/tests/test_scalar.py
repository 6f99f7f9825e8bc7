from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from branchkit.scalar import I, ONE, ZERO, GaussianRational, field_inverse, parse, power_of_i, render

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
gaussians = st.builds(GaussianRational, fractions, fractions)


@pytest.mark.parametrize("k, expected", [(0, ONE), (2, -ONE), (-1, -I), (5, I), (-6, -ONE)])
def test_power_of_i(k, expected):
    assert power_of_i(k) == expected


def test_inverse_examples():
    assert field_inverse(2) == GaussianRational(Fraction(1, 2))
    assert field_inverse(I) == -I
    assert field_inverse(1 + I) == GaussianRational(Fraction(1, 2), Fraction(-1, 2))
    assert (1 + I) * field_inverse(1 + I) == ONE


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field_inverse(ZERO)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a


@given(gaussians)
def test_matches_complex(a):
    assert abs(complex(a * a) - complex(a) ** 2) < 1e-9


@given(gaussians)
def test_render_roundtrip(a):
    assert parse(render(a)) == a
    assert parse(str(a)) == a


def test_render_forms():
    assert render(GaussianRational(3)) == "3"
    assert render(GaussianRational(0, Fraction(-1, 2))) == "-1/2*i"
    assert render(GaussianRational(Fraction(3, 2), 1)) == "3/2 + i"
    assert parse("−1/2*i") == GaussianRational(0, Fraction(-1, 2))


def test_normal_form_hash():
    assert hash(GaussianRational(Fraction(2, 4), 0)) == hash(GaussianRational(Fraction(1, 2)))
    assert GaussianRational(1) == 1


def test_immutable():
    with pytest.raises(AttributeError):
        ONE._a = 3
