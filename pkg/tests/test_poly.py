from __future__ import annotations

from math import factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from branchkit.poly import (MultiPoly, RationalFunction, VariableSet, expand_power, parse_poly,
                            partial_derivative, substitute)
from branchkit.scalar import GaussianRational

V = VariableSet(["X", "Y", "Z", "A", "B", "C"])
X, Y, Z, A, B, C = V.gens()


def to_sympy(p: MultiPoly):
    syms = sympy.symbols(p.vars.names)
    out = 0
    for e, c in p.terms.items():
        term = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        out += term
    return sympy.expand(out)


monomials = st.tuples(*[st.integers(0, 2)] * 6)
coeffs = st.builds(GaussianRational, st.integers(-5, 5), st.integers(-5, 5))
polys = st.dictionaries(monomials, coeffs, max_size=4).map(lambda d: MultiPoly(V, d))


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_arithmetic_against_sympy(p, q):
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))


@settings(max_examples=40, deadline=None)
@given(polys)
def test_derivative_against_sympy(p):
    assert to_sympy(partial_derivative(p, "Z", 2)) == sympy.expand(sympy.diff(to_sympy(p), sympy.Symbol("Z"), 2))


def test_derivative_examples():
    assert partial_derivative(X * X * Y, "X") == (X * Y).scale(2)
    assert partial_derivative(partial_derivative(Z * C, "Z"), "C") == MultiPoly.constant(V, 1)
    assert partial_derivative(Y, "X").is_zero()


def test_substitute_examples():
    assert substitute(X * B, {"B": X}, V) == X * X
    assert substitute(X * A, {"A": -Y}, V) == -(X * Y)


def test_trinomial_coefficients():
    p = expand_power(X + Y + Z, 2)
    assert p.coefficient((1, 1, 0, 0, 0, 0)) == 2
    assert expand_power(X + Y + Z, 0) == MultiPoly.constant(V, 1)
    p = expand_power(X + Y + Z, 5)
    for i in range(6):
        for j in range(6 - i):
            k = 5 - i - j
            assert p.coefficient((i, j, k, 0, 0, 0)) == factorial(5) // (factorial(i) * factorial(j) * factorial(k))
    assert expand_power(X + Y, 3).coefficient((2, 1, 0, 0, 0, 0)) == 3


def test_parse_roundtrip():
    p = parse_poly("X^2*B - 3/2*i*Y*A + 7", V)
    assert parse_poly(str(p), V) == p
    assert p.coefficient((0, 1, 0, 1, 0, 0)) == GaussianRational(0, -1.5)


def test_homogeneity_and_bidegree():
    p = X * B - Y * A
    assert p.is_homogeneous(degree=2)
    assert p.bidegree(("X", "Y", "Z"), ("A", "B", "C")) == (1, 1)


def test_bad_variable_names():
    with pytest.raises(ValueError):
        VariableSet(["X", "X"])
    with pytest.raises(ValueError):
        VariableSet(["i"])


def test_rational_function_substitution():
    W = VariableSet(["y", "u"])
    y, u = W.gens()
    r = RationalFunction(y, u * u)
    s = r.substitute({"y": u * u}, W)
    assert s == RationalFunction(MultiPoly.constant(W, 1))
    assert abs(r.evaluate({"y": 2.0, "u": 4.0}) - 0.125) < 1e-15
