from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath
import pytest

from branchkit import lfactors as lf
from branchkit.escoh import cup_constants
from branchkit.scalar import I, GaussianRational

H = Fraction(1, 2)


def all_params(max_l3=20):
    for l3 in range(2, max_l3 + 1, 2):
        for l2 in range(1, l3):
            yield l2, l3


def test_tensor_of_the_pair():
    pp = lf.PiParams(2, 8)
    nu = pp.nu2 + pp.nu3
    want = lf.WeilParameter.of(lf.Dim2(nu, 10), lf.Dim2(nu, 6), lf.Dim2(nu, 2))
    assert pp.pair() == want


def test_tensor_unit_and_rejection():
    p = lf.WeilParameter.of(lf.Dim2(H, 3), lf.Dim1(1, 1))
    assert lf.tensor(lf.WeilParameter.of(lf.Dim1(0, 0)), p) == p
    with pytest.raises(ValueError):
        lf.tensor(lf.WeilParameter.of(lf.Dim2(0, 4)), lf.WeilParameter.of(lf.Dim2(1, 4)))


def test_dual():
    assert lf.dual(lf.WeilParameter.of(lf.Dim2(-2, 8))) == lf.WeilParameter.of(lf.Dim2(2, 8))
    p = lf.WeilParameter.of(lf.Dim2(H, 3), lf.Dim1(-1, 1))
    q = lf.WeilParameter.of(lf.Dim1(2, 0))
    assert lf.dual(lf.dual(p)) == p
    assert lf.dual(p + q) == lf.dual(p) + lf.dual(q)


def test_dual_of_tensor_random():
    rng = random.Random(9)
    done = 0
    while done < 30:
        def rand():
            return lf.WeilParameter(tuple(
                lf.Dim1(Fraction(rng.randint(-6, 6), 2), rng.randint(0, 1)) if rng.random() < 0.4
                else lf.Dim2(Fraction(rng.randint(-6, 6), 2), rng.randint(0, 9))
                for _ in range(rng.randint(1, 3))))
        p, q = rand(), rand()
        try:
            t = lf.tensor(p, q)
        except ValueError:
            continue
        assert lf.dual(t) == lf.tensor(lf.dual(p), lf.dual(q))
        done += 1


def test_gamma_factors():
    pp = lf.PiParams(2, 8)
    assert lf.gamma_factor(pp.pi2()) == lf.GammaProduct((("C", H),))
    assert str(lf.gamma_factor(pp.pi2())) == "Gamma_C(s + 1/2)"
    shifted = lf.gamma_factor(pp.pair()).shifted(Fraction(-3, 2))
    assert shifted == lf.GammaProduct((("C", 0), ("C", -2), ("C", -4)))


@pytest.mark.parametrize("l2, l3", [(1, 2), (2, 8), (5, 6), (3, 10)])
def test_epsilon_exponents(l2, l3):
    for delta in (0, 1):
        pp = lf.PiParams(l2, l3, delta)
        assert lf.epsilon_exponent(pp.pi2()) == (l2 + 1) % 4
        assert lf.epsilon_exponent(pp.pi3()) == (l3 + 1 + delta) % 4
        assert lf.epsilon_exponent(pp.pair()) == (2 * l3 + l2 + 3) % 4


def test_gamma_numeric():
    assert lf.gamma_R(1) == 1.0
    assert abs(lf.gamma_C(1) - 1 / math.pi) < 1e-12
    assert abs(lf.gamma_C(2) - 1 / (2 * math.pi ** 2)) < 1e-12
    for s in (0.3, 1.7, 4.25):
        assert abs(lf.gamma_R(s) - float(mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2))) < 1e-12 * lf.gamma_R(s)
        # Legendre duplication
        assert abs(lf.gamma_R(s) * lf.gamma_R(s + 1) - lf.gamma_C(s)) < 1e-12 * lf.gamma_C(s)


@pytest.mark.parametrize("a", [Fraction(0), H, Fraction(-3), Fraction(5, 2)])
def test_duplication_pole_sets(a):
    pair = lf.GammaProduct((("R", a), ("R", a + 1)))
    single = lf.GammaProduct((("C", a),))
    assert pair.poles_in(-40, 10) == single.poles_in(-40, 10)


def test_gamma_product_errors_and_order():
    with pytest.raises(ValueError):
        lf.GammaProduct((("Q", 0),))
    assert lf.GammaProduct((("C", 1), ("R", 0))) == lf.GammaProduct((("R", 0), ("C", 1)))


@pytest.mark.parametrize("l2, l3, want", [(2, 8, [5, 6]), (4, 6, [5, 6]), (2, 4, [3, 4])])
def test_critical_spot_values(l2, l3, want):
    assert lf.critical_points(lf.PiParams(l2, l3)) == want


def test_three_way_agreement():
    for l2, l3 in all_params():
        pp = lf.PiParams(l2, l3)
        closed = lf.critical_points(pp)
        hodge = [m for m in range(-40, 41) if lf.critical_by_hodge(pp, m)]
        assert closed == lf.critical_points_by_poles(pp) == hodge, (l2, l3)


def test_hodge_examples():
    pp = lf.PiParams(2, 8)
    assert lf.critical_by_hodge(pp, 5)
    assert not lf.critical_by_hodge(pp, 7)
    assert lf.hodge_types(pp, 5)[0] == (5, -5)


def test_main_constant_values():
    m5 = lf.main_constant(lf.PiParams(2, 8, 0), 5)
    m6 = lf.main_constant(lf.PiParams(2, 8, 0), 6)
    assert (m5.parity, m5.scalar) == (-1, GaussianRational(3))
    assert (m6.parity, m6.scalar) == (1, -3 * I)
    with pytest.raises(ValueError):
        lf.main_constant(lf.PiParams(2, 8, 0), 7)


def test_assembly_and_parity_everywhere():
    for l2, l3 in all_params():
        for delta in (0, 1):
            pp = lf.PiParams(l2, l3, delta)
            for m in lf.critical_points(pp):
                assert lf.assembly_identity(pp, m)
                assert lf.main_constant(pp, m).parity == cup_constants(l3 + 1, delta, l2, m).sign_flip


def test_aux_constants():
    aux = lf.aux_constants(lf.PiParams(2, 8, 0), 5)
    assert aux.modified_exponent == -9
    assert aux.nabla_tilde_coefficient == GaussianRational(0, Fraction(-1, 3))
    assert aux.e_inf_constant == -1
    assert (aux.omega_pi2, aux.omega_pi3) == (-1, -1)


@pytest.mark.parametrize("args", [(0, 4), (1, 3), (4, 4), (1, 4, 2)])
def test_bad_params(args):
    with pytest.raises(ValueError):
        lf.PiParams(*args)
