from __future__ import annotations

import numpy as np
import pytest
import scipy.linalg

from branchkit import geom


def rq_coordinates(g):
    r, q = scipy.linalg.rq(g)
    d = np.sign(np.diag(r))
    r = r * d  # scale columns so the diagonal is positive
    s = r[2, 2]
    f = r / s
    y1 = f[1, 1]
    return (y1, f[0, 0] / y1, f[1, 2], f[0, 1] / y1, f[0, 2]), s


def test_iwasawa_examples():
    c = geom.iwasawa_gl3(np.eye(3))
    assert c.as_tuple() == (1.0, 1.0, 0.0, 0.0, 0.0) and c.scale == 1.0
    c = geom.iwasawa_gl3(np.diag([2.0, 1.0, 1.0]))
    assert c.as_tuple() == (1.0, 2.0, 0.0, 0.0, 0.0)


def test_iwasawa_against_rq():
    rng = np.random.default_rng(8)
    for _ in range(200):
        g = rng.normal(size=(3, 3))
        if np.linalg.cond(g) > 1e3:
            continue
        c = geom.iwasawa_gl3(g)
        want, s = rq_coordinates(g)
        assert np.allclose(c.as_tuple(), want, rtol=1e-9, atol=1e-9)
        assert abs(c.scale - s) < 1e-9 * s


def test_iwasawa_roundtrip():
    rng = np.random.default_rng(1)
    worst = 0.0
    n = 0
    while n < 1000:
        g = rng.normal(size=(3, 3))
        if np.linalg.cond(g) >= 1e3:
            continue
        worst = max(worst, *geom.iwasawa_residual(g))
        n += 1
    assert worst < 1e-10


def test_iwasawa_singular():
    with pytest.raises(ValueError):
        geom.iwasawa_gl3(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        geom.iwasawa_gl3(np.ones((2, 2)))


def test_dF_matrix():
    assert geom.dF_matrix_check(1e-5) < 1e-8
    with pytest.raises(ValueError):
        geom.dF_matrix_check(1.0)


def test_dF_A2_column():
    # X_0 is real, so only y1 responds, matching the third column pattern (1, 0, 0, 0, 0)
    col = geom.coordinate_derivative(np.diag([1.0, 1.0, -2.0]))
    assert np.allclose(col, [3.0, 0, 0, 0, 0], atol=1e-8)
    assert [complex(geom.DF_MATRIX[r][2]) for r in range(5)] == [1, 0, 0, 0, 0]


def test_dF_antisymmetric_directions_vanish():
    for a in (np.array([[0, 1.0, 0], [-1, 0, 0], [0, 0, 0]]), np.array([[0, 0, 1.0], [0, 0, 0], [-1, 0, 0]])):
        assert np.allclose(geom.coordinate_derivative(a), 0.0, atol=1e-8)


def test_left_jacobian():
    assert geom.left_jacobian_numeric_check() < 1e-7
    assert geom.left_jacobian_symbolic_check()


def test_pullback_matrix_and_q():
    derived = geom.pullback_matrix_derived()
    assert all(a == b for ra, rb in zip(derived, geom.PULLBACK_MATRIX) for a, b in zip(ra, rb))
    assert geom.q_matrix_verify(2)
    assert geom.q_matrix_verify(3)
    with pytest.raises(ValueError):
        geom.q_matrix(4)


def test_iota_identities_that_hold():
    ids = geom.iota_identities()
    for key in ("omega_pm3_pm1_zero", "omega_0", "omega_pm2_corrected", "omega_pm2_wedge_xi", "u_sign_invariant"):
        assert ids[key], key


@pytest.mark.xfail(strict=True, reason="the reference omega_+-2 carries an extra dy2^dx2 term that cancels exactly")
def test_iota_omega_pm2_reference_form():
    assert geom.iota_identities()["omega_pm2"]


def test_haar_density_value():
    from branchkit.forms import WedgeForm

    forms = geom.iota_pullback_forms()
    w = forms["wedge"][(2, "-")]
    # 1/(y1 y2^2) dy1^dx2^dy2 with y2 = u^2
    want = WedgeForm(geom.IOTA_LABELS, 3, {(0, 2, 1): geom._iv("1", "y1*u^4")})
    assert w == want
