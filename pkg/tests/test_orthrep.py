from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from branchkit import linalg
from branchkit.glrep import GL2_VARS
from branchkit.orthrep import (Z_VARS, HarmonicElement, OrthWeight2, OrthWeight3, act_o2, act_o3,
                               cayley_so2, cayley_so3, embed_o2, is_orthogonal, matrix_M, o3_branch_embed,
                               o3_branch_project, random_cayley, reduce_mod_sphere, sigma_set, v_basis,
                               v_signed)
from branchkit.poly import MultiPoly
from branchkit.scalar import I

z1, z2, z3 = Z_VARS.gens()


def test_reduction_examples():
    assert reduce_mod_sphere(z3 * z3, OrthWeight3(2)).poly == -(z1 * z1) - z2 * z2
    assert reduce_mod_sphere(z1 * z2, OrthWeight3(2)).poly == z1 * z2
    assert reduce_mod_sphere((z1 * z1 + z2 * z2 + z3 * z3) * z1, OrthWeight3(3)).poly.is_zero()


def test_v_basis_examples():
    assert v_basis(OrthWeight3(1), 0).poly == z3
    assert v_basis(OrthWeight3(2), 2, -1).poly == z1 * z1 - (z1 * z2).scale(2 * I) - z2 * z2
    assert v_basis(OrthWeight3(2), 0).poly == -(z1 * z1) - z2 * z2


def test_cayley_examples():
    assert linalg.equal(cayley_so3(1, 0, 0), linalg.to_matrix([[0, -1, 0], [1, 0, 0], [0, 0, 1]]))
    rng = random.Random(5)
    for _ in range(10):
        u = random_cayley(rng)
        assert is_orthogonal(u) and linalg.det(u) == 1


def test_matrix_M_examples():
    assert linalg.is_identity(matrix_M(3, linalg.identity(3)))
    rz = [[0, 1, 0], [-1, 0, 0], [0, 0, 1]]
    assert linalg.equal(matrix_M(1, rz), linalg.to_matrix([[I, 0, 0], [0, 1, 0], [0, 0, -I]]))
    swap = matrix_M(OrthWeight3(1, 0), [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert linalg.equal(swap, linalg.to_matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]]))


@pytest.mark.parametrize("lam", range(6))
def test_character_formula(lam):
    rng = random.Random(lam)
    for _ in range(5):
        u = random_cayley(rng)
        cos_t = (sum(float(u[k][k].re) for k in range(3)) - 1) / 2
        t = math.acos(max(-1.0, min(1.0, cos_t)))
        tr = sum(complex(matrix_M(lam, u)[k][k]) for k in range(2 * lam + 1))
        assert abs(tr - sum(math.cos(j * t) for j in range(-lam, lam + 1))) < 1e-9


@pytest.mark.parametrize("lam, delta", [(0, 1), (1, 0), (2, 1), (3, 1)])
def test_central_sign(lam, delta):
    minus = linalg.scale(linalg.identity(3), -1)
    m = matrix_M(OrthWeight3(lam, delta), minus)
    assert linalg.equal(m, linalg.scale(linalg.identity(2 * lam + 1), (-1) ** (lam + delta)))


@pytest.mark.parametrize("lam", range(4))
def test_homomorphism(lam):
    rng = random.Random(100 + lam)
    for _ in range(4):
        u, v = random_cayley(rng), random_cayley(rng)
        assert linalg.equal(matrix_M(lam, linalg.matmul(u, v)), linalg.matmul(matrix_M(lam, u), matrix_M(lam, v)))


def test_multiplicativity_all_signs():
    for l1 in range(7):
        for l2 in range(7 - l1):
            for j1 in range(-l1, l1 + 1):
                for j2 in range(-l2, l2 + 1):
                    assert v_signed(l1, j1) * v_signed(l2, j2) == v_signed(l1 + l2, j1 + j2)


def test_harmonic_element_rejects_unreduced():
    with pytest.raises(ValueError):
        HarmonicElement(z3 * z3, OrthWeight3(2))


def test_sigma_set_and_dims():
    assert sigma_set(OrthWeight3(2, 1)) == [OrthWeight2(0, 1), OrthWeight2(1), OrthWeight2(2)]
    with pytest.raises(ValueError):
        OrthWeight2(1, 1)


@pytest.mark.parametrize("lam, delta", [(1, 0), (2, 1), (3, 0)])
def test_branching_is_o2_equivariant(lam, delta):
    w = OrthWeight3(lam, delta)
    rng = random.Random(lam)
    reflection = linalg.to_matrix([[-1, 0], [0, 1]])
    for mu in sigma_set(w):
        v = v_basis(mu, mu.lam, 1) if mu.lam else MultiPoly.constant(GL2_VARS, 1)
        for u in (cayley_so2(Fraction(rng.randint(-5, 5), 3)), reflection):
            lhs = o3_branch_embed(mu, w, act_o2(u, v, mu))
            rhs = act_o3(embed_o2(u), o3_branch_embed(mu, w, v))
            assert lhs == rhs
        assert o3_branch_project(w, mu, o3_branch_embed(mu, w, v)) == v


def test_branch_embed_rejects_foreign_weight():
    with pytest.raises(ValueError):
        o3_branch_embed(OrthWeight2(3), OrthWeight3(2), v_basis(OrthWeight2(3), 3))
