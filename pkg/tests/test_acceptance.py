"""The ten acceptance criteria. Each test records one PASS/FAIL line, printed
in the terminal summary (and by running this file directly)."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from branchkit import escoh, geom, linalg
from branchkit import lfactors as lf
from branchkit.glrep import (GL2_VARS, WeightGL2, WeightGL3, branching_rank, dim_L3, equivariance_defect,
                             kernel_dimension, nabla_n, random_element, random_gl2, xi2_set)
from branchkit.orthrep import matrix_M, random_cayley, v_signed
from branchkit.poly import expand_power
from branchkit.scalar import I

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    state = {"ok": True, "note": ""}
    t0 = time.perf_counter()
    try:
        yield state
    except AssertionError as exc:
        state["ok"] = False
        state["note"] = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        raise
    finally:
        dt = time.perf_counter() - t0
        if dt >= limit:
            state["ok"] = False
            state["note"] = f"took {dt:.1f}s, limit {limit:.0f}s"
        verdict = "PASS" if state["ok"] else "FAIL"
        note = f" ({state['note']})" if state["note"] else ""
        line = f"criterion {number:2d}: {verdict} {title} [{dt:.2f}s]{note}"
        ACCEPTANCE_LINES[number] = line
        print(line)
    assert dt < limit, f"took {dt:.1f}s, limit {limit:.0f}s"


def test_c01_dimension_formula():
    with criterion(1, "dimension formula vs kernel rank, w1p, w1m <= 3", 10):
        for a in range(4):
            for b in range(4):
                w = WeightGL3(a, b)
                assert dim_L3(w) == kernel_dimension(w), f"w = {a},{b}"


def test_c02_branching_isomorphism():
    rng = random.Random(2)
    with criterion(2, "branching full rank and GL2-equivariant at 20 g", 60):
        for a in range(4):
            for b in range(4):
                w = WeightGL3(a, b)
                assert branching_rank(w) == dim_L3(w), f"rank at {a},{b}"
                for _ in range(20):
                    assert not equivariance_defect(w, random_gl2(rng), random_element(w, rng)), f"w = {a},{b}"


def test_c03_orthogonal_structure():
    rng = random.Random(3)
    pts = [(random_cayley(rng), random_cayley(rng)) for _ in range(25)]
    with criterion(3, "M_lambda homomorphism and v-basis multiplicativity, lambda <= 5", 60):
        for lam in range(6):
            for u, v in pts:
                assert linalg.equal(matrix_M(lam, linalg.matmul(u, v)),
                                    linalg.matmul(matrix_M(lam, u), matrix_M(lam, v))), f"lam = {lam}"
        for l1 in range(6):
            for l2 in range(6 - l1):
                for j1 in range(-l1, l1 + 1):
                    for j2 in range(-l2, l2 + 1):
                        assert v_signed(l1, j1) * v_signed(l2, j2) == v_signed(l1 + l2, j1 + j2)


def test_c04_wedge_matrices():
    rng = random.Random(4)
    pts = [random_cayley(rng) for _ in range(25)]
    with criterion(4, "P~ block diagonal, P column removal, omega equivariance, i = 2, 3", 60):
        for i in (2, 3):
            assert linalg.equal(escoh.p_from_p_tilde(i), escoh.P_MATRIX[i]), f"column removal i = {i}"
            for u in pts:
                assert escoh.p_tilde_block_check(i, u), f"block i = {i}"
                assert escoh.omega_equivariance_check(i, u), f"omega i = {i}"


def test_c05_script_P():
    rng = random.Random(5)
    with criterion(5, "script P for lambda3 in 3, 5, 7: ring, equivariance, closed form", 120):
        for lam in (3, 5, 7):
            sp = escoh.build_script_P(lam)
            assert escoh.in_dyadic_gaussian_ring(sp), f"ring at {lam}"
            for _ in range(5):
                assert escoh.script_P_equivariance_check(sp, random_cayley(rng)), f"equivariance at {lam}"
            for a in range(lam, -lam - 1, -1):
                for b in range(3, -4, -1):
                    assert escoh.closed_form_P_entry(lam, a, b).poly == sp.entry(a, b).poly, f"entry {a},{b}"


def test_c06_nabla_closed_forms():
    with criterion(6, "closed-form nabla of script P (both forms) vs operator, lambda3 <= 7", 120):
        for lam in (3, 5, 7):
            sp = escoh.build_script_P(lam)
            w = (lam - 3) // 2
            for n in xi2_set(WeightGL3(w, w, w)):
                for a in range(lam, -lam - 1, -1):
                    for b in range(3, -4, -1):
                        brute = nabla_n(n, sp.entry(a, b))
                        assert escoh.closed_form_nabla_P(lam, n, a, b) == brute, f"sum form {lam},{n},{a},{b}"
                        if abs(a - b) == n.n1:
                            single = escoh.closed_form_nabla_P(lam, n, a, b, single_term=True)
                            assert single == brute, f"single term {lam},{n},{a},{b}"


def _geometry_parts():
    rng = np.random.default_rng(7)
    worst, n = 0.0, 0
    while n < 1000:
        g = rng.normal(size=(3, 3))
        if np.linalg.cond(g) >= 1e3:
            continue
        worst = max(worst, *geom.iwasawa_residual(g))
        n += 1
    ids = geom.iota_identities()
    return {
        "iwasawa": worst < 1e-10,
        "dF": geom.dF_matrix_check(1e-5) < 1e-7,
        "jacobian": geom.left_jacobian_numeric_check() < 1e-7 and geom.left_jacobian_symbolic_check(),
        "Q": geom.q_matrix_verify(2) and geom.q_matrix_verify(3),
        "iota omega_+-3,+-1 = 0": ids["omega_pm3_pm1_zero"],
        "iota omega_0": ids["omega_0"],
        "iota omega_+-2 reference form": ids["omega_pm2"],
        "iota omega_-+2 ^ xi": ids["omega_pm2_wedge_xi"],
    }


_GEOM_CACHE: dict = {}


def geometry_parts():
    if not _GEOM_CACHE:
        t0 = time.perf_counter()
        _GEOM_CACHE.update(_geometry_parts())
        _GEOM_CACHE["_time"] = time.perf_counter() - t0
    return _GEOM_CACHE


def test_c07_geometry():
    """Everything except the reference omega_+-2 form must hold; that form
    is reported as a FAIL line and pinned by the xfail test below."""
    parts = geometry_parts()
    failed = [k for k, v in parts.items() if not k.startswith("_") and not v]
    t0 = time.perf_counter()
    line_ok = not failed and parts["_time"] < 60
    note = f"fails: {', '.join(failed)}" if failed else ""
    ACCEPTANCE_LINES[7] = (f"criterion  7: {'PASS' if line_ok else 'FAIL'} Iwasawa, dF, Jacobian, Q and the four "
                           f"iota pullback identities [{parts['_time']:.2f}s]" + (f" ({note})" if note else ""))
    print(ACCEPTANCE_LINES[7])
    assert parts["_time"] + (time.perf_counter() - t0) < 60
    assert [k for k in failed if k != "iota omega_+-2 reference form"] == []


@pytest.mark.xfail(strict=True, reason="reference omega_+-2 has an extra dy2^dx2 term; the exact pullback lacks it")
def test_c07_iota_omega_pm2_reference_form():
    assert geometry_parts()["iota omega_+-2 reference form"]


def test_c07_iota_omega_pm2_corrected():
    assert geom.iota_identities()["omega_pm2_corrected"]


def test_c08_critical_values():
    with criterion(8, "critical region three-way agreement for l3 <= 20 and spot values", 10):
        for l3 in range(2, 21, 2):
            for l2 in range(1, l3):
                pp = lf.PiParams(l2, l3)
                closed = lf.critical_points(pp)
                hodge = [m for m in range(-40, 41) if lf.critical_by_hodge(pp, m)]
                assert closed == lf.critical_points_by_poles(pp) == hodge, f"(l2, l3) = ({l2}, {l3})"
        for l2, l3, want in ((2, 8, [5, 6]), (4, 6, [5, 6]), (2, 4, [3, 4])):
            assert lf.critical_points(lf.PiParams(l2, l3)) == want


def test_c09_main_constant():
    with criterion(9, "assembly identity at every critical point, main constant at (2,8,0,5)", 5):
        for l3 in range(2, 21, 2):
            for l2 in range(1, l3):
                for delta in (0, 1):
                    pp = lf.PiParams(l2, l3, delta)
                    for m in lf.critical_points(pp):
                        assert lf.assembly_identity(pp, m), f"({l2}, {l3}, {delta}, {m})"
        mc = lf.main_constant(lf.PiParams(2, 8, 0), 5)
        assert (mc.parity, str(mc.scalar)) == (-1, "3")


def test_c10_pairing():
    X, Y = GL2_VARS.gens()
    S, T = -X + Y.scale(I), X + Y.scale(I)
    with criterion(10, "[T^n1, S^n1] = (-2i)^n1 for n1 <= 6", 5):
        for n1 in range(7):
            got = escoh.pairing_n(WeightGL2(n1, 0), expand_power(T, n1), expand_power(S, n1))
            assert got == (-2 * I) ** n1, f"n1 = {n1}"


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
