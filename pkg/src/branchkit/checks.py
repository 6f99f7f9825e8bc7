"""Verification batteries, one per module, shared by the CLI and the test suite.

Each battery yields :class:`Case` records. A case carries canonical string
forms of its inputs, expected and actual values so a failing report can be
read without rerunning anything.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg

SUITES = ("glrep", "orthrep", "escoh", "geom", "lfactors")
DEFAULT_CAPS = {"glrep": 3, "orthrep": 5, "escoh": 7, "geom": 0, "lfactors": 20}


@dataclass
class Case:
    name: str
    ok: bool
    inputs: str = ""
    expected: str = ""
    actual: str = ""

    def payload(self) -> dict:
        return {"case": self.name, "inputs": self.inputs, "expected": self.expected, "actual": self.actual}


@dataclass
class Report:
    suite: str
    seed: int
    cases: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.cases)

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.cases)

    @property
    def ok(self) -> bool:
        return self.passed == self.count

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "passed": self.passed,
            "failures": [c.payload() for c in self.cases if not c.ok],
        }


def _case(name, ok, inputs=""):
    return Case(name, bool(ok), str(inputs), "true", str(bool(ok)).lower())


# --- glrep --------------------------------------------------------------------

def glrep_cases(cap: int, rng: random.Random, samples: int = 20):
    from .glrep import (WeightGL3, branching_rank, central_character_ok, dim_L3, equivariance_defect,
                        kernel_dimension, random_element, random_gl2)

    for a in range(cap + 1):
        for b in range(cap + 1):
            w = WeightGL3(a, b)
            d = dim_L3(w)
            yield Case(f"dim {a},{b}", d == kernel_dimension(w), f"w={a},{b}", str(kernel_dimension(w)), str(d))
            r = branching_rank(w)
            yield Case(f"rank {a},{b}", r == d, f"w={a},{b}", str(d), str(r))
            bad = []
            for _ in range(samples):
                g = random_gl2(rng)
                bad += equivariance_defect(w, g, random_element(w, rng))
            yield Case(f"equivariance {a},{b}", not bad, f"w={a},{b} samples={samples}", "[]", str(bad))
            x = Fraction(rng.randint(2, 5), rng.randint(1, 3))
            yield _case(f"central character {a},{b}", central_character_ok(w, x), f"w={a},{b} x={x}")


# --- orthrep ------------------------------------------------------------------

def orthrep_cases(cap: int, rng: random.Random, samples: int = 25):
    from .glrep import GL2_VARS
    from .orthrep import (OrthWeight3, dims_add_up, matrix_M, o3_branch_embed, o3_branch_project,
                          random_cayley, sigma_set, v_basis, v_signed)
    from .poly import MultiPoly

    pairs = [(random_cayley(rng), random_cayley(rng)) for _ in range(samples)]
    for lam in range(cap + 1):
        bad = 0
        for u, v in pairs:
            if not linalg.equal(matrix_M(lam, linalg.matmul(u, v)), linalg.matmul(matrix_M(lam, u), matrix_M(lam, v))):
                bad += 1
        yield Case(f"homomorphism lam={lam}", bad == 0, f"lam={lam} pairs={samples}", "0", str(bad))
        yield _case(f"dimensions lam={lam}", dims_add_up(OrthWeight3(lam)), f"lam={lam}")
    for l1 in range(cap + 1):
        for l2 in range(cap + 1 - l1):
            bad = []
            for j1 in range(-l1, l1 + 1):
                for j2 in range(-l2, l2 + 1):
                    lhs = v_signed(l1, j1) * v_signed(l2, j2)
                    if lhs != v_signed(l1 + l2, j1 + j2):
                        bad.append((j1, j2))
            yield Case(f"multiplicativity {l1}+{l2}", not bad, f"lam={l1},{l2}", "[]", str(bad))
    for lam in range(cap + 1):
        for delta in (0, 1):
            w = OrthWeight3(lam, delta)
            bad = []
            for mu in sigma_set(w):
                vp = v_basis(mu, mu.lam, 1) if mu.lam else MultiPoly.constant(GL2_VARS, 1)
                if o3_branch_project(w, mu, o3_branch_embed(mu, w, vp)) != vp:
                    bad.append(mu.lam)
            yield Case(f"branch round trip {lam},{delta}", not bad, f"w={lam},{delta}", "[]", str(bad))


# --- escoh --------------------------------------------------------------------

def escoh_cases(cap: int, rng: random.Random, samples: int = 25, p_samples: int = 5):
    from . import escoh
    from .glrep import GL2_VARS, WeightGL2, WeightGL3, act_gl2, nabla_n, random_gl2, xi2_set
    from .orthrep import cayley_so2, matrix_M, random_cayley
    from .poly import expand_power
    from .scalar import I

    t = Fraction(rng.randint(1, 5), rng.randint(1, 5))
    u2 = cayley_so2(t)
    yield _case("ad gl2 = u^-2", linalg.equal(escoh.ad_gl2(u2), linalg.inverse(linalg.matmul(u2, u2))), f"t={t}")
    us = [random_cayley(rng) for _ in range(samples)]
    yield _case("ad gl3 = M_(2,0)", all(linalg.equal(escoh.ad_gl3(u), matrix_M(2, u)) for u in us), f"points={samples}")
    for i in (2, 3):
        yield _case(f"P~{i} block diagonal", all(escoh.p_tilde_block_check(i, u) for u in us), f"points={samples}")
        yield _case(f"P{i} column removal", linalg.equal(escoh.p_from_p_tilde(i), escoh.P_MATRIX[i]), f"i={i}")
        yield _case(f"omega{i} equivariance", all(escoh.omega_equivariance_check(i, u) for u in us), f"points={samples}")
    for lam in range(3, cap + 1, 2):
        sp = escoh.build_script_P(lam)
        yield _case(f"P ring lam={lam}", escoh.in_dyadic_gaussian_ring(sp), f"lam3={lam}")
        pts = [random_cayley(rng) for _ in range(p_samples)]
        yield _case(f"P equivariance lam={lam}", all(escoh.script_P_equivariance_check(sp, u) for u in pts), f"lam3={lam} points={p_samples}")
        bad = [(a, b) for a in range(lam, -lam - 1, -1) for b in range(3, -4, -1)
               if escoh.closed_form_P_entry(lam, a, b).poly != sp.entry(a, b).poly]
        yield Case(f"B.1 lam={lam}", not bad, f"lam3={lam}", "[]", str(bad))
        w = (lam - 3) // 2
        bad2, bad3 = [], []
        for n in xi2_set(WeightGL3(w, w, w)):
            for a in range(lam, -lam - 1, -1):
                for b in range(3, -4, -1):
                    brute = nabla_n(n, sp.entry(a, b))
                    if escoh.closed_form_nabla_P(lam, n, a, b) != brute:
                        bad2.append((n.n1, n.n2, a, b))
                    if abs(a - b) == n.n1 and escoh.closed_form_nabla_P(lam, n, a, b, single_term=True) != brute:
                        bad3.append((n.n1, n.n2, a, b))
        yield Case(f"B.2 lam={lam}", not bad2, f"lam3={lam}", "[]", str(bad2))
        yield Case(f"B.3 lam={lam}", not bad3, f"lam3={lam}", "[]", str(bad3))
    X, Y = GL2_VARS.gens()
    S, T = -X + Y.scale(I), X + Y.scale(I)
    for n1 in range(7):
        n = WeightGL2(n1, 0)
        got = escoh.pairing_n(n, expand_power(T, n1), expand_power(S, n1))
        want = (-2 * I) ** n1
        yield Case(f"pairing [T^{n1}, S^{n1}]", got == want, f"n1={n1}", str(want), str(got))
    for n1 in range(1, 5):
        n = WeightGL2(n1, rng.randint(-2, 2))
        g = random_gl2(rng)
        p = expand_power(X + Y.scale(rng.randint(-3, 3)), n1)
        q = expand_power(X.scale(rng.randint(1, 3)) - Y, n1)
        lhs = escoh.pairing_n(n, act_gl2(g, p, n), act_gl2(g, q, WeightGL2(n1, 0)))
        rhs = escoh.pairing_n(n, p, q) * linalg.det(g) ** (n1 + n.n2)
        yield Case(f"pairing equivariance n={n1},{n.n2}", lhs == rhs, f"n={n1},{n.n2}", str(rhs), str(lhs))


# --- geom ---------------------------------------------------------------------

def geom_cases(rng: random.Random, tol: float = 1e-10, batch: int = 1000):
    import numpy as np

    from . import geom

    nrng = np.random.default_rng(rng.randint(0, 2**31))
    worst = 0.0
    done = 0
    while done < batch:
        g = nrng.normal(size=(3, 3))
        if np.linalg.cond(g) >= 1e3:
            continue
        worst = max(worst, *geom.iwasawa_residual(g))
        done += 1
    yield Case("iwasawa round trip", worst < tol, f"matrices={batch}", f"< {tol}", repr(worst))
    dev = geom.dF_matrix_check(1e-5)
    yield Case("dF finite differences", dev < 1e-7, "h=1e-5", "< 1e-7", repr(dev))
    dev = geom.left_jacobian_numeric_check()
    yield Case("jacobian finite differences", dev < 1e-7, "point=(1,2,0,3,0) h=1e-5", "< 1e-7", repr(dev))
    yield _case("jacobian symbolic", geom.left_jacobian_symbolic_check())
    for i in (2, 3):
        yield _case(f"Q{i} exact", geom.q_matrix_verify(i), f"i={i}")
    ids = geom.iota_identities()
    for key in ("omega_pm3_pm1_zero", "omega_0", "omega_pm2", "omega_pm2_wedge_xi", "omega_pm2_corrected", "u_sign_invariant"):
        yield _case(f"iota {key}", ids[key], "reference form with dy2^dx2 term" if key == "omega_pm2" else "")


# --- lfactors -----------------------------------------------------------------

def lfactors_cases(cap: int, rng: random.Random):
    from . import lfactors as lf
    from .escoh import cup_constants

    bad = []
    bad_assembly = []
    bad_parity = []
    for l3 in range(2, cap + 1, 2):
        for l2 in range(1, l3):
            pp = lf.PiParams(l2, l3)
            a = lf.critical_points(pp)
            b = lf.critical_points_by_poles(pp)
            c = [m for m in range(-(l2 + l3) - 2, l2 + l3 + 3) if lf.critical_by_hodge(pp, m)]
            if not a == b == c:
                bad.append((l2, l3))
            for delta in (0, 1):
                pd = lf.PiParams(l2, l3, delta)
                for m in a:
                    if not lf.assembly_identity(pd, m):
                        bad_assembly.append((l2, l3, delta, m))
                    if lf.main_constant(pd, m).parity != cup_constants(l3 + 1, delta, l2, m).sign_flip:
                        bad_parity.append((l2, l3, delta, m))
    yield Case("critical three-way", not bad, f"l3<={cap}", "[]", str(bad))
    yield Case("assembly identity", not bad_assembly, f"l3<={cap}", "[]", str(bad_assembly))
    yield Case("parity coherence", not bad_parity, f"l3<={cap}", "[]", str(bad_parity))
    for (l2, l3), want in {(2, 8): [5, 6], (4, 6): [5, 6], (2, 4): [3, 4]}.items():
        got = lf.critical_points(lf.PiParams(l2, l3))
        yield Case(f"critical ({l2},{l3})", got == want, f"l2={l2} l3={l3}", str(want), str(got))
    mc = lf.main_constant(lf.PiParams(2, 8, 0), 5)
    yield Case("main constant (2,8,0,5)", (mc.parity, str(mc.scalar)) == (-1, "3"), "l2=2 l3=8 delta=0 m=5",
               "(-1, 3)", f"({mc.parity}, {mc.scalar})")
    for a in (Fraction(0), Fraction(1, 2), Fraction(-3)):
        pair = lf.GammaProduct((("R", a), ("R", a + 1)))
        single = lf.GammaProduct((("C", a),))
        yield Case(f"duplication poles a={a}", pair.poles_in(-30, 5) == single.poles_in(-30, 5), f"a={a}")
    import math
    vals = (lf.gamma_R(1), lf.gamma_C(1) * math.pi, lf.gamma_C(2) * 2 * math.pi ** 2)
    yield Case("gamma values", lf.gamma_R(1) == 1 and all(abs(v - 1) < 1e-12 for v in vals), "", "(1, 1, 1)", str(vals))
    bad = []
    for _ in range(20):
        p = _random_parameter(rng, lf)
        q = _random_parameter(rng, lf)
        try:
            if lf.dual(lf.tensor(p, q)) != lf.tensor(lf.dual(p), lf.dual(q)):
                bad.append((str(p), str(q)))
        except ValueError:
            continue
    yield Case("dual of tensor", not bad, "random parameters=20", "[]", str(bad))


def _random_parameter(rng, lf):
    out = []
    for _ in range(rng.randint(1, 3)):
        nu = Fraction(rng.randint(-6, 6), 2)
        if rng.random() < 0.4:
            out.append(lf.Dim1(nu, rng.randint(0, 1)))
        else:
            out.append(lf.Dim2(nu, rng.randint(0, 9)))
    return lf.WeilParameter(tuple(out))


def run_suite(name: str, cap: int | None = None, seed: int = 1, tol: float = 1e-10) -> Report:
    if name not in SUITES:
        raise KeyError(name)
    rng = random.Random(seed)
    cap = DEFAULT_CAPS[name] if cap is None else cap
    if name == "glrep":
        cases = glrep_cases(cap, rng)
    elif name == "orthrep":
        cases = orthrep_cases(cap, rng)
    elif name == "escoh":
        cases = escoh_cases(cap, rng)
    elif name == "geom":
        cases = geom_cases(rng, tol)
    else:
        cases = lfactors_cases(cap, rng)
    return Report(name, seed, list(cases))
