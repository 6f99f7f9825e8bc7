"""O(2) and O(3) representations on polynomials and their explicit bases.

O(3) acts on C[z1, z2, z3]_lam by (det u)^delta P((z1, z2, z3) u); the
irreducible quotient V3(lam) is taken modulo z1^2 + z2^2 + z3^2, with the
canonical representative whose z3-degree is at most one. The v-basis
v_j = (sgn(j) z1 + i z2)^{|j|} z3^{lam-|j|} is ordered j = lam, ..., -lam.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .glrep import GL2_VARS, WeightGL2, act_gl2
from .poly import MultiPoly, VariableSet, expand_power, substitute
from .scalar import ONE, ZERO, I

Z_VARS = VariableSet(["z1", "z2", "z3"])

__all__ = [
    "Z_VARS",
    "OrthWeight2",
    "OrthWeight3",
    "HarmonicElement",
    "reduce_mod_sphere",
    "v_basis",
    "v_index_list",
    "harmonic_coordinates",
    "v_coordinates",
    "matrix_M",
    "cayley_so3",
    "cayley_so2",
    "is_orthogonal",
    "sigma_set",
    "o3_branch_embed",
    "o3_branch_project",
    "act_o2",
    "act_o3",
]


@dataclass(frozen=True)
class OrthWeight2:
    lam: int
    delta: int = 0

    def __post_init__(self):
        if self.lam < 0 or self.delta not in (0, 1):
            raise ValueError(f"bad O(2) weight ({self.lam}, {self.delta})")
        if self.lam > 0 and self.delta != 0:
            raise ValueError("O(2) weights with lam > 0 have delta = 0")

    def dim(self) -> int:
        return 1 if self.lam == 0 else 2


@dataclass(frozen=True)
class OrthWeight3:
    lam: int
    delta: int = 0

    def __post_init__(self):
        if self.lam < 0 or self.delta not in (0, 1):
            raise ValueError(f"bad O(3) weight ({self.lam}, {self.delta})")

    def dim(self) -> int:
        return 2 * self.lam + 1


def _as_w3(w) -> OrthWeight3:
    if isinstance(w, OrthWeight3):
        return w
    if isinstance(w, int):
        return OrthWeight3(w, 0)
    return OrthWeight3(*w)


@dataclass(frozen=True)
class HarmonicElement:
    """A class in V3(lam), stored as its reduced representative."""

    poly: MultiPoly
    weight: OrthWeight3

    def __post_init__(self):
        p = self.poly.embed(Z_VARS)
        if not p.is_homogeneous(degree=self.weight.lam):
            raise ValueError(f"not homogeneous of degree {self.weight.lam}")
        if any(e[2] > 1 for e in p.terms):
            raise ValueError("representative is not reduced")
        object.__setattr__(self, "poly", p)

    def __add__(self, other):
        return HarmonicElement(self.poly + other.poly, self.weight)

    def __sub__(self, other):
        return HarmonicElement(self.poly - other.poly, self.weight)

    def scale(self, c):
        return HarmonicElement(self.poly.scale(c), self.weight)

    def __mul__(self, other):
        """Product in the graded quotient; weights add."""
        w = OrthWeight3(self.weight.lam + other.weight.lam, (self.weight.delta + other.weight.delta) % 2)
        return reduce_mod_sphere(self.poly * other.poly, w)

    def __eq__(self, other):
        return isinstance(other, HarmonicElement) and self.weight.lam == other.weight.lam and self.poly == other.poly

    def __hash__(self):
        return hash((self.weight.lam, self.poly))


@lru_cache(maxsize=None)
def _sphere_power(q: int) -> MultiPoly:
    z1, z2, _ = Z_VARS.gens()
    return expand_power(-(z1 * z1) - z2 * z2, q)


def reduce_mod_sphere(p: MultiPoly, weight=None) -> HarmonicElement:
    """Rewrite z3^2 -> -z1^2 - z2^2 until every z3-exponent is at most 1."""
    p = p.embed(Z_VARS)
    degs = p.degrees()
    if len(degs) > 1:
        raise ValueError("input must be homogeneous")
    lam = degs.pop() if degs else (weight.lam if weight is not None else 0)
    if weight is None:
        weight = OrthWeight3(lam, 0)
    weight = _as_w3(weight)
    if lam != weight.lam and not p.is_zero():
        raise ValueError(f"degree {lam} does not match weight {weight}")
    out = MultiPoly(Z_VARS)
    plain = {}
    for e, c in p.terms.items():
        if e[2] <= 1:
            plain[e] = plain.get(e, ZERO) + c
            continue
        q, r = divmod(e[2], 2)
        head = MultiPoly(Z_VARS, {(e[0], e[1], r): c})
        out = out + head * _sphere_power(q)
    out = out + MultiPoly(Z_VARS, plain)
    return HarmonicElement(out, weight)


def v_index_list(lam: int) -> list:
    return list(range(lam, -lam - 1, -1))


def _v_poly(lam: int, j: int) -> MultiPoly:
    z1, z2, z3 = Z_VARS.gens()
    mu = abs(j)
    base = (z1 if j >= 0 else -z1) + z2.scale(I)
    return expand_power(base, mu) * expand_power(z3, lam - mu)


def v_basis(w, mu: int, sign: int = 1):
    """v_{+-mu} for an O(3) weight (reduced class) or an O(2) weight (polynomial in X, Y).

    ``sign`` is +1 or -1. For O(2) only mu = lam is allowed.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if isinstance(w, OrthWeight2):
        if mu != w.lam:
            raise ValueError(f"O(2) weight {w} only has v_(+-{w.lam})")
        X, Y = GL2_VARS.gens()
        return expand_power(X.scale(sign) + Y.scale(I), mu)
    w = _as_w3(w)
    if not 0 <= mu <= w.lam:
        raise ValueError(f"mu = {mu} out of range for lam = {w.lam}")
    return reduce_mod_sphere(_v_poly(w.lam, sign * mu), w)


def v_signed(w, j: int) -> HarmonicElement:
    """v_j with a signed index j in [-lam, lam]."""
    return v_basis(w, abs(j), 1 if j >= 0 else -1)


@lru_cache(maxsize=None)
def reduced_monomials(lam: int) -> tuple:
    """Exponents of the reduced monomials of degree lam: 2*lam+1 of them."""
    top = [(a, lam - a, 0) for a in range(lam, -1, -1)]
    low = [(a, lam - 1 - a, 1) for a in range(lam - 1, -1, -1)] if lam else []
    return tuple(top + low)


def harmonic_coordinates(h: HarmonicElement) -> list:
    return [h.poly.coefficient(e) for e in reduced_monomials(h.weight.lam)]


@lru_cache(maxsize=None)
def _basis_change(lam: int):
    cols = [harmonic_coordinates(reduce_mod_sphere(_v_poly(lam, j), OrthWeight3(lam))) for j in v_index_list(lam)]
    b = linalg.transpose(cols)
    return b, linalg.inverse(b)


def v_coordinates(h: HarmonicElement) -> list:
    """Coordinates of h in the ordered basis (v_lam, ..., v_-lam)."""
    _, binv = _basis_change(h.weight.lam)
    return linalg.matvec(binv, harmonic_coordinates(h))


def is_orthogonal(u) -> bool:
    u = linalg.to_matrix(u)
    return linalg.is_identity(linalg.matmul(linalg.transpose(u), u))


def _linear_z(col):
    out = MultiPoly(Z_VARS)
    for c, n in zip(col, Z_VARS.names):
        if c:
            out = out + MultiPoly.variable(Z_VARS, n).scale(c)
    return out


def act_o3(u, h: HarmonicElement) -> HarmonicElement:
    """(det u)^delta h((z1, z2, z3) u), reduced."""
    u = linalg.to_matrix(u)
    bind = {Z_VARS.names[j]: _linear_z([u[k][j] for k in range(3)]) for j in range(3)}
    d = linalg.det(u)
    q = substitute(h.poly, bind, Z_VARS).scale(d ** h.weight.delta)
    return reduce_mod_sphere(q, h.weight)


def matrix_M(w, u) -> list:
    """Matrix of u on V3(w) in the basis (v_lam, ..., v_-lam).

    Column j holds the coordinates of tau(u) v_j, so that
    (tau(u) v_lam, ..., tau(u) v_-lam) = (v_lam, ..., v_-lam) M(u).
    """
    w = _as_w3(w)
    u = linalg.to_matrix(u)
    if not is_orthogonal(u):
        raise ValueError("matrix is not orthogonal")
    lam = w.lam
    bind = {Z_VARS.names[j]: _linear_z([u[k][j] for k in range(3)]) for j in range(3)}
    d = linalg.det(u) ** w.delta
    cols = []
    for j in v_index_list(lam):
        moved = substitute(_v_poly(lam, j), bind, Z_VARS).scale(d)
        cols.append(harmonic_coordinates(reduce_mod_sphere(moved, w)))
    _, binv = _basis_change(lam)
    return linalg.matmul(binv, linalg.transpose(cols))


def cayley_so3(a, b, c) -> list:
    """u = (1 - S)(1 + S)^{-1} with S = [[0, a, b], [-a, 0, c], [-b, -c, 0]]."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    s = linalg.to_matrix([[0, a, b], [-a, 0, c], [-b, -c, 0]])
    one = linalg.identity(3)
    return linalg.matmul(linalg.sub(one, s), linalg.inverse(linalg.add(one, s)))


def cayley_so2(t) -> list:
    """The rational rotation [[cos, sin], [-sin, cos]] with cos = (1-t^2)/(1+t^2), sin = 2t/(1+t^2)."""
    t = Fraction(t)
    c = (1 - t * t) / (1 + t * t)
    s = 2 * t / (1 + t * t)
    return linalg.to_matrix([[c, s], [-s, c]])


def random_cayley(rng, span: int = 5, den: int = 4) -> list:
    vals = [Fraction(rng.randint(-span, span), rng.randint(1, den)) for _ in range(3)]
    return cayley_so3(*vals)


def sigma_set(w) -> list:
    """O(2) weights in the restriction of V3(w): (0, delta) and (mu, 0) for 1 <= mu <= lam."""
    w = _as_w3(w)
    return [OrthWeight2(0, w.delta)] + [OrthWeight2(mu, 0) for mu in range(1, w.lam + 1)]


def act_o2(u, p: MultiPoly, w: OrthWeight2) -> MultiPoly:
    """tau2(u) = rho2 restricted to O(2), with GL(2) weight (lam, delta)."""
    return act_gl2(u, p, WeightGL2(w.lam, w.delta))


def _o2_coordinates(mu: OrthWeight2, v: MultiPoly):
    """(a, b) with v = a v_+ + b v_- (b = 0 when mu = 0)."""
    v = v.embed(GL2_VARS)
    if mu.lam == 0:
        if not v.is_constant():
            raise ValueError("expected a constant")
        return v.constant_term(), ZERO
    n = mu.lam
    # X^n: a + (-1)^n b;  X^{n-1} Y: n i (a - (-1)^n b)
    cx = v.coefficient((n, 0))
    cxy = v.coefficient((n - 1, 1)) / (I * n)
    a = (cx + cxy) / 2
    b = (cx - cxy) / 2 * ((-1) ** n)
    recon = v_basis(mu, n, 1).scale(a) + v_basis(mu, n, -1).scale(b)
    if recon != v:
        raise ValueError("polynomial is not in the O(2) submodule V2(mu)")
    return a, b


def o3_branch_embed(mu: OrthWeight2, w, v: MultiPoly) -> HarmonicElement:
    """The O(2)-map V2(mu) -> V3(w): v2_{+-mu} -> (+-1)^delta v3_{+-mu}, delta from w."""
    w = _as_w3(w)
    if mu not in sigma_set(w):
        raise ValueError(f"{mu} is not in the branching set of {w}")
    a, b = _o2_coordinates(mu, v)
    out = v_basis(w, mu.lam, 1).scale(a)
    if mu.lam:
        out = out + v_basis(w, mu.lam, -1).scale(b * ((-1) ** w.delta))
    return out


def o3_branch_project(w, mu: OrthWeight2, h: HarmonicElement) -> MultiPoly:
    """Left inverse of o3_branch_embed: keep the v_{+-mu} components and map back."""
    w = _as_w3(w)
    if mu not in sigma_set(w):
        raise ValueError(f"{mu} is not in the branching set of {w}")
    coords = dict(zip(v_index_list(w.lam), v_coordinates(h)))
    if mu.lam == 0:
        return MultiPoly.constant(GL2_VARS, coords[0])
    a = coords[mu.lam]
    b = coords[-mu.lam] * ((-1) ** w.delta)
    return v_basis(mu, mu.lam, 1).scale(a) + v_basis(mu, mu.lam, -1).scale(b)


def embed_o2(u) -> list:
    u = linalg.to_matrix(u)
    return [[u[0][0], u[0][1], ZERO], [u[1][0], u[1][1], ZERO], [ZERO, ZERO, ONE]]


def dims_add_up(w) -> bool:
    w = _as_w3(w)
    return sum(m.dim() for m in sigma_set(w)) == w.dim()

