"""Polynomial models of GL(2) and GL(3) representations and the branching operators.

GL(2) acts on C[X, Y]_{n1} by det(g)^{n2} P((X, Y) g). GL(3) acts on
bi-homogeneous polynomials in (X, Y, Z; A, B, C) by
det(g)^{w2} P((X, Y, Z) g; (A, B, C) g^{-T}), and the irreducible model
L3(w) is the kernel of the contraction
d2/dXdA + d2/dYdB + d2/dZdC. The operators nabla_{k,l} cut L3(w) into its
GL(2)-constituents, indexed by the set xi2_set(w).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from . import linalg
from .poly import MultiPoly, VariableSet, partial_derivative, substitute
from .scalar import ZERO, GaussianRational, as_gaussian

GL3_VARS = VariableSet(["X", "Y", "Z", "A", "B", "C"])
GL2_VARS = VariableSet(["X", "Y"])
XYZ = ("X", "Y", "Z")
ABC = ("A", "B", "C")

__all__ = [
    "GL2_VARS",
    "GL3_VARS",
    "WeightGL2",
    "WeightGL3",
    "RepElementGL3",
    "dim_L3",
    "contraction",
    "kernel_basis",
    "act_gl3",
    "act_gl2",
    "embed_gl2",
    "nabla_kl",
    "nabla_n",
    "kl_index",
    "xi2_set",
    "kernel_dimension",
    "branching_matrix",
    "branching_rank",
    "equivariance_defect",
    "central_character_ok",
    "random_element",
    "random_gl2",
]


@dataclass(frozen=True)
class WeightGL2:
    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 0:
            raise ValueError(f"n1 must be nonnegative, got {self.n1}")

    def central_exponent(self) -> int:
        return self.n1 + 2 * self.n2

    def dim(self) -> int:
        return self.n1 + 1


@dataclass(frozen=True)
class WeightGL3:
    w1p: int
    w1m: int
    w2: int = 0

    def __post_init__(self):
        if self.w1p < 0 or self.w1m < 0:
            raise ValueError(f"w1p and w1m must be nonnegative, got {self.w1p}, {self.w1m}")

    def central_exponent(self) -> int:
        return self.w1p - self.w1m + 3 * self.w2

    def is_cohomological_diagonal(self) -> bool:
        # the weights (w, w, w) attached to the minimal K-types
        return self.w1p == self.w1m == self.w2

    def untwisted(self) -> "WeightGL3":
        return WeightGL3(self.w1p, self.w1m, 0)


def dim_L3(w: WeightGL3) -> int:
    """Closed-form dimension of L3(w)."""
    return (w.w1p + 1) * (w.w1m + 1) * (w.w1p + w.w1m + 2) // 2


def _exps(deg: int):
    return [(a, b, deg - a - b) for a in range(deg, -1, -1) for b in range(deg - a, -1, -1)]


@lru_cache(maxsize=None)
def monomial_basis(w1p: int, w1m: int) -> tuple:
    """Exponent tuples of all monomials of bidegree (w1p, w1m), in descending lex order."""
    return tuple(e + f for e in _exps(w1p) for f in _exps(w1m))


def _check_bidegree(p: MultiPoly, w: WeightGL3):
    p = p.embed(GL3_VARS)
    if p.is_zero():
        return p
    bd = p.bidegree(XYZ, ABC)
    if bd != (w.w1p, w.w1m):
        raise ValueError(f"polynomial is not bi-homogeneous of degree ({w.w1p}, {w.w1m})")
    return p


def contraction(p: MultiPoly, w: WeightGL3) -> MultiPoly:
    """Apply d2/dXdA + d2/dYdB + d2/dZdC; zero exactly on L3(w)."""
    p = _check_bidegree(p, w)
    out = MultiPoly(GL3_VARS)
    for a, b in zip(XYZ, ABC):
        out = out + partial_derivative(partial_derivative(p, a), b)
    return out


def _contraction_matrix(w1p: int, w1m: int):
    src = monomial_basis(w1p, w1m)
    if w1p == 0 or w1m == 0:
        return src, []
    tgt = monomial_basis(w1p - 1, w1m - 1)
    row = {e: k for k, e in enumerate(tgt)}
    m = linalg.zeros(len(tgt), len(src))
    for j, e in enumerate(src):
        for v in range(3):
            if e[v] and e[v + 3]:
                f = list(e)
                f[v] -= 1
                f[v + 3] -= 1
                m[row[tuple(f)]][j] += e[v] * e[v + 3]
    return src, m


@lru_cache(maxsize=None)
def _kernel(w1p: int, w1m: int):
    src, m = _contraction_matrix(w1p, w1m)
    vecs = linalg.nullspace(m) if m else linalg.identity(len(src))
    return tuple(MultiPoly(GL3_VARS, {e: c for e, c in zip(src, v)}) for v in vecs)


def kernel_basis(w: WeightGL3) -> tuple:
    """An exact basis of L3(w) (kernel of the contraction on the monomial space).

    The Tate twist w2 does not change the polynomials.
    """
    return _kernel(w.w1p, w.w1m)


def kernel_dimension(w: WeightGL3) -> int:
    """Corank of the contraction map, computed by exact elimination."""
    src, m = _contraction_matrix(w.w1p, w.w1m)
    return len(src) - (linalg.rank(m) if m else 0)


@dataclass(frozen=True)
class RepElementGL3:
    """An element of L3(w): a bi-homogeneous polynomial killed by the contraction."""

    poly: MultiPoly
    weight: WeightGL3

    def __post_init__(self):
        p = _check_bidegree(self.poly, self.weight)
        if not contraction(p, self.weight).is_zero():
            raise ValueError("polynomial is not in the kernel of the contraction")
        object.__setattr__(self, "poly", p)

    def __add__(self, other):
        if self.weight != other.weight:
            raise ValueError("weights differ")
        return RepElementGL3(self.poly + other.poly, self.weight)

    def scale(self, c):
        return RepElementGL3(self.poly.scale(c), self.weight)


def _as_element(p, weight: WeightGL3 | None) -> RepElementGL3:
    if isinstance(p, RepElementGL3):
        return p
    if weight is None:
        raise ValueError("a bare polynomial needs an explicit weight")
    return RepElementGL3(p, weight)


def _linear(coeffs, names, vars):
    out = MultiPoly(vars)
    for c, n in zip(coeffs, names):
        if c:
            out = out + MultiPoly.variable(vars, n).scale(c)
    return out


def act_gl3(g, p, weight: WeightGL3 | None = None) -> RepElementGL3:
    """det(g)^{w2} P((X,Y,Z) g; (A,B,C) g^{-T})."""
    p = _as_element(p, weight)
    g = linalg.to_matrix(g)
    d = linalg.det(g)
    if d.is_zero():
        raise ValueError("singular matrix")
    ginv = linalg.inverse(g)
    # (X,Y,Z) g: the j-th new variable is sum_k var_k g[k][j]
    bind = {}
    for j in range(3):
        bind[XYZ[j]] = _linear([g[k][j] for k in range(3)], XYZ, GL3_VARS)
        # (A,B,C) g^{-T}: sum_k var_k ginv[j][k]
        bind[ABC[j]] = _linear([ginv[j][k] for k in range(3)], ABC, GL3_VARS)
    q = substitute(p.poly, bind, GL3_VARS)
    return RepElementGL3(q.scale(d ** p.weight.w2), p.weight)


def act_gl2(g, p: MultiPoly, n: WeightGL2) -> MultiPoly:
    """det(g)^{n2} P((X,Y) g) on homogeneous P of degree n1."""
    g = linalg.to_matrix(g)
    d = linalg.det(g)
    if d.is_zero():
        raise ValueError("singular matrix")
    p = p.embed(GL2_VARS)
    if not p.is_homogeneous(degree=n.n1):
        raise ValueError(f"polynomial is not homogeneous of degree {n.n1}")
    bind = {"X": _linear([g[0][0], g[1][0]], ("X", "Y"), GL2_VARS),
            "Y": _linear([g[0][1], g[1][1]], ("X", "Y"), GL2_VARS)}
    return substitute(p, bind, GL2_VARS).scale(d ** n.n2)


def embed_gl2(g):
    """The block embedding g -> diag(g, 1) of GL(2) into GL(3)."""
    g = linalg.to_matrix(g)
    z = as_gaussian(0)
    one = as_gaussian(1)
    return [[g[0][0], g[0][1], z], [g[1][0], g[1][1], z], [z, z, one]]


_NABLA_BIND = None


def _nabla_bindings():
    global _NABLA_BIND
    if _NABLA_BIND is None:
        X, Y = GL2_VARS.gens()
        _NABLA_BIND = {"Z": 0, "C": 0, "A": -Y, "B": X}
    return _NABLA_BIND


def nabla_kl(k: int, l: int, p, weight: WeightGL3 | None = None) -> MultiPoly:
    """(1/(k! l!)) d^{k+l} P / dZ^k dC^l evaluated at (X, Y, 0; -Y, X, 0)."""
    p = _as_element(p, weight)
    w = p.weight
    if not (0 <= k <= w.w1p and 0 <= l <= w.w1m):
        raise ValueError(f"(k, l) = ({k}, {l}) out of range for weight {w}")
    q = partial_derivative(partial_derivative(p.poly, "Z", k), "C", l)
    q = substitute(q, _nabla_bindings(), GL2_VARS)
    return q.scale(GaussianRational(1, 0) / (factorial(k) * factorial(l)))


def xi2_set(w: WeightGL3) -> list:
    """GL(2) weights n with w2 <= n1+n2 <= w1p+w2 and w2-w1m <= n2 <= w2, ordered by (n1, n2)."""
    out = []
    for n2 in range(w.w2 - w.w1m, w.w2 + 1):
        for s in range(w.w2, w.w1p + w.w2 + 1):
            n1 = s - n2
            if n1 >= 0:
                out.append(WeightGL2(n1, n2))
    return sorted(out, key=lambda n: (n.n1, n.n2))


def kl_index(n: WeightGL2, w: WeightGL3):
    """The (k, l) with nabla^n = nabla_{k,l}."""
    return (w.w1p + w.w2 - n.n1 - n.n2, w.w1m - w.w2 + n.n2)


def nabla_n(n: WeightGL2, p, weight: WeightGL3 | None = None) -> MultiPoly:
    """nabla^n = nabla_{w1p+w2-n1-n2, w1m-w2+n2}, defined for n in xi2_set(w)."""
    p = _as_element(p, weight)
    w = p.weight
    if n not in set(xi2_set(w)):
        raise ValueError(f"{n} is not in the branching set of {w}")
    k, l = kl_index(n, w)
    return nabla_kl(k, l, p)


def poly_coordinates(p: MultiPoly, basis) -> list:
    """Coefficient vector of p on a list of exponent tuples."""
    return [p.coefficient(e) for e in basis]


def branching_matrix(w: WeightGL3):
    """Matrix of the joint map (nabla^n)_{n in xi2} on kernel_basis(w).

    Rows are indexed by (n, monomial X^a Y^{n1-a}); columns by the kernel
    basis. Its rank is dim_L3(w) exactly when the map is an isomorphism.
    """
    basis = kernel_basis(w)
    rows = []
    for n in xi2_set(w):
        mons = [(a, n.n1 - a) for a in range(n.n1, -1, -1)]
        imgs = [nabla_n(n, RepElementGL3(b, w)) for b in basis]
        for e in mons:
            rows.append([img.coefficient(e) for img in imgs])
    return rows


def branching_rank(w: WeightGL3) -> int:
    return linalg.rank(branching_matrix(w))


def random_element(w: WeightGL3, rng, span: int = 5) -> RepElementGL3:
    """A random integer combination of the kernel basis."""
    out = MultiPoly(GL3_VARS)
    for b in kernel_basis(w):
        c = rng.randint(-span, span)
        if c:
            out = out + b.scale(c)
    return RepElementGL3(out, w)


def random_gl2(rng, span: int = 4):
    """A random invertible 2x2 matrix with small rational entries."""
    from fractions import Fraction

    while True:
        g = [[Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(2)] for _ in range(2)]
        if g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0:
            return linalg.to_matrix(g)


def equivariance_defect(w: WeightGL3, g, p: RepElementGL3) -> list:
    """Check nabla^n(rho3(diag(g,1)) P) = rho2_n(g) nabla^n(P) for every n in xi2_set(w).

    Returns the list of n where the identity fails (empty on success). With
    w2 = 0 this is the relation det(g)^{-(w1m-l)} (nabla_{k,l} P)((X,Y) g).
    """
    moved = act_gl3(embed_gl2(g), p)
    bad = []
    for n in xi2_set(w):
        lhs = nabla_n(n, moved)
        rhs = act_gl2(g, nabla_n(n, p), n)
        if lhs != rhs:
            bad.append(n)
    return bad


def central_character_ok(w: WeightGL3, x) -> bool:
    """x*1_3 scales every basis vector of L3(w) by x^{w1p-w1m+3w2}."""
    x = as_gaussian(x)
    g = [[x, ZERO, ZERO], [ZERO, x, ZERO], [ZERO, ZERO, x]]
    f = x ** w.central_exponent()
    return all(act_gl3(g, RepElementGL3(b, w)).poly == b.scale(f) for b in kernel_basis(w))
