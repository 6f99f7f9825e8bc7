"""Eichler-Shimura algebra: Lie bases, wedge actions, omega-forms and the matrix script-P.

The raw basis X_2, ..., X_-2 of p_3 is not the one on which Ad(u)
acts by exactly M_(2,0)(u); conjugation in that basis is
D^-1 M_(2,0)(u) D with D = diag(1, 2, -3, -2, 1). The normalized basis
X_j / d_j is the one for which the adjoint action, the block structure of
the wedge matrices and the omega-equivariance hold on the nose, so it is
the default everywhere below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from . import linalg
from .forms import WedgeForm, compound_matrix
from .glrep import GL2_VARS, GL3_VARS, RepElementGL3, WeightGL2, WeightGL3, xi2_set
from .orthrep import Z_VARS, OrthWeight3, _basis_change, _v_poly, is_orthogonal, matrix_M, reduced_monomials
from .poly import MultiPoly, VariableSet, expand_power
from .scalar import ONE, ZERO, GaussianRational, I, power_of_i

__all__ = [
    "LIE_E",
    "LIE_H",
    "LIE_X_RAW",
    "LIE_X",
    "LIE_NORMALIZATION",
    "DX_LABELS",
    "ad_gl2",
    "ad_gl3",
    "wedge_ad",
    "P_TILDE",
    "P_MATRIX",
    "p_tilde_block_check",
    "p_from_p_tilde",
    "omega_basis",
    "omega_equivariance_check",
    "ScriptP",
    "build_script_P",
    "script_P_equivariance_check",
    "in_dyadic_gaussian_ring",
    "trinomial",
    "closed_form_P_entry",
    "closed_form_nabla_P",
    "pairing_n",
    "CupConstants",
    "cup_constants",
]

R = Fraction


def _m(rows):
    return linalg.to_matrix(rows)


# --- Lie bases -------------------------------------------------------------

LIE_H = _m([[R(1, 2), 0], [0, R(-1, 2)]])
LIE_E = _m([[0, R(1, 2)], [R(1, 2), 0]])

_A1 = _m([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
_A2 = _m([[1, 0, 0], [0, 1, 0], [0, 0, -2]])
_N1 = _m([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
_N2 = _m([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
_N3 = _m([[0, 0, 0], [0, 0, 1], [0, 1, 0]])


def _lin(a, x, b, y):
    return linalg.add(linalg.scale(x, a), linalg.scale(y, b))


LIE_X_RAW = (
    _lin(1, _A1, I, _N1),
    _lin(1, _N2, I, _N3),
    _A2,
    _lin(1, _N2, -I, _N3),
    _lin(1, _A1, -I, _N1),
)
LIE_NORMALIZATION = (1, 2, -3, -2, 1)
LIE_X = tuple(linalg.scale(x, R(1, d)) for x, d in zip(LIE_X_RAW, LIE_NORMALIZATION))

DX_LABELS = ("dX2", "dX1", "dX0", "dX-1", "dX-2")


def _coords_in(basis, m):
    """Coordinates of a matrix m in a list of linearly independent matrices."""
    n = len(m)
    cols = [[x[i][j] for i in range(n) for j in range(n)] for x in basis]
    a = linalg.transpose(cols)
    rhs = [[m[i][j]] for i in range(n) for j in range(n)]
    # least squares is exact here: solve the normal equations
    at = linalg.transpose(a)
    sol = linalg.solve(linalg.matmul(at, a), linalg.matmul(at, rhs))
    if not linalg.equal(linalg.matmul(a, sol), rhs):
        raise ValueError("matrix is not in the span of the basis")
    return [r[0] for r in sol]


def _check_so(u, n):
    u = linalg.to_matrix(u)
    if len(u) != n or not is_orthogonal(u):
        raise ValueError("matrix is not orthogonal")
    if linalg.det(u) != ONE:
        raise ValueError("matrix is not in the special orthogonal group")
    return u


def _adjoint(basis, u):
    uinv = linalg.transpose(u)
    cols = [_coords_in(basis, linalg.matmul(linalg.matmul(u, x), uinv)) for x in basis]
    return linalg.transpose(cols)


def ad_gl2(u) -> list:
    """Matrix of Ad(u) on the basis (E, H); equals u^-2."""
    return _adjoint([LIE_E, LIE_H], _check_so(u, 2))


def ad_gl3(u, normalized: bool = True) -> list:
    """Matrix of Ad(u) = u X u^-1 on (X_2, ..., X_-2).

    With ``normalized`` (the default) the basis is X_j / d_j and the result
    is M_(2,0)(u); on the raw basis it is D^-1 M_(2,0)(u) D.
    """
    return _adjoint(LIE_X if normalized else LIE_X_RAW, _check_so(u, 3))


def wedge_ad(i: int, u) -> list:
    """The 10x10 matrix of the i-th exterior power of Ad(u) on lexicographic wedges."""
    if i not in (2, 3):
        raise ValueError("i must be 2 or 3")
    return compound_matrix(ad_gl3(u), i, linalg.det)


# --- wedge-basis change matrices ------------------------------------------

P_TILDE = {
    2: _m([
        [0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, R(1, 2), 0, 0, 0, 0, 0],
        [R(-1, 5), 0, 0, 0, 0, R(1, 5), 0, 0, 0, 0],
        [0, R(-1, 10), 0, 0, 0, 0, R(1, 20), 0, 0, 0],
        [R(3, 5), 0, 0, 0, 0, R(2, 5), 0, 0, 0, 0],
        [0, R(1, 5), 0, 0, 0, 0, R(2, 5), 0, 0, 0],
        [0, 0, R(-1, 5), 0, 0, 0, 0, R(1, 5), 0, 0],
        [0, 0, R(3, 5), 0, 0, 0, 0, R(2, 5), 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, R(1, 2), 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    ]),
    3: _m([
        [0, 0, 0, 3, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, R(1, 5), 0, 0, 0, 0],
        [-2, 0, 0, 0, 0, R(3, 5), 0, 0, 0, 0],
        [0, R(1, 2), 0, 0, 0, 0, R(3, 10), 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, R(1, 5), 0, 0],
        [0, -4, 0, 0, 0, 0, R(3, 5), 0, 0, 0],
        [0, 0, -2, 0, 0, 0, 0, R(3, 5), 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 3],
    ]),
}


def _sparse(rows, cols, entries):
    m = [[0] * cols for _ in range(rows)]
    for r, c, v in entries:
        m[r][c] = v
    return _m(m)


P_MATRIX = {
    2: _sparse(10, 7, [(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 4), (4, 2, 1), (5, 3, 2),
                       (6, 4, 3), (7, 4, 1), (8, 5, 2), (9, 6, 1)]),
    3: _sparse(10, 7, [(0, 0, R(1, 3)), (1, 1, 1), (2, 2, 2), (3, 2, 1), (4, 3, R(8, 3)), (5, 4, 2),
                       (6, 3, R(1, 3)), (7, 4, 1), (8, 5, 1), (9, 6, R(1, 3))]),
}


def _check_i(i):
    if i not in (2, 3):
        raise ValueError("i must be 2 or 3")


def p_tilde_block_check(i: int, u) -> bool:
    """P~^-1 (wedge^i Ad(u)) P~ == blockdiag(M_(1,0)(u), M_(3,0)(u))."""
    _check_i(i)
    u = _check_so(u, 3)
    pt = P_TILDE[i]
    lhs = linalg.matmul(linalg.matmul(linalg.inverse(pt), wedge_ad(i, u)), pt)
    return linalg.equal(lhs, linalg.block_diag(matrix_M(1, u), matrix_M(3, u)))


def p_from_p_tilde(i: int) -> list:
    """The transpose inverse of P~^i with its first three columns removed."""
    _check_i(i)
    m = linalg.transpose(linalg.inverse(P_TILDE[i]))
    return [row[3:] for row in m]


def omega_basis(i: int) -> list:
    """(omega_3, ..., omega_-3) = (lexicographic dX-wedges) P^i."""
    _check_i(i)
    p = P_MATRIX[i]
    return [WedgeForm.from_vector(DX_LABELS, i, [row[c] for row in p]) for c in range(7)]


def omega_equivariance_check(i: int, u) -> bool:
    """Ad*(u) on the omegas equals right multiplication by tM_(3,0)(u)^-1.

    The contragredient acts on coefficient vectors by the transpose inverse
    of the wedge matrix.
    """
    _check_i(i)
    u = _check_so(u, 3)
    dual = linalg.transpose(linalg.inverse(wedge_ad(i, u)))
    p = P_MATRIX[i]
    rhs = linalg.matmul(p, linalg.transpose(linalg.inverse(matrix_M(3, u))))
    return linalg.equal(linalg.matmul(dual, p), rhs)


# --- the matrix script-P ---------------------------------------------------

_ALL = VariableSet(list(GL3_VARS.names) + list(Z_VARS.names))


@dataclass(frozen=True)
class ScriptP:
    lambda3: int
    delta: int
    rows: tuple  # rows[a][b] is a RepElementGL3; a runs over lambda3..-lambda3, b over 3..-3

    @property
    def w(self) -> int:
        return (self.lambda3 - 3) // 2

    @property
    def weight(self) -> WeightGL3:
        return WeightGL3(self.w, self.w, self.w)

    def entry(self, alpha: int, beta: int) -> RepElementGL3:
        if abs(alpha) > self.lambda3 or abs(beta) > 3:
            raise IndexError(f"({alpha}, {beta}) out of range")
        return self.rows[self.lambda3 - alpha][3 - beta]

    def polys(self) -> list:
        return [[e.poly for e in row] for row in self.rows]


def _check_lambda3(lambda3):
    if lambda3 < 3 or lambda3 % 2 == 0:
        raise ValueError(f"lambda3 must be odd and at least 3, got {lambda3}")


def _reduce_split(parts: dict, lam: int) -> dict:
    """Reduce z3^2 -> -z1^2 - z2^2 on a map z-exponent -> coefficient polynomial."""
    out: dict = {}
    for (a, b, c), coef in parts.items():
        q, r = divmod(c, 2)
        for t in range(q + 1):
            f = comb(q, t) * (-1) ** q
            key = (a + 2 * t, b + 2 * (q - t), r)
            term = coef.scale(f)
            out[key] = out[key] + term if key in out else term
    return out


@lru_cache(maxsize=None)
def _script_P(lambda3: int, delta: int) -> ScriptP:
    w = (lambda3 - 3) // 2
    X, Y, Z, A, B, C, z1, z2, z3 = _ALL.gens()
    lin = expand_power(X * z1 + Y * z2 + Z * z3, w) * expand_power(A * z1 + B * z2 + C * z3, w)
    _, binv = _basis_change(lambda3)
    mons = reduced_monomials(lambda3)
    weight = WeightGL3(w, w, w)
    zero = MultiPoly(GL3_VARS)
    cols = []
    for beta in range(3, -4, -1):
        full = lin * _v_poly(3, beta).embed(_ALL)
        red = _reduce_split(full.split(Z_VARS.names), lambda3)
        vec = [red.get(e, zero) for e in mons]
        col = []
        for row in binv:
            acc = zero
            for c, p in zip(row, vec):
                if c and not p.is_zero():
                    acc = acc + p.scale(c)
            col.append(RepElementGL3(acc.embed(GL3_VARS), weight))
        cols.append(col)
    rows = tuple(tuple(cols[b][a] for b in range(7)) for a in range(2 * lambda3 + 1))
    return ScriptP(lambda3, delta, rows)


def build_script_P(lambda3: int, delta: int = 0) -> ScriptP:
    """The matrix with L^w L'^w (v_3, ..., v_-3) = (v_lam, ..., v_-lam) P.

    Here L = X z1 + Y z2 + Z z3, L' = A z1 + B z2 + C z3 and w = (lambda3 - 3)/2.
    The polynomial entries do not depend on delta.
    """
    _check_lambda3(lambda3)
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    return _script_P(lambda3, delta)


def script_P_equivariance_check(sp: ScriptP, u) -> bool:
    """rho(u) P == M_lam(u)^-1 P M_(3,0)(u) entrywise, for u in SO(3)."""
    from .glrep import act_gl3

    u = _check_so(u, 3)
    lam = OrthWeight3(sp.lambda3, sp.delta)
    left = linalg.inverse(matrix_M(lam, u))
    right = matrix_M(OrthWeight3(3, sp.delta), u)
    moved = [[act_gl3(u, e).poly for e in row] for row in sp.rows]
    base = sp.polys()
    zero = MultiPoly(GL3_VARS)
    # M^-1 P first, then times M3
    mid = []
    for r in range(len(base)):
        row = []
        for c in range(7):
            acc = zero
            for k in range(len(base)):
                if left[r][k]:
                    acc = acc + base[k][c].scale(left[r][k])
            row.append(acc)
        mid.append(row)
    for r in range(len(base)):
        for c in range(7):
            acc = zero
            for k in range(7):
                if right[k][c]:
                    acc = acc + mid[r][k].scale(right[k][c])
            if acc != moved[r][c]:
                return False
    return True


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def in_dyadic_gaussian_ring(sp: ScriptP) -> bool:
    """Every coefficient of every entry lies in Z[1/2, i]."""
    for row in sp.rows:
        for e in row:
            for c in e.poly.terms.values():
                if not _is_power_of_two(c.re.denominator * c.im.denominator):
                    return False
    return True


# --- closed forms ------------------------------------------------------------

def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def trinomial(e: int, i: int, j: int, k: int) -> int:
    """Coefficient of X^i Y^j Z^k in (X + Y + Z)^e."""
    if min(i, j, k) < 0 or i + j + k != e:
        return 0
    return factorial(e) // (factorial(i) * factorial(j) * factorial(k))


def _laurent(minus, plus, norm, m: int, q: int) -> MultiPoly:
    """minus^m norm^q, reading minus^-1 = -plus / norm when m < 0."""
    if m >= 0:
        return expand_power(minus, m) * expand_power(norm, q)
    if q + m < 0:
        raise ValueError("negative total power in Laurent expansion")
    return expand_power(plus, -m).scale(_sign(m)) * expand_power(norm, q + m)


def closed_form_P_entry(lambda3: int, alpha: int, beta: int) -> RepElementGL3:
    """The double trinomial sum for the entry (alpha, beta) of script-P."""
    _check_lambda3(lambda3)
    if abs(alpha) > lambda3 or abs(beta) > 3:
        raise ValueError(f"({alpha}, {beta}) out of range")
    w = (lambda3 - 3) // 2
    X, Y, Z, A, B, C = GL3_VARS.gens()
    s1, t1, n1 = -X + Y.scale(I), X + Y.scale(I), X * X + Y * Y
    s2, t2, n2 = -A + B.scale(I), A + B.scale(I), A * A + B * B
    total = MultiPoly(GL3_VARS)
    quarter = GaussianRational(-1, 0) / 4
    for p in range(w + 1):
        for q in range(w + 1 - p):
            b = q - beta
            a = p - b
            c = w - p - q
            for s in range(w + 1):
                j = s + alpha
                r = j - a
                k = w + alpha + a - 2 * j
                h1 = trinomial(w, r, s, k)
                if not h1:
                    continue
                coef = quarter ** (j + b) * (h1 * trinomial(w, p, q, c))
                left = _laurent(s1, t1, n1, alpha - a, j - alpha) * expand_power(Z, k)
                right = _laurent(s2, t2, n2, a - beta, b + beta) * expand_power(C, c)
                total = total + (left * right).scale(coef)
    total = total.scale(GaussianRational(2, 0) ** (alpha - beta))
    return RepElementGL3(total, WeightGL3(w, w, w))


def closed_form_nabla_P(lambda3: int, n: WeightGL2, alpha: int, beta: int, single_term: bool = False) -> MultiPoly:
    """nabla^n of the entry (alpha, beta) of script-P as a closed form in S = -X+iY, T = X+iY.

    With ``single_term`` the collapsed form valid for alpha - beta = +-n1 is
    used instead of the general sum.
    """
    _check_lambda3(lambda3)
    if abs(alpha) > lambda3 or abs(beta) > 3:
        raise ValueError(f"({alpha}, {beta}) out of range")
    w = (lambda3 - 3) // 2
    if n not in set(xi2_set(WeightGL3(w, w, w))):
        raise ValueError(f"{n} is not in the branching set")
    X, Y = GL2_VARS.gens()
    S, T = -X + Y.scale(I), X + Y.scale(I)
    n1, n2 = n.n1, n.n2
    if single_term:
        if alpha - beta == -n1:
            tail = expand_power(T, n1).scale((-1) ** n2)
        elif alpha - beta == n1:
            tail = expand_power(S, n1).scale((-1) ** w)
        else:
            raise ValueError("the single-term form needs alpha - beta = +-n1")
        c = GaussianRational(-1, 0) / 2
        c = c ** n1 * power_of_i(n2 + w) * (comb(w, n1 + n2 - w) * comb(w, w - n2))
        return tail.scale(c)
    es, et = n1 + alpha - beta, n1 - alpha + beta
    total = 0
    if es % 2 == 0:
        h, g = (n1 + alpha + beta) // 2, (n1 - alpha - beta) // 2
        for b in range(-beta, w - n2 - beta + 1):
            total += _sign(b) * trinomial(w, b + h + n2 - w, -b + g, 2 * w - n1 - n2) \
                * trinomial(w, w - n2 - b - beta, b + beta, n2)
    if total == 0:
        return MultiPoly(GL2_VARS)
    if es < 0 or et < 0:
        raise ArithmeticError("nonzero sum with a negative exponent")
    c = GaussianRational(2, 0) ** (-n1) * _sign(w + alpha) * power_of_i(n2 + w) * total
    return (expand_power(S, es // 2) * expand_power(T, et // 2)).scale(c)


# --- pairing and cup-product constants --------------------------------------

def pairing_n(n: WeightGL2, p: MultiPoly, q: MultiPoly) -> GaussianRational:
    """[X^i Y^(n1-i), X^j Y^(n1-j)] = (-1)^i / binom(n1, i) when i + j = n1, else 0."""
    p, q = p.embed(GL2_VARS), q.embed(GL2_VARS)
    n1 = n.n1
    for f in (p, q):
        if not f.is_homogeneous(degree=n1):
            raise ValueError(f"expected a homogeneous polynomial of degree {n1}")
    out = ZERO
    for (i, _), c in p.terms.items():
        d = q.terms.get((n1 - i, i))
        if d is not None:
            out = out + c * d * GaussianRational(_sign(i), 0) / comb(n1, i)
    return out


@dataclass(frozen=True)
class CupConstants:
    C: int
    prefactor: GaussianRational
    sign_flip: int


def cup_constants(lambda3: int, delta: int, l2: int, m: int) -> CupConstants:
    """The binomial constant, i-power prefactor and h+/h- sign at a critical m."""
    from .lfactors import PiParams, critical_points

    l3 = lambda3 - 1
    pp = PiParams(l2, l3, delta)
    if m not in critical_points(pp):
        raise ValueError(f"m = {m} is not critical for (l2, l3) = ({l2}, {l3})")
    h = l3 // 2
    c = comb(h - 1, m - h - 1) * comb(h - 1, h + l2 - m)
    return CupConstants(c, power_of_i(h + 2 * l2 - m - 1), _sign(m + delta + h))
