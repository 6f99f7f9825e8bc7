"""Coordinates on the GL(3) symmetric space and the pullback of the omega-forms.

Numeric parts use numpy in double precision. Everything that is a rational
function is checked exactly with :class:`RationalFunction` over Q(i).

Wedge bases are lexicographic in the order dy1 < dy2 < dx1 < dx2 < dx3,
which is not the tuple order (y1, y2, x1, x2, x3) of the coordinate map
but agrees with it here, since both list y1, y2 first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .escoh import LIE_NORMALIZATION, P_MATRIX
from .forms import WedgeForm, compound_matrix
from .poly import MultiPoly, RationalFunction, VariableSet, parse_poly, partial_derivative
from .scalar import I

__all__ = [
    "IwasawaCoords",
    "iwasawa_gl3",
    "iwasawa_residual",
    "F_matrix",
    "DF_MATRIX",
    "DF_SIGN_NORMALIZATION",
    "dF_numeric",
    "dF_matrix_check",
    "coordinate_derivative",
    "COORD_VARS",
    "COORD_LABELS",
    "left_jacobian",
    "left_jacobian_numeric_check",
    "left_jacobian_symbolic_check",
    "PULLBACK_MATRIX",
    "pullback_matrix_derived",
    "q_matrix",
    "q_matrix_derived",
    "q_matrix_verify",
    "IOTA_VARS",
    "IOTA_LABELS",
    "iota_pullback_forms",
    "iota_identities",
]


# --- Iwasawa decomposition ----------------------------------------------------

@dataclass(frozen=True)
class IwasawaCoords:
    y1: float
    y2: float
    x1: float
    x2: float
    x3: float
    scale: float

    def as_tuple(self):
        return (self.y1, self.y2, self.x1, self.x2, self.x3)


def F_matrix(y1, y2, x1, x2, x3) -> np.ndarray:
    return np.array([[y1 * y2, y1 * x2, x3], [0.0, y1, x1], [0.0, 0.0, 1.0]])


def iwasawa_gl3(g, tol: float = 1e-12) -> IwasawaCoords:
    """Closed-form coordinates with g = F(coords) * scale * k, k orthogonal, scale > 0."""
    m = np.asarray(g, dtype=float)
    if m.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    if abs(np.linalg.det(m)) <= tol:
        raise ValueError("matrix is singular to within tolerance")
    (a, b, c), (d, e, f), (gg, h, i) = m
    r = gg * gg + h * h + i * i
    x1 = (d * gg + e * h + f * i) / r
    x3 = (a * gg + b * h + c * i) / r
    rad1 = (d * d + e * e + f * f) / r - x1 * x1
    if rad1 <= 0:
        raise ValueError("negative radicand for y1; tolerance too loose")
    y1 = math.sqrt(rad1)
    x2 = ((a * d + b * e + c * f) / r - x1 * x3) / (y1 * y1)
    rad2 = (a * a + b * b + c * c) / r - x3 * x3 - x2 * x2 * y1 * y1
    if rad2 <= 0:
        raise ValueError("negative radicand for y2; tolerance too loose")
    y2 = math.sqrt(rad2) / y1
    return IwasawaCoords(float(y1), float(y2), float(x1), float(x2), float(x3), math.sqrt(r))


def iwasawa_residual(g, coords: IwasawaCoords | None = None):
    """(relative reconstruction error, orthogonality defect of k)."""
    m = np.asarray(g, dtype=float)
    coords = coords or iwasawa_gl3(m)
    fs = F_matrix(*coords.as_tuple()) * coords.scale
    k = np.linalg.solve(fs, m)
    rec = np.linalg.norm(fs @ k - m) / np.linalg.norm(m)
    orth = np.linalg.norm(k.T @ k - np.eye(3))
    return float(rec), float(orth)


# --- the differential of F at the identity ----------------------------------

DF_MATRIX = linalg.to_matrix([
    [1, 0, 1, 0, 1],
    [-2, 0, 0, 0, -2],
    [0, I, 0, I, 0],
    [-2 * I, 0, 0, 0, 2 * I],
    [0, 1, 0, -1, 0],
])
# finite differences on the normalized basis give DF_MATRIX * diag(...) below
DF_SIGN_NORMALIZATION = (-1, 1, -1, 1, -1)

_REAL_DIRS = {
    "A1": np.diag([1.0, -1.0, 0.0]),
    "A2": np.diag([1.0, 1.0, -2.0]),
    "N1": np.array([[0.0, 1, 0], [1, 0, 0], [0, 0, 0]]),
    "N2": np.array([[0.0, 0, 1], [0, 0, 0], [1, 0, 0]]),
    "N3": np.array([[0.0, 0, 0], [0, 0, 1], [0, 1, 0]]),
}
# X_2, X_1, X_0, X_-1, X_-2 as complex combinations of the real directions
_X_COMBOS = [
    {"A1": 1, "N1": 1j},
    {"N2": 1, "N3": 1j},
    {"A2": 1},
    {"N2": 1, "N3": -1j},
    {"A1": 1, "N1": -1j},
]


def coordinate_derivative(direction, h: float = 1e-5) -> np.ndarray:
    """Central difference of (y1, y2, x1, x2, x3) along 1 + t*direction at t = 0."""
    d = np.asarray(direction, dtype=float)
    one = np.eye(3)
    plus = np.array(iwasawa_gl3(one + h * d).as_tuple())
    minus = np.array(iwasawa_gl3(one - h * d).as_tuple())
    return (plus - minus) / (2 * h)


def dF_numeric(h: float = 1e-5, normalized: bool = True) -> np.ndarray:
    """Columns: coordinate responses to X_2, ..., X_-2 (normalized basis by default)."""
    resp = {k: coordinate_derivative(v, h) for k, v in _REAL_DIRS.items()}
    cols = []
    for j, combo in enumerate(_X_COMBOS):
        col = sum(c * resp[k] for k, c in combo.items())
        if normalized:
            col = col / LIE_NORMALIZATION[j]
        cols.append(col)
    return np.array(cols).T


def _to_complex(m) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in m])


def dF_matrix_check(h: float = 1e-5) -> float:
    """Max deviation of the finite-difference dF from DF_MATRIX * diag(DF_SIGN_NORMALIZATION)."""
    if not 1e-8 <= h <= 1e-3:
        raise ValueError("step size must lie in [1e-8, 1e-3]")
    expected = _to_complex(DF_MATRIX) * np.array(DF_SIGN_NORMALIZATION)
    return float(np.max(np.abs(dF_numeric(h) - expected)))


# --- exact rational-function matrices -----------------------------------------

COORD_VARS = VariableSet(["y1", "y2", "x2"])
COORD_LABELS = ("dy1", "dy2", "dx1", "dx2", "dx3")


def _rf(num: str, den: str = "1", vars: VariableSet = COORD_VARS) -> RationalFunction:
    return RationalFunction(parse_poly(num, vars), parse_poly(den, vars))


_Z = "0"


def _rf_matrix(rows, vars=COORD_VARS):
    out = []
    for row in rows:
        out.append([_rf(*e, vars=vars) if isinstance(e, tuple) else _rf(e, vars=vars) for e in row])
    return out


def left_jacobian() -> list:
    """The 5x5 matrix expressing (dy1, ..., dx3) at g through the same forms at 1."""
    return _rf_matrix([
        [("1", "y1"), _Z, _Z, _Z, _Z],
        [_Z, ("1", "y2"), _Z, _Z, _Z],
        [_Z, _Z, ("1", "y1"), _Z, ("-x2", "y1*y2")],
        [_Z, _Z, _Z, ("1", "y2"), _Z],
        [_Z, _Z, _Z, _Z, ("1", "y1*y2")],
    ])


def _coords_of_upper(m):
    """(y1, y2, x1, x2, x3) of an upper triangular matrix with m[2][2] = 1."""
    y1 = m[1][1]
    return [y1, m[0][0] / y1, m[1][2], m[0][1] / y1, m[0][2]]


def _translated_coords_numeric(base, c):
    f0 = F_matrix(*base)
    return np.array(_coords_of_upper(np.linalg.solve(f0, F_matrix(*c))))


def left_jacobian_numeric_check(point=(1.0, 2.0, 0.0, 3.0, 0.0), h: float = 1e-5) -> float:
    """Finite differences of c(F(p)^-1 F(c)) at c = p against the transpose of left_jacobian."""
    point = np.asarray(point, dtype=float)
    jac = np.zeros((5, 5))
    for i in range(5):
        step = np.zeros(5)
        step[i] = h
        jac[:, i] = (_translated_coords_numeric(point, point + step)
                     - _translated_coords_numeric(point, point - step)) / (2 * h)
    vals = {"y1": point[0], "y2": point[1], "x2": point[3]}
    expected = np.array([[e.evaluate(vals) for e in row] for row in left_jacobian()]).T
    return float(np.max(np.abs(jac - expected)))


_JAC_VARS = VariableSet(["y1", "y2", "x1", "x2", "x3", "Y1", "Y2", "X1", "X2", "X3"])


def _rf_derivative(f: RationalFunction, var: str) -> RationalFunction:
    dn = partial_derivative(f.num, var)
    dd = partial_derivative(f.den, var)
    return RationalFunction(dn * f.den - f.num * dd, f.den * f.den)


def _upper(vals):
    y1, y2, x1, x2, x3 = vals
    one = RationalFunction(MultiPoly.constant(_JAC_VARS, 1))
    zero = RationalFunction(MultiPoly(_JAC_VARS))
    return [[y1 * y2, y1 * x2, x3], [zero, y1, x1], [zero, zero, one]]


def _upper_inverse(m):
    a, b, c = m[0]
    d, e = m[1][1], m[1][2]
    zero, one = m[1][0], m[2][2]
    return [[one / a, -b / (a * d), (b * e - c * d) / (a * d)], [zero, one / d, -e / d], [zero, zero, one]]


def _mat_mul_generic(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = a[i][0] * b[0][j]
            for t in range(1, k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def left_jacobian_symbolic_check() -> bool:
    """Exact derivative of c(F(c)^-1 F(c')) in c' at c' = c equals the transpose of left_jacobian."""
    gens = {n: RationalFunction(MultiPoly.variable(_JAC_VARS, n)) for n in _JAC_VARS.names}
    lower = [gens[n] for n in ("y1", "y2", "x1", "x2", "x3")]
    upper = [gens[n] for n in ("Y1", "Y2", "X1", "X2", "X3")]
    moved = _coords_of_upper(_mat_mul_generic(_upper_inverse(_upper(lower)), _upper(upper)))
    back = {u: MultiPoly.variable(_JAC_VARS, l) for u, l in zip(("Y1", "Y2", "X1", "X2", "X3"), ("y1", "y2", "x1", "x2", "x3"))}
    jac = left_jacobian()
    for k in range(5):
        for i, name in enumerate(("Y1", "Y2", "X1", "X2", "X3")):
            got = _rf_derivative(moved[k], name).substitute(back, _JAC_VARS)
            if got != jac[i][k].embed(_JAC_VARS):
                return False
    return True


PULLBACK_MATRIX = _rf_matrix([
    [_Z, _Z, ("1", "y1"), _Z, _Z],
    [("-1", "4*y2"), _Z, ("1", "2*y2"), _Z, ("-1", "4*y2")],
    [_Z, ("-(x2 + i*y2)", "2*y1*y2"), _Z, ("x2 - i*y2", "2*y1*y2"), _Z],
    [("i", "4*y2"), _Z, _Z, _Z, ("-i", "4*y2")],
    [_Z, ("1", "2*y1*y2"), _Z, ("-1", "2*y1*y2"), _Z],
])


def pullback_matrix_derived() -> list:
    """left_jacobian() times the transpose inverse of DF_MATRIX."""
    w = linalg.transpose(linalg.inverse(DF_MATRIX))
    return _mat_mul_generic(left_jacobian(), [[RationalFunction(MultiPoly.constant(COORD_VARS, x)) for x in row] for row in w])


def _det_generic(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        t = m[0][j] * _det_generic(minor)
        if j % 2:
            t = -t
        total = t if total is None else total + t
    return total if total is not None else RationalFunction(MultiPoly(m[0][0].vars))


_Q2 = [
    [_Z, ("1", "2*y1*y2"), _Z, _Z, _Z, ("-1", "2*y1*y2"), _Z],
    [_Z, _Z, ("x2 + i*y2", "2*y1^2*y2"), _Z, ("x2 - i*y2", "2*y1^2*y2"), _Z, _Z],
    [_Z, ("-i", "2*y1*y2"), _Z, _Z, _Z, ("-i", "2*y1*y2"), _Z],
    [_Z, _Z, ("-1", "2*y1^2*y2"), _Z, ("-1", "2*y1^2*y2"), _Z, _Z],
    [("x2 + i*y2", "8*y1*y2^2"), _Z, ("-(x2 - 5*i*y2)", "8*y1*y2^2"), _Z,
     ("-(x2 + 5*i*y2)", "8*y1*y2^2"), _Z, ("x2 - i*y2", "8*y1*y2^2")],
    [_Z, ("-i", "4*y2^2"), _Z, ("i", "2*y2^2"), _Z, ("-i", "4*y2^2"), _Z],
    [("-1", "8*y1*y2^2"), _Z, ("1", "8*y1*y2^2"), _Z, ("1", "8*y1*y2^2"), _Z, ("-1", "8*y1*y2^2")],
    [("i*x2 - y2", "8*y1*y2^2"), _Z, ("-3*(i*x2 + y2)", "8*y1*y2^2"), _Z,
     ("3*(i*x2 - y2)", "8*y1*y2^2"), _Z, ("-(i*x2 + y2)", "8*y1*y2^2")],
    [_Z, _Z, _Z, ("i", "y1^2*y2"), _Z, _Z, _Z],
    [("i", "8*y1*y2^2"), _Z, ("-3*i", "8*y1*y2^2"), _Z, ("3*i", "8*y1*y2^2"), _Z, ("-i", "8*y1*y2^2")],
]

_Q3 = [
    [("x2 + i*y2", "24*y1^2*y2^2"), _Z, ("x2 - i*y2", "8*y1^2*y2^2"), _Z,
     ("x2 + i*y2", "8*y1^2*y2^2"), _Z, ("x2 - i*y2", "24*y1^2*y2^2")],
    [_Z, _Z, _Z, ("-i", "3*y1*y2^2"), _Z, _Z, _Z],
    [("-1", "24*y1^2*y2^2"), _Z, ("-1", "8*y1^2*y2^2"), _Z, ("-1", "8*y1^2*y2^2"), _Z, ("-1", "24*y1^2*y2^2")],
    [("i*x2 - y2", "24*y1^2*y2^2"), _Z, ("i*x2 + y2", "8*y1^2*y2^2"), _Z,
     ("-(i*x2 - y2)", "8*y1^2*y2^2"), _Z, ("-(i*x2 + y2)", "24*y1^2*y2^2")],
    [_Z, _Z, _Z, ("-i", "6*y1^3*y2"), _Z, _Z, _Z],
    [("i", "24*y1^2*y2^2"), _Z, ("i", "8*y1^2*y2^2"), _Z, ("-i", "8*y1^2*y2^2"), _Z, ("-i", "24*y1^2*y2^2")],
    [("i*x2 - y2", "48*y1*y2^3"), _Z, ("-(i*x2 - 3*y2)", "16*y1*y2^3"), _Z,
     ("i*x2 + 3*y2", "16*y1*y2^3"), _Z, ("-(i*x2 + y2)", "48*y1*y2^3")],
    [_Z, ("-i", "8*y1^2*y2^2"), _Z, ("-i", "12*y1^2*y2^2"), _Z, ("-i", "8*y1^2*y2^2"), _Z],
    [("i", "48*y1*y2^3"), _Z, ("-i", "16*y1*y2^3"), _Z, ("i", "16*y1*y2^3"), _Z, ("-i", "48*y1*y2^3")],
    [_Z, ("1", "8*y1^2*y2^2"), _Z, _Z, _Z, ("-1", "8*y1^2*y2^2"), _Z],
]

_Q_CACHE: dict = {}


def q_matrix(i: int) -> list:
    """The 10x7 matrix with (omega_3, ..., omega_-3) = (coordinate i-forms) Q^i."""
    if i not in (2, 3):
        raise ValueError("i must be 2 or 3")
    if i not in _Q_CACHE:
        _Q_CACHE[i] = _rf_matrix(_Q2 if i == 2 else _Q3)
    return _Q_CACHE[i]


def q_matrix_derived(i: int) -> list:
    """i-th compound of the pullback matrix times P^i."""
    if i not in (2, 3):
        raise ValueError("i must be 2 or 3")
    comp = compound_matrix(pullback_matrix_derived(), i, _det_generic)
    p = [[RationalFunction(MultiPoly.constant(COORD_VARS, x)) for x in row] for row in P_MATRIX[i]]
    return _mat_mul_generic(comp, p)


def _matrices_equal(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def q_matrix_verify(i: int) -> bool:
    """Exact entrywise agreement of the derived and the hardcoded Q^i (and of the pullback matrix)."""
    return _matrices_equal(pullback_matrix_derived(), PULLBACK_MATRIX) and _matrices_equal(q_matrix_derived(i), q_matrix(i))


# --- pullback along the GL(2) embedding ----------------------------------------

IOTA_VARS = VariableSet(["y1", "u", "x2"])
IOTA_LABELS = ("dy1", "dy2", "dx2")


def _iv(num: str, den: str = "1") -> RationalFunction:
    return _rf(num, den, IOTA_VARS)


def _one_form(*coeffs) -> WedgeForm:
    return WedgeForm(IOTA_LABELS, 1, {(k,): c for k, c in enumerate(coeffs)})


def _iota_images():
    """iota^* of (dy1, dy2, dx1, dx2, dx3), with y2 = u^2 on the GL(2) side."""
    zero = _iv("0")
    return [
        _one_form(_iv("1", "u"), _iv("-y1", "2*u^3"), zero),
        _one_form(zero, _iv("1"), zero),
        _one_form(zero, zero, zero),
        _one_form(zero, zero, _iv("1")),
        _one_form(zero, zero, zero),
    ]


def _iota_coefficient_map():
    return {"y1": _iv("y1", "u"), "y2": _iv("u^2"), "x2": _iv("x2")}


def iota_pullback_forms() -> dict:
    """iota^* omega_j (j = 3..-3) and their wedges with xi_-+, as exact forms in (y1, u, x2)."""
    q = q_matrix(2)
    sub = _iota_coefficient_map()
    images = _iota_images()
    omegas = {}
    for col, j in enumerate(range(3, -4, -1)):
        coeffs = [q[r][col].substitute(sub, IOTA_VARS) for r in range(10)]
        form = WedgeForm.from_vector(COORD_LABELS, 2, coeffs)
        omegas[j] = form.pullback(images)
    xi = {
        "-": _one_form(_iv("0"), _iv("i", "u^2"), _iv("-1", "u^2")),
        "+": _one_form(_iv("0"), _iv("i", "u^2"), _iv("1", "u^2")),
    }
    wedges = {(j, s): omegas[j].wedge(xi[s]) for j in omegas for s in "-+"}
    return {"omega": omegas, "xi": xi, "wedge": wedges}


def _form(degree, terms) -> WedgeForm:
    return WedgeForm(IOTA_LABELS, degree, {tuple(IOTA_LABELS.index(n) for n in k): v for k, v in terms.items()})


def _reference_forms():
    """The reference closed forms, including the dy2^dx2 term of omega_+-2."""
    zero2 = WedgeForm(IOTA_LABELS, 2)
    omega0 = _form(2, {("dy2", "dx2"): _iv("i", "2*u^4")})
    omega2 = {}
    omega2_corrected = {}
    for s in (1, -1):
        core = {("dy1", "dy2"): _iv(str(s), "2*y1*u^2"), ("dy1", "dx2"): _iv("-i", "2*y1*u^2")}
        omega2_corrected[s] = _form(2, core)
        omega2[s] = _form(2, {**core, ("dy2", "dx2"): _iv("-i", "4*u^4")})
    haar = _form(3, {("dy1", "dx2", "dy2"): _iv("1", "y1*u^4")})
    return zero2, omega0, omega2, omega2_corrected, haar


def _flip_u(form: WedgeForm) -> WedgeForm:
    neg = {"u": -MultiPoly.variable(IOTA_VARS, "u")}
    return WedgeForm(form.labels, form.degree, {k: c.substitute(neg, IOTA_VARS) for k, c in form.terms.items()})


def iota_identities() -> dict:
    """Exact truth values of the reference pullback identities.

    ``omega_pm2`` compares with the reference form as stated. ``omega_pm2_corrected``
    drops its dy2^dx2 term, which cancels once the dy2-part of iota^* dy1 is
    kept. ``u_sign_invariant`` checks that u -> -u fixes every output.
    """
    data = iota_pullback_forms()
    om, wedges = data["omega"], data["wedge"]
    zero2, omega0, omega2, omega2_corrected, haar = _reference_forms()
    zero3 = WedgeForm(IOTA_LABELS, 3)
    res = {
        "omega_pm3_pm1_zero": all(om[j] == zero2 for j in (3, 1, -1, -3)),
        "omega_0": om[0] == omega0,
        "omega_pm2": om[2] == omega2[1] and om[-2] == omega2[-1],
        "omega_pm2_corrected": om[2] == omega2_corrected[1] and om[-2] == omega2_corrected[-1],
        "omega_pm2_wedge_xi": (
            wedges[(2, "-")] == haar and wedges[(-2, "+")] == haar
            and all(wedges[(j, "-")] == zero3 for j in om if j != 2)
            and all(wedges[(j, "+")] == zero3 for j in om if j != -2)
        ),
    }
    outs = list(om.values()) + list(wedges.values())
    res["u_sign_invariant"] = all(_flip_u(f) == f for f in outs)
    return res
