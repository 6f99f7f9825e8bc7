"""Archimedean bookkeeping for GL(3) x GL(2): Weil parameters, Gamma and epsilon factors,
critical points, Hodge types and the scalar constants of the main formula.

Critical points are exposed at the motivic normalization s = m; the
automorphic L-function is evaluated at m - 3/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .scalar import GaussianRational, power_of_i

__all__ = [
    "Dim1",
    "Dim2",
    "WeilParameter",
    "GammaProduct",
    "PiParams",
    "tensor",
    "dual",
    "gamma_factor",
    "epsilon_exponent",
    "gamma_R",
    "gamma_C",
    "critical_points",
    "critical_points_by_poles",
    "hodge_types",
    "critical_by_hodge",
    "MainConstant",
    "main_constant",
    "assembly_identity",
    "AuxConstants",
    "aux_constants",
]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# --- Weil group parameters ----------------------------------------------------

@dataclass(frozen=True, order=True)
class Dim1:
    """The character phi^delta_nu."""

    nu: Fraction
    delta: int = 0

    def __post_init__(self):
        object.__setattr__(self, "nu", Fraction(self.nu))
        if self.delta not in (0, 1):
            raise ValueError("delta must be 0 or 1")


@dataclass(frozen=True, order=True)
class Dim2:
    """The induced representation phi_{nu, l}."""

    nu: Fraction
    l: int

    def __post_init__(self):
        object.__setattr__(self, "nu", Fraction(self.nu))
        if self.l < 0:
            raise ValueError("l must be nonnegative")


def _key(s):
    return (1 if isinstance(s, Dim2) else 0, s.nu, getattr(s, "l", getattr(s, "delta", 0)))


@dataclass(frozen=True)
class WeilParameter:
    summands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(sorted(self.summands, key=_key)))

    @classmethod
    def of(cls, *summands) -> "WeilParameter":
        return cls(tuple(summands))

    def __add__(self, other: "WeilParameter") -> "WeilParameter":
        return WeilParameter(self.summands + other.summands)

    def dim(self) -> int:
        return sum(2 if isinstance(s, Dim2) else 1 for s in self.summands)

    def __str__(self):
        parts = []
        for s in self.summands:
            if isinstance(s, Dim2):
                parts.append(f"phi({s.nu}, l={s.l})")
            else:
                parts.append(f"phi^{s.delta}({s.nu})")
        return " + ".join(parts) or "0"


def _tensor_summands(a, b):
    nu = a.nu + b.nu
    if isinstance(a, Dim1) and isinstance(b, Dim1):
        return [Dim1(nu, (a.delta + b.delta) % 2)]
    if isinstance(a, Dim1):
        return [Dim2(nu, b.l)]
    if isinstance(b, Dim1):
        return [Dim2(nu, a.l)]
    if a.l == b.l:
        raise ValueError("tensor of two 2-dimensional summands with equal l is not supported")
    return [Dim2(nu, a.l + b.l), Dim2(nu, abs(a.l - b.l))]


def tensor(p: WeilParameter, q: WeilParameter) -> WeilParameter:
    out = []
    for a in p.summands:
        for b in q.summands:
            out.extend(_tensor_summands(a, b))
    return WeilParameter(tuple(out))


def dual(p: WeilParameter) -> WeilParameter:
    return WeilParameter(tuple(
        Dim2(-s.nu, s.l) if isinstance(s, Dim2) else Dim1(-s.nu, s.delta) for s in p.summands
    ))


# --- Gamma products -----------------------------------------------------------

@dataclass(frozen=True)
class GammaProduct:
    """A product of Gamma_R(s + shift) and Gamma_C(s + shift), kept sorted."""

    factors: tuple = field(default=())

    def __post_init__(self):
        fs = tuple(sorted((k, Fraction(a)) for k, a in self.factors))
        for k, _ in fs:
            if k not in ("R", "C"):
                raise ValueError("factor kind must be 'R' or 'C'")
        object.__setattr__(self, "factors", fs)

    def __mul__(self, other: "GammaProduct") -> "GammaProduct":
        return GammaProduct(self.factors + other.factors)

    def shifted(self, c) -> "GammaProduct":
        """s -> s + c."""
        return GammaProduct(tuple((k, a + Fraction(c)) for k, a in self.factors))

    def has_pole(self, s) -> bool:
        s = Fraction(s)
        for k, a in self.factors:
            z = s + a
            if z <= 0 and z.denominator == 1 and (k == "C" or z.numerator % 2 == 0):
                return True
        return False

    def poles_in(self, lo, hi) -> set:
        """Integer and half-integer poles in [lo, hi] (only points s with 2s integral are scanned)."""
        out = set()
        k = math.ceil(2 * Fraction(lo))
        while Fraction(k, 2) <= Fraction(hi):
            if self.has_pole(Fraction(k, 2)):
                out.add(Fraction(k, 2))
            k += 1
        return out

    def evaluate(self, s: float) -> float:
        v = 1.0
        for k, a in self.factors:
            v *= gamma_R(s + float(a)) if k == "R" else gamma_C(s + float(a))
        return v

    def __str__(self):
        def arg(a):
            if a == 0:
                return "s"
            return f"s + {a}" if a > 0 else f"s - {-a}"
        return " * ".join(f"Gamma_{k}({arg(a)})" for k, a in self.factors) or "1"


def gamma_factor(p: WeilParameter) -> GammaProduct:
    out = []
    for s in p.summands:
        if isinstance(s, Dim2):
            out.append(("C", s.nu + Fraction(s.l, 2)))
        else:
            out.append(("R", s.nu + s.delta))
    return GammaProduct(tuple(out))


def epsilon_exponent(p: WeilParameter) -> int:
    """k with epsilon_infty = i^k, reduced mod 4."""
    return sum(s.l + 1 if isinstance(s, Dim2) else s.delta for s in p.summands) % 4


def gamma_R(s: float) -> float:
    return math.gamma(s / 2) / math.pi ** (s / 2)


def gamma_C(s: float) -> float:
    return 2 * (2 * math.pi) ** (-s) * math.gamma(s)


# --- the pair (pi3, pi2) ------------------------------------------------------

@dataclass(frozen=True)
class PiParams:
    l2: int
    l3: int
    delta: int = 0

    def __post_init__(self):
        if self.l2 < 1:
            raise ValueError("l2 must be at least 1")
        if self.l3 < 2 or self.l3 % 2:
            raise ValueError("l3 must be even and at least 2")
        if not self.l2 < self.l3:
            raise ValueError("need l2 < l3")
        if self.delta not in (0, 1):
            raise ValueError("delta must be 0 or 1")

    @property
    def nu2(self) -> Fraction:
        return Fraction(-self.l2, 2) + Fraction(1, 2)

    @property
    def nu3(self) -> Fraction:
        return Fraction(-self.l3, 2) + 1

    def pi2(self) -> WeilParameter:
        return WeilParameter.of(Dim2(self.nu2, self.l2))

    def pi3(self) -> WeilParameter:
        return WeilParameter.of(Dim2(self.nu3, self.l3), Dim1(self.nu3, self.delta))

    def pair(self) -> WeilParameter:
        return tensor(self.pi3(), self.pi2())


def critical_points(pp: PiParams) -> list:
    """Closed form: max(l2+1, l3/2+1) <= m <= min(l3, l3/2+l2)."""
    h = pp.l3 // 2
    if pp.l2 <= h:
        lo, hi = h + 1, h + pp.l2
    else:
        lo, hi = pp.l2 + 1, pp.l3
    return list(range(lo, hi + 1))


def critical_points_by_poles(pp: PiParams) -> list:
    """Integers m with no pole of L(s - 3/2) at s = m nor of the dual factor at 1 - (m - 3/2)."""
    par = pp.pair()
    lfac = gamma_factor(par)
    dfac = gamma_factor(dual(par))
    bound = pp.l3 + pp.l2 + 4
    out = []
    for m in range(-bound, bound + 1):
        s = Fraction(m) - Fraction(3, 2)
        if not lfac.has_pole(s) and not dfac.has_pole(1 - s):
            out.append(m)
    return out


def hodge_types(pp: PiParams, m: int) -> list:
    l2, l3 = pp.l2, pp.l3
    h = l3 // 2
    return [
        (l3 + l2 - m, -m),
        (l3 - m, l2 - m),
        (h + l2 - m, h - m),
        (h - m, h + l2 - m),
        (l2 - m, l3 - m),
        (-m, l3 + l2 - m),
    ]


def critical_by_hodge(pp: PiParams, m: int) -> bool:
    return all((p <= -1 and q >= 0) or (p >= 0 and q <= -1) for p, q in hodge_types(pp, m))


# --- constants ----------------------------------------------------------------

def _require_critical(pp: PiParams, m: int):
    if m not in critical_points(pp):
        raise ValueError(f"m = {m} is not critical for (l2, l3) = ({pp.l2}, {pp.l3})")


def _binom_constant(pp: PiParams, m: int) -> int:
    h = pp.l3 // 2
    return comb(h - 1, m - h - 1) * comb(h - 1, h + pp.l2 - m)


@dataclass(frozen=True)
class MainConstant:
    parity: int
    scalar: GaussianRational


def main_constant(pp: PiParams, m: int) -> MainConstant:
    """Parity (-1)^(m+delta+l3/2) and scalar (-1)^delta i^(l3/2-m+1) times the two binomials."""
    _require_critical(pp, m)
    h = pp.l3 // 2
    scalar = power_of_i(h - m + 1) * (_sign(pp.delta) * _binom_constant(pp, m))
    return MainConstant(_sign(m + pp.delta + h), scalar)


def assembly_identity(pp: PiParams, m: int) -> bool:
    """(-1)^(delta+l2+1) i^(l3/2+2l2-m-1) == (-1)^delta i^(l3/2-m+1)."""
    h = pp.l3 // 2
    lhs = power_of_i(h + 2 * pp.l2 - m - 1) * _sign(pp.delta + pp.l2 + 1)
    rhs = power_of_i(h - m + 1) * _sign(pp.delta)
    return lhs == rhs


@dataclass(frozen=True)
class AuxConstants:
    modified_exponent: int
    nabla_tilde_coefficient: GaussianRational
    e_inf_constant: int
    omega_pi2: int
    omega_pi3: int


def aux_constants(pp: PiParams, m: int) -> AuxConstants:
    _require_critical(pp, m)
    h = pp.l3 // 2
    coeff = power_of_i(pp.l2 - 1) * _sign(pp.delta + m) / _binom_constant(pp, m)
    return AuxConstants(
        modified_exponent=h + pp.l2 - 3 * m,
        nabla_tilde_coefficient=coeff,
        e_inf_constant=_sign(pp.delta + pp.l2 + 1),
        omega_pi2=_sign(pp.l2 + 1),
        omega_pi3=-_sign(pp.delta),
    )
