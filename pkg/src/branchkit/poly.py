"""Sparse multivariate polynomials and rational functions over Q(i).

A polynomial lives over an ordered VariableSet; monomials are exponent
tuples in that order and are compared lexicographically. Binary operations
between polynomials over different variable sets first embed both into the
union of the two sets.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .scalar import ONE, ZERO, GaussianRational, I, as_gaussian

__all__ = [
    "VariableSet",
    "MultiPoly",
    "RationalFunction",
    "partial_derivative",
    "substitute",
    "expand_power",
    "parse_poly",
]


class VariableSet:
    """An ordered tuple of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n) or n == "i":
                raise ValueError(f"bad variable name {n!r}")
        self.names = names
        self._index = {n: k for k, n in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} (have {', '.join(self.names)})") from None

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableSet({list(self.names)})"

    def union(self, other: "VariableSet") -> "VariableSet":
        if other == self:
            return self
        return VariableSet(self.names + tuple(n for n in other.names if n not in self._index))

    def gens(self):
        """The variables as polynomials, in order."""
        return tuple(MultiPoly.variable(self, n) for n in self.names)

    def zero_exp(self):
        return (0,) * len(self.names)


class MultiPoly:
    """A polynomial: mapping from exponent tuples to nonzero GaussianRationals."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VariableSet, terms: Mapping[tuple, object] | None = None):
        self.vars = vars
        clean = {}
        if terms:
            n = len(vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {vars}")
                c = as_gaussian(c)
                if not c.is_zero():
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, vars: VariableSet, c=1) -> "MultiPoly":
        return cls(vars, {vars.zero_exp(): c})

    @classmethod
    def variable(cls, vars: VariableSet, name: str, power: int = 1) -> "MultiPoly":
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls._from_clean(vars, {tuple(e): ONE})

    @classmethod
    def monomial(cls, vars: VariableSet, powers: Mapping[str, int], c=1) -> "MultiPoly":
        e = [0] * len(vars)
        for n, k in powers.items():
            e[vars.index(n)] = k
        return cls(vars, {tuple(e): c})

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.vars.zero_exp() in self.terms)

    def constant_term(self) -> GaussianRational:
        return self.terms.get(self.vars.zero_exp(), ZERO)

    def sorted_terms(self):
        """Terms in descending lexicographic monomial order."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def coefficient(self, powers) -> GaussianRational:
        """Coefficient of a monomial given as an exponent tuple or a name -> power map."""
        if isinstance(powers, Mapping):
            e = [0] * len(self.vars)
            for n, k in powers.items():
                e[self.vars.index(n)] = k
            powers = tuple(e)
        return self.terms.get(tuple(powers), ZERO)

    def _positions(self, names):
        if names is None:
            return range(len(self.vars))
        return [self.vars.index(n) for n in names]

    def degrees(self, names=None) -> set:
        """Set of total degrees of the terms in the given subset of variables."""
        pos = self._positions(names)
        return {sum(e[k] for k in pos) for e in self.terms}

    def degree(self, names=None) -> int:
        ds = self.degrees(names)
        return max(ds) if ds else -1

    def is_homogeneous(self, names=None, degree: int | None = None) -> bool:
        ds = self.degrees(names)
        if not ds:
            return True
        if len(ds) != 1:
            return False
        return degree is None or ds == {degree}

    def bidegree(self, first, second):
        """The (deg in first, deg in second) pair if bi-homogeneous, else None."""
        a = self.degrees(first)
        b = self.degrees(second)
        if len(a) > 1 or len(b) > 1:
            return None
        return (a.pop() if a else 0, b.pop() if b else 0)

    def used_variables(self) -> list:
        return [n for k, n in enumerate(self.vars.names) if any(e[k] for e in self.terms)]

    def embed(self, vars: VariableSet) -> "MultiPoly":
        """Re-express over a variable set containing every variable actually used."""
        if vars == self.vars:
            return self
        used = self.used_variables()
        for n in used:
            if n not in vars:
                raise ValueError(f"variable {n!r} not in target {vars}")
        pos = [(self.vars.index(n), vars.index(n)) for n in used]
        terms = {}
        n = len(vars)
        for e, c in self.terms.items():
            f = [0] * n
            for a, b in pos:
                f[b] = e[a]
            terms[tuple(f)] = c
        return MultiPoly._from_clean(vars, terms)

    # arithmetic

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.vars == self.vars:
                return self, other
            u = self.vars.union(other.vars)
            return self.embed(u), other.embed(u)
        try:
            c = as_gaussian(other)
        except TypeError:
            return None
        return self, MultiPoly.constant(self.vars, c)

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        a, b = lifted
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
        return MultiPoly._from_clean(a.vars, terms)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return MultiPoly._from_clean(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        return lifted[0] + (-lifted[1])

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = as_gaussian(c)
        if c.is_zero():
            return MultiPoly._from_clean(self.vars, {})
        return MultiPoly._from_clean(self.vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._lift(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        terms: dict = {}
        bt = list(b.terms.items())
        for e, c in a.terms.items():
            for f, d in bt:
                g = tuple(x + y for x, y in zip(e, f))
                v = terms.get(g)
                terms[g] = c * d if v is None else v + c * d
        return MultiPoly._from_clean(a.vars, {e: c for e, c in terms.items() if not c.is_zero()})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, (MultiPoly, RationalFunction)):
            return RationalFunction(self) / other
        return self.scale(1 / as_gaussian(other))

    def __rtruediv__(self, other):
        return RationalFunction(MultiPoly.constant(self.vars, as_gaussian(other)), self)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        return expand_power(self, e)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self) == other
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        a, b = lifted
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            used = self.used_variables()
            pos = [self.vars.index(n) for n in used]
            self._hash = hash((tuple(used), frozenset((tuple(e[k] for k in pos), c) for e, c in self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def map_coefficients(self, f) -> "MultiPoly":
        return MultiPoly(self.vars, {e: f(c) for e, c in self.terms.items()})

    def conjugate(self) -> "MultiPoly":
        """Conjugate the coefficients (variables are treated as real)."""
        return MultiPoly._from_clean(self.vars, {e: c.conjugate() for e, c in self.terms.items()})

    def partial_derivative(self, var: str, order: int = 1) -> "MultiPoly":
        return partial_derivative(self, var, order)

    def substitute(self, bindings, target: VariableSet | None = None):
        return substitute(self, bindings, target)

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Numeric evaluation; every used variable must have a value."""
        pos = [(k, values[n]) for k, n in enumerate(self.vars.names) if any(e[k] for e in self.terms)]
        total = 0j
        for e, c in self.terms.items():
            t = complex(c)
            for k, v in pos:
                if e[k]:
                    t *= v ** e[k]
            total += t
        return total

    def split(self, names) -> dict:
        """Group terms by the exponents of ``names``.

        Returns a map from the exponent tuple in ``names`` to the coefficient
        polynomial over the remaining variables.
        """
        pos = [self.vars.index(n) for n in names]
        rest_names = [n for n in self.vars.names if n not in set(names)]
        rest_pos = [self.vars.index(n) for n in rest_names]
        rest = VariableSet(rest_names)
        out: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[k] for k in pos)
            out.setdefault(key, {})[tuple(e[k] for k in rest_pos)] = c
        return {k: MultiPoly._from_clean(rest, v) for k, v in out.items()}

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        return render_poly(self)


def partial_derivative(p: MultiPoly, var: str, order: int = 1) -> MultiPoly:
    """Iterated partial derivative d^order p / d var^order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    k = p.vars.index(var)
    if order == 0:
        return p
    terms = {}
    for e, c in p.terms.items():
        n = e[k]
        if n < order:
            continue
        f = 1
        for j in range(order):
            f *= n - j
        g = list(e)
        g[k] = n - order
        terms[tuple(g)] = c * f
    return MultiPoly._from_clean(p.vars, terms)


def expand_power(base: MultiPoly, e: int) -> MultiPoly:
    """Exact e-th power by repeated squaring; e = 0 gives 1."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    result = MultiPoly.constant(base.vars, 1)
    sq = base
    while e:
        if e & 1:
            result = result * sq
        e >>= 1
        if e:
            sq = sq * sq
    return result


def substitute(p: MultiPoly, bindings: Mapping[str, object], target: VariableSet | None = None):
    """Replace variables by polynomials, rational functions or scalars.

    Unbound variables are kept. The result lives over ``target`` if given,
    else over the kept variables of ``p`` followed by the variables of the
    images in order of appearance. If any image is a RationalFunction the
    result is a RationalFunction.
    """
    for n in bindings:
        p.vars.index(n)
    kept = [n for n in p.vars.names if n not in bindings]
    if target is None:
        names = list(kept)
        for v in bindings.values():
            if isinstance(v, (MultiPoly, RationalFunction)):
                for n in v.vars.names:
                    if n not in names:
                        names.append(n)
        target = VariableSet(names)
    else:
        for n in kept:
            if n not in target and any(e[p.vars.index(n)] for e in p.terms):
                raise ValueError(f"kept variable {n!r} missing from target {target}")

    rational = any(isinstance(v, RationalFunction) for v in bindings.values())
    images = {}
    for n, v in bindings.items():
        if isinstance(v, RationalFunction):
            images[n] = v.embed(target)
        elif isinstance(v, MultiPoly):
            images[n] = v.embed(target)
            if rational:
                images[n] = RationalFunction(images[n])
        else:
            c = MultiPoly.constant(target, as_gaussian(v))
            images[n] = RationalFunction(c) if rational else c

    bound_pos = [(p.vars.index(n), n) for n in bindings]
    kept_pos = [(p.vars.index(n), target.index(n)) for n in kept if n in target]
    power_cache: dict = {}

    def power(n, k):
        key = (n, k)
        if key not in power_cache:
            if k == 0:
                power_cache[key] = None
            elif k == 1:
                power_cache[key] = images[n]
            else:
                power_cache[key] = power(n, k - 1) * images[n]
        return power_cache[key]

    # group terms by their bound-variable exponents so each product is formed once
    groups: dict = {}
    width = len(target)
    for e, c in p.terms.items():
        key = tuple(e[k] for k, _ in bound_pos)
        f = [0] * width
        for a, b in kept_pos:
            f[b] = e[a]
        g = groups.setdefault(key, {})
        g[tuple(f)] = g.get(tuple(f), ZERO) + c

    total = RationalFunction(MultiPoly(target)) if rational else MultiPoly(target)
    for key, rest in groups.items():
        factor = None
        for (k, n), m in zip(bound_pos, key):
            pw = power(n, m)
            if pw is not None:
                factor = pw if factor is None else factor * pw
        restp = MultiPoly(target, rest)
        term = restp if factor is None else factor * restp
        total = total + term
    return total


class RationalFunction:
    """A quotient num/den of polynomials over a common VariableSet.

    The denominator is scaled so its lexicographically leading coefficient is
    1. No gcd is taken; when the denominator is a single monomial, the common
    monomial factor is cancelled, which keeps Laurent-type entries small.
    Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = MultiPoly.constant(num.vars, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.vars != den.vars:
            u = num.vars.union(den.vars)
            num, den = num.embed(u), den.embed(u)
        _, lc = den.leading_term()
        if lc != ONE:
            inv = 1 / lc
            num, den = num.scale(inv), den.scale(inv)
        if len(den.terms) == 1 and not num.is_zero():
            (de,) = den.terms
            low = tuple(min(x) for x in zip(de, *num.terms))
            if any(low):
                num = MultiPoly._from_clean(num.vars, {tuple(a - b for a, b in zip(e, low)): c for e, c in num.terms.items()})
                den = MultiPoly._from_clean(den.vars, {tuple(a - b for a, b in zip(de, low)): ONE})
        if num.is_zero():
            den = MultiPoly.constant(num.vars, 1)
        self.num = num
        self.den = den

    @property
    def vars(self) -> VariableSet:
        return self.num.vars

    def embed(self, vars: VariableSet) -> "RationalFunction":
        return RationalFunction(self.num.embed(vars), self.den.embed(vars))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other)
        try:
            c = as_gaussian(other)
        except TypeError:
            return None
        return RationalFunction(MultiPoly.constant(self.vars, c))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(expand_power(self.num, e), expand_power(self.den, e))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def substitute(self, bindings, target: VariableSet | None = None) -> "RationalFunction":
        if target is None:
            # fix one target so numerator and denominator agree
            probe = substitute(self.num + self.den, bindings)
            target = probe.vars
        n = substitute(self.num, bindings, target)
        d = substitute(self.den, bindings, target)
        n = n if isinstance(n, RationalFunction) else RationalFunction(n)
        d = d if isinstance(d, RationalFunction) else RationalFunction(d)
        return n / d

    def evaluate(self, values) -> complex:
        return self.num.evaluate(values) / self.den.evaluate(values)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"


# text rendering and parsing

def _mono_text(vars, e):
    parts = []
    for n, k in zip(vars.names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def render_poly(p: MultiPoly) -> str:
    """Canonical text: terms in descending lex order, "3/2*X^2*Y - (1 + i)*Z"."""
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = _mono_text(p.vars, e)
        neg = False
        if c.is_real():
            r = c.re
            neg = r < 0
            r = abs(r)
            ctext = "" if (r == 1 and mono) else (str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}")
        elif c.re == 0:
            neg = c.im < 0
            ctext = str(-c if neg else c)
        else:
            ctext = f"({c})"
        body = ctext + ("*" if ctext and mono else "") + mono
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def parse_poly(text: str, vars: VariableSet) -> MultiPoly:
    """Parse the grammar produced by ``str`` (sums, products, ^, parentheses, i)."""
    toks = []
    pos = 0
    s = text.replace("−", "-")
    while pos < len(s):
        m = _TOK.match(s, pos)
        if m is None:
            break
        if m.group(1):
            toks.append(("num", int(m.group(1))))
        elif m.group(2):
            toks.append(("name", m.group(2)))
        elif m.group(3):
            toks.append(("op", m.group(3)))
        pos = m.end()
    k = 0

    def peek():
        return toks[k] if k < len(toks) else ("end", None)

    def take():
        nonlocal k
        t = peek()
        k += 1
        return t

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("division only by nonzero scalars")
                val = val.scale(1 / rhs.constant_term())
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, n = take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            base = expand_power(base, n)
        return base

    def atom():
        kind, v = take()
        if kind == "num":
            return MultiPoly.constant(vars, v)
        if kind == "name":
            if v == "i":
                return MultiPoly.constant(vars, I)
            return MultiPoly.variable(vars, v)
        if (kind, v) == ("op", "("):
            val = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return val
        raise ValueError(f"unexpected token {v!r} in {text!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return result

