"""Exterior forms on a finite ordered list of 1-forms.

Coefficients may be GaussianRationals, polynomials or rational functions;
only +, -, * and a zero test are used. Basis i-forms are ordered
lexicographically by position in the label list, which is the order of
``itertools.combinations``.
"""

from __future__ import annotations

from itertools import combinations

__all__ = ["WedgeForm", "wedge_basis", "compound_matrix"]


def _is_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


def wedge_basis(n: int, k: int) -> list:
    return list(combinations(range(n), k))


def _sort_sign(idx):
    """Sign of the sorting permutation, or 0 if an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class WedgeForm:
    """A homogeneous element of the exterior algebra on ``labels``."""

    __slots__ = ("labels", "degree", "terms")

    def __init__(self, labels, degree: int, terms=None):
        self.labels = tuple(labels)
        self.degree = degree
        self.terms = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError("term of wrong degree")
            sign, skey = _sort_sign(key)
            if sign == 0 or _is_zero(c):
                continue
            c = c if sign == 1 else -c
            if skey in self.terms:
                s = self.terms[skey] + c
                if _is_zero(s):
                    del self.terms[skey]
                else:
                    self.terms[skey] = s
            else:
                self.terms[skey] = c

    @classmethod
    def basis_form(cls, labels, *names):
        labels = tuple(labels)
        return cls(labels, len(names), {tuple(labels.index(n) for n in names): 1})

    @classmethod
    def from_vector(cls, labels, degree, vec):
        labels = tuple(labels)
        basis = wedge_basis(len(labels), degree)
        return cls(labels, degree, dict(zip(basis, vec)))

    def to_vector(self, zero=0) -> list:
        return [self.terms.get(key, zero) for key in wedge_basis(len(self.labels), self.degree)]

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.labels != other.labels:
            raise ValueError("forms on different bases")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError("cannot add forms of different degree")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return WedgeForm(self.labels, max(self.degree, other.degree) if not self.terms or not other.terms else self.degree, terms)

    def __neg__(self):
        return WedgeForm(self.labels, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return WedgeForm(self.labels, self.degree, {k: v * c for k, v in self.terms.items()})

    def wedge(self, other) -> "WedgeForm":
        self._check(other)
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                sign, key = _sort_sign(k1 + k2)
                if sign == 0:
                    continue
                v = c1 * c2 if sign == 1 else -(c1 * c2)
                terms[key] = terms[key] + v if key in terms else v
        return WedgeForm(self.labels, self.degree + other.degree, terms)

    __xor__ = wedge

    def pullback(self, images) -> "WedgeForm":
        """Substitute each 1-form label by a given 1-form (images in label order)."""
        images = list(images)
        if len(images) != len(self.labels):
            raise ValueError("need one image per label")
        target = images[0].labels
        out = WedgeForm(target, self.degree)
        for key, c in self.terms.items():
            acc = None
            for k in key:
                acc = images[k] if acc is None else acc.wedge(images[k])
            out = out + acc.scale(c)
        return out

    def __eq__(self, other):
        if not isinstance(other, WedgeForm) or self.labels != other.labels:
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            a = self.terms.get(k)
            b = other.terms.get(k)
            if a is None:
                if not _is_zero(b):
                    return False
            elif b is None:
                if not _is_zero(a):
                    return False
            elif not (a == b):
                return False
        return True

    __hash__ = None

    def __repr__(self):
        return f"WedgeForm({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            name = "^".join(self.labels[k] for k in key)
            parts.append(f"({self.terms[key]})*{name}")
        return " + ".join(parts)


def compound_matrix(a, k: int, det):
    """The k-th compound: minors of ``a`` on lexicographic k-subsets of rows and columns."""
    n = len(a)
    subsets = wedge_basis(n, k)
    return [[det([[a[r][c] for c in cs] for r in rs]) for cs in subsets] for rs in subsets]
