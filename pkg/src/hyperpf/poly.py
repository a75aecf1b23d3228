"""Sparse multivariate polynomials over the rationals.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by the
natural order of variable names (so ``x_{1,10}`` follows ``x_{1,2}``).
Terms print in graded lexicographic order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import permutations
from math import factorial, prod
from typing import Mapping

from .kernel import format_rational, sign, to_scalar

Monomial = tuple[tuple[str, int], ...]

_DIGITS = re.compile(r"(\d+)")


def var_key(name: str):
    return tuple(int(tok) if tok.isdigit() else tok for tok in _DIGITS.split(name))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: var_key(ve[0])))


def mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def grlex_key(mono: Monomial):
    """Sort key putting larger monomials (graded lex) first."""
    expanded = tuple(var_key(v) for v, e in mono for _ in range(e))
    return (-len(expanded), expanded)


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = to_scalar(c)
            if c:
                mono = tuple(sorted(((v, e) for v, e in mono if e), key=lambda ve: var_key(ve[0])))
                clean[mono] = clean.get(mono, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.terms = {k: v for k, v in terms.items() if v}
        return p

    @staticmethod
    def coerce(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly.const(x)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = Poly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = to_scalar(other)
            return Poly._raw({m: c * v for m, v in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = Poly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    @property
    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def variables(self) -> list[str]:
        return sorted({v for m in self.terms for v, _ in m}, key=var_key)

    def coefficient(self, mono: Monomial) -> Fraction:
        mono = tuple(sorted(mono, key=lambda ve: var_key(ve[0])))
        return self.terms.get(mono, Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]))

    def evaluate(self, assignment: Mapping[str, object]):
        total = 0
        for mono, c in self.terms.items():
            total = total + c * prod((assignment[v] ** e for v, e in mono), start=1)
        return total

    def substitute(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        return Poly.coerce(self.evaluate({v: mapping.get(v, Poly.var(v)) for v in self.variables()}))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{format_rational(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({str(self)!r})"


def xvar(i: int, j: int) -> str:
    return f"x_{{{i},{j}}}"


def permanent_polynomial(d: int, scale=1) -> Poly:
    """scale * sum over σ of x_{1,σ(1)} ... x_{d,σ(d)}, by direct expansion."""
    return Poly({
        tuple((xvar(i + 1, s[i] + 1), 1) for i in range(d)): scale for s in permutations(range(d))
    })


def determinant_polynomial(d: int, scale=1) -> Poly:
    return Poly({
        tuple((xvar(i + 1, s[i] + 1), 1) for i in range(d)): scale * sign(s) for s in permutations(range(d))
    })


def scaled_reference(d: int, odd: bool) -> Poly:
    """d! * det_d for odd block parameter, d! * per_d otherwise."""
    return (determinant_polynomial if odd else permanent_polynomial)(d, factorial(d))
