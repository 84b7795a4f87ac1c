"""Sparse multivariate polynomials with Fraction coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

Monomial = tuple[tuple[str, int], ...]   # sorted (variable, exponent>0) pairs


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class MultivarPoly:
    """Canonical sparse form: zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = tuple(sorted((v, e) for v, e in m if e))
                self.terms[key] = self.terms.get(key, Fraction(0)) + c
                if not self.terms[key]:
                    del self.terms[key]

    @classmethod
    def var(cls, name: str) -> "MultivarPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c) -> "MultivarPoly":
        return cls({(): c})

    @classmethod
    def lift(cls, x) -> "MultivarPoly":
        if isinstance(x, MultivarPoly):
            return x
        if isinstance(x, (int, Rational)):
            return cls.const(x)
        return NotImplemented

    # -- arithmetic --------------------------------------------------
    def __add__(self, other):
        other = MultivarPoly.lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MultivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultivarPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = MultivarPoly.lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return MultivarPoly.lift(other) - self

    def __mul__(self, other):
        other = MultivarPoly.lift(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return MultivarPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Rational)) or other == 0:
            raise TypeError("polynomials divide only by non-zero scalars")
        inv = 1 / Fraction(other)
        return MultivarPoly({m: c * inv for m, c in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out, base = MultivarPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- inspection ----------------------------------------------------
    def __eq__(self, other):
        other = MultivarPoly.lift(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    def coeff(self, var: str, k: int) -> "MultivarPoly":
        """Coefficient of var^k, as a polynomial in the other variables."""
        out = {}
        for m, c in self.terms.items():
            exps = dict(m)
            if exps.get(var, 0) == k:
                exps.pop(var, None)
                out[tuple(sorted(exps.items()))] = c
        return MultivarPoly(out)

    def constant(self) -> Fraction:
        if self.variables():
            raise ValueError(f"not constant: {self}")
        return self.terms.get((), Fraction(0))

    def subs(self, values: dict) -> "MultivarPoly":
        out = MultivarPoly()
        for m, c in self.terms.items():
            term = MultivarPoly.const(c)
            rest = []
            for v, e in m:
                if v in values:
                    term = term * (MultivarPoly.lift(values[v]) ** e)
                else:
                    rest.append((v, e))
            out = out + term * MultivarPoly({tuple(rest): 1})
        return out

    def __call__(self, **values):
        return self.subs(values)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            c = self.terms[m]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def symbols(names: str) -> tuple[MultivarPoly, ...]:
    return tuple(MultivarPoly.var(v) for v in names.split())
