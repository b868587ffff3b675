"""Sparse Laurent polynomials over Q in one or several named variables."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .poly import Poly, RatFunc, format_terms

Exp = Tuple[int, ...]


class LaurentPoly:
    """Finitely supported map exponent-vector -> nonzero Fraction.

    ``vars`` names the variables; arithmetic requires matching variable tuples.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exp, object] = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        t: Dict[Exp, Fraction] = {}
        for e, a in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            a = Fraction(a)
            if a:
                t[e] = t.get(e, Fraction(0)) + a
                if not t[e]:
                    del t[e]
        self.terms = t

    # constructors
    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def const(cls, vars, a):
        return cls(vars, {(0,) * len(tuple(vars)): a})

    @classmethod
    def monomial(cls, vars, exp, a=1):
        return cls(vars, {tuple(exp): a})

    @classmethod
    def var(cls, vars, name: str, power: int = 1):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls(vars, {tuple(e): 1})

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.nvars}

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def support(self):
        return sorted(self.terms)

    def min_exp(self, i: int = 0) -> int:
        return min(e[i] for e in self.terms)

    def max_exp(self, i: int = 0) -> int:
        return max(e[i] for e in self.terms)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(self.vars, other)
        return None

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.const(self.vars, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, a in o.terms.items():
            t[e] = t.get(e, 0) + a
        return LaurentPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -a for e, a in self.terms.items()})

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
        t: Dict[Exp, Fraction] = {}
        for e1, a1 in self.terms.items():
            for e2, a2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                t[e] = t.get(e, 0) + a1 * a2
        return LaurentPoly(self.vars, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.vars, {e: a / other for e, a in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.is_monomial():
            raise ValueError("Laurent division only by monomials")
        (e0, a0), = o.terms.items()
        return LaurentPoly(self.vars, {tuple(x - y for x, y in zip(e, e0)): a / a0
                                       for e, a in self.terms.items()})

    def __rtruediv__(self, other):
        return LaurentPoly.const(self.vars, other) / self

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e, a), = self.terms.items()
            return LaurentPoly(self.vars, {tuple(k * x for x in e): Fraction(a) ** k})
        out = LaurentPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly(self.vars, {tuple(x + y for x, y in zip(e, exp)): a
                                       for e, a in self.terms.items()})

    def diff(self, name: str) -> "LaurentPoly":
        i = self.vars.index(name)
        t = {}
        for e, a in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = a * e[i]
        return LaurentPoly(self.vars, t)

    def euler(self, name: str) -> "LaurentPoly":
        """x * d/dx in the named variable."""
        i = self.vars.index(name)
        return LaurentPoly(self.vars, {e: a * e[i] for e, a in self.terms.items() if e[i]})

    def substitute_monomials(self, new_vars, images: Mapping[str, Tuple[Exp, object]]):
        """Substitute each variable by a Laurent monomial (coef * new_vars^exp)."""
        new_vars = tuple(new_vars)
        out = LaurentPoly(new_vars)
        t: Dict[Exp, Fraction] = {}
        for e, a in self.terms.items():
            ne = [0] * len(new_vars)
            c = a
            for k, v in zip(e, self.vars):
                img_e, img_c = images[v]
                c *= Fraction(img_c) ** k
                for j in range(len(new_vars)):
                    ne[j] += k * img_e[j]
            ne = tuple(ne)
            t[ne] = t.get(ne, 0) + c
        out = LaurentPoly(new_vars, t)
        return out

    def evaluate(self, name: str, value) -> "LaurentPoly":
        """Set one variable to a nonzero rational; result keeps remaining variables."""
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        t: Dict[Exp, Fraction] = {}
        value = Fraction(value)
        for e, a in self.terms.items():
            if value == 0 and e[i] < 0:
                raise ZeroDivisionError(f"{name}=0 hits a pole")
            if value == 0 and e[i] > 0:
                continue
            e2 = e[:i] + e[i + 1:]
            t[e2] = t.get(e2, 0) + a * value ** e[i]
        return LaurentPoly(rest, t)

    def coefficient_in(self, name: str) -> Dict[int, "LaurentPoly"]:
        """Group by the exponent of ``name``: {k: coefficient of name^k}."""
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        groups: Dict[int, Dict[Exp, Fraction]] = {}
        for e, a in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = a
        return {k: LaurentPoly(rest, g) for k, g in groups.items()}

    def __call__(self, *values):
        acc = Fraction(0)
        for e, a in self.terms.items():
            m = a
            for x, k in zip(values, e):
                m *= Fraction(x) ** k
            acc += m
        return acc

    # univariate helpers
    def to_ratfunc(self) -> RatFunc:
        if self.nvars != 1:
            raise ValueError("to_ratfunc needs a univariate Laurent polynomial")
        if not self.terms:
            return RatFunc(0)
        lo = min(0, self.min_exp())
        num = Poly.monomial(0, 0)
        c = {}
        for (k,), a in self.terms.items():
            c[k - lo] = a
        num = Poly([c.get(i, 0) for i in range(max(c) + 1)])
        return RatFunc(num, Poly.monomial(-lo))

    @classmethod
    def from_ratfunc(cls, r, var: str = "u") -> "LaurentPoly":
        """Convert a RatFunc whose denominator is c*var^k; raises otherwise."""
        if isinstance(r, (int, Fraction)):
            return cls.const((var,), r)
        if isinstance(r, Poly):
            r = RatFunc(r)
        d = r.den
        k = d.degree
        if any(d.c[:k]):
            raise ValueError(f"denominator {d.to_str(var)} is not a monomial")
        a = d.c[k]
        return cls((var,), {(i - k,): c / a for i, c in enumerate(r.num.c) if c})

    def to_str(self) -> str:
        if self.nvars == 1:
            return format_terms(((e[0], a) for e, a in self.terms.items()), self.vars[0])
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            a = self.terms[e]
            mono = "*".join((v if k == 1 else f"{v}^{k}" if k > 0 else f"{v}^({k})")
                            for v, k in zip(self.vars, e) if k)
            mag = abs(a)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            parts.append(("-" if a < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def __repr__(self):
        return f"LaurentPoly({self.vars}, {self.to_str()!r})"


def laurent1(var: str, coeffs: Mapping[int, object]) -> LaurentPoly:
    """Univariate Laurent polynomial from {exponent: coefficient}."""
    return LaurentPoly((var,), {(k,): a for k, a in coeffs.items()})


def laurent_from_terms(vars, items: Iterable[Tuple[Exp, object]]) -> LaurentPoly:
    t: Dict[Exp, Fraction] = {}
    for e, a in items:
        e = tuple(e)
        t[e] = t.get(e, 0) + Fraction(a)
    return LaurentPoly(vars, t)
