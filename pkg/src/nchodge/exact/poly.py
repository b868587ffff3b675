"""Dense univariate polynomials and rational functions over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Q = Fraction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Polynomial with rational coefficients, stored low degree first.

    Instances are immutable; the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_q(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, a) -> "Poly":
        return cls([a])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, a=1) -> "Poly":
        return cls([0] * k + [a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def coeff(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def valuation(self) -> int:
        for k, a in enumerate(self.c):
            if a:
                return k
        raise ValueError("valuation of zero polynomial")

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, RatFunc):
            return other == self
        try:
            return self.c == Poly([other]).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.c))

    def __repr__(self):
        return f"Poly({self.to_str()!r})"

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        return Poly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-a for a in self.c)

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
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(a / other for a in self.c)
        if isinstance(other, Poly):
            return RatFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        return RatFunc(Poly([other]), self)

    def divmod(self, d: "Poly"):
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(0, len(r) - len(d.c) + 1)
        inv = 1 / d.lc()
        for k in range(len(r) - len(d.c), -1, -1):
            a = r[k + len(d.c) - 1] * inv
            q[k] = a
            if a:
                for j, b in enumerate(d.c):
                    r[k + j] -= a * b
        return Poly(q), Poly(r[: len(d.c) - 1])

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def __mod__(self, d):
        return self.divmod(d)[1]

    def monic(self) -> "Poly":
        return self / self.lc() if self.c else self

    def derivative(self) -> "Poly":
        return Poly(k * a for k, a in enumerate(self.c) if k)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def compose(self, g):
        """Return self(g) for g a Poly or RatFunc."""
        acc = Poly()
        for a in reversed(self.c):
            acc = acc * g + a
        return acc

    def to_str(self, var: str = "z") -> str:
        return format_terms(((k, a) for k, a in enumerate(self.c)), var)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b // poly_gcd(a, b)).monic()


def squarefree(p: Poly) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def format_terms(terms, var: str) -> str:
    """Canonical text for sum of a*var^k; exponents may be negative."""
    parts = []
    for k, a in sorted(terms, key=lambda t: -t[0]):
        if a == 0:
            continue
        mag = abs(a)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}" if k > 0 else f"{var}^({k})"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if a < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {b}" for s, b in parts[1:])


class RatFunc:
    """Reduced quotient num/den of polynomials, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly([num])
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc()
        self.num, self.den = num / lc, den / lc

    @classmethod
    def x(cls) -> "RatFunc":
        return cls(Poly.x())

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return RatFunc(other)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(("RatFunc", self.num.c, self.den.c))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = -self.num, self.den
        return r

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
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def __pow__(self, k: int):
        if k >= 0:
            return RatFunc(self.num ** k, self.den ** k)
        return RatFunc(self.den ** -k, self.num ** -k)

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def compose(self, g) -> "RatFunc":
        return RatFunc(1) * self.num.compose(g) / self.den.compose(g)

    def __repr__(self):
        return f"RatFunc({self.to_str()!r})"

    def to_str(self, var: str = "z") -> str:
        if self.is_poly():
            return self.num.to_str(var)
        d = self.den.to_str(var)
        if sum(1 for a in self.den.c if a) > 1:
            d = f"({d})"
        if self.num.degree == 0 and self.num.c[0].denominator != 1:
            c = self.num.c[0]
            return f"{c.numerator}/({c.denominator}*{d})"
        n = self.num.to_str(var)
        if sum(1 for a in self.num.c if a) > 1:
            n = f"({n})"
        return f"{n}/{d}"


def as_ratfunc(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc(x)
