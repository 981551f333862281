"""Dense integer polynomials in one variable ``t``.

Coefficients are stored ascending (``coeffs[0]`` is the constant term) as
Python ints, so every operation is exact.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(int(x) for x in coeffs)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    # construction ------------------------------------------------------
    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(reversed(list(coeffs)))

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "IntPolynomial":
        """Parse a human-readable form such as ``"t^3 - t - 1"``.

        ``**`` is accepted for powers and ``*`` between a coefficient and the
        variable is optional.
        """
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty polynomial string")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pat = re.compile(
            r"^([+-]?)(\d*)\*?(?:(%s)(?:\^(\d+))?)?$" % re.escape(var)
        )
        out: dict[int, int] = {}
        for term in terms:
            m = pat.match(term)
            if not m or (not m.group(2) and not m.group(3)):
                raise ValueError(f"bad term {term!r} in {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coef = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                power = int(m.group(4)) if m.group(4) else 1
            else:
                power = 0
            out[power] = out.get(power, 0) + sign * coef
        deg = max(out)
        return cls(out.get(i, 0) for i in range(deg + 1))

    # basic properties --------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def reversed(self) -> "IntPolynomial":
        """``t^deg * p(1/t)``."""
        return IntPolynomial(reversed(self.coeffs))

    def reciprocity_sign(self) -> int:
        """+1 if self-reciprocal, -1 if anti-reciprocal, 0 otherwise."""
        c = self.coeffs
        r = c[::-1]
        if c == r:
            return 1
        if c == tuple(-x for x in r):
            return -1
        return 0

    def trailing_zeros(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    # arithmetic --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = IntPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by ``t^k``."""
        if self.is_zero():
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def divmod_monic(self, other: "IntPolynomial"):
        """Exact quotient and remainder when ``other`` has leading coeff +-1."""
        if other.lead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        r = list(self.coeffs)
        db = other.degree
        b = other.coeffs
        lb = other.lead
        if len(r) - 1 < db:
            return IntPolynomial(), self
        q = [0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] * lb  # lb = 1/lb for units
            if c:
                q[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] -= c * b[j]
        return IntPolynomial(q), IntPolynomial(r[:db])

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Exact division over Z; raises ``ArithmeticError`` on a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.lead in (1, -1):
            q, r = self.divmod_monic(other)
        else:
            q, r = pseudo_divmod_exact(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "IntPolynomial") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    # evaluation --------------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction_sign(self, x: Fraction) -> int:
        """Sign of ``p(x)`` for a rational ``x``, using only integer arithmetic."""
        u, v = x.numerator, x.denominator
        n = self.degree
        acc = 0
        vp = 1
        # sum c_i u^i v^(n-i), evaluated Horner-style in u with v powers
        for c in reversed(self.coeffs):
            acc = acc * u + c * vp
            vp *= v
        # acc = v^n p(u/v) with v > 0
        return (acc > 0) - (acc < 0)

    def substitute_scale(self, k: int) -> "IntPolynomial":
        """``p(k t)``."""
        out = []
        kp = 1
        for c in self.coeffs:
            out.append(c * kp)
            kp *= k
        return IntPolynomial(out)

    # formatting --------------------------------------------------------
    def to_string(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


def pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """``lc(b)^(deg a - deg b + 1) * a mod b`` computed over Z."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    r = list(a.coeffs)
    db = b.degree
    lb = b.lead
    bc = b.coeffs
    delta = len(r) - 1 - db
    if delta < 0:
        return a
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        r = [x * lb for x in r]
        if c:
            for j in range(db + 1):
                r[i - db + j] -= c * bc[j]
        r[i] = 0
    return IntPolynomial(r[:db])


def pseudo_divmod_exact(a: IntPolynomial, b: IntPolynomial):
    """Division over Q, returning integer parts when they are integral."""
    qa = [Fraction(c) for c in a.coeffs]
    bc = b.coeffs
    db = b.degree
    lb = Fraction(b.lead)
    if len(qa) - 1 < db:
        return IntPolynomial(), a
    q = [Fraction(0)] * (len(qa) - db)
    for i in range(len(qa) - 1, db - 1, -1):
        c = qa[i] / lb
        if c:
            q[i - db] = c
            for j in range(db + 1):
                qa[i - db + j] -= c * bc[j]
    if any(x.denominator != 1 for x in q) or any(x.denominator != 1 for x in qa[:db]):
        raise ArithmeticError(f"{b} does not divide {a} over Z")
    return IntPolynomial(int(x) for x in q), IntPolynomial(int(x) for x in qa[:db])


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Z[t] (positive leading coefficient)."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    ca, cb = a.content(), b.content()
    c = gcd(ca, cb)
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, r.primitive() if not r.is_zero() else r
    return (a.primitive() * c).primitive() if a.degree > 0 else IntPolynomial([1])


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """``p / gcd(p, p')`` made primitive."""
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p.primitive()
    return p.primitive().exact_div(g).primitive()


T = IntPolynomial([0, 1])
ONE = IntPolynomial([1])
