"""Exact root geometry for integer polynomials.

Real roots are isolated with Sturm sequences and rational bisection; roots
inside the unit disk are counted through the Cayley transform and a
Routh-Hurwitz Cauchy index, with unit-circle roots handled separately by
the trace polynomial.  No floating point enters any certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional

from .poly import IntPolynomial, poly_gcd, pseudo_remainder, squarefree_part

DEFAULT_EPS = Fraction(1, 10**12)


# ---------------------------------------------------------------- cyclotomics

def euler_phi(m: int) -> int:
    result = m
    p = 2
    x = m
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            result -= result // p
        p += 1
    if x > 1:
        result -= result // x
    return result


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPolynomial:
    """Phi_m by exact division of t^m - 1 by Phi_d for proper divisors d."""
    if m < 1:
        raise ValueError("conductor must be positive")
    p = IntPolynomial([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


@lru_cache(maxsize=None)
def _conductors_up_to_degree(deg: int) -> tuple[int, ...]:
    # phi(m) >= sqrt(m/2) gives m <= 2 deg^2
    bound = max(2, 2 * deg * deg)
    return tuple(m for m in range(1, bound + 1) if euler_phi(m) <= deg)


def strip_cyclotomic(p: IntPolynomial):
    """Factor ``p = t^e * prod Phi_m^mult * q`` with q cyclotomic-free.

    Returns ``(q, [(m, mult), ...], e)``.
    """
    if p.is_zero():
        raise ValueError("cannot strip the zero polynomial")
    e = p.trailing_zeros()
    q = IntPolynomial(p.coeffs[e:])
    factors = []
    changed = True
    while changed and q.degree > 0:
        changed = False
        for m in _conductors_up_to_degree(q.degree):
            phi = cyclotomic(m)
            if phi.degree > q.degree:
                continue
            mult = 0
            while q.degree >= phi.degree:
                quo, rem = q.divmod_monic(phi)
                if not rem.is_zero():
                    break
                q = quo
                mult += 1
            if mult:
                factors.append((m, mult))
                changed = True
    merged: dict[int, int] = {}
    for m, k in factors:
        merged[m] = merged.get(m, 0) + k
    return q, sorted(merged.items()), e


# ---------------------------------------------------------------- Sturm

def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def signed_remainder_sequence(a: IntPolynomial, b: IntPolynomial) -> list[IntPolynomial]:
    """a, b, -rem(a, b), ... with positive rescalings only (Sturm-compatible)."""
    seq = [a, b]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        f, g = seq[-2], seq[-1]
        r = pseudo_remainder(f, g)
        delta = f.degree - g.degree + 1
        if g.lead < 0 and delta % 2 == 1:
            r = -r  # prem scaled by a negative constant
        r = -r
        if r.is_zero():
            break
        c = r.content()
        r = IntPolynomial(x // c for x in r.coeffs)
        seq.append(r)
    return seq


class SturmSequence:
    """Sturm chain of a polynomial, with sign-variation counts at rationals."""

    def __init__(self, p: IntPolynomial):
        if p.is_zero():
            raise ValueError("Sturm sequence of the zero polynomial")
        self.p = p
        self.chain = signed_remainder_sequence(p, p.derivative()) if p.degree > 0 else [p]

    def variations_at(self, x) -> int:
        if x == float("inf"):
            signs = [_sign(q.lead) for q in self.chain]
        elif x == float("-inf"):
            signs = [_sign(q.lead) * (-1) ** q.degree for q in self.chain]
        else:
            fx = Fraction(x)
            signs = [q.eval_fraction_sign(fx) for q in self.chain]
        return _variations(signs)

    def count(self, a, b) -> int:
        """Number of distinct real roots in (a, b]."""
        return self.variations_at(a) - self.variations_at(b)


def _variations(signs) -> int:
    s = [x for x in signs if x]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def sturm_count(p: IntPolynomial, a, b) -> int:
    """Distinct real roots of p in (a, b]; endpoints may be +-inf."""
    if p.is_zero():
        raise ValueError("Sturm count of the zero polynomial")
    if not (a < b):
        raise ValueError("need a < b")
    return SturmSequence(p).count(a, b)


def cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.lead)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lead) if p.degree > 0 else Fraction(1)


# ---------------------------------------------------------------- real roots

@dataclass(frozen=True)
class RootEnclosure:
    lower: Fraction
    upper: Fraction
    exact: bool = False

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def mid(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def __float__(self):
        return float(self.mid)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lower <= x <= self.upper

    def to_json(self, digits: int = 30) -> dict:
        return {"lo": _fmt(self.lower, digits), "hi": _fmt(self.upper, digits)}


def _fmt(x: Fraction, digits: int) -> str:
    from mpmath import mp, mpf

    with mp.workdps(digits + 5):
        return mp.nstr(mpf(x.numerator) / x.denominator, digits)


class RealRootError(ValueError):
    pass


def largest_real_root(p: IntPolynomial, eps: Fraction = DEFAULT_EPS) -> RootEnclosure:
    """Enclosure of width <= eps around the largest real root of p."""
    if p.is_zero():
        raise RealRootError("zero polynomial")
    eps = Fraction(eps)
    sq = squarefree_part(p)
    if sq.degree < 1:
        raise RealRootError(f"{p} has no real root")
    seq = SturmSequence(sq)
    B = cauchy_bound(sq)
    if seq.count(-B, B) == 0:
        raise RealRootError(f"{p} has no real root")
    lo, hi = -B, B
    # isolate: keep (lo, hi] containing exactly the largest root
    while seq.count(lo, hi) > 1:
        mid = (lo + hi) / 2
        if seq.count(mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return refine_simple_root(sq, lo, hi, eps)


def refine_simple_root(sq: IntPolynomial, lo: Fraction, hi: Fraction, eps: Fraction) -> RootEnclosure:
    """Bisect on the sign of a squarefree polynomial with one root in (lo, hi]."""
    if sq.eval_fraction_sign(hi) == 0:
        return RootEnclosure(hi, hi, exact=True)
    s_hi = sq.eval_fraction_sign(hi)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        s = sq.eval_fraction_sign(mid)
        if s == 0:
            return RootEnclosure(mid, mid, exact=True)
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return RootEnclosure(lo, hi)


def refine(p: IntPolynomial, enc: RootEnclosure, eps: Fraction) -> RootEnclosure:
    """Narrow an existing enclosure of a root of p."""
    if enc.exact or enc.width <= eps:
        return enc
    return refine_simple_root(squarefree_part(p), enc.lower, enc.upper, Fraction(eps))


# ---------------------------------------------------------------- unit disk

def cayley_transform(p: IntPolynomial) -> IntPolynomial:
    """q(w) = (w-1)^n p((w+1)/(w-1)); |z| < 1 maps to Re w < 0."""
    n = p.degree
    out = [0] * (n + 1)
    # (w+1)^k (w-1)^(n-k)
    for k, a in enumerate(p.coeffs):
        if not a:
            continue
        plus = [comb(k, i) for i in range(k + 1)]
        minus = [comb(n - k, i) * (-1) ** (n - k - i) for i in range(n - k + 1)]
        for i, x in enumerate(plus):
            for j, y in enumerate(minus):
                out[i + j] += a * x * y
    return IntPolynomial(out)


def left_half_plane_count(q: IntPolynomial) -> int:
    """Roots with Re w < 0, assuming none on the imaginary axis."""
    n = q.degree
    re_part = [0] * (n + 1)
    im_part = [0] * (n + 1)
    for k, b in enumerate(q.coeffs):
        unit = (1, 1, -1, -1)[k % 4]
        if k % 2 == 0:
            re_part[k] = unit * b
        else:
            im_part[k] = unit * b
    R, I = IntPolynomial(re_part), IntPolynomial(im_part)
    if n % 2 == 0:
        # n_L - n_R = -Ind(I/R)
        index = _cauchy_index(R, I)
        diff = -index
    else:
        diff = _cauchy_index(I, R)
    if (n + diff) % 2:
        raise ArithmeticError("inconsistent Cauchy index")
    return (n + diff) // 2


def _cauchy_index(den: IntPolynomial, num: IntPolynomial) -> int:
    """Ind_{-oo}^{+oo}(num/den) via the generalized Sturm sequence."""
    if num.is_zero():
        return 0
    seq = signed_remainder_sequence(den, num)
    lo = [_sign(q.lead) * (-1) ** q.degree for q in seq if not q.is_zero()]
    hi = [_sign(q.lead) for q in seq if not q.is_zero()]
    return _variations(lo) - _variations(hi)


def trace_polynomial(p: IntPolynomial) -> IntPolynomial:
    """T with p(t) = t^m T(t + 1/t) for a self-reciprocal p of even degree 2m."""
    if p.reciprocity_sign() != 1 or p.degree % 2:
        raise ValueError("trace polynomial needs a self-reciprocal polynomial of even degree")
    m = p.degree // 2
    a = p.coeffs
    # D_0 = 2, D_1 = x, D_{j+1} = x D_j - D_{j-1}, with D_j = t^j + t^-j
    x = IntPolynomial([0, 1])
    D = [IntPolynomial([2]), x]
    for j in range(2, m + 1):
        D.append(x * D[-1] - D[-2])
    T = IntPolynomial([a[m]])
    for j in range(1, m + 1):
        T = T + D[j] * a[m + j]
    return T


@dataclass
class DiskCount:
    inside: int
    on_circle: int
    outside: int


def unit_disk_count(p: IntPolynomial) -> DiskCount:
    """Distinct roots of p strictly inside, on, and outside the unit circle.

    Works on the squarefree part.  Roots on the circle are located exactly
    through ``gcd(p, reversed p)`` and its trace polynomial.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    s = squarefree_part(p)
    z = s.trailing_zeros()
    inside = 0
    if z:
        inside += 1  # the root 0 (simple in the squarefree part)
        s = IntPolynomial(s.coeffs[z:])
    if s.degree <= 0:
        return DiskCount(inside, 0, 0)
    g = poly_gcd(s, s.reversed())
    if g.degree > 0:
        h = s.exact_div(g)
        on = _circle_roots_of_symmetric(g)
        g_inside = (g.degree - on) // 2
    else:
        h, on, g_inside = s, 0, 0
    h_inside = 0
    if h.degree > 0:
        q = cayley_transform(h)
        deficit = h.degree - q.degree  # roots at z = 1 would drop the degree
        if deficit:
            raise ArithmeticError("unexpected root at z = 1 outside the reciprocal part")
        h_inside = left_half_plane_count(q)
    inside += g_inside + h_inside
    total = s.degree + (1 if z else 0)
    return DiskCount(inside, on, total - inside - on)


def _circle_roots_of_symmetric(g: IntPolynomial) -> int:
    """Roots on |z| = 1 of a squarefree polynomial closed under z -> 1/z."""
    count = 0
    for r in (1, -1):
        lin = IntPolynomial([-r, 1])
        if g(r) == 0:
            g = g.exact_div(lin)
            count += 1
    if g.degree == 0:
        return count
    g = g.primitive()
    if g.reciprocity_sign() != 1:
        g = -g if (-g).reciprocity_sign() == 1 else g
    T = trace_polynomial(g)
    # roots of T in (-2, 2) give conjugate pairs on the circle
    inner = sturm_count(T, -2, 2) - (1 if T(2) == 0 else 0)
    return count + 2 * inner


# ---------------------------------------------------------------- classify

CLASSES = ("One", "Salem", "Pisot", "Other")


@dataclass
class ClassifiedNumber:
    klass: str
    minimal_factor: IntPolynomial
    enclosure: RootEnclosure
    cyclotomic_factors: list
    t_power: int = 0
    certificate: dict = field(default_factory=dict)

    @property
    def radius(self) -> float:
        return float(self.enclosure)

    def to_json(self) -> dict:
        return {
            "class": self.klass,
            "minimal_factor": [str(c) for c in self.minimal_factor.coeffs],
            "radius": self.enclosure.to_json(),
            "cyclotomic": [[m, k] for m, k in self.cyclotomic_factors],
        }


def classify(p: IntPolynomial, eps: Fraction = DEFAULT_EPS) -> ClassifiedNumber:
    """Strip trivial factors, then certify One / Salem / Pisot / Other."""
    q, cyc, e = strip_cyclotomic(p)
    if q.lead < 0:
        q = -q
    if q.degree <= 0:
        return ClassifiedNumber(
            "One", q, RootEnclosure(Fraction(1), Fraction(1), exact=True), cyc, e,
            {"reason": "only cyclotomic and t-power factors"},
        )
    sq = squarefree_part(q)
    seq = SturmSequence(sq)
    B = cauchy_bound(sq)
    above_one = seq.count(1, B)
    disk = unit_disk_count(sq)
    recip = q.reciprocity_sign()
    cert = {
        "roots_above_1": above_one,
        "inside": disk.inside,
        "on_circle": disk.on_circle,
        "outside": disk.outside,
        "reciprocal": recip,
        "squarefree": sq.degree == q.degree,
    }
    deg = sq.degree
    klass = "Other"
    if above_one == 1 and disk.outside == 1:
        if recip == 1 and deg >= 4 and disk.on_circle == deg - 2:
            T = trace_polynomial(sq)
            tseq = SturmSequence(T)
            cert["trace_above_2"] = tseq.count(2, cauchy_bound(T))
            cert["trace_in_interval"] = tseq.count(-2, 2)
            if cert["trace_above_2"] == 1 and cert["trace_in_interval"] == T.degree - 1:
                klass = "Salem"
        elif disk.inside == deg - 1:
            klass = "Pisot"
    if seq.count(-B, B) == 0:
        enc = RootEnclosure(Fraction(1), Fraction(1), exact=True)
    else:
        enc = largest_real_root(sq, eps)
    return ClassifiedNumber(klass, q, enc, cyc, e, cert)


def spectral_radius(p: IntPolynomial, eps: Fraction = DEFAULT_EPS) -> RootEnclosure:
    """Largest real root of p, or exactly 1 when the stripped factor is trivial."""
    q, _, _ = strip_cyclotomic(p)
    if q.degree <= 0:
        return RootEnclosure(Fraction(1), Fraction(1), exact=True)
    return largest_real_root(q, eps)


def separate(p1: IntPolynomial, e1: RootEnclosure, p2: IntPolynomial, e2: RootEnclosure,
             floor: Fraction = Fraction(1, 10**30)) -> Optional[int]:
    """Refine two enclosures until ordered; -1 if root1 < root2, 1 if >, None on tie."""
    eps = min(e1.width, e2.width) or floor
    while True:
        if e1.upper < e2.lower:
            return -1
        if e2.upper < e1.lower:
            return 1
        if e1.exact and e2.exact and e1.lower == e2.lower:
            return None
        if eps < floor:
            return None
        eps = eps / 2**16
        e1 = refine(p1, e1, eps)
        e2 = refine(p2, e2, eps)
