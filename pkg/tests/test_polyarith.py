from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from weylspectrum.poly import IntPolynomial, T
from weylspectrum.polyarith import (
    RealRootError,
    cauchy_bound,
    cayley_transform,
    classify,
    cyclotomic,
    euler_phi,
    largest_real_root,
    separate,
    spectral_radius,
    strip_cyclotomic,
    sturm_count,
    trace_polynomial,
    unit_disk_count,
)
from weylspectrum.spectrum import GOLDEN, LEHMER, P_STAR

EPS = Fraction(1, 10**12)

# factor -> (inside, on circle, outside), counted on distinct roots
POOL = {
    "phi1": (cyclotomic(1), (0, 1, 0)),
    "phi6": (cyclotomic(6), (0, 2, 0)),
    "phi12": (cyclotomic(12), (0, 4, 0)),
    "golden": (GOLDEN, (1, 0, 1)),
    "pisot3": (T ** 3 - T - 1, (2, 0, 1)),
    "lehmer": (LEHMER, (1, 8, 1)),
    "half": (2 * T - 1, (1, 0, 0)),
    "three": (T - 3, (0, 0, 1)),
    "wide": (T * T + T + 2, (0, 0, 2)),
}


def test_cyclotomic_polynomials():
    assert cyclotomic(1) == T - 1
    assert cyclotomic(6) == T * T - T + 1
    assert cyclotomic(12) == IntPolynomial([1, 0, -1, 0, 1])
    for m in range(1, 40):
        assert cyclotomic(m).degree == euler_phi(m)
    with pytest.raises(ValueError):
        cyclotomic(0)


def test_strip_cyclotomic_recovers_factors():
    p = T ** 2 * cyclotomic(1) ** 2 * cyclotomic(12) * LEHMER
    q, cyc, e = strip_cyclotomic(p)
    assert q == LEHMER and e == 2
    assert cyc == [(1, 2), (12, 1)]
    with pytest.raises(ValueError):
        strip_cyclotomic(IntPolynomial())


def test_sturm_counts():
    p = (T - 1) * (T - 2) * (T - 3)
    assert sturm_count(p, 0, 4) == 3
    assert sturm_count(p, Fraction(3, 2), Fraction(5, 2)) == 1
    assert sturm_count(p, 1, 3) == 2  # half-open (1, 3]
    assert sturm_count(T * T + 1, -10, 10) == 0
    assert sturm_count((T - 1) ** 3, 0, 2) == 1
    with pytest.raises(ValueError):
        sturm_count(p, 2, 1)


@given(st.sets(st.sampled_from(sorted(POOL)), min_size=1))
def test_unit_disk_count_on_known_products(names):
    p = IntPolynomial([1])
    want = [0, 0, 0]
    for name in names:
        f, cnt = POOL[name]
        p = p * f
        want = [a + b for a, b in zip(want, cnt)]
    got = unit_disk_count(p)
    assert (got.inside, got.on_circle, got.outside) == tuple(want)
    got2 = unit_disk_count(p * p)
    assert (got2.inside, got2.on_circle, got2.outside) == tuple(want)


@settings(max_examples=80)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=8))
def test_unit_disk_count_matches_numeric_roots(coeffs):
    p = IntPolynomial(coeffs)
    assume(p.degree >= 2 and p.coeffs[0] != 0)
    roots = mpmath.polyroots(list(reversed(p.coeffs)), maxsteps=200, extraprec=200)
    mods = [abs(r) for r in roots]
    assume(all(abs(m - 1) > 1e-6 for m in mods))
    distinct = []
    for r in roots:
        if all(abs(r - s) > 1e-8 for s in distinct):
            distinct.append(r)
    inside = sum(1 for r in distinct if abs(r) < 1)
    got = unit_disk_count(p)
    assert got.on_circle == 0
    assert (got.inside, got.outside) == (inside, len(distinct) - inside)


def test_cayley_transform_maps_disk_to_half_plane():
    q = cayley_transform(2 * T - 1)  # root 1/2 -> w = (z+1)/(z-1) = -3
    assert q(-3) == 0


def test_trace_polynomial_of_lehmer():
    tr = trace_polynomial(LEHMER)
    assert tr.degree == 5
    z = mpmath.findroot(lambda x: LEHMER(x), 1.17628)
    assert abs(tr(float(z + 1 / z))) < 1e-9
    with pytest.raises(ValueError):
        trace_polynomial(GOLDEN)


def test_largest_real_root():
    enc = largest_real_root(T * T - 2, EPS)
    assert enc.width <= EPS and enc.contains(Fraction(14142135623730, 10**13))
    assert largest_real_root(T - 5).contains(5)
    with pytest.raises(RealRootError):
        largest_real_root(T * T + 1)
    assert spectral_radius(cyclotomic(7) * (T - 1)).exact


@pytest.mark.parametrize("poly, klass, radius", [
    (LEHMER, "Salem", 1.17628081825991),
    (T ** 3 - T - 1, "Pisot", 1.32471795724475),
    (cyclotomic(12), "One", 1.0),
    (P_STAR, "Pisot", 1.64073301),
    (GOLDEN * (T - 1), "Pisot", 1.61803398874989),
    (T * T - 2, "Other", 1.41421356237310),
    (T ** 4 - T ** 3 - T ** 2 - T + 1, "Salem", 1.72208380573904),
    (T ** 4 - 4 * T ** 3 + 2 * T ** 2 - 4 * T + 1, "Pisot", 3.73205080756888),
])
def test_classify_values(poly, klass, radius):
    c = classify(poly, EPS)
    assert c.klass == klass
    assert abs(c.radius - radius) < 1e-4
    assert set(c.to_json()) == {"class", "minimal_factor", "radius", "cyclotomic"}


def test_classify_reports_stripped_factors():
    c = classify(-(T ** 3) * cyclotomic(1) * LEHMER)
    assert c.minimal_factor == LEHMER
    assert c.t_power == 3 and c.cyclotomic_factors == [(1, 1)]
    assert c.certificate["on_circle"] == 8


def test_separate_orders_close_roots():
    a = T * T - 2
    b = 1000 * T - 1415
    ea, eb = largest_real_root(a, Fraction(1, 10)), largest_real_root(b, Fraction(1, 10))
    assert separate(a, ea, b, eb) == -1
    assert separate(b, eb, a, ea) == 1
    e1 = largest_real_root(T - 2)
    assert separate(T - 2, e1, 2 * T - 4, e1) is None


@settings(max_examples=80)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=9))
def test_enclosure_isolates_the_largest_root(coeffs):
    p = IntPolynomial(coeffs)
    assume(p.degree >= 1)
    try:
        enc = largest_real_root(p, Fraction(1, 10**6))
    except RealRootError:
        return
    B = cauchy_bound(p)
    if enc.exact:
        assert p.eval_fraction_sign(enc.lower) == 0
        if enc.lower < B:
            assert sturm_count(p, enc.lower, B) == 0
        return
    assert sturm_count(p, enc.lower, enc.upper) == 1
    assert sturm_count(p, enc.upper, B + 1) == 0
    assert enc.width <= Fraction(1, 10**6)
