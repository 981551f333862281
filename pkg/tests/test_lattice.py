import pytest
import sympy
from hypothesis import given, strategies as st

from weylspectrum.lattice import (
    LatticeError,
    WeylElement,
    bilinear_form,
    canonical_vector,
    check_noether,
    coxeter_exponent,
    det,
    identity,
    inverse_block,
    kappa_reflection,
    matmul,
    simple_reflection,
    simple_root,
    validate_weyl,
    weyl_degree,
)

CREMONA = ((2, 1, 1, 1), (-1, 0, -1, -1), (-1, -1, 0, -1), (-1, -1, -1, 0))


def _power(w, m):
    out = WeylElement.identity(w.rank)
    for _ in range(m):
        out = out @ w
    return out


@pytest.mark.parametrize("n", [3, 4, 6, 9])
def test_simple_reflections_are_weyl_involutions(n):
    for i in range(n):
        s = simple_reflection(i, n)
        assert validate_weyl(s).ok
        assert (s @ s).matrix == identity(n + 1)
        assert s.apply(simple_root(i, n)) == tuple(-x for x in simple_root(i, n))


@pytest.mark.parametrize("n", [3, 5, 8])
def test_coxeter_relations(n):
    for i in range(n):
        for j in range(n):
            m = coxeter_exponent(i, j)
            prod = simple_reflection(i, n) @ simple_reflection(j, n)
            assert _power(prod, m).matrix == identity(n + 1)
            if m > 1:
                assert _power(prod, m - 1).matrix != identity(n + 1)


def test_roots_have_norm_minus_two_and_fix_kappa():
    for n in (3, 7):
        kap = canonical_vector(n)
        for i in range(n):
            a = simple_root(i, n)
            assert bilinear_form(a, a) == -2
            assert bilinear_form(a, kap) == 0


def test_kappa_reflection_matches_s0_and_rejects_repeats():
    assert kappa_reflection(1, 2, 3, 5).matrix == simple_reflection(0, 5).matrix
    with pytest.raises(LatticeError):
        kappa_reflection(1, 1, 2, 4)
    with pytest.raises(LatticeError):
        kappa_reflection(1, 2, 9, 4)


@given(st.integers(3, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, n - 1), max_size=12))))
def test_words_in_generators_are_weyl_elements(data):
    n, word = data
    w = WeylElement.identity(n)
    for i in word:
        w = w @ simple_reflection(i, n)
    assert validate_weyl(w).ok
    assert weyl_degree(w) >= 1
    assert w.apply(canonical_vector(n)) == canonical_vector(n)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=5, max_size=5), min_size=5, max_size=5),
       st.integers(1, 5))
def test_bareiss_determinant_matches_sympy(rows, size):
    m = tuple(tuple(r[:size]) for r in rows[:size])
    assert det(m) == sympy.Matrix(m).det()


def test_validate_reports_witnesses():
    bad = ((2, 1, 1, 1), (-1, -1, 0, 0), (-1, 0, -1, 0), (-1, 0, 0, -1))
    res = validate_weyl(bad)
    assert not res.ok and res.witness == ("form", 0, 1)
    skew = ((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1))
    assert validate_weyl(skew).ok
    scaled = ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    assert validate_weyl(scaled).witness == ("kappa", 1)


def test_noether_on_cremona_and_violations():
    rep = check_noether(CREMONA)
    assert rep.ok and rep.degree_ok and rep.entry_bounds_ok
    broken = ((2, 2, 1, 0), (-1, 0, -1, -1), (-1, -1, 0, -1), (-1, -1, -1, 0))
    names = {v[0] for v in check_noether(broken).violations}
    assert {"sumsq_d", "pair_d"} <= names


def test_inverse_block_is_the_inverse():
    w = kappa_reflection(1, 2, 4, 5) @ simple_reflection(2, 5) @ simple_reflection(0, 5)
    m = w.matrix
    inv = inverse_block(m)
    assert matmul(m, inv) == identity(len(m))


def _random_words(seed, count):
    import random
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(3, 6)
        w = WeylElement.identity(n)
        for _ in range(rng.randint(1, 10)):
            w = w @ simple_reflection(rng.randrange(n), n)
        yield w


def test_noether_holds_on_positive_weyl_elements():
    qualifying = 0
    for w in _random_words(5, 3000):
        M = w.matrix
        if M[0][0] >= 2 and all(x > 0 for x in M[0][1:]) and all(-r[0] > 0 for r in M[1:]):
            qualifying += 1
            assert check_noether(M).ok
    assert qualifying > 100


def test_block_inverse_on_random_words():
    for w in _random_words(6, 300):
        assert matmul(inverse_block(w.matrix), w.matrix) == identity(w.rank + 1)
