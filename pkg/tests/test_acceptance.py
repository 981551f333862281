"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every criterion records one PASS/FAIL line, shown in the terminal summary
(or printed when this file is run directly).
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import mpmath
import pytest

from oracles import sympy_charpoly
from weylspectrum.charpoly import char_poly_of, limit_poly
from weylspectrum.enumerator import canonicalize, enumerate_Md, truncations
from weylspectrum.orbit import OrbitData, expand
from weylspectrum.poly import IntPolynomial, T
from weylspectrum.polyarith import classify
from weylspectrum.realizer import assembled_determinant, solve_truncated, system_determinant
from weylspectrum.spectrum import (
    EXAMPLE_M,
    M2_3,
    compare_radii,
    f,
    f2,
    f3,
    pisot_catalog,
    scan_pisot,
    scan_salem,
    theta,
)
from weylspectrum.suites import DISPLAYED_M3, DISPLAYED_M4_1, DISPLAYED_M4_2

LINES = []
EPS = Fraction(1, 10**12)
LEHMER = IntPolynomial.from_descending([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
P_STAR = IntPolynomial.from_descending([1, -2, 1, -1, 1, -1, 1, -1])
PHI = (1 + 5 ** 0.5) / 2


@contextmanager
def criterion(number, title, budget):
    """Time the body, record a PASS/FAIL line, then enforce the budget."""
    start = time.perf_counter()
    state = {"ok": False, "detail": ""}
    try:
        yield state
        state["ok"] = True
    except AssertionError as exc:
        state["detail"] = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        raise
    finally:
        elapsed = time.perf_counter() - start
        over = elapsed >= budget
        ok = state["ok"] and not over
        note = f"over budget {budget}s" if over else state["detail"]
        LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {number} {title} "
                     f"({elapsed:.2f}s){': ' + note if note and not ok else ''}")
    assert elapsed < budget, f"runtime {elapsed:.1f}s exceeds {budget}s"


def test_criterion_01_worked_example():
    with criterion(1, "worked example", 1):
        n = (3, 2, 4, 1, 2)
        factor = IntPolynomial.from_descending([1, -2, 1, -2, 0, 1, -1, 1, 0, -2, 1, -2, 1])
        chi = char_poly_of(EXAMPLE_M, n)
        assert chi == factor * (T - 1), f"chi = {chi}"
        enc = classify(chi, Fraction(1, 10**7)).enclosure
        assert enc.width <= Fraction(1, 10**6)
        # the anchor is given to five decimals
        half = Fraction(5, 10**6)
        assert abs(enc.lower - Fraction(196683, 10**5)) <= half
        assert abs(enc.upper - Fraction(196683, 10**5)) <= half


def test_criterion_02_theta_identities():
    with criterion(2, "theta identities", 1):
        for n in range(1, 21):
            assert f3(1, n) == theta(1, n), f"f3(1,{n})"
            assert f2(1, 2 * n + 2) == T * T * (T - 1) * theta(2, n), f"f2(1,{2 * n + 2})"
            assert f2(1, 2 * n + 3) == T * T * (T * T - 1) * theta(3, n), f"f2(1,{2 * n + 3})"
        assert f3(2, 3) == theta("s")
        assert f(1) == T * T - T - 1


def test_criterion_03_catalogs():
    enumerate_Md.cache_clear()
    with criterion(3, "catalog counts", 10):
        c2, c3, c4 = enumerate_Md(2), enumerate_Md(3), enumerate_Md(4)
        assert len(c2) == 3
        assert len(c3.orbit_classes) == 1 and DISPLAYED_M3 in c3
        assert len(c4.orbit_classes) == 2
        k1, k2 = c4.orbit_of(DISPLAYED_M4_1), c4.orbit_of(DISPLAYED_M4_2)
        assert k1 != k2 and {k1, k2} == set(c4.orbit_classes)
        assert len(DISPLAYED_M4_1) == 8 and len(DISPLAYED_M4_2) == 7


def _sample(rng, pool):
    M = rng.choice(pool)
    k = len(M) - 1
    if k > 1 and rng.random() < 0.25:
        keep = sorted(rng.sample(range(1, k + 1), rng.randint(1, k - 1)))
        idx = [0] + keep
        sub = tuple(tuple(M[i][j] for j in idx) for i in idx)
        return OrbitData(sub, tuple(rng.randint(1, 5) for _ in keep), truncated=True)
    return OrbitData(M, tuple(rng.randint(1, 5) for _ in range(k)))


def test_criterion_04_master_oracle():
    pool = [M for d in (2, 3, 4) for M in enumerate_Md(d).representatives if len(M) <= 7]
    rng = random.Random(1_000_003)
    with criterion(4, "master oracle", 60):
        untruncated = 0
        for _ in range(500):
            od = _sample(rng, pool)
            chi = char_poly_of(od.M, od.n)
            assert chi == sympy_charpoly(expand(od).matrix), f"det mismatch at {od}"
            if not od.truncated:
                untruncated += 1
                assert chi.reciprocity_sign() != 0, f"not reciprocal at {od}"
        assert untruncated > 250


@pytest.mark.xfail(strict=True, reason="truncations of degree-3 members give Salem radii, "
                                       "e.g. Lehmer's number at n=(1,1,8,1)")
def test_criterion_05_dichotomy():
    with criterion(5, "dichotomy", 300):
        bad = []
        for d in (2, 3):
            for e in scan_salem(d, 12):
                if e.radius_gt_one and e.classified.klass != "Salem":
                    bad.append(("salem", d, e.orbit_data, e.classified.klass))
            for e in scan_pisot(d, 12):
                if e.radius_gt_one and e.classified.klass != "Pisot":
                    bad.append(("pisot", d, e.orbit_data, e.classified.klass))
        others = sum(1 for b in bad if b[3] == "Other")
        assert not bad, f"{len(bad)} entries off the dichotomy ({others} Other), first {bad[0][2]}"


def test_criterion_06_lehmer():
    with criterion(6, "Lehmer search", 30):
        lehmer = classify(LEHMER).enclosure
        hits = 0
        for e in scan_salem(2, 10):
            if sum(e.orbit_data.n) == 10 and e.classified.minimal_factor == LEHMER:
                hits += 1
            if e.radius_gt_one:
                assert e.classified.enclosure.upper >= lehmer.lower, f"below Lehmer at {e.orbit_data}"
        assert hits >= 1


def test_criterion_07_monotonicity():
    rng = random.Random(424242)
    pools = {d: enumerate_Md(d).representatives for d in (2, 3)}
    with criterion(7, "monotonicity", 120):
        done = 0
        while done < 100:
            M = rng.choice(pools[rng.choice((2, 3))])
            k = len(M) - 1
            n1 = tuple(rng.randint(1, 6) for _ in range(k))
            c1 = classify(char_poly_of(M, n1), EPS)
            if c1.klass == "One":
                continue
            inc = [0] * k
            for i in rng.sample(range(k), rng.randint(1, k)):
                inc[i] = rng.randint(1, 3)
            n2 = tuple(a + b for a, b in zip(n1, inc))
            c2 = classify(char_poly_of(M, n2), EPS)
            assert compare_radii(c1, c2) == -1, f"not increasing: {M} {n1} -> {n2}"
            done += 1


def test_criterion_08_limits():
    with criterion(8, "limits", 10):
        star = classify(P_STAR, EPS)
        assert abs(float(star.enclosure) - 1.64073) < 1e-5
        radii = [classify(char_poly_of(M2_3, (2, 4, n)), EPS) for n in range(5, 26)]
        for n, (a, b) in enumerate(zip(radii, radii[1:]), start=5):
            assert compare_radii(a, b) == -1, f"not increasing at n={n}"
        for c in radii:
            assert c.enclosure.upper < star.enclosure.lower
        lim = classify(limit_poly(OrbitData(M2_3, (2, 4, 5)), {3}), EPS)
        assert lim.minimal_factor == P_STAR


def test_criterion_09_pisot_catalog():
    with criterion(9, "Pisot catalog", 300):
        entries = [pisot_catalog(m, EPS) for m in range(1, 10)]
        assert abs(float(entries[0].enclosure) - 1.3247) < 1e-4
        assert all(float(e.enclosure) < PHI - 1e-4 for e in entries)
        targets = {e.poly for e in entries}
        found = {e.classified.minimal_factor for e in scan_pisot(2, 30)} & targets
        missing = [e.m for e in entries if e.poly not in found]
        assert not missing, f"P_m not found for m in {missing}"


def test_criterion_10_realizer():
    rng = random.Random(99)
    with criterion(10, "realizer", 10):
        with mpmath.mp.workprec(256):
            for _ in range(50):
                n1, n2 = rng.randint(1, 15), rng.randint(1, 15)
                a = mpmath.mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
                if abs(a) < 0.25:
                    a += 1
                closed = system_determinant(n1, n2, a, check=False)
                assembled = assembled_determinant(n1, n2, a)
                assert abs(closed - assembled) <= mpmath.mpf(10) ** -30 * abs(closed)
            for system, lengths, a in (("f3", (1, 1), 2), ("f", (1,), 3)):
                rep = solve_truncated(system, lengths, a, K=1000, prec=256)
                assert rep.status == "solved", rep.status
                assert all(v < 1e-20 for v in rep.params.residuals.values())
                K, margin, at = rep.params.nondegeneracy
                assert K == 1000 and margin > 0 and at is not None


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
