"""Named reproduction suites, one per acceptance criterion."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp

from .charpoly import char_poly_of, limit_poly
from .enumerator import M2_DISPLAYED, base_M2, canonicalize, enumerate_Md, truncations
from .orbit import OrbitData, expand
from .poly import IntPolynomial, T
from .polyarith import classify
from .realizer import assembled_determinant, solve_truncated, system_determinant
from .spectrum import (
    EXAMPLE_FACTOR,
    EXAMPLE_M,
    EXAMPLE_N,
    GOLDEN,
    LEHMER,
    M2_3,
    P_STAR,
    classify_cached,
    compare_radii,
    f,
    f2,
    f3,
    pisot_catalog,
    scan_pisot,
    scan_salem,
    theta,
)

DISPLAYED_M3 = (
    (3, 2, 1, 1, 1, 1),
    (-2, -1, -1, -1, -1, -1),
    (-1, -1, -1, 0, 0, 0),
    (-1, -1, 0, -1, 0, 0),
    (-1, -1, 0, 0, -1, 0),
    (-1, -1, 0, 0, 0, -1),
)
DISPLAYED_M4_1 = (
    (4, 3, 1, 1, 1, 1, 1, 1),
    (-3, -2, -1, -1, -1, -1, -1, -1),
    (-1, -1, -1, 0, 0, 0, 0, 0),
    (-1, -1, 0, -1, 0, 0, 0, 0),
    (-1, -1, 0, 0, -1, 0, 0, 0),
    (-1, -1, 0, 0, 0, -1, 0, 0),
    (-1, -1, 0, 0, 0, 0, -1, 0),
    (-1, -1, 0, 0, 0, 0, 0, -1),
)
DISPLAYED_M4_2 = (
    (4, 2, 2, 2, 1, 1, 1),
    (-2, -1, -1, -1, -1, -1, 0),
    (-2, -1, -1, -1, -1, 0, -1),
    (-2, -1, -1, -1, 0, -1, -1),
    (-1, -1, -1, 0, 0, 0, 0),
    (-1, -1, 0, -1, 0, 0, 0),
    (-1, 0, -1, -1, 0, 0, 0),
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    elapsed: float
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "details": self.details,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
        }

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} ({self.elapsed:.2f}s)"


def dense_charpoly(A) -> IntPolynomial:
    """det(t.Id - A) by Berkowitz's division-free recurrence."""
    n = len(A)
    vec = [1]
    for k in range(n):
        R = A[k][:k]
        v = [A[i][k] for i in range(k)]
        col = [1, -A[k][k]]
        for _ in range(k):
            col.append(-sum(R[i] * v[i] for i in range(k)))
            v = [sum(A[i][j] * v[j] for j in range(k)) for i in range(k)]
        vec = [
            sum(col[i - j] * vec[j] for j in range(len(vec)) if 0 <= i - j < len(col))
            for i in range(k + 2)
        ]
    return IntPolynomial.from_descending(vec)


def _timed(name, fn):
    def run(**kw) -> SuiteResult:
        start = time.perf_counter()
        passed, details, failures = fn(**kw)
        return SuiteResult(name, passed, time.perf_counter() - start, details, failures)
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# ---------------------------------------------------------------- 1

def _worked_example():
    chi = char_poly_of(EXAMPLE_M, EXAMPLE_N)
    exact = chi == EXAMPLE_FACTOR * (T - 1)
    c = classify(chi, Fraction(1, 10**7))
    enc = c.enclosure
    # the quoted decimal "1.96683.." is a truncation of the root
    inside = Fraction(196683, 10**5) <= enc.lower and enc.upper < Fraction(196684, 10**5)
    narrow = enc.width <= Fraction(1, 10**6)
    failures = []
    if not exact:
        failures.append("char_poly differs from the displayed factorization")
    if not (inside and narrow):
        failures.append(f"enclosure {enc.to_json()} not within 1.96683.. at width 1e-6")
    return not failures, {"class": c.klass, "radius": enc.to_json()}, failures


# ---------------------------------------------------------------- 2

def _theta_identities():
    failures = []
    for n in range(1, 21):
        if f3(1, n) != theta(1, n):
            failures.append(f"f3(1,{n})")
        if f2(1, 2 * n + 2) != T * T * (T - 1) * theta(2, n):
            failures.append(f"f2(1,{2 * n + 2})")
        if f2(1, 2 * n + 3) != T * T * (T * T - 1) * theta(3, n):
            failures.append(f"f2(1,{2 * n + 3})")
    if f3(2, 3) != theta("s"):
        failures.append("f3(2,3)")
    if f(1) != GOLDEN:
        failures.append("f(1)")
    return not failures, {"checked": 62}, failures


# ---------------------------------------------------------------- 3

def _catalogs():
    failures = []
    m2 = base_M2()
    raw = {canonicalize(M) for M in M2_DISPLAYED}
    if len(M2_DISPLAYED) != 3 or len(raw) != 3 or set(m2.representatives) != raw:
        failures.append("M_2 is not the three displayed matrices")
    m3 = enumerate_Md(3)
    if len(m3.orbit_classes) != 1 or DISPLAYED_M3 not in m3:
        failures.append(f"M_3 has {len(m3.orbit_classes)} orbit classes")
    m4 = enumerate_Md(4)
    if len(m4.orbit_classes) != 2:
        failures.append(f"M_4 has {len(m4.orbit_classes)} orbit classes")
    elif not (DISPLAYED_M4_1 in m4 and DISPLAYED_M4_2 in m4) or \
            m4.orbit_of(DISPLAYED_M4_1) == m4.orbit_of(DISPLAYED_M4_2):
        failures.append("displayed M_4 representatives do not split the two classes")
    details = {
        "M2_raw": len(raw),
        "M3_orbit_classes": len(m3.orbit_classes),
        "M3_relabeling_classes": len(m3),
        "M4_orbit_classes": len(m4.orbit_classes),
        "M4_relabeling_classes": len(m4),
    }
    return not failures, details, failures


# ---------------------------------------------------------------- 4

def sample_orbit_data(rng: random.Random, max_degree=4, max_k=6, max_len=5) -> OrbitData:
    pool = []
    for d in range(2, max_degree + 1):
        pool.extend(M for M in enumerate_Md(d).representatives if len(M) - 1 <= max_k)
    M = rng.choice(pool)
    k = len(M) - 1
    if rng.random() < 0.3 and k > 1:
        keep = sorted(rng.sample(range(1, k + 1), rng.randint(1, k - 1)))
        idx = [0] + keep
        M = tuple(tuple(M[i][j] for j in idx) for i in idx)
        n = tuple(rng.randint(1, max_len) for _ in keep)
        return OrbitData(M, n, truncated=True)
    return OrbitData(M, tuple(rng.randint(1, max_len) for _ in range(k)))


def _master_oracle(count=500, seed=20240611):
    rng = random.Random(seed)
    failures = []
    untrunc = 0
    for _ in range(count):
        od = sample_orbit_data(rng)
        chi = char_poly_of(od.M, od.n)
        if chi != dense_charpoly(expand(od).matrix):
            failures.append({"M": od.M, "n": od.n, "check": "det"})
        if not od.truncated:
            untrunc += 1
            if chi.reciprocity_sign() == 0:
                failures.append({"M": od.M, "n": od.n, "check": "reciprocal"})
    return not failures, {"samples": count, "untruncated": untrunc, "seed": seed}, failures


# ---------------------------------------------------------------- 5

def _dichotomy(max_total=12, degrees=(2, 3)):
    failures = []
    counts = {}
    for d in degrees:
        for mode, scan in (("salem", scan_salem), ("pisot", scan_pisot)):
            tally = {}
            for e in scan(d, max_total):
                tally[e.classified.klass] = tally.get(e.classified.klass, 0) + 1
                if not e.consistent:
                    failures.append({
                        "degree": d, "mode": mode,
                        "M": e.orbit_data.M, "n": e.orbit_data.n,
                        "class": e.classified.klass,
                        "factor": str(e.classified.minimal_factor),
                    })
            counts[f"d{d}_{mode}"] = tally
    others = sum(t.get("Other", 0) for t in counts.values())
    return not failures, {"counts": counts, "other": others}, failures


# ---------------------------------------------------------------- 6

def _lehmer(max_total=14):
    failures = []
    hits = []
    lehmer = classify(LEHMER, Fraction(1, 10**20))
    below = []
    for e in scan_salem(2, max_total):
        if e.orbit_data.total_length == 10 and e.classified.minimal_factor == LEHMER:
            hits.append(list(e.orbit_data.n))
        if e.radius_gt_one and compare_radii(e.classified, lehmer) == -1:
            below.append({"M": e.orbit_data.M, "n": e.orbit_data.n})
    if not hits:
        failures.append("Lehmer factor absent at total length 10")
    failures.extend(below)
    return not failures, {"hits": len(hits), "example_n": hits[:1]}, failures


# ---------------------------------------------------------------- 7

def random_chain(rng: random.Random, degrees=(2, 3), max_len=6):
    while True:
        d = rng.choice(degrees)
        M = rng.choice(enumerate_Md(d).representatives)
        k = len(M) - 1
        n = tuple(rng.randint(1, max_len) for _ in range(k))
        if classify_cached(char_poly_of(M, n)).klass == "One":
            continue
        while True:
            inc = [rng.randint(0, 2) for _ in range(k)]
            if any(inc):
                break
        return M, n, tuple(a + b for a, b in zip(n, inc))


def _monotonicity(count=100, seed=7):
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        M, n1, n2 = random_chain(rng)
        c1 = classify_cached(char_poly_of(M, n1))
        c2 = classify_cached(char_poly_of(M, n2))
        if compare_radii(c1, c2) != -1:
            failures.append({"M": M, "from": n1, "to": n2,
                             "radii": [c1.radius, c2.radius]})
    return not failures, {"chains": count, "seed": seed}, failures


# ---------------------------------------------------------------- 8

def _limits():
    failures = []
    star = classify(P_STAR, Fraction(1, 10**12))
    if star.klass != "Pisot" or abs(float(star.enclosure) - 1.64073) > 1e-5:
        failures.append(f"p_star enclosure {star.enclosure.to_json()}")
    radii = [classify_cached(char_poly_of(M2_3, (2, 4, n))) for n in range(5, 26)]
    for n, (a, b) in enumerate(zip(radii, radii[1:]), start=5):
        if compare_radii(a, b) != -1:
            failures.append(f"radius not increasing at n={n}")
    for n, c in enumerate(radii, start=5):
        if compare_radii(c, star) != -1:
            failures.append(f"radius at n={n} not below p_star")
    lim = classify(limit_poly(OrbitData(M2_3, (2, 4, 5)), {3}))
    if lim.minimal_factor != P_STAR:
        failures.append(f"limit factor {lim.minimal_factor}")
    details = {"p_star": star.enclosure.to_json(), "radius_n25": radii[-1].enclosure.to_json()}
    return not failures, details, failures


# ---------------------------------------------------------------- 9

def _pisot_catalog(max_total=30):
    failures = []
    entries = [pisot_catalog(m) for m in range(1, 10)]
    golden = classify(GOLDEN)
    if abs(float(entries[0].enclosure) - 1.3247) > 1e-4:
        failures.append("P_1 radius")
    for e in entries:
        c = classify_cached(e.poly)
        if compare_radii(c, golden) != -1:
            failures.append(f"P_{e.m} not below the golden ratio")
    targets = {classify_cached(e.poly).minimal_factor: e.m for e in entries}
    found = {}
    for e in scan_pisot(2, max_total):
        m = targets.get(e.classified.minimal_factor)
        if m is not None and m not in found:
            found[m] = list(e.orbit_data.n)
    missing = sorted(set(targets.values()) - set(found))
    if missing:
        failures.append(f"not found in truncation scan: {missing}")
    details = {
        "radii": {e.m: e.enclosure.to_json(12) for e in entries},
        "found": {str(m): v for m, v in sorted(found.items())},
    }
    return not failures, details, failures


# ---------------------------------------------------------------- 10

def _realizer(count=50, seed=11, prec=256):
    rng = random.Random(seed)
    failures = []
    with mp.workprec(prec):
        for _ in range(count):
            n1, n2 = rng.randint(1, 12), rng.randint(1, 12)
            a = mpmath.mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
            closed = system_determinant(n1, n2, a, prec, check=False)
            assembled = assembled_determinant(n1, n2, a, prec)
            if abs(closed - assembled) > mpmath.mpf(10) ** -30 * abs(closed):
                failures.append(f"determinant mismatch at {(n1, n2)}")
    reports = {}
    for system, lengths, a in (("f3", (1, 1), 2), ("f", (1,), 3)):
        r = solve_truncated(system, lengths, a, K=1000, prec=prec)
        worst = max(r.params.residuals.values()) if r.params else None
        if not r.solved or worst is None or worst >= mpmath.mpf(10) ** -20:
            failures.append(f"{system}{lengths}: {r.status}")
        reports[system] = {
            "status": r.status,
            "max_residual": mpmath.nstr(worst, 5) if worst is not None else None,
            "K": r.params.nondegeneracy[0] if r.params else None,
            "min_margin": mpmath.nstr(r.params.nondegeneracy[1], 10) if r.params else None,
        }
    return not failures, {"determinants": count, "solves": reports}, failures


SUITES = {
    "worked-example": _timed("worked-example", _worked_example),
    "theta-identities": _timed("theta-identities", _theta_identities),
    "catalogs": _timed("catalogs", _catalogs),
    "master-oracle": _timed("master-oracle", _master_oracle),
    "dichotomy": _timed("dichotomy", _dichotomy),
    "lehmer": _timed("lehmer", _lehmer),
    "monotonicity": _timed("monotonicity", _monotonicity),
    "limits": _timed("limits", _limits),
    "pisot-catalog": _timed("pisot-catalog", _pisot_catalog),
    "realizer": _timed("realizer", _realizer),
}


def run_suite(name: str, **kw) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](**kw)
