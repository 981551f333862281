"""Spectral radii over catalogs: Salem scans, Pisot scans, monotonicity, limits."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .charpoly import char_poly_of, delete_indices
from .enumerator import M2_DISPLAYED, enumerate_Md, truncations
from .lattice import Matrix, as_matrix
from .orbit import OrbitData
from .poly import IntPolynomial, T
from .polyarith import (
    DEFAULT_EPS,
    ClassifiedNumber,
    RootEnclosure,
    classify,
    separate,
)

# ---------------------------------------------------------------- named data

EXAMPLE_M: Matrix = (
    (3, 1, 2, 1, 1, 1),
    (-2, -1, -1, -1, -1, -1),
    (-1, 0, -1, 0, -1, 0),
    (-1, -1, -1, 0, 0, 0),
    (-1, 0, -1, -1, 0, 0),
    (-1, 0, -1, 0, 0, -1),
)
EXAMPLE_N = (3, 2, 4, 1, 2)
EXAMPLE_FACTOR = IntPolynomial.from_descending([1, -2, 1, -2, 0, 1, -1, 1, 0, -2, 1, -2, 1])

M2_1, M2_2, M2_3 = M2_DISPLAYED
M2_PRIME: Matrix = ((2, 1, 1), (-1, -1, 0), (-1, 0, -1))
M3_PRIME: Matrix = ((2, 1, 1), (-1, -1, -1), (-1, 0, -1))
M_PRIME: Matrix = ((2, 1), (-1, -1))

# degree-3 datum whose lengths (1, 2, 1, 3, n) also approach p_star
REMARK_M3: Matrix = (
    (3, 1, 2, 1, 1, 1),
    (-2, -1, -1, -1, -1, -1),
    (-1, -1, -1, 0, 0, 0),
    (-1, 0, -1, 0, 0, -1),
    (-1, 0, -1, -1, 0, 0),
    (-1, 0, -1, 0, -1, 0),
)
P_STAR = IntPolynomial.from_descending([1, -2, 1, -1, 1, -1, 1, -1])
LEHMER = IntPolynomial.from_descending([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
GOLDEN = IntPolynomial.from_descending([1, -1, -1])


def f3(n1: int, n2: int) -> IntPolynomial:
    return char_poly_of(M3_PRIME, (n1, n2))


def f2(n1: int, n2: int) -> IntPolynomial:
    return char_poly_of(M2_PRIME, (n1, n2))


def f(n1: int) -> IntPolynomial:
    return char_poly_of(M_PRIME, (n1,))


# ---------------------------------------------------------------- theta family

_BASE = T * T - T - 1


def theta(kind, n: int | None = None) -> IntPolynomial:
    """theta_1(n), theta_2(n), theta_3(n) or theta_s (kind "s")."""
    kind = str(kind)
    if kind == "s":
        return IntPolynomial.from_descending([1, -2, 1, 0, -1, 1, -1])
    if n is None or n < 1:
        raise ValueError("theta_1..3 need n >= 1")
    if kind == "1":
        return IntPolynomial.monomial(n) * _BASE + T * T - 1
    if kind == "2":
        num = IntPolynomial.monomial(2 * n) * _BASE + 1
        return num.exact_div(T - 1)
    if kind == "3":
        num = IntPolynomial.monomial(2 * n + 1) * _BASE + 1
        return num.exact_div(T * T - 1)
    raise ValueError(f"unknown theta kind {kind!r}")


_SMALL_PISOT = {
    1: ("1", 1), 2: ("1", 2), 3: ("1", 3), 4: ("3", 1), 5: ("1", 4),
    6: ("2", 2), 7: ("1", 5), 8: ("s", None), 9: ("3", 2),
}


@dataclass(frozen=True)
class PisotCatalogEntry:
    m: int
    kind: str
    arg: int | None
    poly: IntPolynomial
    enclosure: RootEnclosure

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "theta": self.kind,
            "n": self.arg,
            "poly": [str(c) for c in self.poly.coeffs],
            "radius": self.enclosure.to_json(),
        }


def pisot_dispatch(m: int) -> tuple[str, int | None]:
    if m < 1:
        raise ValueError("m must be >= 1")
    if m in _SMALL_PISOT:
        return _SMALL_PISOT[m]
    if m % 2 == 0:
        return "1", m // 2 + 1
    if m % 4 == 3:
        return "2", (m - 3) // 4 + 1
    return "3", (m - 1) // 4


def pisot_catalog(m: int, eps: Fraction = DEFAULT_EPS) -> PisotCatalogEntry:
    kind, arg = pisot_dispatch(m)
    p = theta(kind, arg)
    return PisotCatalogEntry(m, kind, arg, p, classify_cached(p, eps).enclosure)


# ---------------------------------------------------------------- scans

@lru_cache(maxsize=200_000)
def classify_cached(p: IntPolynomial, eps: Fraction = DEFAULT_EPS) -> ClassifiedNumber:
    return classify(p, eps)


def compositions(k: int, total: int) -> Iterator[tuple[int, ...]]:
    """Positive k-tuples with the given sum, in lexicographic order."""
    if k == 0:
        if total == 0:
            yield ()
        return
    if k == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in compositions(k - 1, total - first):
            yield (first,) + rest


def length_vectors(k: int, max_total: int, min_total: int | None = None) -> Iterator[tuple[int, ...]]:
    """All positive k-tuples with sum <= max_total, by sum then lexicographically."""
    for total in range(max(k, min_total or k), max_total + 1):
        yield from compositions(k, total)


@dataclass
class SpectrumEntry:
    orbit_data: OrbitData
    char_poly: IntPolynomial
    classified: ClassifiedNumber
    provenance: dict = field(default_factory=dict)
    index: int = 0

    @property
    def radius_gt_one(self) -> bool:
        return self.classified.klass != "One"

    @property
    def expected_class(self) -> str:
        return "Pisot" if self.orbit_data.truncated else "Salem"

    @property
    def consistent(self) -> bool:
        """Radius 1, or the class predicted by the dichotomy."""
        return not self.radius_gt_one or self.classified.klass == self.expected_class

    def to_json(self) -> dict:
        out = {
            "index": self.index,
            "M": [[str(x) for x in row] for row in self.orbit_data.M],
            "n": list(self.orbit_data.n),
            "truncated": self.orbit_data.truncated,
            "char_poly": [str(c) for c in self.char_poly.coeffs],
        }
        out.update(self.classified.to_json())
        out["provenance"] = self.provenance
        return out


class ScanAborted(RuntimeError):
    def __init__(self, emitted: int):
        super().__init__(f"scan aborted after {emitted} entries (resource limit)")
        self.emitted = emitted


def _scan(sources: Iterable[tuple[Matrix, dict]], max_total: int, truncated: bool,
          eps: Fraction, max_entries: int | None) -> Iterator[SpectrumEntry]:
    idx = 0
    for M, prov in sources:
        k = len(M) - 1
        if k < 1:
            continue
        for n in length_vectors(k, max_total):
            if max_entries is not None and idx >= max_entries:
                raise ScanAborted(idx)
            od = OrbitData(M, n, truncated=truncated)
            p = char_poly_of(M, n)
            yield SpectrumEntry(od, p, classify_cached(p, eps), prov, idx)
            idx += 1


def scan_sources(d: int, mode: str) -> list[tuple[Matrix, dict]]:
    """The matrices a scan walks through, with provenance, in scan order."""
    if mode == "salem":
        cat = enumerate_Md(d)
        return [(M, {"degree": d, "rep": i}) for i, M in enumerate(cat.representatives)]
    if mode == "pisot":
        tc = truncations(enumerate_Md(d))
        return [
            (M, {"degree": d, "truncation": i, "kept": list(tc.members[M][1])})
            for i, M in enumerate(tc.members)
        ]
    raise ValueError(f"unknown scan mode {mode!r}")


def scan_salem(d: int, max_total_length: int, eps: Fraction = DEFAULT_EPS,
               max_entries: int | None = None) -> Iterator[SpectrumEntry]:
    """Every (M, n) with M in the degree-d catalog and sum(n) <= bound.

    The stored representatives are closed under column permutation, and
    conjugates give equal polynomials once n is permuted along, so iterating
    representatives against all length vectors covers the whole orbit.
    """
    return _scan(scan_sources(d, "salem"), max_total_length, False, eps, max_entries)


def scan_pisot(d: int, max_total_length: int, eps: Fraction = DEFAULT_EPS,
               max_entries: int | None = None) -> Iterator[SpectrumEntry]:
    """Same as :func:`scan_salem` over the truncations of the degree-d catalog."""
    return _scan(scan_sources(d, "pisot"), max_total_length, True, eps, max_entries)


def scan_one(M: Matrix, prov: dict, max_total: int, truncated: bool,
             eps: Fraction = DEFAULT_EPS) -> list[SpectrumEntry]:
    """Entries of a single source matrix (the unit of parallel work)."""
    return list(_scan([(M, prov)], max_total, truncated, eps, None))


# ---------------------------------------------------------------- monotonicity

@dataclass
class MonotoneVerdict:
    increasing: bool | None  # None when no separation was reached
    radius_from: ClassifiedNumber
    radius_to: ClassifiedNumber

    def to_json(self) -> dict:
        return {
            "increasing": self.increasing,
            "from": self.radius_from.to_json(),
            "to": self.radius_to.to_json(),
        }


def compare_radii(a: ClassifiedNumber, b: ClassifiedNumber) -> int | None:
    """-1, 0 or 1 comparing two radii; None if undecided at the width floor."""
    one_a = a.klass == "One"
    one_b = b.klass == "One"
    if one_a and one_b:
        return 0
    if one_a:
        return -1
    if one_b:
        return 1
    if a.minimal_factor == b.minimal_factor:
        return 0
    res = separate(a.minimal_factor, a.enclosure, b.minimal_factor, b.enclosure)
    return res


def monotonicity_check(M: Sequence[Sequence[int]], n1: Sequence[int], n2: Sequence[int],
                       truncated: bool = False, eps: Fraction = DEFAULT_EPS) -> MonotoneVerdict:
    """Certify radius(M, n1) < radius(M, n2) for n1 <= n2 componentwise."""
    M = as_matrix(M)
    n1, n2 = tuple(n1), tuple(n2)
    if len(n1) != len(n2):
        raise ValueError("length vectors differ in size")
    if n1 == n2 or any(a > b for a, b in zip(n1, n2)):
        raise ValueError("need n1 <= n2 componentwise with n1 != n2")
    OrbitData(M, n1, truncated)
    OrbitData(M, n2, truncated)
    c1 = classify_cached(char_poly_of(M, n1), eps)
    if c1.klass == "One":
        raise ValueError("monotonicity needs radius(n1) > 1")
    c2 = classify_cached(char_poly_of(M, n2), eps)
    cmp = compare_radii(c1, c2)
    return MonotoneVerdict(None if cmp is None else cmp < 0, c1, c2)


# ---------------------------------------------------------------- limits

@dataclass
class LimitEntry:
    M: Matrix
    deleted: tuple[int, ...]
    fixed: dict[int, int]
    limit: ClassifiedNumber
    witness: list[tuple[int, ClassifiedNumber]]
    increasing: bool
    below_limit: bool

    @property
    def ok(self) -> bool:
        return self.increasing and self.below_limit

    def to_json(self) -> dict:
        return {
            "M": [[str(x) for x in row] for row in self.M],
            "deleted": list(self.deleted),
            "fixed": {str(k): v for k, v in self.fixed.items()},
            "limit": self.limit.to_json(),
            "witness": [[m, c.enclosure.to_json()] for m, c in self.witness],
            "increasing": self.increasing,
            "below_limit": self.below_limit,
        }


def limit_entry(M: Matrix, deleted: Iterable[int], fixed: dict[int, int],
                witness_range: Iterable[int], eps: Fraction = DEFAULT_EPS) -> LimitEntry:
    """Radii of (M, n) with n_i = m on the deleted set, against the limit polynomial."""
    M = as_matrix(M)
    k = len(M) - 1
    deleted = tuple(sorted(set(deleted)))
    if not deleted:
        raise ValueError("need at least one index tending to infinity")
    kept = [i for i in range(1, k + 1) if i not in deleted]
    if sorted(fixed) != kept:
        raise ValueError(f"fixed lengths must cover exactly {kept}")
    if kept:
        lim_poly = char_poly_of(delete_indices(M, deleted), [fixed[i] for i in kept])
    else:
        lim_poly = IntPolynomial([-M[0][0], 1])
    lim = classify_cached(lim_poly, eps)
    witness = []
    for m in witness_range:
        n = [m if i in deleted else fixed[i] for i in range(1, k + 1)]
        c = classify_cached(char_poly_of(M, n), eps)
        if c.klass != "One":
            witness.append((m, c))
    increasing = all(
        compare_radii(a[1], b[1]) == -1 for a, b in zip(witness, witness[1:])
    )
    below = all(compare_radii(c, lim) == -1 for _, c in witness)
    return LimitEntry(M, deleted, dict(fixed), lim, witness, increasing, below)


def limit_scan(d: int, bound: int, witness_terms: int = 6,
               eps: Fraction = DEFAULT_EPS) -> Iterator[LimitEntry]:
    """Limit entries over catalog representatives, deleted index sets and fixed lengths.

    Fixed lengths on the kept indices range over vectors with sum <= bound;
    the witness runs n_i = bound+1 .. bound+witness_terms on the deleted set.
    """
    cat = enumerate_Md(d)
    for M in cat.representatives:
        k = len(M) - 1
        for size in range(1, k + 1):
            for deleted in combinations(range(1, k + 1), size):
                kept = [i for i in range(1, k + 1) if i not in deleted]
                for lengths in (length_vectors(len(kept), bound) if kept else [()]):
                    fixed = dict(zip(kept, lengths))
                    yield limit_entry(
                        M, deleted, fixed, range(bound + 1, bound + 1 + witness_terms), eps
                    )
