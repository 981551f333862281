"""Recursive enumeration of the orbit-permutation catalogs M_d.

Catalog members are stored as canonical representatives of their classes
under simultaneous relabeling of indices 1..k (conjugation fixing 0).  The
stored set is closed under column permutations, which is how the catalogs
are populated by the recursion.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterable, Iterator

from .lattice import (
    Matrix,
    check_noether,
    kappa_reflection,
    matmul,
    pad,
    validate_weyl,
)
from .orbit import column_permute, conjugate

log = logging.getLogger(__name__)

CREMONA: Matrix = (
    (2, 1, 1, 1),
    (-1, 0, -1, -1),
    (-1, -1, 0, -1),
    (-1, -1, -1, 0),
)

# The three degree-2 orbit permutations, in the order they are displayed.
M2_DISPLAYED: tuple[Matrix, ...] = (
    CREMONA,
    ((2, 1, 1, 1), (-1, -1, 0, -1), (-1, 0, -1, -1), (-1, -1, -1, 0)),
    ((2, 1, 1, 1), (-1, -1, -1, 0), (-1, 0, -1, -1), (-1, -1, 0, -1)),
)


# ---------------------------------------------------------------- canonical form

def _twin_classes(M: Matrix) -> list[int]:
    """Label each index 1..k by the smallest index it is twinned with.

    i and j are twins when swapping them is an automorphism of M.
    """
    size = len(M)
    label = list(range(size))
    for i in range(1, size):
        if label[i] != i:
            continue
        for j in range(i + 1, size):
            if label[j] != j:
                continue
            if M[i][i] != M[j][j] or M[i][j] != M[j][i]:
                continue
            if all(
                M[i][z] == M[j][z] and M[z][i] == M[z][j]
                for z in range(size)
                if z != i and z != j
            ):
                label[j] = i
    return label


def _shell(M: Matrix, placed: list[int], x: int) -> tuple[int, ...]:
    out = [M[x][x]]
    for q in placed:
        out.append(M[x][q])
        out.append(M[q][x])
    return tuple(out)


def canonical_permutation(M: Matrix) -> tuple[int, ...]:
    """Order of original indices giving the canonical form (position -> index).

    The canonical form minimizes, lexicographically, the flattening that
    lists index 0 and then, for each new position p, the diagonal entry
    followed by the entries pairing p with every earlier position.  Ties are
    explored depth-first with twin indices pruned.
    """
    size = len(M)
    twins = _twin_classes(M)
    best: list = [None, None]  # flattening, order

    def dfs(placed: list[int], remaining: list[int], flat: list):
        if not remaining:
            if best[0] is None or flat < best[0]:
                best[0] = list(flat)
                best[1] = tuple(placed)
            return
        shells = {x: _shell(M, placed, x) for x in remaining}
        low = min(shells.values())
        if best[0] is not None:
            cmp_len = len(flat) + len(low)
            prefix = flat + list(low)
            if prefix > best[0][:cmp_len]:
                return
        seen_twin = set()
        for x in remaining:
            if shells[x] != low:
                continue
            tw = twins[x]
            if tw in seen_twin:
                continue
            seen_twin.add(tw)
            rest = [y for y in remaining if y != x]
            dfs(placed + [x], rest, flat + list(low))

    dfs([0], list(range(1, size)), [M[0][0]])
    return best[1]


def canonicalize(M: Matrix) -> Matrix:
    """Canonical representative under simultaneous permutation of 1..k."""
    order = canonical_permutation(M)
    return tuple(tuple(M[i][j] for j in order) for i in order)


def canonicalize_bruteforce(M: Matrix) -> Matrix:
    """Exhaustive version of :func:`canonicalize`, for small k only."""
    size = len(M)
    best = None
    for perm in permutations(range(1, size)):
        order = (0,) + perm
        flat = [M[0][0]]
        for p in range(1, size):
            x = order[p]
            flat.append(M[x][x])
            for q in order[:p]:
                flat.append(M[x][q])
                flat.append(M[q][x])
        if best is None or flat < best[0]:
            best = (flat, order)
    order = best[1]
    return tuple(tuple(M[i][j] for j in order) for i in order)


# ---------------------------------------------------------------- index sets

def index_sets(M: Matrix, s: int) -> list[tuple[int, int, int]]:
    """Triples (i1 < i2 < i3) whose first-row entries sum to s.

    Indices beyond k denote freshly appended identity directions with first
    row entry 0; at most three are used, always k+1, k+2, k+3 in order.
    Any s is accepted here; an s with no matching triple gives [].
    """
    k = len(M) - 1
    dbar = M[0]
    out = []
    for trip in combinations(range(1, k + 1), 3):
        if sum(dbar[i] for i in trip) == s:
            out.append(trip)
    for i1, i2 in combinations(range(1, k + 1), 2):
        if dbar[i1] + dbar[i2] == s:
            out.append((i1, i2, k + 1))
    for i1 in range(1, k + 1):
        if dbar[i1] == s:
            out.append((i1, k + 1, k + 2))
    if s == 0:
        out.append((k + 1, k + 2, k + 3))
    return out


@dataclass
class Diagnostic:
    parent: Matrix
    triple: tuple[int, int, int]
    s: int
    reason: str
    matrix: Matrix


def apply_kappa(M: Matrix, triple: tuple[int, int, int]) -> Matrix:
    """Extend M by identity directions as needed and right-multiply by kappa."""
    size = max(len(M), max(triple) + 1)
    ext = pad(M, size)
    kap = kappa_reflection(*triple, size - 1).matrix
    return matmul(ext, kap)


def is_catalog_member(M: Matrix) -> str | None:
    """None if M is a valid catalog member, otherwise the failing reason."""
    if any(x < 1 for x in M[0][1:]):
        return "nonpositive first row"
    if any(-row[0] < 1 for row in M[1:]):
        return "nonpositive first column"
    rep = check_noether(M)
    if not rep.ok:
        return f"noether {rep.violations[0][0]}"
    if len(M) >= 4 and not validate_weyl(M).ok:
        return "not a Weyl element"
    return None


def h_map(M: Matrix, s: int) -> tuple[set[Matrix], list[Diagnostic]]:
    """All valid M.kappa_{i,j,k} for triples in the s-th index set."""
    d = M[0][0]
    if not 0 <= s <= d - 1:
        raise ValueError(f"s must lie in 0..{d - 1}")
    out: set[Matrix] = set()
    diags: list[Diagnostic] = []
    for trip in index_sets(M, s):
        R = apply_kappa(M, trip)
        reason = is_catalog_member(R)
        if reason is not None:
            diags.append(Diagnostic(M, trip, s, reason, R))
            continue
        out.add(R)
    return out, diags


# ---------------------------------------------------------------- catalogs

class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class MdCatalog:
    """Canonical representatives of M_d up to relabeling.

    ``orbit_classes`` groups representatives into classes under independent
    row and column permutations (the column-permutation orbits O_M taken up
    to relabeling); each class is keyed by its smallest representative.
    """

    degree: int
    representatives: list[Matrix]
    orbit_classes: dict[Matrix, list[Matrix]]
    provenance: dict[Matrix, tuple] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    closure_added: int = 0

    def __len__(self):
        return len(self.representatives)

    def __contains__(self, M):
        return canonicalize(M) in self._rep_set

    def __post_init__(self):
        self._rep_set = set(self.representatives)

    def orbit_of(self, M: Matrix) -> Matrix:
        """Key of the orbit class containing M."""
        c = canonicalize(M)
        for key, members in self.orbit_classes.items():
            if c in members:
                return key
        raise KeyError("matrix not in catalog")

    def expand_orbit(self, M: Matrix) -> list[Matrix]:
        """All distinct column permutations M.s (fixed labels)."""
        k = len(M) - 1
        seen = set()
        for perm in permutations(range(1, k + 1)):
            seen.add(column_permute(M, perm))
        return sorted(seen)


def _close_under_columns(reps: set[Matrix]) -> tuple[set[Matrix], _UnionFind, int]:
    uf = _UnionFind()
    frontier = list(reps)
    closed = set(reps)
    added = 0
    while frontier:
        R = frontier.pop()
        uf.find(R)
        k = len(R) - 1
        for i, j in combinations(range(1, k + 1), 2):
            perm = list(range(1, k + 1))
            perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
            C = canonicalize(column_permute(R, perm))
            if C not in closed:
                closed.add(C)
                frontier.append(C)
                added += 1
            uf.union(R, C)
    return closed, uf, added


def _make_catalog(d: int, reps: set[Matrix], provenance, diags) -> MdCatalog:
    closed, uf, added = _close_under_columns(reps)
    groups: dict[Matrix, list[Matrix]] = {}
    for R in closed:
        groups.setdefault(uf.find(R), []).append(R)
    classes = {min(v): sorted(v) for v in groups.values()}
    classes = dict(sorted(classes.items(), key=lambda kv: (len(kv[0]), kv[0])))
    ordered = sorted(closed, key=lambda m: (len(m), m))
    return MdCatalog(d, ordered, classes, provenance, diags, added)


def base_M2() -> MdCatalog:
    """Degree 2: the column-permutation orbit of the Cremona matrix."""
    reps = {canonicalize(M) for M in M2_DISPLAYED}
    prov = {canonicalize(M): ("base", i) for i, M in enumerate(M2_DISPLAYED)}
    return _make_catalog(2, reps, prov, [])


@lru_cache(maxsize=None)
def enumerate_Md(d: int, max_matrices: int | None = None) -> MdCatalog:
    """M_d as the union of h_{d-2i}(M_{d-i}) for 1 <= i <= floor(d/2)."""
    if d < 2:
        raise ValueError("catalogs start at d = 2")
    if d == 2:
        return base_M2()
    reps: set[Matrix] = set()
    provenance: dict[Matrix, tuple] = {}
    diags: list[Diagnostic] = []
    for i in range(1, d // 2 + 1):
        source = enumerate_Md(d - i, max_matrices)
        s = d - 2 * i
        for M in source.representatives:
            out, dg = h_map(M, s)
            diags.extend(dg)
            for R in out:
                C = canonicalize(R)
                if C not in reps:
                    reps.add(C)
                    provenance[C] = (M, s)
                if max_matrices is not None and len(reps) > max_matrices:
                    raise RuntimeError(f"catalog M_{d} exceeds {max_matrices} matrices")
    cat = _make_catalog(d, reps, provenance, diags)
    if cat.closure_added:
        log.info("M_%d: column closure added %d representatives", d, cat.closure_added)
    return cat


# ---------------------------------------------------------------- truncations

@dataclass
class TruncationCatalog:
    degree: int
    members: dict[Matrix, tuple]  # canonical sub-matrix -> (parent, kept indices)

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[Matrix]:
        return iter(self.members)


def truncations(catalog: MdCatalog) -> TruncationCatalog:
    """Principal sub-matrices M(I) over proper subsets I of 1..k (I may be empty)."""
    members: dict[Matrix, tuple] = {}
    for M in catalog.representatives:
        k = len(M) - 1
        for size in range(0, k):
            for keep in combinations(range(1, k + 1), size):
                idx = (0,) + keep
                sub = tuple(tuple(M[i][j] for j in idx) for i in idx)
                C = canonicalize(sub)
                if C not in members:
                    members[C] = (M, keep)
    ordered = dict(sorted(members.items(), key=lambda kv: (len(kv[0]), kv[0])))
    return TruncationCatalog(catalog.degree, ordered)


def catalog_summary(cat: MdCatalog) -> dict:
    return {
        "degree": cat.degree,
        "representatives": len(cat.representatives),
        "orbit_classes": len(cat.orbit_classes),
        "sizes": sorted({len(m) for m in cat.representatives}),
        "closure_added": cat.closure_added,
        "diagnostics": len(cat.diagnostics),
    }
