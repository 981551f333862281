"""Orbit data (M, n) and the normal-form decomposition of Weyl elements."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lattice import (
    LatticeError,
    Matrix,
    WeylElement,
    as_matrix,
    identity,
    matmul,
)


class OrbitDataError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitData:
    """An orbit permutation ``M`` ((k+1) square) with orbit lengths ``n``.

    ``truncated`` marks principal sub-matrices of catalog members, which are
    allowed to break Noether's conditions.
    """

    M: Matrix
    n: tuple[int, ...]
    truncated: bool = False

    def __post_init__(self):
        try:
            m = as_matrix(self.M)
        except LatticeError as exc:
            raise OrbitDataError(str(exc)) from None
        lengths = tuple(int(x) for x in self.n)
        object.__setattr__(self, "M", m)
        object.__setattr__(self, "n", lengths)
        k = len(m) - 1
        if k < 1:
            raise OrbitDataError("orbit data needs k >= 1")
        if len(lengths) != k:
            raise OrbitDataError(f"expected {k} orbit lengths, got {len(lengths)}")
        if any(x < 1 for x in lengths):
            raise OrbitDataError(f"orbit lengths must be positive, got {lengths}")
        if m[0][0] < 2:
            raise OrbitDataError(f"degree M[0][0] must be >= 2, got {m[0][0]}")
        if not self.truncated:
            if any(x < 1 for x in m[0][1:]):
                raise OrbitDataError("untruncated orbit data needs every d_i >= 1")
            if any(-row[0] < 1 for row in m[1:]):
                raise OrbitDataError("untruncated orbit data needs every c_i >= 1")

    @property
    def k(self) -> int:
        return len(self.n)

    @property
    def degree(self) -> int:
        return self.M[0][0]

    @property
    def total_length(self) -> int:
        return sum(self.n)

    def with_lengths(self, n: Sequence[int]) -> "OrbitData":
        return OrbitData(self.M, tuple(n), self.truncated)


def orbit_offsets(n: Sequence[int]) -> list[int]:
    """Index of e_{i,1} in the expanded basis, for each orbit i (0-based list)."""
    out = []
    pos = 1
    for length in n:
        out.append(pos)
        pos += length
    return out


def expand(od: OrbitData) -> WeylElement:
    """Build M(n) on the basis (e0, e_{1,1}..e_{1,n1}, ..., e_{k,1}..e_{k,nk})."""
    M, n = od.M, od.n
    size = 1 + sum(n)
    starts = orbit_offsets(n)
    coords = [0] + starts  # where row r of M lands
    out = [[0] * size for _ in range(size)]
    # column 0: image of e0
    for r in range(len(M)):
        out[coords[r]][0] = M[r][0]
    for i, length in enumerate(n):
        s = starts[i]
        for j in range(length - 1):
            out[s + j + 1][s + j] = 1
        end = s + length - 1
        for r in range(len(M)):
            out[coords[r]][end] = M[r][i + 1]
    return WeylElement(tuple(tuple(r) for r in out))


# ------------------------------------------------------------ permutations

def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """P with P e_i = e_{perm[i]} (perm is a full permutation of 0..size-1)."""
    size = len(perm)
    out = [[0] * size for _ in range(size)]
    for i, p in enumerate(perm):
        out[p][i] = 1
    return tuple(tuple(r) for r in out)


def conjugate(matrix: Matrix, perm: Sequence[int]) -> Matrix:
    """``P M P^-1``: relabel index i as perm[i]."""
    size = len(matrix)
    out = [[0] * size for _ in range(size)]
    for i in range(size):
        pi = perm[i]
        row = matrix[i]
        for j in range(size):
            out[pi][perm[j]] = row[j]
    return tuple(tuple(r) for r in out)


def column_permute(M: Matrix, sigma: Sequence[int]) -> Matrix:
    """``M . m(sigma)``: column i of the result is column sigma(i) of M.

    ``sigma`` is given on 1..k as a list of length k (``sigma[i-1]`` is the
    image of i) or as a full permutation of 0..k fixing 0.
    """
    k = len(M) - 1
    s = list(sigma)
    if len(s) == k:
        s = [0] + s
    if len(s) != k + 1 or s[0] != 0 or sorted(s) != list(range(k + 1)):
        raise OrbitDataError(f"sigma must permute 1..{k} and fix 0")
    return tuple(tuple(row[s[j]] for j in range(k + 1)) for row in M)


# ------------------------------------------------------------ decomposition

@dataclass(frozen=True)
class Decomposition:
    """``w = rho^-1 . omega_c . omega_s . omega_p . rho``.

    ``rho`` maps each original basis index to its index in normal form
    (``rho[0] == 0``); ``I_e`` and ``I_p`` are in original labels.
    """

    rho: tuple[int, ...]
    omega_c: WeylElement
    omega_s: WeylElement
    omega_p: WeylElement
    I_e: tuple[int, ...]
    I_p: tuple[int, ...]
    orbit_data: OrbitData

    def recompose(self) -> WeylElement:
        inner = matmul(matmul(self.omega_c.matrix, self.omega_s.matrix), self.omega_p.matrix)
        inv = [0] * len(self.rho)
        for i, p in enumerate(self.rho):
            inv[p] = i
        return WeylElement(conjugate(inner, inv))


def _unit_index(col: Sequence[int]) -> int | None:
    """Index j >= 1 if the column is exactly e_j, else None."""
    nz = [(i, x) for i, x in enumerate(col) if x]
    if len(nz) == 1 and nz[0][0] >= 1 and nz[0][1] == 1:
        return nz[0][0]
    return None


def essential_indices(w: WeylElement) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split indices into I_e (orbits meeting e0) and I_p (pure permutation part)."""
    m = w.matrix
    size = len(m)
    cols = list(zip(*m))
    # j reaches e0 under some power iff j = 0, or w e_j has nonzero e0
    # coordinate, or w e_j = e_l with l reaching e0.
    succ = {}
    for j in range(1, size):
        u = _unit_index(cols[j])
        succ[j] = u
    essential = {0}
    for j in range(1, size):
        seen = []
        cur = j
        while True:
            if cur in essential:
                essential.update(seen)
                break
            u = succ[cur]
            if u is None:
                essential.update(seen)
                essential.add(cur)
                break
            if u in seen or u == j:
                break
            seen.append(cur)
            cur = u
    I_e = tuple(sorted(essential))
    I_p = tuple(j for j in range(size) if j not in essential)
    return I_e, I_p


def _orbits(w: WeylElement, I_e: Sequence[int]):
    """Orbit chains (start, ..., end) inside I_e \\ {0}, in order of start index."""
    m = w.matrix
    cols = list(zip(*m))
    inner = [j for j in I_e if j != 0]
    succ = {j: _unit_index(cols[j]) for j in inner}
    targets = {u for u in succ.values() if u is not None}
    starts = [j for j in inner if j not in targets]
    chains = []
    for s in starts:
        chain = [s]
        cur = s
        while succ[cur] is not None:
            cur = succ[cur]
            chain.append(cur)
            if len(chain) > len(inner):
                raise OrbitDataError("orbit chain does not terminate")
        chains.append(chain)
    if sum(len(c) for c in chains) != len(inner):
        raise OrbitDataError("essential indices are not covered by orbit chains")
    return chains


def decompose(w: WeylElement, order: str = "basis") -> Decomposition:
    """Normal-form decomposition of an element of degree >= 2.

    ``order="basis"`` keeps orbits in order of their first basis index;
    ``order="length"`` sorts them by (length, end column).
    """
    m = w.matrix
    if m[0][0] < 2:
        raise OrbitDataError("degree-1 element: trivial spectrum, no orbit data")
    I_e, I_p = essential_indices(w)
    chains = _orbits(w, I_e)
    cols = list(zip(*m))
    if order == "length":
        chains.sort(key=lambda c: (len(c), cols[c[-1]]))
    elif order != "basis":
        raise ValueError(f"unknown orbit order {order!r}")

    size = len(m)
    rho = [0] * size
    pos = 1
    for chain in chains:
        for j in chain:
            rho[j] = pos
            pos += 1
    for j in I_p:
        rho[j] = pos
        pos += 1

    normal = conjugate(m, rho)
    n_e = 1 + sum(len(c) for c in chains)
    lengths = tuple(len(c) for c in chains)
    starts = [0] + [1 + sum(lengths[:i]) for i in range(len(lengths))]
    ends = [0] + [s + l - 1 for s, l in zip(starts[1:], lengths)]

    # the images of e0 and of orbit ends must live on e0 and orbit starts
    start_set = set(starts)
    for j in ends:
        for r in range(size):
            if normal[r][j] and r not in start_set:
                raise OrbitDataError(
                    "image of an orbit end leaves span(e0, orbit starts); not orbit data"
                )
    M = tuple(tuple(normal[r][c] for c in ends) for r in starts)

    # omega_s cycles each orbit; omega_c carries M on (e0, starts)
    ws = [list(r) for r in identity(size)]
    wc = [list(r) for r in identity(size)]
    for s, l in zip(starts[1:], lengths):
        for j in range(s, s + l):
            ws[j][j] = 0
        for j in range(s, s + l - 1):
            ws[j + 1][j] = 1
        ws[s][s + l - 1] = 1
    for a, ca in enumerate(starts):
        for b, cb in enumerate(starts):
            wc[cb][ca] = M[b][a]
    wp = [list(r) for r in identity(size)]
    for j in range(n_e, size):
        for r in range(size):
            wp[r][j] = normal[r][j]
    truncated = any(x < 1 for x in M[0][1:]) or any(-row[0] < 1 for row in M[1:])
    od = OrbitData(M, lengths, truncated=truncated)
    return Decomposition(
        rho=tuple(rho),
        omega_c=WeylElement(tuple(tuple(r) for r in wc)),
        omega_s=WeylElement(tuple(tuple(r) for r in ws)),
        omega_p=WeylElement(tuple(tuple(r) for r in wp)),
        I_e=I_e,
        I_p=I_p,
        orbit_data=od,
    )


def extract_orbit_data(w: WeylElement, order: str = "basis") -> tuple[OrbitData, tuple[int, ...]]:
    """Inverse of :func:`expand` on elements whose permutation part is trivial.

    Returns the orbit data and the relabeling ``rho`` (original index ->
    expanded-basis index).
    """
    dec = decompose(w, order=order)
    if dec.I_p:
        raise OrbitDataError(
            f"element has a nontrivial permutation part on {dec.I_p}; decompose first"
        )
    return dec.orbit_data, dec.rho
