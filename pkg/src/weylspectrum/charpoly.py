"""Characteristic polynomials of orbit data by inclusion-exclusion over subsets."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import Matrix, as_matrix, det, kappa_reflection, matmul, WeylElement
from .orbit import OrbitData, column_permute
from .poly import IntPolynomial


@dataclass(frozen=True)
class LinearInT:
    """``constant + t_coeff * t``."""

    constant: int
    t_coeff: int

    def as_poly(self) -> IntPolynomial:
        return IntPolynomial([self.constant, self.t_coeff])


def _principal(M: Matrix, keep: Sequence[int]) -> Matrix:
    return tuple(tuple(M[i][j] for j in keep) for i in keep)


def det_MI(M: Matrix, I: Iterable[int]) -> LinearInT:
    """det of the principal minor on {0} u I with (0,0) entry d - t.

    Linear in t: ``det(M restricted to {0} u I) - t * det(M restricted to I)``.
    """
    M = as_matrix(M)
    k = len(M) - 1
    idx = sorted(set(I))
    if any(not 1 <= i <= k for i in idx):
        raise IndexError(f"subset {idx} out of range 1..{k}")
    return _det_MI_cached(M, tuple(idx))


@lru_cache(maxsize=200_000)
def _det_MI_cached(M: Matrix, idx: tuple[int, ...]) -> LinearInT:
    full = det(_principal(M, (0,) + idx))
    inner = det(_principal(M, idx))
    return LinearInT(full, -inner)


@lru_cache(maxsize=4096)
def subset_table(M: Matrix) -> tuple[tuple[tuple[int, ...], LinearInT], ...]:
    """All (I, det M_I) pairs for a matrix; reused across orbit lengths."""
    k = len(M) - 1
    out = []
    for size in range(k + 1):
        for I in combinations(range(1, k + 1), size):
            out.append((I, _det_MI_cached(M, I)))
    return tuple(out)


def char_poly(od: OrbitData) -> IntPolynomial:
    """sum over I of (-1)^(|I|-1) t^(N - n_I) det M_I; monic of degree N+1."""
    N = od.total_length
    coeffs = [0] * (N + 2)
    for I, lin in subset_table(od.M):
        nI = sum(od.n[i - 1] for i in I)
        e = N - nI
        sgn = -1 if len(I) % 2 == 0 else 1
        coeffs[e] += sgn * lin.constant
        coeffs[e + 1] += sgn * lin.t_coeff
    return IntPolynomial(coeffs)


def char_poly_of(M: Sequence[Sequence[int]], n: Sequence[int]) -> IntPolynomial:
    """Convenience wrapper that skips OrbitData validation (any square M)."""
    M = as_matrix(M)
    N = sum(n)
    coeffs = [0] * (N + 2)
    for I, lin in subset_table(M):
        e = N - sum(n[i - 1] for i in I)
        sgn = -1 if len(I) % 2 == 0 else 1
        coeffs[e] += sgn * lin.constant
        coeffs[e + 1] += sgn * lin.t_coeff
    return IntPolynomial(coeffs)


def psi_sequence(M: Matrix, lengths: Sequence[int | None], I: Iterable[int]) -> list[IntPolynomial]:
    """Polynomials psi_0..psi_|I| with chi = sum_j t^(j*n_star) psi_j.

    Entries of ``lengths`` indexed by ``I`` (1-based) are symbolic and
    ignored.  ``psi_j`` collects the subsets J with ``|J & I| = |I| - j``, so
    ``psi_|I|`` is the characteristic polynomial of the datum with the
    I-indices deleted.
    """
    M = as_matrix(M)
    Iset = set(I)
    if not Iset:
        raise ValueError("psi_sequence needs a nonempty symbolic index set")
    k = len(M) - 1
    if len(lengths) != k:
        raise ValueError(f"expected {k} lengths")
    n0 = {i: lengths[i - 1] for i in range(1, k + 1) if i not in Iset}
    N0 = sum(n0.values())
    size = len(Iset)
    polys = [[0] * (N0 + 2) for _ in range(size + 1)]
    for J, lin in subset_table(M):
        inter = sum(1 for j in J if j in Iset)
        e = N0 - sum(n0[j] for j in J if j not in Iset)
        sgn = -1 if len(J) % 2 == 0 else 1
        target = polys[size - inter]
        target[e] += sgn * lin.constant
        target[e + 1] += sgn * lin.t_coeff
    return [IntPolynomial(p) for p in polys]


def delete_indices(M: Matrix, I: Iterable[int]) -> Matrix:
    """Principal sub-matrix of M with the (1-based) indices in I removed."""
    drop = set(I)
    keep = [0] + [i for i in range(1, len(M)) if i not in drop]
    return _principal(M, keep)


def limit_poly(od: OrbitData, I: Iterable[int]) -> IntPolynomial:
    """psi_|I|: the polynomial whose largest root is the limit as n_i -> oo, i in I."""
    Iset = set(I)
    if not Iset:
        raise ValueError("limit_poly needs a nonempty index set")
    if Iset == set(range(1, od.k + 1)):
        return IntPolynomial([-od.degree, 1])
    sub = delete_indices(od.M, Iset)
    n = [x for i, x in enumerate(od.n, start=1) if i not in Iset]
    return char_poly_of(sub, n)


# ---------------------------------------------------------------- special case

def omega_d(d: int) -> Matrix:
    """kappa_{1,3,2} kappa_{1,5,4} ... kappa_{1,2d-1,2d-2} on Z^{1,2d-1}."""
    if d < 2:
        raise ValueError("omega_d needs d >= 2")
    n = 2 * d - 1
    w = WeylElement.identity(n)
    for j in range(1, d):
        w = w @ kappa_reflection(1, 2 * j + 1, 2 * j, n)
    return w.matrix


def _sign_of_restriction(sigma: dict[int, int], I: set[int]) -> int:
    """Parity of sigma restricted to I (identity elsewhere); +1 even, -1 odd."""
    # sigma|_I need not be a permutation when I != sigma^-1(I); count
    # transpositions of the bijection I-part only when it closes up.
    seen = set()
    sign = 1
    for start in I:
        if start in seen:
            continue
        length = 0
        cur = start
        while cur not in seen:
            seen.add(cur)
            length += 1
            nxt = sigma[cur]
            if nxt not in I:
                break
            cur = nxt
        if length % 2 == 0:
            sign = -sign
    return sign


def rho_case(sigma: dict[int, int], I: set[int]) -> int:
    """The case split rho(I) in {0..5}, read literally; first matching case wins."""
    pre = {i for i in sigma if sigma[i] in I}
    diff = len(I - pre)
    if I == pre and 1 in I:
        return 5
    if diff == 1 and 1 in (I & pre):
        return 4
    if diff == 1 and 1 in (I | pre) and 1 in (I & pre):
        return 3
    if I == pre and 1 not in (I | pre):
        return 2
    if diff == 1 and 1 not in (I | pre):
        return 1
    return 0


def special_char_poly(d: int, sigma: Sequence[int], lengths: Sequence[int]) -> IntPolynomial:
    """Closed form t^N [(d - t) + sum_{I != {}} t^(-n_I) psi(I)], made monic.

    ``sigma[i-1]`` is the image of i under a permutation of 1..2d-1.  The
    case split is encoded literally; disagreements with
    :func:`char_poly` are expected where the cases overlap.
    """
    k = 2 * d - 1
    if len(sigma) != k or sorted(sigma) != list(range(1, k + 1)):
        raise ValueError(f"sigma must permute 1..{k}")
    if len(lengths) != k or any(x < 1 for x in lengths):
        raise ValueError(f"need {k} positive lengths")
    sig = {i + 1: s for i, s in enumerate(sigma)}
    N = sum(lengths)
    coeffs = [0] * (N + 2)
    coeffs[N] += d
    coeffs[N + 1] -= 1
    for size in range(1, k + 1):
        for comb in combinations(range(1, k + 1), size):
            I = set(comb)
            case = rho_case(sig, I)
            if case == 0:
                continue
            sg = _sign_of_restriction(sig, I)
            e = N - sum(lengths[i - 1] for i in I)
            n = len(I)
            if case == 5:
                lin = ((n + 1 - d) * sg, -sg)  # sg((n+1-d)t - 1): (t coeff, const)
                coeffs[e + 1] += lin[0]
                coeffs[e] += lin[1]
            elif case == 4:
                coeffs[e + 1] += sg
            elif case == 3:
                coeffs[e + 1] -= sg
                coeffs[e] += sg
            elif case == 2:
                coeffs[e + 1] -= sg
                coeffs[e] += sg * (d - n)
            elif case == 1:
                coeffs[e] -= sg
    p = IntPolynomial(coeffs)
    return -p if p.lead < 0 else p


def special_orbit_data(d: int, sigma: Sequence[int], lengths: Sequence[int]) -> OrbitData:
    """(omega_d . sigma, n) with sigma acting as a column permutation."""
    M = column_permute(omega_d(d), list(sigma))
    return OrbitData(M, tuple(lengths))
