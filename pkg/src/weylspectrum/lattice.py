"""The lattice Z^{1,n}, its reflections, and Noether's conditions.

Matrices are tuples of row tuples of Python ints and act on column vectors:
column ``j`` holds the image of ``e_j``.  Composition is left
multiplication, so ``compose(a, b)`` is ``a @ b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(r) != len(m) for r in m):
        raise LatticeError("matrix must be square")
    return m


def identity(size: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(size)) for i in range(size))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise LatticeError("dimension mismatch")
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def pad(a: Matrix, size: int) -> Matrix:
    """Extend by identity rows/columns (the inclusion W_m in W_n)."""
    n = len(a)
    if size < n:
        raise LatticeError("cannot pad to a smaller size")
    return tuple(
        tuple(a[i][j] if i < n and j < n else int(i == j) for j in range(size))
        for i in range(size)
    )


def det(a: Matrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------- vectors

def bilinear_form(x: Sequence[int], y: Sequence[int]) -> int:
    """``x0*y0 - sum_{i>=1} x_i*y_i``."""
    if len(x) != len(y):
        raise LatticeError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return x[0] * y[0] - sum(a * b for a, b in zip(x[1:], y[1:]))


def basis_vector(i: int, n: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n + 1))


def canonical_vector(n: int) -> tuple[int, ...]:
    """kappa_n = (-3, 1, ..., 1)."""
    return (-3,) + (1,) * n


def simple_root(i: int, n: int) -> tuple[int, ...]:
    if n < 3:
        raise LatticeError("rank must be at least 3")
    if not 0 <= i <= n - 1:
        raise LatticeError(f"simple root index {i} out of range for n={n}")
    v = [0] * (n + 1)
    if i == 0:
        v[0], v[1], v[2], v[3] = 1, -1, -1, -1
    else:
        v[i], v[i + 1] = 1, -1
    return tuple(v)


# ---------------------------------------------------------------- elements

@dataclass(frozen=True)
class WeylElement:
    """An integer matrix on Z^{1,n} in the basis (e0, ..., en)."""

    matrix: Matrix
    rank: int = field(init=False)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "rank", len(m) - 1)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        return compose(self, other)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return matvec(self.matrix, v)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)

    def padded(self, rank: int) -> "WeylElement":
        return WeylElement(pad(self.matrix, rank + 1))

    @classmethod
    def identity(cls, rank: int) -> "WeylElement":
        return cls(identity(rank + 1))


def _reflection_matrix(alpha: Sequence[int]) -> Matrix:
    """Matrix of x -> x + (x . alpha) alpha, valid for roots with alpha.alpha = -2."""
    n1 = len(alpha)
    # (x . alpha) = x0*a0 - sum x_i a_i, i.e. x . J alpha
    jalpha = [alpha[0]] + [-a for a in alpha[1:]]
    return tuple(
        tuple(int(i == j) + alpha[i] * jalpha[j] for j in range(n1)) for i in range(n1)
    )


def simple_reflection(i: int, n: int) -> WeylElement:
    """The generator s_i of W_n."""
    return WeylElement(_reflection_matrix(simple_root(i, n)))


def kappa_reflection(i: int, j: int, k: int, n: int) -> WeylElement:
    """Reflection through e0 - e_i - e_j - e_k (indices distinct, 1..n)."""
    idx = (i, j, k)
    if len(set(idx)) != 3:
        raise LatticeError(f"kappa indices must be distinct, got {idx}")
    if any(not 1 <= x <= n for x in idx):
        raise LatticeError(f"kappa indices {idx} out of range 1..{n}")
    v = [0] * (n + 1)
    v[0] = 1
    for x in idx:
        v[x] = -1
    return WeylElement(_reflection_matrix(v))


def compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    if w1.rank != w2.rank:
        raise LatticeError(f"rank mismatch: {w1.rank} vs {w2.rank}")
    return WeylElement(matmul(w1.matrix, w2.matrix))


def weyl_degree(w: WeylElement) -> int:
    """``w e0 . e0``, i.e. the top-left entry."""
    return bilinear_form(w.column(0), basis_vector(0, w.rank))


def coxeter_exponent(i: int, j: int) -> int:
    """m_ij for the E_n Coxeter diagram (edges {0,3} and {i,i+1}, i>=1)."""
    if i == j:
        return 1
    a, b = sorted((i, j))
    if (a, b) == (0, 3) or (a >= 1 and b == a + 1):
        return 3
    return 2


# ---------------------------------------------------------------- validity

@dataclass
class WeylValidation:
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def validate_weyl(matrix: Matrix | WeylElement) -> WeylValidation:
    """Check that the form and the canonical vector are preserved.

    The witness is ``("form", i, j)`` for a basis pair whose products differ,
    or ``("kappa", row)`` for the first coordinate where w.kappa != kappa.
    """
    m = matrix.matrix if isinstance(matrix, WeylElement) else as_matrix(matrix)
    size = len(m)
    cols = list(zip(*m))
    for i in range(size):
        for j in range(i, size):
            expected = (1 if i == 0 else -1) if i == j else 0
            if bilinear_form(cols[i], cols[j]) != expected:
                return WeylValidation(False, ("form", i, j))
    kappa = canonical_vector(size - 1)
    image = matvec(m, kappa)
    for r, (a, b) in enumerate(zip(image, kappa)):
        if a != b:
            return WeylValidation(False, ("kappa", r))
    return WeylValidation(True)


@dataclass
class NoetherReport:
    degree_ok: bool
    entry_bounds_ok: bool
    triple_ok: bool
    pair_ok: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def block_parts(m: Matrix):
    """Split ``[[d, dbar], [-cbar, -mm]]`` into ``(d, dbar, cbar, mm)``."""
    d = m[0][0]
    dbar = list(m[0][1:])
    cbar = [-row[0] for row in m[1:]]
    mm = [[-x for x in row[1:]] for row in m[1:]]
    return d, dbar, cbar, mm


def check_noether(matrix: Matrix | Sequence[Sequence[int]]) -> NoetherReport:
    """Evaluate Noether's equalities and inequalities on a block matrix.

    Entry bounds are checked in the non-strict form ``m_ij <= c_i`` and
    ``m_ij <= d_j``: the Cremona matrix attains equality.
    """
    m = matrix.matrix if isinstance(matrix, WeylElement) else as_matrix(matrix)
    if len(m) < 2:
        raise LatticeError("block matrix needs at least one orbit index")
    d, dbar, cbar, mm = block_parts(m)
    k = len(dbar)
    violations = []

    if sum(dbar) != 3 * (d - 1):
        violations.append(("sum_d", ()))
    if sum(cbar) != 3 * (d - 1):
        violations.append(("sum_c", ()))
    if sum(x * x for x in dbar) != d * d - 1:
        violations.append(("sumsq_d", ()))
    if sum(x * x for x in cbar) != d * d - 1:
        violations.append(("sumsq_c", ()))
    degree_ok = not violations

    n_before = len(violations)
    for i in range(k):
        for j in range(k):
            if mm[i][j] > cbar[i] or mm[i][j] > dbar[j]:
                violations.append(("entry", (i + 1, j + 1)))
    entry_ok = len(violations) == n_before

    n_before = len(violations)
    for name, vec in (("triple_d", dbar), ("triple_c", cbar)):
        top = sorted(vec, reverse=True)[:3]
        if len(top) < 3 or sum(top) < d + 1:
            violations.append((name, ()))
    triple_ok = len(violations) == n_before

    n_before = len(violations)
    for name, vec in (("pair_d", dbar), ("pair_c", cbar)):
        for i, j in combinations(range(k), 2):
            if vec[i] + vec[j] > d:
                violations.append((name, (i + 1, j + 1)))
    pair_ok = len(violations) == n_before

    return NoetherReport(degree_ok, entry_ok, triple_ok, pair_ok, violations)


def inverse_block(matrix: Matrix) -> Matrix:
    """The matrix ``[[d, cbar], [-dbar, -m^T]]``, the inverse of a W-element."""
    d, dbar, cbar, mm = block_parts(matrix)
    k = len(dbar)
    rows = [(d,) + tuple(cbar)]
    for i in range(k):
        rows.append((-dbar[i],) + tuple(-mm[j][i] for j in range(k)))
    return tuple(rows)
