"""Cubic-curve parameter systems for realizing orbit data by quadratic maps.

Unknowns are the parameters t1, t2, t3 of three points on the cuspidal cubic
t -> [1 : t : t^3] and the multiplier a.  Each "line" equation has the form
(t_p - 1)/a^n + 1 + t_q + t_r = 0 and the closing condition is
t1 + t2 + t3 = 3(1 - a)/a.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import mpmath
from mpmath import mp

from .charpoly import char_poly_of
from .enumerator import M2_DISPLAYED
from .polyarith import classify

DEFAULT_PREC = 256
DEFAULT_K = 1000
CYCLE_MATRIX = M2_DISPLAYED[2]
PROVENANCE = (
    "parameters satisfy the linear conditions of the system; existence of the "
    "birational map itself is a cited result and is not certified here"
)


class RealizerError(ValueError):
    pass


def _cjson(z) -> dict:
    z = mpmath.mpc(z)
    return {"re": mpmath.nstr(z.real, 40), "im": mpmath.nstr(z.imag, 40)}


@dataclass
class RealizationParams:
    t1: object
    t2: object
    t3: object
    a: object
    system: str
    residuals: dict
    nondegeneracy: tuple  # (K checked, min margin, argmin k)
    a_poly: list | None = None

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "t1": _cjson(self.t1),
            "t2": _cjson(self.t2),
            "t3": _cjson(self.t3),
            "a": _cjson(self.a),
            "a_poly": self.a_poly,
            "residuals": {k: mpmath.nstr(v, 10) for k, v in self.residuals.items()},
            "nondegeneracy": {
                "K": self.nondegeneracy[0],
                "min_margin": mpmath.nstr(self.nondegeneracy[1], 10),
                "at": self.nondegeneracy[2],
            },
        }


@dataclass
class SolveReport:
    params: RealizationParams | None
    determinant_value: object
    status: str  # solved | degenerate | nondegeneracy-failed(k) | residual-failed
    notes: list = field(default_factory=list)

    @property
    def solved(self) -> bool:
        return self.status == "solved"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "determinant": _cjson(self.determinant_value),
            "params": None if self.params is None else self.params.to_json(),
            "notes": self.notes + [PROVENANCE],
        }


def _line(tp, tq, tr, a, n):
    return (tp - 1) / a ** n + 1 + tq + tr


def _closing(t1, t2, t3, a):
    return t1 + t2 + t3 - 3 * (1 - a) / a


def _tolerance(matrix) -> object:
    norm = max(sum(abs(x) for x in row) for row in matrix.tolist())
    return mpmath.mpf(2) ** -100 * max(1, norm)


def _check_a(a):
    if a == 0 or a == 1:
        raise RealizerError("a must differ from 0 and 1")


# ---------------------------------------------------------------- determinants

def f3_matrix(n1: int, n2: int, a):
    A, B = a ** -n1, a ** -n2
    return mpmath.matrix([[0, A + 1, 1], [1, 0, B + 1], [1, 1, 1]])


def f2_matrix(n1: int, n2: int, a):
    A, B = a ** -n1, a ** -n2
    return mpmath.matrix([[0, A + 1, 1], [B + 1, 0, 1], [1, 1, 1]])


def system_determinant(n1: int, n2: int, a, prec: int = DEFAULT_PREC, check: bool = True):
    """1/a^(n1+n2) + 1/a^n2 + 1, cross-checked against the assembled matrix."""
    if a == 0:
        raise RealizerError("a must be nonzero")
    with mp.workprec(prec):
        a = mpmath.mpmathify(a)
        closed = a ** -(n1 + n2) + a ** -n2 + 1
        if check:
            assembled = mpmath.det(f3_matrix(n1, n2, a))
            scale = max(1, abs(closed))
            if abs(assembled - closed) > mpmath.mpf(2) ** (-prec + 16) * scale:
                raise RealizerError(
                    f"closed-form determinant {closed} disagrees with assembled {assembled}"
                )
        return +closed


def assembled_determinant(n1: int, n2: int, a, prec: int = DEFAULT_PREC):
    with mp.workprec(prec):
        return mpmath.det(f3_matrix(n1, n2, mpmath.mpmathify(a)))


# ---------------------------------------------------------------- solvers

def _margins(fn, K):
    best, at = None, None
    for k in range(1, K + 1):
        v = abs(fn(k))
        if best is None or v < best:
            best, at = v, k
    return best, at


def solve_truncated(system: str, lengths: Sequence[int], a, K: int = DEFAULT_K,
                    prec: int = DEFAULT_PREC, t1=0) -> SolveReport:
    """Solve one of the truncated systems f3, f2 or f for (t1, t2, t3).

    System f has two equalities in three unknowns; ``t1`` is then a free
    parameter (default 0).
    """
    lengths = tuple(int(x) for x in lengths)
    arity = {"f3": 2, "f2": 2, "f": 1}
    if system not in arity:
        raise RealizerError(f"unknown system {system!r}")
    if len(lengths) != arity[system] or any(x < 1 for x in lengths):
        raise RealizerError(f"system {system} needs {arity[system]} positive lengths")
    _check_a(a)
    with mp.workprec(prec):
        a = mpmath.mpmathify(a)
        n1 = lengths[0]
        rhs_closing = 3 * (1 - a) / a
        if system in ("f3", "f2"):
            n2 = lengths[1]
            mat = (f3_matrix if system == "f3" else f2_matrix)(n1, n2, a)
            rhs = mpmath.matrix([a ** -n1 - 1, a ** -n2 - 1, rhs_closing])
            detv = mpmath.det(mat)
            tol = _tolerance(mat)
            if abs(detv) <= tol:
                return SolveReport(None, detv, "degenerate")
            sol = mpmath.lu_solve(mat, rhs)
            t1_, t2_, t3_ = sol[0], sol[1], sol[2]
            if system == "f3":
                res = {
                    "line1": abs(_line(t2_, t2_, t3_, a, n1)),
                    "line2": abs(_line(t3_, t1_, t3_, a, n2)),
                    "closing": abs(_closing(t1_, t2_, t3_, a)),
                }
                margin = _margins(lambda k: _line(t1_, t2_, t1_, a, k), K)
            else:
                res = {
                    "line1": abs(_line(t2_, t2_, t3_, a, n1)),
                    "line2": abs(_line(t1_, t1_, t3_, a, n2)),
                    "closing": abs(_closing(t1_, t2_, t3_, a)),
                }
                margin = _margins(lambda k: _line(t3_, t2_, t1_, a, k), K)
            margins = [margin]
        else:
            # (A+1) t2 + t3 = A - 1 and t2 + t3 = closing - t1
            A = a ** -n1
            t1_ = mpmath.mpmathify(t1)
            mat = mpmath.matrix([[A + 1, 1], [1, 1]])
            detv = mpmath.det(mat)
            tol = _tolerance(mat)
            if abs(detv) <= tol:
                return SolveReport(None, detv, "degenerate")
            sol = mpmath.lu_solve(mat, mpmath.matrix([A - 1, rhs_closing - t1_]))
            t2_, t3_ = sol[0], sol[1]
            res = {
                "line1": abs(_line(t2_, t2_, t3_, a, n1)),
                "closing": abs(_closing(t1_, t2_, t3_, a)),
            }
            margins = [
                _margins(lambda k: _line(t1_, t1_, t3_, a, k), K),
                _margins(lambda k: _line(t3_, t2_, t1_, a, k), K),
            ]
        min_margin, at = min(margins, key=lambda m: m[0])
        params = RealizationParams(t1_, t2_, t3_, a, system, res, (K, min_margin, at))
        if any(v > tol for v in res.values()):
            return SolveReport(params, detv, "residual-failed")
        if min_margin <= tol:
            return SolveReport(params, detv, f"nondegeneracy-failed({at})")
        return SolveReport(params, detv, "solved")


def chi_roots(lengths: Sequence[int], prec: int = DEFAULT_PREC):
    """Roots of the characteristic polynomial of the three-cycle datum, off the unit circle."""
    p = char_poly_of(CYCLE_MATRIX, tuple(lengths))
    cls = classify(p)
    if cls.klass == "One":
        return cls, []
    q = cls.minimal_factor
    with mp.workprec(prec):
        roots = mpmath.polyroots(list(reversed(q.coeffs)), maxsteps=500, extraprec=prec)
        off = [r for r in roots if abs(abs(r) - 1) > mpmath.mpf(2) ** (-prec // 2)]
    return cls, off


def solve_full_cycle(lengths: Sequence[int], a="chi-root", prec: int = DEFAULT_PREC) -> SolveReport:
    """Solve the three line conditions for given a; report the closing residual.

    With ``a="chi-root"`` the multiplier is the largest real root of the
    characteristic polynomial of the three-cycle datum with these lengths.
    """
    lengths = tuple(int(x) for x in lengths)
    if len(lengths) != 3 or any(x < 1 for x in lengths):
        raise RealizerError("full cycle needs three positive lengths")
    n1, n2, n3 = lengths
    notes = []
    a_poly = None
    with mp.workprec(prec):
        if isinstance(a, str):
            if a != "chi-root":
                raise RealizerError(f"unknown a choice {a!r}")
            cls, roots = chi_roots(lengths, prec)
            if not roots:
                return SolveReport(None, mpmath.mpf(0), "degenerate",
                                   ["characteristic polynomial has no root off the unit circle"])
            a = max((r for r in roots if abs(mpmath.im(r)) < mpmath.mpf(2) ** (-prec // 2)),
                    key=lambda r: mpmath.re(r))
            a = mpmath.re(a)
            a_poly = [str(c) for c in cls.minimal_factor.coeffs]
            notes.append("a is the largest real root of the characteristic polynomial")
        a = mpmath.mpmathify(a)
        _check_a(a)
        A1, A2, A3 = a ** -n1, a ** -n2, a ** -n3
        mat = mpmath.matrix([[0, A1 + 1, 1], [1, 0, A2 + 1], [A3 + 1, 1, 0]])
        rhs = mpmath.matrix([A1 - 1, A2 - 1, A3 - 1])
        detv = mpmath.det(mat)
        tol = _tolerance(mat)
        if abs(detv) <= tol:
            return SolveReport(None, detv, "degenerate", notes)
        sol = mpmath.lu_solve(mat, rhs)
        t1_, t2_, t3_ = sol[0], sol[1], sol[2]
        res = {
            "line1": abs(_line(t2_, t2_, t3_, a, n1)),
            "line2": abs(_line(t3_, t1_, t3_, a, n2)),
            "line3": abs(_line(t1_, t2_, t1_, a, n3)),
            "closing": abs(_closing(t1_, t2_, t3_, a)),
        }
        params = RealizationParams(t1_, t2_, t3_, a, "cycle", res, (0, mpmath.inf, None), a_poly)
        status = "solved" if all(v <= tol for v in res.values()) else "residual-failed"
        return SolveReport(params, detv, status, notes)
