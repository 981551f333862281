import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from weylspectrum.realizer import (
    RealizerError,
    assembled_determinant,
    chi_roots,
    f2_matrix,
    solve_full_cycle,
    solve_truncated,
    system_determinant,
)


def test_determinant_examples():
    assert abs(system_determinant(1, 1, 2) - mpmath.mpf(7) / 4) < 1e-70
    assert abs(system_determinant(1, 2, -1) - 1) < 1e-70
    with pytest.raises(RealizerError):
        system_determinant(1, 1, 0)


@settings(max_examples=50)
@given(st.integers(1, 12), st.integers(1, 12),
       st.complex_numbers(min_magnitude=0.3, max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_closed_form_matches_assembled_matrix(n1, n2, a):
    closed = system_determinant(n1, n2, a, check=False)
    assembled = assembled_determinant(n1, n2, a)
    assert abs(closed - assembled) <= mpmath.mpf(2) ** -200 * max(1, abs(closed))


def test_f2_determinant_form():
    with mpmath.mp.workprec(256):
        a = mpmath.mpf(3)
        assert abs(mpmath.det(f2_matrix(2, 1, a)) - (1 - a ** -3)) < 1e-70


def test_f3_small_case():
    rep = solve_truncated("f3", (1, 1), 2)
    assert rep.solved
    assert abs(rep.determinant_value - mpmath.mpf(7) / 4) < 1e-70
    assert all(v < 1e-12 for v in rep.params.residuals.values())


def test_f3_with_integer_a_and_margin_report():
    rep = solve_truncated("f3", (2, 3), 2, K=1000)
    assert rep.solved
    K, margin, at = rep.params.nondegeneracy
    assert K == 1000 and margin > 0 and 1 <= at <= 1000


def test_f_system():
    rep = solve_truncated("f", (1,), 3)
    assert rep.solved and set(rep.params.residuals) == {"line1", "closing"}
    other = solve_truncated("f", (1,), 3, t1=mpmath.mpf(1) / 7)
    assert other.solved and other.params.t1 != rep.params.t1


@settings(max_examples=40)
@given(st.sampled_from(["f3", "f2", "f"]), st.integers(2, 10), st.integers(1, 6), st.integers(1, 6))
def test_integer_parameters_solve(system, a, n1, n2):
    lengths = (n1,) if system == "f" else (n1, n2)
    rep = solve_truncated(system, lengths, a, K=200, prec=128)
    if rep.status == "degenerate":
        assert abs(rep.determinant_value) < 1e-30
    else:
        assert rep.solved, rep.status
        assert all(v < 1e-25 for v in rep.params.residuals.values())


def test_input_errors():
    with pytest.raises(RealizerError):
        solve_truncated("f3", (1,), 2)
    with pytest.raises(RealizerError):
        solve_truncated("f4", (1, 1), 2)
    with pytest.raises(RealizerError):
        solve_truncated("f3", (1, 1), 1)
    with pytest.raises(RealizerError):
        solve_truncated("f", (0,), 2)
    with pytest.raises(RealizerError):
        solve_full_cycle((1, 2))
    with pytest.raises(RealizerError):
        solve_full_cycle((1, 2, 3), a="biggest")


@pytest.mark.parametrize("lengths", [(2, 3, 8), (3, 3, 10), (1, 1, 20), (2, 4, 9)])
def test_cycle_closes_at_characteristic_root(lengths):
    rep = solve_full_cycle(lengths)
    assert rep.solved
    assert rep.params.residuals["closing"] < 1e-60
    assert rep.params.a_poly is not None


@pytest.mark.parametrize("lengths", [(1, 1, 1), (1, 2, 4)])
def test_cycle_without_root_off_the_circle(lengths):
    cls, roots = chi_roots(lengths)
    assert cls.klass == "One" and roots == []
    assert solve_full_cycle(lengths).status == "degenerate"


def test_cycle_residual_is_conjugation_invariant():
    z = mpmath.mpc("1.3", "0.7")
    r1 = solve_full_cycle((2, 3, 5), a=z)
    r2 = solve_full_cycle((2, 3, 5), a=mpmath.conj(z))
    with mpmath.mp.workprec(256):
        c1, c2 = r1.params.residuals["closing"], r2.params.residuals["closing"]
        assert abs(c1 - c2) <= 1e-60 * max(1, abs(c1))
        assert abs(r1.params.t1 - mpmath.conj(r2.params.t1)) < 1e-60


def test_report_json_shape():
    js = solve_truncated("f3", (1, 1), 2).to_json()
    assert js["status"] == "solved"
    assert set(js["params"]["t1"]) == {"re", "im"}
    assert js["notes"]
