import pytest
from hypothesis import given, strategies as st

from oracles import sympy_charpoly
from weylspectrum.jsonio import (
    InputError,
    load_json_arg,
    matrix_from_json,
    matrix_to_json,
    orbit_data_from_json,
    orbit_data_to_json,
    parse_lengths,
)
from weylspectrum.orbit import OrbitData
from weylspectrum.spectrum import EXAMPLE_M, EXAMPLE_N
from weylspectrum.suites import SUITES, dense_charpoly, run_suite


@given(st.integers(1, 6).flatmap(lambda n: st.lists(
    st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_division_free_charpoly_matches_sympy(rows):
    A = tuple(tuple(r) for r in rows)
    assert dense_charpoly(A) == sympy_charpoly(A)


@pytest.mark.parametrize("name", ["worked-example", "theta-identities", "catalogs", "limits",
                                  "realizer"])
def test_fast_suites_pass(name):
    r = run_suite(name)
    assert r.passed, r.failures
    assert r.line().startswith("PASS")
    assert "elapsed" not in r.to_json()


def test_suite_registry():
    assert len(SUITES) == 10
    with pytest.raises(KeyError):
        run_suite("nope")


def test_json_round_trips():
    od = OrbitData(EXAMPLE_M, EXAMPLE_N)
    assert orbit_data_from_json(orbit_data_to_json(od)) == od
    assert matrix_from_json(matrix_to_json(EXAMPLE_M)) == EXAMPLE_M
    assert parse_lengths("[3, 2,4]") == (3, 2, 4)
    with pytest.raises(InputError):
        parse_lengths("3,x")
    with pytest.raises(InputError):
        matrix_from_json([[1, "a"]])
    with pytest.raises(InputError):
        orbit_data_from_json({"M": [[2]]})
    with pytest.raises(InputError):
        load_json_arg('{"a": }')
