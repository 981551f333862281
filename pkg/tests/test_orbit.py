import random

import pytest
from hypothesis import given, strategies as st

from weylspectrum.charpoly import char_poly_of
from weylspectrum.enumerator import enumerate_Md
from weylspectrum.lattice import WeylElement, check_noether, pad, validate_weyl, weyl_degree
from weylspectrum.orbit import (
    OrbitData,
    OrbitDataError,
    column_permute,
    conjugate,
    decompose,
    expand,
    extract_orbit_data,
    permutation_matrix,
)
from weylspectrum.spectrum import EXAMPLE_M, EXAMPLE_N

MEMBERS = [M for d in (2, 3, 4) for M in enumerate_Md(d).representatives]


@st.composite
def orbit_data(draw, max_len=4):
    M = draw(st.sampled_from(MEMBERS))
    n = tuple(draw(st.integers(1, max_len)) for _ in range(len(M) - 1))
    return OrbitData(M, n)


def test_example_expands_to_valid_element():
    w = expand(OrbitData(EXAMPLE_M, EXAMPLE_N))
    assert w.rank == 12
    assert validate_weyl(w).ok
    assert weyl_degree(w) == 3
    assert check_noether(EXAMPLE_M).ok
    od, rho = extract_orbit_data(w)
    assert od.M == EXAMPLE_M and od.n == EXAMPLE_N
    assert rho == tuple(range(13))


@given(orbit_data())
def test_expand_extract_round_trip(od):
    w = expand(od)
    assert validate_weyl(w).ok
    back, rho = extract_orbit_data(w)
    assert back == od
    assert rho == tuple(range(w.rank + 1))


@given(orbit_data(), st.randoms(use_true_random=False))
def test_decompose_undoes_relabeling(od, rnd):
    w = expand(od)
    size = w.rank + 1
    perm = [0] + rnd.sample(range(1, size), size - 1)
    relabeled = WeylElement(conjugate(w.matrix, perm))
    dec = decompose(relabeled)
    assert dec.recompose().matrix == relabeled.matrix
    assert sorted(dec.orbit_data.n) == sorted(od.n)
    assert char_poly_of(dec.orbit_data.M, dec.orbit_data.n) == char_poly_of(od.M, od.n)


def test_pure_permutation_part_is_split_off():
    w = expand(OrbitData(EXAMPLE_M, EXAMPLE_N))
    big = pad(w.matrix, w.rank + 4)
    # a 3-cycle on the three appended directions
    cyc = list(range(w.rank + 4))
    a, b, c = w.rank + 1, w.rank + 2, w.rank + 3
    cyc[a], cyc[b], cyc[c] = b, c, a
    P = permutation_matrix(cyc)
    elt = WeylElement(tuple(tuple(sum(big[i][k] * P[k][j] for k in range(len(P)))
                                  for j in range(len(P))) for i in range(len(P))))
    dec = decompose(elt)
    assert dec.I_p == (a, b, c)
    assert dec.recompose().matrix == elt.matrix
    with pytest.raises(OrbitDataError):
        extract_orbit_data(elt)


def test_length_order_sorts_orbits():
    dec = decompose(expand(OrbitData(EXAMPLE_M, EXAMPLE_N)), order="length")
    assert dec.orbit_data.n == (1, 2, 2, 3, 4)
    assert char_poly_of(dec.orbit_data.M, dec.orbit_data.n) == char_poly_of(EXAMPLE_M, EXAMPLE_N)


def test_degree_one_is_rejected():
    with pytest.raises(OrbitDataError):
        decompose(WeylElement.identity(4))


@pytest.mark.parametrize("kwargs", [
    dict(M=((2, 1), (-1, -1)), n=(0,)),
    dict(M=((2, 1), (-1, -1)), n=(1, 1)),
    dict(M=((1, 0), (0, 1)), n=(1,)),
    dict(M=((2, 0, 1), (-1, -1, 0), (-1, 0, -1)), n=(1, 1)),
])
def test_orbit_data_invariants(kwargs):
    with pytest.raises(OrbitDataError):
        OrbitData(**kwargs)


def test_truncated_flag_allows_zero_entries():
    od = OrbitData(((2, 0, 1), (-1, -1, 0), (-1, 0, -1)), (1, 1), truncated=True)
    assert od.k == 2 and od.total_length == 2


def test_column_permute_semantics():
    M = EXAMPLE_M
    sigma = [2, 3, 1, 5, 4]
    P = column_permute(M, sigma)
    for i, s in enumerate(sigma, start=1):
        assert [row[i] for row in P] == [row[s] for row in M]
    with pytest.raises(OrbitDataError):
        column_permute(M, [1, 1, 2, 3, 4])


@given(orbit_data(), st.randoms(use_true_random=False))
def test_conjugation_with_permuted_lengths_keeps_polynomial(od, rnd):
    k = od.k
    perm = [0] + rnd.sample(range(1, k + 1), k)
    M2 = conjugate(od.M, perm)
    n2 = [0] * k
    for i in range(1, k + 1):
        n2[perm[i] - 1] = od.n[i - 1]
    assert char_poly_of(M2, n2) == char_poly_of(od.M, od.n)
