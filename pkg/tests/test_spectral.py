"""Transition matrices, primitivity, characteristic polynomials, PF data."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ttlam import (
    NotPrimitiveError,
    charpoly_coefficients,
    expansion_factor,
    is_primitive,
    largest_real_root,
    matrix_power_lengths,
    pf_data,
    transition_matrix,
    transition_power,
)

from oracles import bisect_root, numpy_spectral


def test_transition_matrices(fib, trib, trib_inv, reducible):
    assert transition_matrix(fib).tolist() == [[1, 1], [1, 0]]
    assert transition_matrix(trib).tolist() == [[0, 0, 1], [1, 0, 1], [0, 1, 0]]
    assert transition_matrix(trib_inv).tolist() == [[1, 1, 0], [0, 0, 1], [1, 0, 0]]
    assert transition_matrix(reducible).tolist() == [[1, 1, 1], [1, 0, 1], [0, 0, 1]]


def test_primitivity(fib, trib, trib_inv, reducible):
    assert is_primitive(transition_matrix(fib))
    assert is_primitive(transition_matrix(trib))
    assert is_primitive(transition_matrix(trib_inv))
    assert not is_primitive(transition_matrix(reducible))


def test_primitive_vs_positive_power(all_maps):
    for f in all_maps.values():
        m = transition_matrix(f)
        n = m.shape[0]
        p = np.linalg.matrix_power(m.astype(object), (n - 1) ** 2 + 1)
        assert is_primitive(m) == bool((p > 0).all())


def test_charpoly_known(fib, trib, trib_inv):
    assert charpoly_coefficients(transition_matrix(fib)) == [1, -1, -1]
    assert charpoly_coefficients(transition_matrix(trib)) == [1, 0, -1, -1]
    assert charpoly_coefficients(transition_matrix(trib_inv)) == [1, -1, 0, -1]


def test_charpoly_matches_numpy(all_maps):
    for f in all_maps.values():
        m = transition_matrix(f)
        ours = charpoly_coefficients(m)
        theirs = np.poly(m.astype(np.float64))
        assert np.allclose(ours, theirs, atol=1e-6)


def test_largest_real_root_classics():
    golden = (1 + math.sqrt(5)) / 2
    assert abs(largest_real_root([1, -1, -1]) - golden) < 1e-12
    plastic = bisect_root(lambda x: x**3 - x - 1, 1.0, 2.0)
    assert abs(largest_real_root([1, 0, -1, -1]) - plastic) < 1e-12


def test_largest_real_root_crowded_interval():
    # (x - 1)(x^2 - x - 1): two real roots inside (0.9, 1.7]
    assert abs(largest_real_root([1, -2, 0, 1]) - (1 + math.sqrt(5)) / 2) < 1e-12


def test_largest_real_root_repeated():
    # (x - 2)^2 (x + 1)
    assert abs(largest_real_root([1, -3, 0, 4]) - 2.0) < 1e-12


def test_largest_real_root_none():
    from ttlam import ConvergenceError

    with pytest.raises(ConvergenceError):
        largest_real_root([1, 0, 1])  # x^2 + 1


def test_pf_data_against_numpy(fib, trib, trib_inv):
    for f in (fib, trib, trib_inv):
        m = transition_matrix(f)
        pf = pf_data(f)
        lam, vec = numpy_spectral(m)
        assert abs(pf.lam - lam) < 1e-9
        assert np.allclose(pf.pf_lengths, vec, atol=1e-9)
        assert abs(sum(pf.pf_lengths) - 1.0) < 1e-12
        assert pf.min_pf_length > 0
        assert pf.c_illegal == math.ceil(4.0 / pf.min_pf_length)


def test_pf_expansion_law(fib, trib, trib_inv):
    # pf length of every edge image is lam times the edge's pf length
    for f in (fib, trib, trib_inv):
        pf = pf_data(f)
        for e in range(f.graph.num_edges):
            img = f.edge_image[e]
            assert abs(pf.pf_length(img) - pf.lam * pf.pf_lengths[e]) < 1e-9


def test_pf_constants_frozen(fib, trib):
    assert pf_data(trib).c_illegal == 17
    assert pf_data(fib).c_illegal == 11


def test_pf_rejects_nonprimitive(reducible):
    with pytest.raises(NotPrimitiveError):
        pf_data(reducible)


def test_expansion_factor(trib):
    assert abs(expansion_factor(trib) - 1.3247179572447460) < 1e-9


def test_transition_power_exact(trib):
    m = transition_matrix(trib)
    for t in (0, 1, 2, 5, 9):
        expect = np.linalg.matrix_power(m.astype(object), t).tolist()
        assert transition_power(trib, t) == expect


def test_matrix_power_lengths(fib):
    # column sums of M^t are the iterated image lengths
    for t in (1, 2, 3, 4, 8):
        lens = matrix_power_lengths(fib, t)
        assert lens == [len(fib.iterate((2 * e,), t)) for e in range(2)]


def test_matrix_power_lengths_large_exact(fib):
    # bigint path: t = 90 overflows int64 but not Python ints
    lens = matrix_power_lengths(fib, 90)
    assert lens[0] > 2**62
    holds = lens[0] == matrix_power_lengths(fib, 89)[0] + matrix_power_lengths(fib, 88)[0]
    assert holds


@given(st.data())
def test_charpoly_matches_numpy_random(data):
    n = data.draw(st.integers(min_value=2, max_value=4))
    entries = data.draw(
        st.lists(st.integers(min_value=0, max_value=6), min_size=n * n, max_size=n * n)
    )
    m = np.array(entries, dtype=np.int64).reshape(n, n)
    assert np.allclose(charpoly_coefficients(m), np.poly(m.astype(np.float64)), atol=1e-5)
