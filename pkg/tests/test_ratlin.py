from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from minzero.ratlin import SymmetricRationalMatrix, kernel_basis, normalize_integer, psd_status, rank

from gen import symmetric_matrices
from oracles import rank_by_minors, sylvester_psd

M = SymmetricRationalMatrix.from_rows


def test_identity_is_pd():
    st_ = psd_status(SymmetricRationalMatrix.identity(3))
    assert st_.psd and st_.corank == 0 and st_.kernel_basis == ()
    assert st_.positive_definite


def test_rank_one_pair():
    st_ = psd_status(M([[1, -1], [-1, 1]]))
    assert st_.psd and st_.corank == 1
    assert st_.kernel_basis == ((1, 1),)


def test_indefinite_witness():
    A = M([[1, 2], [2, 1]])
    st_ = psd_status(A)
    assert not st_.psd
    assert A.quad(st_.witness) < 0
    # the specific witness (1,-1) also certifies it, value -2
    assert A.quad((1, -1)) == -2


def test_rank_one_corank_two():
    st_ = psd_status(M([[1, -1, 1], [-1, 1, -1], [1, -1, 1]]))
    assert st_.psd and st_.corank == 2


def test_zero_pivot_with_nonzero_row():
    A = M([[0, 1], [1, 0]])
    st_ = psd_status(A)
    assert not st_.psd and A.quad(st_.witness) == -1


def test_kernel_basis_examples():
    assert kernel_basis(M([[1, -1], [-1, 1]])) == [(1, 1)]
    assert kernel_basis(SymmetricRationalMatrix.identity(2)) == []
    assert kernel_basis(M([[0, 0], [0, 0]])) == [(1, 0), (0, 1)]


def test_rank_examples():
    assert rank([(1, 0), (0, 1)]) == 2
    assert rank([(1, 1), (2, 2)]) == 1
    cycle = [[1 if k in (i, (i + 1) % 5) else 0 for k in range(5)] for i in range(5)]
    assert rank(cycle) == 5 == rank_by_minors(cycle)


def test_rank_dimension_mismatch():
    with pytest.raises(ValueError):
        rank([(1, 2), (1, 2, 3)])


def test_asymmetric_rows_rejected():
    with pytest.raises(ValueError):
        M([[1, 2], [3, 1]])


def test_normalize_integer():
    assert normalize_integer([Fraction(-2, 3), Fraction(4, 3)]) == (1, -2)
    assert normalize_integer([0, Fraction(-3), 6]) == (0, 1, -2)


def test_exhaustive_3x3_sign_matrices_match_sylvester():
    for vals in product((-1, 0, 1), repeat=6):
        a, b, c, d, e, f = vals
        A = M([[a, b, c], [b, d, e], [c, e, f]])
        assert psd_status(A).psd == sylvester_psd(A.rows()), A.rows()


@settings(max_examples=150, deadline=None)
@given(symmetric_matrices(max_n=4))
def test_psd_verdict_matches_minors(A):
    st_ = psd_status(A)
    assert st_.psd == sylvester_psd(A.rows())
    if st_.psd:
        for v in st_.kernel_basis:
            assert all(x == 0 for x in A.matvec(v))
        assert st_.corank + rank_by_minors(A.rows()) == A.n
    else:
        assert A.quad(st_.witness) < 0


@settings(max_examples=60, deadline=None)
@given(symmetric_matrices(max_n=4), st.lists(st.lists(st.fractions(-5, 5, max_denominator=7), min_size=4,
                                                     max_size=4), min_size=1, max_size=5))
def test_psd_nonnegative_on_random_points(A, xs):
    if psd_status(A).psd:
        for x in xs:
            assert A.quad(x[:A.n]) >= 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_matches_minor_oracle(rows):
    assert rank(rows) == rank_by_minors(rows)


@settings(max_examples=100, deadline=None)
@given(symmetric_matrices(max_n=4))
def test_kernel_basis_spans_kernel(A):
    basis = kernel_basis(A)
    assert len(basis) == A.n - rank_by_minors(A.rows())
    for v in basis:
        assert all(x == 0 for x in A.matvec(v))
        first = next(x for x in v if x != 0)
        assert first > 0
