import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commacat.linalg import (
    FpMatrix,
    column_space_basis,
    enumerate_vectors,
    hstack,
    inverse,
    kernel_basis,
    kron,
    matrix_of_linear_map,
    quotient_space,
    rank,
    rref,
    solve,
    spans_equal,
)


def test_modulus_must_be_prime():
    with pytest.raises(ValueError):
        FpMatrix(4, [[1]])
    with pytest.raises(ValueError):
        FpMatrix(1, [[1]])
    FpMatrix(2, [[1]])
    FpMatrix(65521, [[1]])


def test_entries_reduced():
    m = FpMatrix(3, [[4, -1], [6, 2]])
    assert m.to_lists() == [[1, 2], [0, 2]]


def test_rref_identity():
    m = FpMatrix.identity(2, 2)
    red, pivots = rref(m)
    assert red == m
    assert pivots == (0, 1)


def test_rref_zero():
    m = FpMatrix.zeros(2, 3, 3)
    red, pivots = rref(m)
    assert red == m
    assert pivots == ()


def test_rref_rank_one():
    # hand Gaussian elimination: [[1,1],[1,1]] -> [[1,1],[0,0]]
    m = FpMatrix(2, [[1, 1], [1, 1]])
    red, pivots = rref(m)
    assert red.to_lists() == [[1, 1], [0, 0]]
    assert pivots == (0,)


def test_kernel_identity_empty():
    assert kernel_basis(FpMatrix.identity(2, 3)).cols == 0


def test_kernel_zero_map():
    k = kernel_basis(FpMatrix.zeros(2, 2, 3))
    assert k.cols == 3
    assert rank(k) == 3


def test_kernel_sum_relation():
    # solve x + y = 0 over F_2: basis {(1,1)}
    k = kernel_basis(FpMatrix(2, [[1, 1]]))
    assert k.to_lists() == [[1], [1]]


def test_solve_identity():
    b = FpMatrix.column(5, [3, 1])
    assert solve(FpMatrix.identity(5, 2), b) == b


def test_solve_inconsistent():
    assert solve(FpMatrix.zeros(2, 2, 2), FpMatrix.column(2, [1, 0])) is None


def test_solve_underdetermined():
    m = FpMatrix(2, [[1, 1]])
    x = solve(m, FpMatrix.column(2, [1]))
    assert x is not None
    assert (m @ x).to_lists() == [[1]]


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(FpMatrix.identity(2, 2), FpMatrix.column(2, [1, 0, 0]))


def test_quotient_by_full_space():
    proj, sect = quotient_space(2, 2, FpMatrix.identity(2, 2))
    assert proj.rows == 0 and proj.cols == 2
    assert sect.rows == 2 and sect.cols == 0


def test_quotient_by_zero():
    proj, sect = quotient_space(2, 2, FpMatrix.zeros(2, 2, 0))
    assert proj.rows == 2
    assert (proj @ sect) == FpMatrix.identity(2, 2)


def test_quotient_kernel_is_subspace():
    sub = FpMatrix.column(2, [1, 1])
    proj, sect = quotient_space(2, 2, sub)
    assert proj.rows == 1
    assert (proj @ sub).is_zero()
    assert (proj @ sect) == FpMatrix.identity(2, 1)
    assert spans_equal(kernel_basis(proj), sub)


def test_inverse():
    m = FpMatrix(5, [[1, 2], [3, 4]])
    inv = inverse(m)
    assert inv is not None
    assert (m @ inv) == FpMatrix.identity(5, 2)
    assert inverse(FpMatrix(2, [[1, 1], [1, 1]])) is None


def test_column_space_basis_canonical():
    a = FpMatrix(2, [[1, 1], [1, 1], [0, 1]])
    b = FpMatrix(2, [[0, 1], [0, 1], [1, 1]])
    assert column_space_basis(a) == column_space_basis(b)
    assert column_space_basis(a).cols == 2


def test_matrix_of_linear_map_probe():
    f = FpMatrix(3, [[1, 2], [0, 1]])
    probed = matrix_of_linear_map(3, 2, 2, lambda v: f @ v)
    assert probed == f


def test_enumerate_vectors_order():
    vs = list(enumerate_vectors(2, 2))
    assert vs == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert list(enumerate_vectors(3, 0)) == [()]


@st.composite
def fp_matrices(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    rows = draw(st.integers(min_value=0, max_value=5))
    cols = draw(st.integers(min_value=0, max_value=5))
    entries = draw(
        st.lists(
            st.lists(st.integers(min_value=0, max_value=p - 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    m = np.array(entries, dtype=np.int64).reshape(rows, cols)
    return FpMatrix(p, m)


@given(fp_matrices())
@settings(max_examples=150, deadline=None)
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).cols == m.cols


@given(fp_matrices())
@settings(max_examples=150, deadline=None)
def test_kernel_columns_annihilated(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert rank(k) == k.cols


@given(fp_matrices())
@settings(max_examples=100, deadline=None)
def test_quotient_projection_properties(m):
    proj, sect = quotient_space(m.p, m.rows, m)
    assert proj.rows == m.rows - rank(m)
    if m.cols:
        assert (proj @ m).is_zero()
    assert (proj @ sect) == FpMatrix.identity(m.p, proj.rows)
    assert rank(proj) == proj.rows


@given(fp_matrices(), st.data())
@settings(max_examples=100, deadline=None)
def test_solve_iff_rank_criterion(m, data):
    vec = data.draw(
        st.lists(st.integers(min_value=0, max_value=m.p - 1), min_size=m.rows, max_size=m.rows)
    )
    b = FpMatrix(m.p, np.array(vec, dtype=np.int64).reshape(m.rows, 1))
    x = solve(m, b)
    consistent = rank(hstack([m, b])) == rank(m)
    assert (x is not None) == consistent
    if x is not None:
        assert (m @ x) == b


def test_kron_convention():
    a = FpMatrix(2, [[1, 0], [0, 1]])
    b = FpMatrix(2, [[1, 1]])
    assert kron(a, b).to_lists() == [[1, 1, 0, 0], [0, 0, 1, 1]]
