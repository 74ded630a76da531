import pytest
from hypothesis import given, strategies as st

from sdcss.errors import DimensionError, NoSolutionError
from sdcss.gf2 import (
    BitMatrix,
    BitVector,
    extend_to_coset_basis,
    in_rowspace,
    nullspace_basis,
    rank,
    rref,
    solve_linear,
    span,
)


@st.composite
def matrices(draw, max_rows=6, max_cols=9):
    n = draw(st.integers(1, max_cols))
    m = draw(st.integers(0, max_rows))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=m, max_size=m))
    return BitMatrix(tuple(BitVector(n, r) for r in rows), n)


def test_vector_basics():
    v = BitVector.from_string("10110")
    assert v.weight == 3
    assert v.support() == [0, 2, 3]
    assert v.support(one_based=True) == [1, 3, 4]
    assert str(v) == "10110"
    assert BitVector.from_support(5, [1, 3, 4], one_based=True) == v
    assert v.dot(BitVector.from_string("10000")) == 1
    assert (v ^ v) == BitVector.zeros(5)
    assert (~BitVector.zeros(3)) == BitVector.ones(3)


def test_vector_length_mismatch():
    with pytest.raises(DimensionError):
        BitVector.zeros(3) ^ BitVector.zeros(4)


def test_rank_and_rref():
    m = BitMatrix.from_strings(["110", "011", "101"])
    assert rank(m) == 2
    red, pivots = rref(m)
    assert red.shape == (3, 3)
    assert pivots == [0, 1]
    assert red.to_strings() == ["101", "011", "000"]


def test_solve_rank_deficient_consistent():
    a = BitMatrix.from_strings(["11", "11"])
    x = solve_linear(a, BitVector.from_string("11"))
    assert a.matvec(x) == BitVector.from_string("11")


def test_solve_inconsistent():
    a = BitMatrix.from_strings(["11", "11"])
    with pytest.raises(NoSolutionError):
        solve_linear(a, BitVector.from_string("10"))


def test_coset_basis_extension():
    h = BitMatrix.from_strings(["1111"])
    full = nullspace_basis(h)
    reps = extend_to_coset_basis(h, full)
    assert reps.nrows == 2
    assert rank(BitMatrix(h.rows + reps.rows, 4)) == 3


@given(matrices())
def test_rank_nullity(m):
    ns = nullspace_basis(m)
    assert rank(m) + ns.nrows == m.ncols
    for v in ns.rows:
        assert not any(v.dot(r) for r in m.rows)


@given(matrices())
def test_rank_transpose(m):
    if m.nrows:
        assert rank(m) == rank(m.transpose())


@given(matrices(), st.data())
def test_rowspace_membership(m, data):
    picks = data.draw(st.lists(st.booleans(), min_size=m.nrows, max_size=m.nrows))
    v = BitVector.zeros(m.ncols)
    for use, r in zip(picks, m.rows):
        if use:
            v = v ^ r
    assert in_rowspace(v, m)


@given(matrices(max_rows=4), st.data())
def test_solve_roundtrip(m, data):
    if not m.nrows:
        return
    x = BitVector(m.ncols, data.draw(st.integers(0, (1 << m.ncols) - 1)))
    b = m.matvec(x)
    sol = solve_linear(m, b)
    assert m.matvec(sol) == b


@given(matrices(max_rows=4, max_cols=6))
def test_span_size(m):
    assert len(span(m)) == 2 ** rank(m)
