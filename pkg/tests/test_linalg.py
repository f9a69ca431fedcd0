from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from braidhom.homology import fast_rank
from braidhom.linalg import Echelon, LinAlgError, NotInvertible, apply, kernel, rank, solve


def dense_rank(columns, nrows):
    """Textbook Gauss-Jordan on a dense Fraction matrix (rows x columns)."""
    m = [[Fraction(col.get(r, 0)) for col in columns] for r in range(nrows)]
    r = 0
    for c in range(len(columns)):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


entries = st.sampled_from([Fraction(0)] * 3 + [Fraction(k, d) for k in (-2, -1, 1, 3) for d in (1, 2)])


@st.composite
def matrices(draw):
    nrows = draw(st.integers(1, 6))
    ncols = draw(st.integers(1, 6))
    cols = []
    for _ in range(ncols):
        col = {}
        for r in range(nrows):
            v = draw(entries)
            if v:
                col[r] = v
        cols.append(col)
    return nrows, cols


@given(matrices())
def test_rank_matches_dense(m):
    nrows, cols = m
    assert rank(cols) == dense_rank(cols, nrows)
    assert fast_rank(cols) == dense_rank(cols, nrows)


@given(matrices())
def test_kernel_vectors_are_killed(m):
    nrows, cols = m
    ker = kernel(cols)
    assert len(ker) == len(cols) - dense_rank(cols, nrows)
    for v in ker:
        assert apply(cols, v) == {}


@given(matrices())
def test_express_recovers_combination(m):
    nrows, cols = m
    e = Echelon(track=True)
    for j, c in enumerate(cols):
        e.add(c, j)
    target = apply(cols, {j: Fraction(j + 1) for j in range(len(cols))})
    x = e.express(target)
    assert x is not None
    assert apply(cols, x) == target


def test_solve_and_errors():
    cols = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(2)}]
    assert apply(cols, solve(cols, {0: Fraction(3), 1: Fraction(7)})) == {0: 3, 1: 7}
    with pytest.raises(NotInvertible):
        solve([{0: Fraction(1)}, {0: Fraction(2)}], {0: Fraction(1)})
    with pytest.raises(NotInvertible):
        solve([{0: Fraction(1)}], {1: Fraction(1)})
    with pytest.raises(LinAlgError):
        Echelon().express({0: Fraction(1)})


def test_contains():
    e = Echelon()
    e.add({0: Fraction(1), 2: Fraction(1)})
    assert e.contains({0: Fraction(2), 2: Fraction(2)})
    assert not e.contains({2: Fraction(1)})
