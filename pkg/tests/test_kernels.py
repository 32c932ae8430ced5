import copy
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pathmetric import _kernels_py, kernels

compiled = pytest.importorskip("pathmetric._kernels")

small = st.integers(-40, 40)


@st.composite
def tableau(draw):
    m = draw(st.integers(1, 6))
    k = draw(st.integers(1, 6))
    rows = [[draw(small) for _ in range(k)] for _ in range(m)]
    dens = [draw(st.integers(1, 9)) for _ in range(m)]
    r = draw(st.integers(0, m - 1))
    c = draw(st.integers(0, k - 1))
    if rows[r][c] == 0:
        rows[r][c] = draw(st.sampled_from([-3, -1, 1, 2, 7]))
    return rows, dens, r, c


def as_fractions(rows, dens):
    return [[Fraction(x, d) for x in row] for row, d in zip(rows, dens)]


@settings(max_examples=200, deadline=None)
@given(tableau())
def test_pivot_backends_agree(data):
    rows, dens, r, c = data
    a_rows, a_dens = copy.deepcopy(rows), list(dens)
    b_rows, b_dens = copy.deepcopy(rows), list(dens)
    ta = _kernels_py.pivot_tableau(a_rows, a_dens, r, c)
    tb = compiled.pivot_tableau(b_rows, b_dens, r, c)
    assert list(ta) == list(tb)
    assert a_rows == b_rows and a_dens == b_dens


@settings(max_examples=100, deadline=None)
@given(tableau())
def test_pivot_matches_rational_exchange(data):
    rows, dens, r, c = data
    before = as_fractions(rows, dens)
    _kernels_py.pivot_tableau(rows, dens, r, c)
    after = as_fractions(rows, dens)
    piv = before[r][c]
    expect_r = [-x / piv for x in before[r]]
    expect_r[c] = 1 / piv
    assert after[r] == expect_r
    for i, row in enumerate(before):
        if i == r:
            continue
        f = row[c]
        want = [x + f * y for x, y in zip(row, expect_r)]
        want[c] = f * expect_r[c]
        assert after[i] == want
    assert all(d > 0 for d in dens)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 300), st.lists(st.integers(-500, 500), max_size=5))
def test_bfs_backends_agree(n, gens):
    assert list(_kernels_py.cyclic_bfs(n, gens)) == list(compiled.cyclic_bfs(n, gens))


def test_selected_backend():
    assert kernels.BACKEND == "cython"
    assert kernels.pivot_tableau is compiled.pivot_tableau
