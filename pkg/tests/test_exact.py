from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanmoduli.exact import (
    DimensionError,
    PreconditionError,
    RationalMatrix,
    cone_contains,
    cone_intersection,
    det,
    kernel_basis,
    nullspace,
    primitive,
    rank,
    solve,
    to_rational,
)

from conftest import matrices


def cols(*cs):
    return RationalMatrix.from_columns(cs)


def test_det_examples():
    assert det(RationalMatrix.identity(3)) == 1
    assert det(RationalMatrix([[0, -1], [1, -1]])) == 1
    assert det(RationalMatrix([[1, -1], [0, -1]])) == -1


def test_det_4x4_matches_cofactor():
    M = RationalMatrix([[2, 0, 1, 3], [1, 1, 0, 0], [0, "1/2", 2, 1], [1, 0, 0, -1]])
    # Laplace expansion along the first row
    def minor(m, i):
        return [r[:i] + r[i + 1:] for r in m[1:]]

    def lap(m):
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** i * m[0][i] * lap(minor(m, i)) for i in range(len(m)))

    assert det(M) == lap(M.to_rows())


def test_det_non_square():
    with pytest.raises(DimensionError):
        det(RationalMatrix([[1, 2, 3]]))


def test_rank_examples():
    assert rank(RationalMatrix.zeros(2, 3)) == 0
    assert rank(cols((-1, -1), (-2, -2))) == 1
    assert rank(cols((1, 0), (0, 1), (-1, -1))) == 2


def test_kernel_examples():
    assert kernel_basis(cols((1, 0), (0, 1), (0, 0))) == cols((0, 0, 1))
    assert kernel_basis(cols((1, 0), (0, 1), (-1, -1))) == cols((1, 1, 1))
    k = kernel_basis(cols((1, 0), (0, 1), (-1, 0), (0, -1)))
    assert k == cols((1, 0, 1, 0), (0, 1, 0, 1))


def test_kernel_needs_full_rank():
    with pytest.raises(PreconditionError):
        kernel_basis(cols((1, 1), (2, 2)))


def test_cone_intersection_examples():
    e1, e2 = (1, 0), (0, 1)
    assert cone_intersection([e1, e2], [e1, e2]) == ((0, 1), (1, 0))
    assert cone_intersection([e1, e2], [e2, (-1, 0)]) == ((0, 1),)
    assert cone_intersection([e1, e2], [(1, 1), (-1, 1)]) == ((0, 1), (1, 1))


def test_cone_intersection_3d():
    A = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    B = [(1, 1, 0), (-1, 1, 0), (0, 0, 1)]
    assert cone_intersection(A, B) == ((0, 0, 1), (0, 1, 0), (1, 1, 0))
    assert cone_intersection([(1, 0, 0)], [(-1, 0, 0)]) == ()


def test_cone_contains():
    assert cone_contains([(1, 0), (0, 1)], (2, 3))
    assert not cone_contains([(1, 0), (0, 1)], (-1, 3))
    assert cone_contains([(1, 1)], ("1/2", "1/2"))


def test_primitive_and_coercion():
    assert primitive(["1/2", "3/4"]) == (2, 3)
    assert primitive([0, -4]) == (0, -1)
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(PreconditionError):
        primitive([0, 0])


def test_solve():
    M = cols((1, 0), (1, 1))
    assert solve(M, [3, 1]) == (Fraction(2), Fraction(1))
    assert solve(cols((1, 1), (2, 2)), [1, 0]) is None


def test_inverse_and_products():
    M = RationalMatrix([[2, 1], [1, 1]])
    assert M @ M.inverse() == RationalMatrix.identity(2)
    with pytest.raises(PreconditionError):
        RationalMatrix([[1, 2], [2, 4]]).inverse()
    with pytest.raises(DimensionError):
        M @ RationalMatrix([[1, 2, 3]])


@given(matrices(3, 3), matrices(3, 3))
def test_det_multiplicative(a, b):
    A, B = RationalMatrix(a), RationalMatrix(b)
    assert det(A @ B) == det(A) * det(B)


@given(matrices(3, 2), st.integers(0, 1))
def test_repeated_column_gives_zero(m, j):
    rows = [list(r) + [r[j]] for r in m]
    assert det(RationalMatrix(rows)) == 0


@given(st.integers(1, 4), st.integers(1, 6), st.data())
def test_nullspace_is_kernel(r, c, data):
    M = RationalMatrix(data.draw(matrices(r, c)))
    N = nullspace(M)
    assert N.cols == c - rank(M)
    if N.cols:
        assert (M @ N).is_zero()
        assert rank(N) == N.cols


def test_kernel_on_1000_random_matrices():
    import random

    from conftest import rand_q

    rng = random.Random(7)
    for _ in range(1000):
        d = rng.randint(1, 3)
        n = rng.randint(d + 1, 6)
        V = [[rand_q(rng) for _ in range(n - d)] for _ in range(d)]
        M = RationalMatrix([[int(i == j) for j in range(d)] + V[i] for i in range(d)])
        K = kernel_basis(M)
        assert (M @ K).is_zero()
        assert rank(K) == n - d
        # canonical form [-V ; I]
        assert K.select_rows(range(d)) == RationalMatrix([[-x for x in row] for row in V])
        assert K.select_rows(range(d, n)) == RationalMatrix.identity(n - d)


simplex2 = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=2, max_size=2).filter(
    lambda g: g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0
)


@given(simplex2, simplex2)
def test_intersection_commutes_and_is_contained(a, b):
    ab = cone_intersection(a, b)
    assert ab == cone_intersection(b, a)
    for r in ab:
        assert cone_contains(a, r) and cone_contains(b, r)
