from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gcone import linalg


def test_hnf_identity():
    H, U = linalg.hermite_normal_form(linalg.identity(3))
    assert H == linalg.identity(3)
    assert U == linalg.identity(3)


def test_hnf_already_reduced():
    H, _ = linalg.hermite_normal_form([[2, 0], [0, 2]])
    assert H == [[2, 0], [0, 2]]


def test_hnf_preserves_determinant():
    m = [[1, 2], [3, 4]]
    H, U = linalg.hermite_normal_form(m)
    # cofactor expansion by hand
    assert abs(H[0][0] * H[1][1] - H[0][1] * H[1][0]) == 2
    assert linalg.matmul(U, m) == H


def _is_row_hnf(H):
    last = -1
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        p = nz[0]
        assert p > last
        assert row[p] > 0
        for other in H:
            if other is not row and any(other):
                q = next(j for j, x in enumerate(other) if x)
                if q < p:
                    assert 0 <= other[p] < row[p]
        last = p
    return True


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=5))
@settings(max_examples=150, deadline=None)
def test_hnf_properties(m):
    H, U = linalg.hermite_normal_form(m)
    assert linalg.matmul(U, m) == H
    assert abs(linalg.determinant(U)) == 1
    assert _is_row_hnf(H)
    # zero rows at the bottom, and U's matching rows span the left kernel
    r = linalg.hnf_rank(H)
    assert r == linalg.rank(m)
    for row in linalg.integer_left_kernel(m):
        assert all(x == 0 for x in linalg.matmul([row], m)[0])


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=100, deadline=None)
def test_inverse_and_determinant(m):
    inv = linalg.inverse(m)
    if linalg.determinant(m) == 0:
        assert inv is None
    else:
        assert linalg.matmul(m, inv) == linalg.identity(3)


def test_solve_and_nullspace():
    a = [[1, 1], [2, 2]]
    assert linalg.solve(a, [1, 2]) is not None
    assert linalg.solve(a, [1, 3]) is None
    (k,) = linalg.nullspace(a)
    assert linalg.dot(k, (1, 1)) == 0 and all(isinstance(x, int) for x in k)


def test_primitive_integer():
    assert linalg.primitive_integer((Fraction(2, 3), Fraction(4, 3))) == (1, 2)
    assert linalg.primitive_integer((0, -6, 9)) == (0, -2, 3)
