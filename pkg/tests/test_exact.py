from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from spintorsion.exact import GMat, GQ, kron, nullspace, rank

small = st.integers(-50, 50)


@given(small, small, small, small)
def test_gaussian_product_matches_complex(a, b, c, d):
    x, y = GQ(a, b), GQ(c, d)
    assert complex(x * y) == complex(a, b) * complex(c, d)
    assert x * y == y * x


@given(small, small, st.integers(1, 50), st.integers(1, 50))
def test_division_inverts_multiplication(a, b, c, d):
    x = GQ(Fraction(a, c), b)
    y = GQ(c, d)
    assert (x * y) / y == x


def test_zero_and_truthiness():
    assert not GQ(0)
    assert GQ(0, 1)
    assert GQ(1, 0) == 1


def test_matrix_product_exact_under_overflow():
    big = GMat(np.full((2, 2), 1 << 40, dtype=np.int64))
    sq = big @ big
    assert sq.entry(0, 0) == GQ(2 * (1 << 80))


def test_scale_by_fraction_keeps_exact_entries():
    m = GMat(np.array([[1, 2], [3, 4]])).scale(Fraction(1, 3))
    assert m.entry(1, 0) == GQ(1)
    assert m.entry(0, 1) == GQ(Fraction(2, 3))


def test_from_complex_round_trip(rng):
    arr = rng.integers(-5, 6, (3, 3)) + 1j * rng.integers(-5, 6, (3, 3))
    assert np.array_equal(GMat.from_complex(arr).to_complex(), arr)


def test_kron_dimensions_and_values():
    a = GMat(np.array([[0, 1], [1, 0]]))
    b = GMat.eye(2)
    k = kron(a, b)
    assert k.shape == (4, 4)
    assert k.entry(0, 2) == GQ(1)


def test_nullspace_and_rank():
    m = GMat(np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]]))
    assert rank(m) == 2
    ker = nullspace(m)
    assert len(ker) == 1
    assert (m @ ker[0]).is_zero()


def test_complex_nullspace():
    m = GMat.from_complex(np.array([[1, 1j], [1j, -1]]))
    ker = nullspace(m)
    assert len(ker) == 1
    assert (m @ ker[0]).is_zero()
