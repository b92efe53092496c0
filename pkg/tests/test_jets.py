import math

import numpy as np
import pytest

from spintorsion.jets import Jet, commutator, variables


def test_product_rule_and_taylor_coefficients():
    x, y = variables(2, 3, (0.5, -1.0))
    f = x * x * y
    assert f.value == pytest.approx(0.25 * -1.0)
    assert f.partial((0,)) == pytest.approx(2 * 0.5 * -1.0)
    assert f.partial((0, 0)) == pytest.approx(2 * -1.0)
    assert f.partial((0, 1)) == pytest.approx(1.0)


def test_exp_log_inverse():
    (x,) = variables(1, 4, (0.3,))
    g = (x * 2.0).exp().log()
    for k in range(4):
        assert g.partial((0,) * k) == pytest.approx([0.6, 2.0, 0.0, 0.0][k], abs=1e-12)


def test_reciprocal_derivatives():
    (x,) = variables(1, 3, (2.0,))
    r = (x * x + 1.0).reciprocal()
    assert r.partial((0,)) == pytest.approx(-2 * 2.0 / 25.0)


def test_diff_lowers_order():
    x, y = variables(2, 2, (0.0, 0.0))
    d = (x * y).diff(1)
    assert d.order == 1
    assert d.partial((0,)) == pytest.approx(1.0)


def test_matrix_jets_and_commutator():
    (x,) = variables(1, 2, (0.0,))
    a = x * np.array([[0, 1], [0, 0]], dtype=float)
    b = Jet.constant(1, 2, np.array([[0, 0], [1, 0]], dtype=float))
    c = commutator(a, b)
    assert np.allclose(c.partial((0,)), [[1, 0], [0, -1]])


def test_truncate_refuses_to_raise():
    (x,) = variables(1, 1, (0.0,))
    with pytest.raises(ValueError):
        x.truncate(2)


def test_power_series_matches_math():
    (x,) = variables(1, 3, (0.7,))
    assert (x ** 3).partial((0, 0)) == pytest.approx(6 * 0.7)
    assert x.exp().value == pytest.approx(math.exp(0.7))
