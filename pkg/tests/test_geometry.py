from fractions import Fraction

import numpy as np
import pytest

from spintorsion import geometry as ge
from spintorsion.clifford import Signature
from spintorsion.suites import custom_brane

Y = np.array([0.1, 0.2, -0.3, 0.4, 0.05])


@pytest.fixture(scope="module")
def brane():
    return ge.BraneGeometry(ge.m5_consistent_preset())


def test_presets_satisfy_their_system():
    ge.m5_consistent_preset().validate()
    assert ge.m5_preset().D == 11


def test_custom_brane_solves_system():
    bg = custom_brane(2, 8, 1, 1)
    bg.validate()
    assert bg.D == 11


def test_profile_kind_checked():
    with pytest.raises(ValueError):
        ge.Profile("spiral")


def test_christoffel_matches_closed_form(brane):
    got, want = brane.christoffel(Y, order=0), brane.christoffel_closed_form(Y)
    assert set(want) <= set(got)
    for key, jet in got.items():
        assert abs(jet.value - want.get(key, 0.0)) < 1e-12


def test_torsion_is_half_of_gamma_derivative(brane):
    m = brane.torsion_match(Y)
    assert m["hat_d_gamma"] < 1e-12 * m["scale"]
    assert m["half_torsion"] < 1e-12 * m["scale"]
    assert m["torsion"] > 0.1 * m["scale"]


def test_brane_connection_admissible(brane):
    assert brane.admissibility(Y).admissible


def test_frame_and_curvature_conjugate(brane):
    assert brane.spin_connection_residual(brane.point(Y)) < 1e-12
    assert brane.curvature_conjugate_residual(Y) < 1e-12


@pytest.fixture(scope="module")
def killing():
    return ge.killing_conjugation(Signature(1, 3))


def test_killing_at_unit_coefficient(killing):
    assert all(ge.geometric_killing_report(killing, 1).values())


@pytest.mark.parametrize("a", [Fraction(-2), Fraction(1, 3), Fraction(5, 7)])
def test_killing_derivative_scales_quadratically(killing, a):
    rep = ge.geometric_killing_report(killing, a)
    assert rep["dT_minus16a2"] and not rep["dT_minus16a"]
    assert rep["admissible"] and rep["torsion_4a"] and rep["curvature_2a2"] and rep["adR_8a2"]


def test_killing_second_bianchi_and_compatibility(killing):
    assert ge.killing_second_bianchi(killing, Fraction(3, 2))
    assert ge.compatibility_check(killing, ge.killing_potentials(killing, 1))


def test_skew_torsion_curvature_identity():
    sig = Signature(1, 4)
    T = ge.random_three_form(5, np.random.default_rng(0))
    res = ge.r0_from_skew_torsion(T, sig.metric)
    assert res["quarter_sigma_residual"] < 1e-12 * res["scale"]
    assert res["sigma_skew_residual"] < 1e-12 * res["scale"]


def test_su_n_flat_connection_has_no_common_torsion():
    out = ge.su_n_flat_connection(2)
    assert out["intersection_dim"] == 0
    assert out["holonomy_stabilizes"]


def test_lie_closure_of_rotations():
    e = np.zeros((3, 3, 3))
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        e[i, j, k], e[j, i, k] = 1, -1
    gens = [e[:, :, 2], e[:, :, 0]]
    assert ge.lie_closure(gens).dim == 3
