import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spintorsion import geometry as ge
from spintorsion import superjacobi as sj
from spintorsion.clifford import Signature, build_gamma
from spintorsion.conjugation import build_conjugation

DIM = 5


@st.composite
def elements(draw):
    n = draw(st.integers(0, 4))
    keys = draw(st.lists(st.sets(st.integers(0, DIM - 1), max_size=3), min_size=n, max_size=n))
    vals = draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
    comps = {}
    for k, v in zip(keys, vals):
        comps[tuple(sorted(k))] = comps.get(tuple(sorted(k)), 0) + v
    return sj.ExteriorElement(DIM, comps)


def same(a, b):
    return (a - b).is_zero()


@given(elements(), elements(), elements())
@settings(max_examples=60, deadline=None)
def test_wedge_associative(a, b, c):
    assert same(a.wedge(b).wedge(c), a.wedge(b.wedge(c)))


@given(elements(), elements())
@settings(max_examples=60, deadline=None)
def test_wedge_graded_commutative(a, b):
    for p in a.grades():
        for q in b.grades():
            lhs = a.part(p).wedge(b.part(q))
            rhs = b.part(q).wedge(a.part(p)).scale((-1) ** (p * q))
            assert same(lhs, rhs)


def test_vectors_square_to_zero(rng):
    v = sj.ExteriorElement.from_vector(rng.normal(size=4))
    assert v.wedge(v).is_zero(1e-12)


def test_dense_round_trip(rng):
    t = sj.antisymmetrize(rng.normal(size=(4, 4, 4)), 3)
    e = sj.ExteriorElement.from_dense(t)
    assert np.allclose(e.to_dense(3), t)


def test_wedge_dense_matches_sparse(rng):
    a, b = rng.normal(size=4), rng.normal(size=4)
    sparse = sj.ExteriorElement.from_vector(a).wedge(sj.ExteriorElement.from_vector(b))
    assert np.allclose(sj.wedge_dense(a, 1, b, 1), sparse.to_dense(2))
    assert np.allclose(sj.wedge_vectors(a, b), sparse.to_dense(2))


def test_cap_enforced():
    with pytest.raises(sj.CapExceeded):
        sj.ExteriorElement(sj.MAX_SPINOR_DIM + 1)
    conj = build_conjugation(build_gamma(Signature(1, 7)), 1)
    with pytest.raises(sj.CapExceeded):
        sj.FiberModel(conj, [np.zeros((16, 16))] * 8)


@pytest.fixture(scope="module")
def conj():
    return ge.killing_conjugation(Signature(1, 3))


@pytest.fixture(scope="module", params=["flat", "killing"])
def model(request, conj):
    A = [np.zeros((4, 4), complex)] * 4 if request.param == "flat" else sj.killing_potential(conj, 0.5)
    return sj.FiberModel(conj, A, order=3)


def test_commutation_relations(model):
    res = sj.commutation_relations(model, seed=3, trials=1)
    assert max(res.values()) < 1e-10


def test_bracket_identity(model, rng):
    phi, psi = (rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(2))
    res = sj.bracket_identity(model, phi, psi, seed=1)
    assert res["residual"] < 1e-10 * max(res["scale"], 1.0)


def test_bracket_identity_detects_bad_potential(conj, rng):
    A = [rng.normal(size=(4, 4)) for _ in range(4)]
    model = sj.FiberModel(conj, A, order=3)
    phi, psi = (rng.normal(size=4) for _ in range(2))
    res = sj.bracket_identity(model, phi, psi, seed=1)
    assert res["residual"] > 1e-6 * res["scale"]


def test_jacobi_sums_vanish(model, rng):
    data = model.point_data()
    spin = [rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(3)]
    js = sj.jacobi_sums(data, *spin)
    for key in ("order30_first", "order30_second", "order41_first", "order41_second"):
        assert js[key] < 1e-12 * max(js["scale"], 1.0)
    assert sj.cyclic_bianchi_sum(data, *spin) < 1e-12


def test_flat_model_has_nilpotent_contraction(conj, rng):
    model = sj.FiberModel(conj, [np.zeros((4, 4), complex)] * 4)
    eta = rng.normal(size=4) + 1j * rng.normal(size=4)
    assert sj.flatness(model.point_data(), eta)["flat"]
    assert sj.iota_square(model, eta) < 1e-12


def test_pure_spinor_conditions():
    res = sj.pure_spinor_suite(samples=6, seed=2)
    assert res["b_agree"] == res["samples"] and res["d_agree"] == res["samples"]
    assert res["b_zero_cases"] > 0 and res["d_zero_cases"] > 0
    for (w, sd), v in res["selfdual"].items():
        if w == sd:
            assert v < 1e-12
