import numpy as np
import pytest

from spintorsion.clifford import Signature, build_gamma
from spintorsion.conjugation import candidate_conjugations
from spintorsion.exact import GMat
from spintorsion.fierz import (
    endomorphism_coefficients, fierz_coefficient, fierz_coefficient_unsigned, fierz_expand,
    fierz_expand_generic, from_coefficients, make_pure_spinor, null_space_dimension, project_ck,
    purity_profile, rank_one_map, susy_bracket, wedge_duality_sign,
)


def spinor(rng, n):
    return GMat(rng.integers(-3, 4, n), rng.integers(-3, 4, n))


@pytest.mark.parametrize("sig", [Signature(1, 1), Signature(1, 3), Signature(0, 4), Signature(1, 5),
                                 Signature(2, 2), Signature(1, 7)], ids=str)
def test_fierz_reconstructs_rank_one_map(sig, rng):
    rep = build_gamma(sig)
    for conj in candidate_conjugations(rep):
        for _ in range(3):
            phi, psi = spinor(rng, rep.dim_s), spinor(rng, rep.dim_s)
            assert fierz_expand(conj, phi, psi) == rank_one_map(conj, phi, psi)


def test_vectorized_and_dense_paths_agree(rep4, rng):
    conj = candidate_conjugations(rep4)[0]
    phi, psi = spinor(rng, 4), spinor(rng, 4)
    assert fierz_expand(conj, phi, psi) == fierz_expand_generic(conj, phi, psi)


def test_unsigned_weights_fail(rep4, rng):
    conj = candidate_conjugations(rep4)[0]
    phi, psi = spinor(rng, 4), spinor(rng, 4)
    wrong = fierz_expand(conj, phi, psi, coefficient=fierz_coefficient_unsigned)
    assert wrong != rank_one_map(conj, phi, psi)


def test_coefficient_formula():
    assert [fierz_coefficient(n, -1, 1) for n in range(4)] == [-1, -1, -1, -1]
    assert [fierz_coefficient(n, 1, 1) for n in range(3)] == [1, -1, 1]


def test_trace_expansion_round_trip(rep4, rng):
    m = GMat.from_complex(rng.integers(-4, 5, (4, 4)) + 1j * rng.integers(-4, 5, (4, 4)))
    assert from_coefficients(rep4, endomorphism_coefficients(rep4, m)) == m


def test_bracket_symmetry(rep4, rng):
    for conj in candidate_conjugations(rep4):
        phi, psi = spinor(rng, 4), spinor(rng, 4)
        a, b = susy_bracket(conj, phi, psi), susy_bracket(conj, psi, phi)
        sign = conj.delta_k(1)
        assert all(x == y * sign for x, y in zip(a, b))


def test_degree_out_of_range(rep4):
    conj = candidate_conjugations(rep4)[0]
    with pytest.raises(ValueError):
        project_ck(conj, GMat.zeros((4,)), GMat.zeros((4,)), 5)


@pytest.mark.parametrize("D", [4, 6])
def test_pure_spinors(D):
    rep = build_gamma(Signature(0, D))
    for w in (1, -1):
        ps = make_pure_spinor(rep, w)
        assert null_space_dimension(rep, ps.spinor) == D // 2
        if D == 4:
            assert wedge_duality_sign(rep, ps.spinor) == -w
    conj = candidate_conjugations(rep)[0]
    prof = purity_profile(conj, make_pure_spinor(rep, 1).spinor)
    assert not all(prof.values())
