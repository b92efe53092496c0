import pytest

from spintorsion.clifford import Signature, build_gamma
from spintorsion.conjugation import (
    ConjugationUnavailable, adjoint_split, build_conjugation, candidate_conjugations,
    delta_closed_form, parallel_span_check, star_adjoint_sign, table_row_matches, twisted_conjugation,
)

SIGS = [Signature(1, s) for s in range(1, 10)] + [Signature(0, 4), Signature(2, 2), Signature(0, 7)]


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_intertwiner_relation(sig):
    rep = build_gamma(sig)
    for conj in candidate_conjugations(rep):
        sigma = conj.delta0 * conj.delta1
        for g in rep.gammas:
            assert g.T @ conj.c == (conj.c @ g).scale(sigma)
        assert conj.c @ conj.c_inv == rep.identity()


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_delta_closed_form_matches_measurement(sig):
    rep = build_gamma(sig)
    for conj in candidate_conjugations(rep):
        for k in range(sig.D + 1):
            assert conj.delta_k(k, all_sets=True) == delta_closed_form(k, conj.delta0, conj.delta1)


def test_odd_dimension_has_one_conjugation():
    assert len(candidate_conjugations(build_gamma(Signature(1, 4)))) == 1
    assert len(candidate_conjugations(build_gamma(Signature(1, 3)))) == 2


def test_unavailable_conjugation_names_options():
    rep = build_gamma(Signature(1, 4))
    have = candidate_conjugations(rep)[0].delta0
    with pytest.raises(ConjugationUnavailable, match="realizable"):
        build_conjugation(rep, -have)


def test_adjoint_is_charge_adjoint(rep4):
    conj = build_conjugation(rep4, -1)
    for k, sign in adjoint_split(conj).items():
        assert sign == conj.delta0 * conj.delta_k(k)
    g = rep4.gamma((0, 1))
    assert conj.adjoint(conj.adjoint(g)) == g


@pytest.mark.parametrize("D", [2, 4, 6, 8, 10])
def test_chirality_table_rows(D):
    rep = build_gamma(Signature(1, D - 1))
    for conj in candidate_conjugations(rep):
        ok, why = table_row_matches(conj)
        assert ok, why


def test_star_adjoint_sign_in_four_dimensions(rep4):
    for conj in candidate_conjugations(rep4):
        assert star_adjoint_sign(conj) == 1


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_parallel_span_prediction(sig):
    for conj in candidate_conjugations(build_gamma(sig)):
        measured, predicted = parallel_span_check(conj)
        assert measured == predicted


def test_twisted_conjugation_signs(rep4):
    conj = build_conjugation(rep4, -1)
    for i in range(4):
        tc = twisted_conjugation(conj, i)
        assert tc.dim == 2 * conj.dim
        for k in range(5):
            assert tc.delta_k(k) == delta_closed_form(k, tc.delta0, tc.delta1)
