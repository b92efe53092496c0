from fractions import Fraction

import numpy as np
import pytest

from spintorsion import connection as cn
from spintorsion.clifford import Signature, build_gamma
from spintorsion.conjugation import build_conjugation, candidate_conjugations


@pytest.fixture(scope="module", params=[Signature(1, 3), Signature(0, 4), Signature(1, 4), Signature(1, 5)],
                ids=str)
def conj_list(request):
    return candidate_conjugations(build_gamma(request.param))


def test_scan_matches_closed_rules(conj_list):
    for conj in conj_list:
        bad = [r for r in cn.admissibility_scan(conj) if not r["agree"]]
        assert bad == []


def test_rule_forms_agree(conj_list):
    for conj in conj_list:
        for deg in range(conj.rep.D + 1):
            assert cn.rule_mod4(deg, conj.delta0, conj.delta1) == cn.rule_delta(conj, deg)


def test_admissible_torsion_has_delta1_symmetry(rep4):
    conj = build_conjugation(rep4, -1)
    rng = np.random.default_rng(5)
    for deg in range(5):
        if not cn.rule_mod4(deg, conj.delta0, conj.delta1):
            continue
        conn = cn.SpinorConnection(conj, [cn.ConnectionTerm(cn.random_form(4, deg, rng))])
        assert cn.torsion_symmetry_ok(conj, cn.torsion(conj, conn))


def test_non_admissible_term_has_witness(rep4):
    conj = build_conjugation(rep4, -1)
    deg = next(d for d in range(5) if not cn.rule_mod4(d, conj.delta0, conj.delta1))
    conn = cn.SpinorConnection(conj, [cn.ConnectionTerm(cn.ones_form(4, deg))])
    adm = cn.is_admissible(conj, conn)
    assert not adm.admissible and adm.witness is not None


def test_unknown_placement_rejected():
    with pytest.raises(ValueError):
        cn.ConnectionTerm(cn.ones_form(4, 1), "sideways")


def test_twist_table_has_no_differences():
    for sig in (Signature(1, 3), Signature(1, 9)):
        for conj in candidate_conjugations(build_gamma(sig)):
            assert cn.twist_table_diff(conj) == []


def test_twisted_brute_force_agrees(rep4):
    rows = cn.twisted_brute_force(build_conjugation(rep4, -1))
    assert all(r["agree"] for r in rows)


def test_metric_connection_torsion_is_twice_the_form(rep4):
    conj = build_conjugation(rep4, -1)
    A3 = cn.random_form(4, 3, np.random.default_rng(2))
    assert cn.metric_connection_check(conj, A3) == {"admissible": True, "torsion_is_2A": True}


@pytest.mark.parametrize("w", [1, -1])
def test_projected_terms_pass_through_opposite_projection(w):
    rep = build_gamma(Signature(1, 5))
    conj = candidate_conjugations(rep)[0]
    deg = 3
    out = cn.opposite_projection_check(conj, deg, w)
    assert out["violations"] == 0 and out["closed_forms"]


def test_projector_algebra(rep4):
    rows = cn.projector_report(rep4)
    assert all(r["kernel_dim_ok"] for r in rows)
    assert all(r["square_formula_ok"] and r["product_formula_ok"] for r in rows)
    assert all(r.get("square_ok", True) for r in rows)
    assert all(r.get("product_zero_ok", True) for r in rows)


def test_mixed_projector_products_carry_a_sign(rep4):
    rows = {(r["i"], r["j"], r["w"]): r for r in cn.projector_report(rep4)}
    for w in (1, -1):
        assert rows[(2, 3, w)]["product_found"] == f"-Pi_01,{'-' if w > 0 else '+'}"


@pytest.mark.parametrize("ij", [(1, 2), (2, 3)])
def test_listed_kernels_belong_to_opposite_chirality(rep4, ij):
    for w in (1, -1):
        listed = cn.listed_kernel(rep4, *ij, w)
        assert cn.span_equal(cn.kernel_basis(rep4, *ij, -w), listed)


def test_projector_needs_doubled_bundle(rep4):
    with pytest.raises(ValueError):
        cn.projector_matrix(rep4, ("pi", 0, 1, 1), doubled=False)


def test_sugra_coefficient_measurement():
    rep = build_gamma(Signature(1, 10))
    conj = candidate_conjugations(rep)[0]
    F = cn.KForm(4, 11, {(1, 2, 3, 4): cn.GQ(1)})
    out = cn.sugra_check(conj, F)
    assert out["admissible"]
    nonzero = [q for q in out["measured_two_form_coefficient"] if q]
    assert nonzero == [Fraction(1, 6)]
    assert out["mismatches"]
