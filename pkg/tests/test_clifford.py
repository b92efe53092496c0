import itertools

import pytest

from spintorsion.clifford import (
    Signature, UnsupportedDimension, antisym_gamma_bruteforce, build_gamma, check_anticommutators,
    duality_map, index_sets, levi_civita_lower, measured_pauli_signs, pauli_set, perm_sign,
    product_expand, product_expand_literal, volume_square_sign,
)

SIGS = [Signature(t, s) for t in (0, 1) for s in range(1, 7) if t + s <= 6]


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_anticommutators(sig):
    assert check_anticommutators(build_gamma(sig)) == []


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_volume_square(sig):
    rep = build_gamma(sig)
    assert rep.vol @ rep.vol == rep.identity().scale(volume_square_sign(sig))


@pytest.mark.parametrize("sig", SIGS, ids=str)
def test_star_is_involution_in_even_dimension(sig):
    rep = build_gamma(sig)
    if sig.D % 2:
        assert rep.star is None
    else:
        assert rep.star @ rep.star == rep.identity()
        for g in rep.gammas:
            assert rep.star @ g == -(g @ rep.star)


def test_spinor_dimension():
    for D in range(1, 12):
        assert build_gamma(Signature(1, D - 1) if D > 1 else Signature(0, 1)).dim_s == 2 ** (D // 2)


def test_dimension_guard():
    with pytest.raises(UnsupportedDimension):
        Signature(1, 12)


def test_antisymmetrized_products(rep4):
    for k in range(5):
        for I in index_sets(4, k):
            assert antisym_gamma_bruteforce(rep4, I) == rep4.gamma(I)


def test_repeated_labels_vanish(rep4):
    assert rep4.gamma((1, 1)).is_zero()
    assert rep4.gamma((2, 0)) == -rep4.gamma((0, 2))


@pytest.mark.parametrize("sig", [Signature(1, 3), Signature(0, 5), Signature(2, 2)], ids=str)
def test_product_expansion_exhaustive(sig):
    rep = build_gamma(sig)
    sets = [I for k in range(sig.D + 1) for I in index_sets(sig.D, k)]
    for lo, up in itertools.product(sets, repeat=2):
        assert product_expand(rep, lo, up) == rep.gamma(lo) @ rep.gamma(up, upper=True)


def test_literal_expansion_oracle(rep4):
    for lo, up in [((0, 1), (1, 2)), ((0, 1, 2), (0, 1)), ((3,), (0, 3)), ((1, 2), (1, 2))]:
        assert product_expand_literal(rep4, lo, up) == product_expand(rep4, lo, up)


@pytest.mark.parametrize("sig", [Signature(1, 3), Signature(0, 3), Signature(1, 4)], ids=str)
def test_duality(sig):
    rep = build_gamma(sig)
    for k in range(sig.D + 1):
        for I in index_sets(sig.D, k):
            assert duality_map(rep, I) == rep.gamma(I)


def test_levi_civita_lower_carries_det_g():
    assert levi_civita_lower(Signature(1, 3), (0, 1, 2, 3)) == -1
    assert levi_civita_lower(Signature(0, 4), (1, 0, 2, 3)) == -1


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((0, 0)) == 0


def test_pauli_tables_match_matrices():
    ps = pauli_set()
    assert measured_pauli_signs(ps) == (ps.eps_ik, ps.eps_k)
