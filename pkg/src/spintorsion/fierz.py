"""Spinor bilinears: k-form projections, the bracket, Fierz expansion, pure spinors.

Rank-one maps are identified with endomorphisms through the pairing:
``phi (x) psi`` corresponds to ``xi -> C(psi, xi) phi``, i.e. the matrix
``phi psi^T C``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clifford import GammaRep, index_sets, levi_civita_lower, perm_sign
from .conjugation import ChargeConjugation
from .exact import GMat, GQ, nullspace, rank


@dataclass
class KForm:
    """Antisymmetric k-form stored on strictly increasing index tuples."""

    degree: int
    dim: int
    comps: dict

    def component(self, labels) -> GQ:
        sign = perm_sign(labels)
        if sign == 0:
            return GQ(0)
        v = self.comps.get(tuple(sorted(labels)), GQ(0))
        return v if sign == 1 else -v

    def is_zero(self) -> bool:
        return not any(bool(v) for v in self.comps.values())

    def scale(self, q) -> "KForm":
        return KForm(self.degree, self.dim, {k: v * q for k, v in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, KForm) or other.degree != self.degree:
            return NotImplemented
        keys = set(self.comps) | set(other.comps)
        return all(self.comps.get(k, GQ(0)) == other.comps.get(k, GQ(0)) for k in keys)


def lincomb(terms, shape) -> GMat:
    """Exact sum of scalar * matrix over ``terms`` (pairs of GQ-like and GMat)."""
    parts = []
    den = 1
    for q, m in terms:
        q = GQ.coerce(q)
        if not q:
            continue
        dq = math.lcm(q.re.denominator, q.im.denominator)
        a, b = int(q.re * dq), int(q.im * dq)
        parts.append((a, b, dq * m.den, m))
        den = math.lcm(den, dq * m.den)
    re = np.zeros(shape, dtype=object)
    im = np.zeros(shape, dtype=object)
    for a, b, d, m in parts:
        f = den // d
        mre, mim = m.re.astype(object), m.im.astype(object)
        re = re + (a * f) * mre - (b * f) * mim
        im = im + (a * f) * mim + (b * f) * mre
    return GMat(re, im, den)


def project_ck(conj: ChargeConjugation, phi: GMat, psi: GMat, k: int) -> KForm:
    """Components C(phi, gamma_{mu_1..mu_k} psi) on increasing index sets."""
    rep = conj.rep
    if not 0 <= k <= rep.D:
        raise ValueError(f"degree {k} outside 0..{rep.D}")
    row = conj.c.T @ phi       # phi^T C as a vector
    return KForm(k, rep.D, {I: row.dot(rep.gamma(I) @ psi) for I in index_sets(rep.D, k)})


def susy_bracket(conj: ChargeConjugation, phi: GMat, psi: GMat) -> list[GQ]:
    """{phi, psi}^mu = 2 g^{mu mu} C(phi, gamma_mu psi)."""
    c1 = project_ck(conj, phi, psi, 1)
    return [c1.component((mu,)) * (2 * conj.rep.g(mu)) for mu in range(conj.rep.D)]


def fierz_range(D: int) -> int:
    """Highest degree in the expansion: D when even, (D-1)/2 when odd."""
    return D if D % 2 == 0 else (D - 1) // 2


def fierz_coefficient(n: int, delta0: int, delta1: int) -> int:
    """Weight of the degree-n term (per increasing index set, times 1/dim S).

    With the ``-2g`` Clifford convention the exact weight is
    ``Delta_0 (-Delta_0 Delta_1)^n``.
    """
    return delta0 * (-delta0 * delta1) ** n


def fierz_coefficient_unsigned(n: int, delta0: int, delta1: int) -> int:
    """The same weight without the (-1)^n factor; kept for comparison."""
    return delta0 * (delta0 * delta1) ** n


def rank_one_map(conj: ChargeConjugation, phi: GMat, psi: GMat) -> GMat:
    """Matrix of xi -> C(psi, xi) phi."""
    return phi.outer(psi) @ conj.c


_IRE = np.array([1, 0, -1, 0], dtype=np.int64)
_IIM = np.array([0, 1, 0, -1], dtype=np.int64)


def _numerators(v: GMat):
    if v.re.dtype == object:
        raise OverflowError("spinor entries too large for the vectorized path")
    return v.re, v.im, v.den


def fierz_expand(conj: ChargeConjugation, phi: GMat, psi: GMat, coefficient=fierz_coefficient) -> GMat:
    """Expansion of the rank-one map over antisymmetrized gamma products.

    Uses the monomial structure of gamma_I: every bilinear C(phi, gamma^I psi)
    and every accumulation step is an integer gather/scatter.
    """
    rep = conj.rep
    row = conj.c.T @ phi
    try:
        rr, ri, rd = _numerators(row)
        pr, pi, pd = _numerators(psi)
    except OverflowError:
        return fierz_expand_generic(conj, phi, psi, coefficient)
    d = rep.dim_s
    acc_re = np.zeros(d * d, dtype=object)
    acc_im = np.zeros(d * d, dtype=object)
    cols = np.arange(d)
    for n in range(fierz_range(rep.D) + 1):
        w = coefficient(n, conj.delta0, conj.delta1)
        _, rows, phase, upper = rep.monomial_basis(n)
        # (gamma_I psi)[rows[I, j]] = i^phase psi[j];  val_I = sum_j row[rows] * that
        gre = _IRE[phase] * pr[None, :] - _IIM[phase] * pi[None, :]
        gim = _IRE[phase] * pi[None, :] + _IIM[phase] * pr[None, :]
        xr, xi = rr[rows], ri[rows]
        vre = (xr * gre - xi * gim).sum(axis=1) * upper * w
        vim = (xr * gim + xi * gre).sum(axis=1) * upper * w
        # scatter val_I * i^phase into entry (rows[I, j], j)
        sre = vre[:, None] * _IRE[phase] - vim[:, None] * _IIM[phase]
        sim = vre[:, None] * _IIM[phase] + vim[:, None] * _IRE[phase]
        flat = (rows * d + cols[None, :]).ravel()
        acc_re += _scatter(flat, sre.ravel(), d * d)
        acc_im += _scatter(flat, sim.ravel(), d * d)
    return GMat(acc_re.reshape(d, d), acc_im.reshape(d, d), rd * pd * d)


def _scatter(flat, vals, size):
    out = np.zeros(size, dtype=np.int64)
    np.add.at(out, flat, vals)
    return out.astype(object)


def fierz_expand_generic(conj: ChargeConjugation, phi: GMat, psi: GMat, coefficient=fierz_coefficient) -> GMat:
    """Same expansion through dense exact matrix sums (reference path)."""
    rep = conj.rep
    row = conj.c.T @ phi
    terms = []
    for n in range(fierz_range(rep.D) + 1):
        w = coefficient(n, conj.delta0, conj.delta1)
        for I in index_sets(rep.D, n):
            val = row.dot(rep.gamma(I, upper=True) @ psi)
            if val:
                terms.append((val * w, rep.gamma(I)))
    return lincomb(terms, (rep.dim_s, rep.dim_s)).scale(Fraction(1, rep.dim_s))


def trace_sign(n: int) -> int:
    """gamma^I gamma_I = (-)^{n(n+1)/2} Id for an increasing n-index set."""
    return (-1) ** ((n * (n + 1) // 2) % 2)


def endomorphism_coefficients(rep: GammaRep, omega: GMat, sign=trace_sign) -> dict:
    """Coefficients c_I with omega = sum_I c_I gamma_I, from traces."""
    out = {}
    for n in range(fierz_range(rep.D) + 1):
        for I in index_sets(rep.D, n):
            tr = (rep.gamma(I, upper=True) @ omega).trace()
            if tr:
                out[I] = tr * Fraction(sign(n), rep.dim_s)
    return out


def from_coefficients(rep: GammaRep, coeffs: dict) -> GMat:
    return lincomb([(v, rep.gamma(I)) for I, v in coeffs.items()], (rep.dim_s, rep.dim_s))


# ----------------------------------------------------------------------------
# exterior square of spinor space, realized as antisymmetric matrices

def wedge2(a: GMat, b: GMat) -> GMat:
    """a ^ b as the antisymmetric matrix a b^T - b a^T."""
    return a.outer(b) - b.outer(a)


# ----------------------------------------------------------------------------
# pure spinors

@dataclass
class PureSpinor:
    spinor: GMat
    chirality: int
    annihilators: list[GMat]            # operators V^a with V^a eta = 0
    creators: list[GMat]                # the complementary operators U^a
    annihilator_coeffs: np.ndarray      # rows: coefficients of V^a in gamma^mu
    creator_coeffs: np.ndarray


def complex_frame(rep: GammaRep):
    """Coefficient rows u^a = e_a + i e_{a+n} and their conjugates."""
    n = rep.D // 2
    u = np.zeros((n, rep.D), dtype=complex)
    for a in range(n):
        u[a, a] = 1
        u[a, a + n] = 1j
    return u, u.conj()


def frame_operator(rep: GammaRep, coeffs) -> GMat:
    """sum_mu coeffs[mu] gamma^mu for Gaussian-integer coefficients."""
    terms = [(GQ(int(c.real), int(c.imag)), rep.gamma((mu,), upper=True))
             for mu, c in enumerate(coeffs) if c != 0]
    return lincomb(terms, (rep.dim_s, rep.dim_s))


def _common_kernel(ops: list[GMat]) -> list[GMat]:
    # a positive denominator per block does not change the kernel
    stacked = GMat(np.concatenate([o.re for o in ops]), np.concatenate([o.im for o in ops]))
    return nullspace(stacked)


def _normalize_spinor(v: GMat) -> GMat:
    mags = v.re.astype(object) ** 2 + v.im.astype(object) ** 2
    j = int(np.argmax(np.array([int(x) for x in mags.ravel()])))
    return v.scale(GQ(1) / v.entry(j))


def make_pure_spinor(rep: GammaRep, chirality: int) -> PureSpinor:
    """Pure spinor of the requested chirality via a maximal isotropic annihilator.

    Annihilators are V^a = gamma^a + s_a i gamma^{a+n}; the sign patterns are
    tried starting from the standard barred frame (all s_a = -1).
    """
    if rep.D % 2:
        raise ValueError("pure spinors need even dimension")
    n = rep.D // 2
    for flips in itertools.product((-1, 1), repeat=n):
        ann = np.zeros((n, rep.D), dtype=complex)
        for a, s in enumerate(flips):
            ann[a, a] = 1
            ann[a, a + n] = s * 1j
        cre = ann.conj()
        ops = [frame_operator(rep, row) for row in ann]
        ker = _common_kernel(ops)
        if len(ker) != 1:
            raise RuntimeError(f"annihilator kernel has dimension {len(ker)}")
        eta = _normalize_spinor(ker[0])
        st = rep.star @ eta
        w = 1 if st == eta else (-1 if st == -eta else 0)
        if w == chirality:
            return PureSpinor(eta, w, ops, [frame_operator(rep, row) for row in cre], ann, cre)
    raise RuntimeError(f"no pure spinor of chirality {chirality} found")


def null_space_dimension(rep: GammaRep, eta: GMat) -> int:
    """Complex dimension of {X : X eta = 0} among X = sum x_mu gamma^mu."""
    cols = [rep.gamma((mu,), upper=True) @ eta for mu in range(rep.D)]
    # column scaling by positive denominators leaves the rank unchanged
    m = GMat(np.stack([c.re for c in cols], axis=1), np.stack([c.im for c in cols], axis=1))
    return rep.D - rank(m)


def purity_profile(conj: ChargeConjugation, eta: GMat) -> dict[int, bool]:
    """Degree -> whether C_k(eta, eta) vanishes."""
    return {k: project_ck(conj, eta, eta, k).is_zero() for k in range(conj.rep.D + 1)}


def wedge_array(rep: GammaRep, eta: GMat, upper: bool = True) -> dict:
    """W^{mu nu} = gamma^mu eta ^ gamma^nu eta for mu < nu."""
    vecs = [rep.gamma((mu,), upper=upper) @ eta for mu in range(rep.D)]
    return {(m, n): wedge2(vecs[m], vecs[n]) for m, n in itertools.combinations(range(rep.D), 2)}


def hodge_wedge(rep: GammaRep, W: dict) -> dict:
    """(1/2) eps_{rho sigma mu nu} W^{mu nu} in four dimensions, for rho < sigma."""
    if rep.D != 4:
        raise ValueError("duality check is four-dimensional")
    out = {}
    for rho, sig in itertools.combinations(range(4), 2):
        mu, nu = (x for x in range(4) if x not in (rho, sig))
        e = levi_civita_lower(rep.signature, (rho, sig, mu, nu))
        out[(rho, sig)] = W[(mu, nu)] if e == 1 else -W[(mu, nu)]
    return out


def lower_wedge(rep: GammaRep, W: dict) -> dict:
    return {(m, n): (w if rep.g(m) * rep.g(n) == 1 else -w) for (m, n), w in W.items()}


def wedge_duality_sign(rep: GammaRep, eta: GMat) -> int:
    """s with (1/2) eps W = s W_lower, or 0 if neither sign holds."""
    W = wedge_array(rep, eta)
    H = hodge_wedge(rep, W)
    L = lower_wedge(rep, W)
    if all(H[k] == L[k] for k in W):
        return 1
    if all(H[k] == -L[k] for k in W):
        return -1
    return 0


def wedge_endomorphism(conj: ChargeConjugation, a: GMat, b: GMat) -> GMat:
    """Endomorphism of a ^ b = a (x) b - b (x) a under the pairing identification."""
    return rank_one_map(conj, a, b) - rank_one_map(conj, b, a)


def selfdual_expressions(conj: ChargeConjugation, pure: PureSpinor, mu: int, nu: int):
    """The two middle-degree forms of gamma^[mu eta ^ gamma^nu] eta.

    Returns (top, low): the expression through C(gamma_(n) eta, eta) gamma^{mu nu (n)}
    and the one through C(gamma^{mu nu (n-2)} eta, eta) gamma_(n-2), both times
    (Id - (-)^n w gamma*). The common prefactor 2 (Delta_0 Delta_1)^{n+1} / dim S
    makes both equal the endomorphism of gamma^mu eta ^ gamma^nu eta.
    """
    rep = conj.rep
    n = rep.D // 2
    eta = pure.spinor
    proj = rep.identity() - rep.star.scale((-1) ** n * pure.chirality)
    p = conj.delta0 * conj.delta1
    row_terms = []
    for I in index_sets(rep.D, n):
        val = conj.pair(rep.gamma(I) @ eta, eta)
        if val:
            row_terms.append((val, rep.gamma((mu, nu) + I, upper=True)))
    top = lincomb(row_terms, (rep.dim_s, rep.dim_s)) @ proj
    top = top.scale(Fraction(2 * p ** (n + 1), rep.dim_s))
    low_terms = []
    for J in index_sets(rep.D, n - 2):
        val = conj.pair(rep.gamma((mu, nu) + J, upper=True) @ eta, eta)
        if val:
            low_terms.append((val, rep.gamma(J)))
    low = lincomb(low_terms, (rep.dim_s, rep.dim_s)) @ proj
    low = low.scale(Fraction(2 * p ** (n + 1), rep.dim_s))
    return top, low
