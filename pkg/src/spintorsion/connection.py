"""Form-valued spinor connections: ad^C, torsion, admissibility and its rules.

A connection is given by its potential ``A_mu`` (one endomorphism per frame
direction). Everything here works on exact matrices; the torsion and
admissibility helpers also accept complex NumPy arrays so that the geometry
module can reuse them pointwise.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .clifford import GammaRep, gamma_combination, index_sets, pauli_set
from .conjugation import ChargeConjugation, twisted_conjugation
from .exact import GMat, GQ, kron, mono_left, mono_right, monomial_data, nullspace, rank
from .fierz import KForm, endomorphism_coefficients

PLACEMENTS = ("contract", "wedge", "clifford-left", "clifford-right")


# ----------------------------------------------------------------------------
# forms

def random_form(D: int, degree: int, rng: np.random.Generator, bound: int = 9) -> KForm:
    """Form with independent nonzero integer components."""
    comps = {}
    for I in index_sets(D, degree):
        v = 0
        while v == 0:
            v = int(rng.integers(-bound, bound + 1))
        comps[I] = GQ(v)
    return KForm(degree, D, comps)


def ones_form(D: int, degree: int) -> KForm:
    return KForm(degree, D, {I: GQ(1) for I in index_sets(D, degree)})


def raise_form(rep: GammaRep, form: KForm) -> KForm:
    out = {}
    for I, v in form.comps.items():
        s = 1
        for mu in I:
            s *= rep.g(mu)
        out[I] = v if s == 1 else -v
    return KForm(form.degree, form.dim, out)


def form_gamma(rep: GammaRep, form: KForm) -> GMat:
    """F_K gamma^K summed over increasing index sets."""
    return gamma_combination(rep, form.comps, upper=True)


# ----------------------------------------------------------------------------
# connection terms

@dataclass(frozen=True)
class ConnectionTerm:
    """One homogeneous summand of a potential.

    Placements, for a form F of degree l and direction mu (sums over
    increasing index sets):

    * ``contract``: F_{mu K} gamma^K with |K| = l - 1
    * ``wedge``: F^K gamma_{mu K} with |K| = l
    * ``clifford-left``: (F_K gamma^K) gamma_mu
    * ``clifford-right``: gamma_mu (F_K gamma^K)

    ``star`` appends a right factor gamma*, ``twist`` tensors with tau_j on
    the doubled bundle and ``projector`` multiplies from the right by either
    ``("chiral", w)`` = (Id + w gamma*)/2 or ``("pi", i, j, w)``.
    """

    form: KForm
    placement: str = "clifford-left"
    coefficient: object = 1
    twist: int | None = None
    star: bool = False
    projector: tuple | None = None

    def __post_init__(self):
        if self.placement not in PLACEMENTS:
            raise ValueError(f"unknown placement {self.placement!r}; expected one of {PLACEMENTS}")

    @property
    def degree(self) -> int:
        return self.form.degree

    def base_potential(self, rep: GammaRep, mu: int, fg: GMat | None = None) -> GMat:
        F = self.form
        if self.placement in ("clifford-left", "clifford-right") and fg is None:
            fg = form_gamma(rep, F)
        if self.placement == "contract":
            coeffs = {}
            if F.degree >= 1:
                for K in index_sets(rep.D, F.degree - 1):
                    if mu not in K:
                        coeffs[K] = F.component((mu,) + K)
            out = gamma_combination(rep, coeffs, upper=True)
        elif self.placement == "wedge":
            up = raise_form(rep, F)
            coeffs = {(mu,) + K: v for K, v in up.comps.items() if mu not in K}
            out = gamma_combination(rep, coeffs)
        elif self.placement == "clifford-left":
            out = fg @ rep.gammas[mu]
        else:
            out = rep.gammas[mu] @ fg
        if self.star:
            if rep.star is None:
                raise ValueError("gamma* factor needs even dimension")
            out = out @ rep.star
        if self.coefficient != 1:
            out = out.scale(self.coefficient)
        return out

    def potential(self, rep: GammaRep, mu: int, doubled: bool) -> GMat:
        return self.potentials(rep, doubled)[mu]

    def potentials(self, rep: GammaRep, doubled: bool) -> list[GMat]:
        if not doubled and self.twist not in (None, 0):
            raise ValueError("a twist needs the doubled bundle")
        fg = form_gamma(rep, self.form) if self.placement.startswith("clifford") else None
        proj = projector_matrix(rep, self.projector, doubled) if self.projector is not None else None
        tau = pauli_set().tau[self.twist or 0]
        out = []
        for mu in range(rep.D):
            a = self.base_potential(rep, mu, fg)
            if doubled:
                a = kron(a, tau)
            if proj is not None:
                a = a @ proj
            out.append(a)
        return out


def projector_matrix(rep: GammaRep, spec: tuple, doubled: bool) -> GMat:
    kind = spec[0]
    if kind == "chiral":
        w = spec[1]
        p = chiral_projector(rep, w)
        return kron(p, GMat.eye(2)) if doubled else p
    if kind == "pi":
        if not doubled:
            raise ValueError("Pi_{ij,w} acts on the doubled bundle")
        return pi_projector(rep, spec[1], spec[2], spec[3])
    raise ValueError(f"unknown projector {spec!r}")


@dataclass
class SpinorConnection:
    """Flat-space connection with constant coefficients: D = d + sum of terms."""

    conj: ChargeConjugation
    terms: list[ConnectionTerm] = field(default_factory=list)

    @property
    def doubled(self) -> bool:
        return self.conj.base is not None

    @property
    def base_rep(self) -> GammaRep:
        return self.conj.base if self.doubled else self.conj.rep

    def potentials(self) -> list[GMat]:
        rep = self.base_rep
        dim = self.conj.dim
        out = [GMat.zeros((dim, dim)) for _ in range(rep.D)]
        for t in self.terms:
            for mu, a in enumerate(t.potentials(rep, self.doubled)):
                out[mu] = out[mu] + a
        return out

    def conjugate_potentials(self) -> list[GMat]:
        """Potential of D^C = d - A^C, returned as -A^C."""
        return [-self.conj.adjoint(a) for a in self.potentials()]


def _potentials(conn):
    return conn.potentials() if isinstance(conn, SpinorConnection) else list(conn)


def _gammas(conj: ChargeConjugation, like):
    if isinstance(like, np.ndarray):
        return [g.to_complex() for g in conj.rep.gammas]
    return conj.rep.gammas


def _gamma_monomials(rep: GammaRep):
    hit = rep._cache.get("gamma_mono")
    if hit is None:
        hit = [monomial_data(g) for g in rep.gammas]
        rep._cache["gamma_mono"] = hit
    return hit


def _ad_gamma_table(conj: ChargeConjugation, A) -> list[list]:
    """X[m][n] = A_m gamma_n + gamma_n A_m^C, using monomial gammas when exact."""
    adj = [conj.adjoint(a) for a in A]
    if isinstance(A[0], np.ndarray):
        gam = _gammas(conj, A[0])
        return [[A[m] @ gam[n] + gam[n] @ adj[m] for n in range(len(A))] for m in range(len(A))]
    mono = _gamma_monomials(conj.rep)
    return [[mono_right(A[m], mono[n]) + mono_left(mono[n], adj[m]) for n in range(len(A))]
            for m in range(len(A))]


def _is_zero(x, tol: float) -> bool:
    if isinstance(x, np.ndarray):
        return float(np.abs(x).max(initial=0.0)) <= tol
    return x.is_zero()


def _norm(x) -> float:
    if isinstance(x, np.ndarray):
        return float(np.abs(x).max(initial=0.0))
    return float(np.abs(x.to_complex()).max(initial=0.0))


# ----------------------------------------------------------------------------
# ad^C, D-hat gamma, torsion

def ad_c(conj: ChargeConjugation, omega, phi):
    """ad^C_Omega Phi = Omega Phi + Phi Omega^C."""
    if omega.shape != phi.shape:
        raise ValueError(f"dimension mismatch {omega.shape} vs {phi.shape}")
    return omega @ phi + phi @ conj.adjoint(omega)


def hat_d_gamma(conj: ChargeConjugation, conn) -> dict:
    """(D-hat_kappa gamma)_nu = ad^C_{A_kappa} gamma_nu in an orthonormal frame."""
    A = _potentials(conn)
    gam = _gammas(conj, A[0])
    return {(k, n): ad_c(conj, A[k], gam[n]) for k in range(len(A)) for n in range(len(A))}


def torsion(conj: ChargeConjugation, conn) -> dict:
    """T_{mu nu} for mu < nu."""
    A = _potentials(conn)
    X = _ad_gamma_table(conj, A)
    return {(m, n): X[m][n] - X[n][m] for m, n in itertools.combinations(range(len(A)), 2)}


def symmetric_part(conj: ChargeConjugation, conn) -> dict:
    """S_{mu nu} = ad^C_{A_mu} gamma_nu + ad^C_{A_nu} gamma_mu for mu <= nu."""
    A = _potentials(conn)
    X = _ad_gamma_table(conj, A)
    return {(m, n): X[m][n] + X[n][m] for m, n in itertools.combinations_with_replacement(range(len(A)), 2)}


@dataclass
class Admissibility:
    admissible: bool
    witness: tuple | None = None
    residual: float = 0.0


def is_admissible(conj: ChargeConjugation, conn, tol: float = 0.0) -> Admissibility:
    """D admissible iff the symmetric part of D-hat gamma vanishes."""
    worst = 0.0
    witness = None
    for key, s in symmetric_part(conj, conn).items():
        if not _is_zero(s, tol):
            r = _norm(s)
            if witness is None:
                witness = key
            worst = max(worst, r)
    return Admissibility(witness is None, witness, worst)


def is_admissible_on(conj: ChargeConjugation, conn, spinors, tol: float = 0.0) -> Admissibility:
    """(K, D) admissible iff every S_{mu nu} annihilates every spinor of K."""
    worst = 0.0
    witness = None
    sym = symmetric_part(conj, conn)
    for a, eta in enumerate(spinors):
        for key, s in sym.items():
            v = s @ eta
            if not _is_zero(v, tol):
                worst = max(worst, _norm(v))
                if witness is None:
                    witness = key + (a,)
    return Admissibility(witness is None, witness, worst)


def torsion_symmetry_ok(conj: ChargeConjugation, T: dict) -> bool:
    """C(eta, T xi) = Delta_1 C(xi, T eta), i.e. (C T)^T = Delta_1 C T."""
    for t in T.values():
        ct = conj.c @ t
        if ct.T != ct.scale(conj.delta1):
            return False
    return True


# ----------------------------------------------------------------------------
# closed-form rules

def rule_mod4(degree: int, delta0: int, delta1: int) -> bool:
    """Admissible form degrees: 3 or 1 + Delta_0 Delta_1 mod 4."""
    r = degree % 4
    return r == 3 or r == (1 + delta0 * delta1) % 4


def rule_delta(conj: ChargeConjugation, degree: int) -> bool:
    """Same condition phrased as Delta_1 Delta_deg = -1 (measured Deltas)."""
    return conj.delta1 * conj.delta_k(degree) == -1


def term_vanishes(D: int, degree: int, placement: str) -> bool:
    """Placements that produce the zero potential for every form."""
    if placement == "contract":
        return degree == 0
    if placement == "wedge":
        return degree >= D
    return False


def classify_form_term(degree: int, placement: str, conj: ChargeConjugation) -> bool:
    if placement not in PLACEMENTS:
        raise ValueError(f"unknown placement {placement!r}")
    if term_vanishes(conj.rep.D, degree, placement):
        return True
    return rule_mod4(degree, conj.delta0, conj.delta1)


def gamma_star_term_rule(degree: int, conj: ChargeConjugation) -> bool:
    """Admissibility of F gamma^(l) gamma_mu gamma* in dimension 2n."""
    D = conj.rep.D
    if D % 2:
        raise ValueError("gamma* terms need even dimension")
    n = D // 2
    p = conj.delta0 * conj.delta1
    r = degree % 4
    if n % 2 == 0:
        return r == 1 or r == (1 + p) % 4
    return r == 3 or r == (1 - p) % 4


def projected_term_rule(degree: int, conj: ChargeConjugation) -> bool:
    """Admissibility of F gamma^(l) gamma_mu Pi^+- (chiral projection)."""
    D = conj.rep.D
    if D % 2:
        raise ValueError("chiral projections need even dimension")
    n = D // 2
    r = degree % 4
    if n % 2:
        return r == 3
    return r == (1 + conj.delta0 * conj.delta1) % 4


def brute_force_term(conj: ChargeConjugation, degree: int, placement: str = "clifford-left",
                     seed: int = 0, **term_kw) -> tuple[bool, tuple | None]:
    """Admissibility of a single term, decided on a random and the all-ones form.

    Returns (admissible, witness); raises if the two forms disagree.
    """
    D = (conj.base or conj.rep).D
    rng = np.random.default_rng(seed + 1000 * degree + D)
    verdicts = []
    for form in (random_form(D, degree, rng), ones_form(D, degree)):
        conn = SpinorConnection(conj, [ConnectionTerm(form, placement, **term_kw)])
        verdicts.append(is_admissible(conj, conn))
    if verdicts[0].admissible != verdicts[1].admissible:
        raise RuntimeError(f"witness forms disagree for degree {degree}, {placement}")
    return verdicts[0].admissible, verdicts[0].witness


def admissibility_scan(conj: ChargeConjugation, seed: int = 0) -> list[dict]:
    """Closed-form rule vs brute force for every degree, placement and gamma* variant."""
    rep = conj.rep
    rows = []
    for degree in range(rep.D + 1):
        for placement in PLACEMENTS:
            brute, wit = brute_force_term(conj, degree, placement, seed)
            rows.append({"degree": degree, "placement": placement, "star": False,
                         "predicted": classify_form_term(degree, placement, conj),
                         "brute": brute, "witness": wit})
        if rep.D % 2 == 0:
            brute, wit = brute_force_term(conj, degree, "clifford-left", seed, star=True)
            rows.append({"degree": degree, "placement": "clifford-left", "star": True,
                         "predicted": gamma_star_term_rule(degree, conj),
                         "brute": brute, "witness": wit})
            for w in (1, -1):
                brute, wit = brute_force_term(conj, degree, "clifford-left", seed, projector=("chiral", w))
                rows.append({"degree": degree, "placement": "clifford-left", "star": False,
                             "projector": w, "predicted": projected_term_rule(degree, conj),
                             "brute": brute, "witness": wit})
    for r in rows:
        r["agree"] = r["predicted"] == r["brute"]
    return rows


# ----------------------------------------------------------------------------
# twisted bundles

# Reference twist table. Rows keyed by i; the left block lists l mod 4 in {1, 3},
# the right block the classes 1 - Delta_0 Delta_1 and 1 + Delta_0 Delta_1.
TWIST_LEFT = {
    0: {1: (2,), 3: (0, 1, 3)},
    1: {1: (3,), 3: (0, 1, 2)},
    2: {1: (1, 2, 3), 3: (0,)},
    3: {1: (1,), 3: (0, 2, 3)},
}
TWIST_RIGHT = {
    0: {"1-p": (2,), "1+p": (0, 1, 3)},
    1: {"1-p": (3,), "1+p": (0, 1, 2)},
    2: {"1-p": (1, 2, 3), "1+p": (0,)},
    3: {"1-p": (1,), "1+p": (0, 2, 3)},
}


def twisted_rule(degree: int, i: int, j: int, delta_l: int, delta1: int) -> bool:
    """Delta_l Delta_1 eps_j eps_ij = -1."""
    ps = pauli_set()
    return delta_l * delta1 * ps.eps_k[j] * ps.eps_ik[i][j] == -1


def twisted_table(conj: ChargeConjugation) -> dict:
    """{i: {l mod 4: allowed j}} from the sign condition with measured Deltas."""
    out = {}
    for i in range(4):
        out[i] = {}
        for r in range(4):
            deg = r if r <= conj.rep.D else None
            if deg is None:
                continue
            dl = conj.delta_k(deg)
            out[i][r] = tuple(j for j in range(4) if twisted_rule(deg, i, j, dl, conj.delta1))
    return out


def reference_twist_table(p: int) -> dict:
    """Reference twist table expanded to all residues mod 4 for Delta_0 Delta_1 = p."""
    out = {}
    for i in range(4):
        row = {1: TWIST_LEFT[i][1], 3: TWIST_LEFT[i][3]}
        for label, r in (("1-p", (1 - p) % 4), ("1+p", (1 + p) % 4)):
            row[r] = TWIST_RIGHT[i][label]
        out[i] = row
    return out


def twist_table_diff(conj: ChargeConjugation) -> list[dict]:
    """Rows where the computed table differs from the reference table."""
    got = twisted_table(conj)
    want = reference_twist_table(conj.delta0 * conj.delta1)
    diff = []
    for i in range(4):
        for r in range(4):
            if r in got[i] and got[i][r] != want[i][r]:
                diff.append({"i": i, "residue": r, "computed": got[i][r], "table": want[i][r]})
    return diff


def twisted_brute_force(conj: ChargeConjugation, seed: int = 0) -> list[dict]:
    """Doubled-bundle brute force for every (l, i, j) against the sign rule."""
    rep = conj.rep
    rows = []
    for i in range(4):
        tc = twisted_conjugation(conj, i)
        for degree in range(rep.D + 1):
            dl = conj.delta_k(degree)
            for j in range(4):
                brute, wit = brute_force_term(tc, degree, "clifford-left", seed, twist=j)
                pred = twisted_rule(degree, i, j, dl, conj.delta1)
                rows.append({"i": i, "j": j, "degree": degree, "predicted": pred,
                             "brute": brute, "agree": pred == brute, "witness": wit})
    return rows


# Field content of the type IIB connection: name -> (degree, placement, twist)
IIB_FIELDS = {
    "F1": (1, "clifford-left", 2),
    "F3": (3, "clifford-left", 1),
    "F5": (5, "clifford-left", 2),
    "F7": (7, "clifford-left", 1),
    "F9": (9, "clifford-left", 2),
    "H3": (3, "contract", 3),
}

IIB_EXPECTED = {
    "only_i0": "all fields admissible together only for i = 0",
    1: ("F1", "F3", "F5", "F7", "F9"),
    3: ("F1", "F5", "F9", "H3"),
}


def iib_admissible_fields(conj: ChargeConjugation, i: int, h_twist: int = 3, seed: int = 0) -> dict:
    """Per field: does it stay admissible for charge conjugation C (x) tau_i?"""
    tc = twisted_conjugation(conj, i)
    out = {}
    for name, (deg, placement, twist) in IIB_FIELDS.items():
        if name == "H3":
            twist = h_twist
        out[name] = brute_force_term(tc, deg, placement, seed, twist=twist)[0]
    return out


def iib_truncations(conj: ChargeConjugation, h_twist: int = 3, seed: int = 0) -> dict:
    """Which fields are excluded by each alternative conjugation C (x) tau_j."""
    if conj.rep.D != 10:
        raise ValueError("the IIB field content lives in ten dimensions")
    per_i = {i: iib_admissible_fields(conj, i, h_twist, seed) for i in range(4)}
    excluded = {i: tuple(sorted(k for k, ok in v.items() if not ok)) for i, v in per_i.items()}
    all_ok = tuple(i for i in range(4) if not excluded[i])
    return {"admissible": per_i, "excluded": excluded, "fully_admissible": all_ok}


def iia_admissible(conj: ChargeConjugation, i: int, seed: int = 0) -> bool:
    """D = d + F^3 gamma (x) tau_3 + F^4 gamma (x) tau_1 for C (x) tau_i."""
    tc = twisted_conjugation(conj, i)
    D = conj.rep.D
    rng = np.random.default_rng(seed)
    terms = [ConnectionTerm(random_form(D, 3, rng), "clifford-left", twist=3),
             ConnectionTerm(random_form(D, 4, rng), "clifford-left", twist=1)]
    return is_admissible(tc, SpinorConnection(tc, terms)).admissible


# ----------------------------------------------------------------------------
# chirality projections on S and S (+) S

def chiral_projector(rep: GammaRep, w: int) -> GMat:
    """(Id + w gamma*)/2."""
    if rep.star is None:
        raise ValueError("gamma* exists only in even dimension")
    return (rep.identity() + rep.star.scale(w)).scale(Fraction(1, 2))


def pi_projector(rep: GammaRep, i: int, j: int, w: int) -> GMat:
    """Pi_{ij,w} = (Id (x) tau_i + w gamma* (x) tau_j) / 2 on S (+) S."""
    if rep.star is None:
        raise ValueError("gamma* exists only in even dimension")
    tau = pauli_set().tau
    return (kron(rep.identity(), tau[i]) + kron(rep.star, tau[j]).scale(w)).scale(Fraction(1, 2))


def span_equal(a: list[GMat], b: list[GMat]) -> bool:
    if not a or not b:
        return not a and not b
    ma = _stack(a)
    mb = _stack(b)
    ra, rb = rank(ma), rank(mb)
    return ra == rb == rank(_stack(a + b))


def _stack(vecs: list[GMat]) -> GMat:
    den = 1
    for v in vecs:
        den = math.lcm(den, v.den)
    re = np.stack([v.re.astype(object) * (den // v.den) for v in vecs], axis=1)
    im = np.stack([v.im.astype(object) * (den // v.den) for v in vecs], axis=1)
    return GMat(re, im, den)


def _pair(rep: GammaRep, eta1: GMat, eta2: GMat) -> GMat:
    """(eta1, eta2) in the kron(S, C^2) ordering."""
    d = rep.dim_s
    re = np.zeros(2 * d, dtype=object)
    im = np.zeros(2 * d, dtype=object)
    den = eta1.den * eta2.den
    re[0::2] = eta1.re.astype(object) * eta2.den
    im[0::2] = eta1.im.astype(object) * eta2.den
    re[1::2] = eta2.re.astype(object) * eta1.den
    im[1::2] = eta2.im.astype(object) * eta1.den
    return GMat(re, im, den)


def _chiral_basis(rep: GammaRep, w: int) -> list[GMat]:
    p = chiral_projector(rep, w)
    cols = [GMat(p.re[:, c], p.im[:, c], p.den) for c in range(rep.dim_s)]
    return [v for v in cols if not v.is_zero()]


def kernel_basis(rep: GammaRep, i: int, j: int, w: int) -> list[GMat]:
    return nullspace(pi_projector(rep, i, j, w))


def listed_kernel(rep: GammaRep, i: int, j: int, w: int) -> list[GMat] | None:
    """Listed description of the kernel of Pi_{ij,w} (None if not listed)."""
    zero = GMat.zeros(rep.dim_s)
    star = rep.star
    minus, plus = _chiral_basis(rep, -w), _chiral_basis(rep, w)
    std = [GMat((np.arange(rep.dim_s) == c).astype(np.int64)) for c in range(rep.dim_s)]
    if (i, j) in ((0, 0), (1, 1), (2, 2), (3, 3)):
        return [_pair(rep, e, zero) for e in minus] + [_pair(rep, zero, e) for e in minus]
    if (i, j) in ((0, 3), (1, 2)):
        return [_pair(rep, e, zero) for e in minus] + [_pair(rep, zero, e) for e in plus]
    if (i, j) == (0, 1):
        return [_pair(rep, e, (star @ e).scale(-w)) for e in std]
    if (i, j) == (2, 3):
        return [_pair(rep, e, (star @ e).scale(w)) for e in std]
    return None


def projector_report(rep: GammaRep) -> list[dict]:
    """Kernel dimensions, ker/im exchange, product identities and listed kernels."""
    tau = pauli_set().tau
    d = rep.dim_s
    eye = GMat.eye(2 * d)
    rows = []
    for i, j in itertools.product(range(4), repeat=2):
        for w in (1, -1):
            P, Q = pi_projector(rep, i, j, w), pi_projector(rep, i, j, -w)
            singular = (i, j) not in ((0, 2), (2, 0), (1, 3), (3, 1))
            ker = nullspace(P)
            rec = {"i": i, "j": j, "w": w, "singular_expected": singular,
                   "kernel_dim": len(ker)}
            rec["kernel_dim_ok"] = (len(ker) == d) if singular else (len(ker) == 0)
            if singular:
                im_q = [GMat(Q.re[:, c], Q.im[:, c], Q.den) for c in range(2 * d)]
                im_q = [v for v in im_q if not v.is_zero()]
                rec["ker_eq_im_opposite"] = span_equal(ker, im_q)
                listed = listed_kernel(rep, i, j, w)
                if listed is not None:
                    rec["listed_kernel_ok"] = span_equal(ker, listed)
            if (i, j) == (0, 2):
                rec["square_ok"] = P @ P == kron(rep.star, tau[2]).scale(Fraction(w, 2))
            if (i, j) == (1, 3):
                rec["square_ok"] = P @ P == eye.scale(Fraction(1, 2))
            if singular and (i == j or i * j == 0):
                rec["product_zero_ok"] = (P @ Q).is_zero()
            target = {(1, 2): (0, 3), (2, 3): (0, 1)}.get((i, j))
            if target is not None:
                PQ = P @ Q
                rec["product_ok"] = PQ == pi_projector(rep, target[0], target[1], w)
                rec["product_found"] = _identify(PQ, rep, target)
            # general square and product formulas
            ps = pauli_set()
            ei, ej, eij = ps.eps_k[i], ps.eps_k[j], ps.eps_ik[i][j]
            mixed = kron(rep.star, tau[i] @ tau[j]).scale(w)
            rec["square_formula_ok"] = P @ P == (eye.scale(Fraction(ei + ej, 4))
                                                 + mixed.scale(Fraction(1 + eij, 4)))
            rec["product_formula_ok"] = P @ Q == (eye.scale(Fraction(ei - ej, 4))
                                                  + mixed.scale(Fraction(eij - 1, 4)))
            rows.append(rec)
    return rows


def _identify(m: GMat, rep: GammaRep, target) -> str | None:
    """Name +-Pi_{target, +-w} equal to m, if any."""
    for sign in (1, -1):
        for w in (1, -1):
            if m == pi_projector(rep, target[0], target[1], w).scale(sign):
                return f"{'-' if sign < 0 else '+'}Pi_{target[0]}{target[1]},{'+' if w > 0 else '-'}"
    return None


def opposite_projection_check(conj: ChargeConjugation, degree: int, w: int, seed: int = 0) -> dict:
    """For A_mu = F gamma^(l) gamma_mu Pi^w: A^C and T go through Pi^{-w}.

    Also compares against the closed forms A^C_mu = -F gamma_mu gamma^(l) Pi^{-w}
    and ad^C_{A_mu} gamma_nu = F (gamma^(l) gamma_{mu nu} + gamma_{mu nu} gamma^(l)) Pi^{-w}.
    """
    rep = conj.rep
    rng = np.random.default_rng(seed)
    F = random_form(rep.D, degree, rng)
    term = ConnectionTerm(F, "clifford-left", projector=("chiral", w))
    conn = SpinorConnection(conj, [term])
    adm = is_admissible(conj, conn)
    if not adm.admissible:
        raise ValueError(f"projected degree-{degree} term is not admissible (witness {adm.witness})")
    A = conn.potentials()
    P_opp = chiral_projector(rep, -w)
    Fg = form_gamma(rep, F)
    viol = 0
    closed = True
    for mu in range(rep.D):
        ac = conj.adjoint(A[mu])
        if ac @ P_opp != ac:
            viol += 1
        if ac != -(rep.gammas[mu] @ Fg @ P_opp):
            closed = False
    T = torsion(conj, conn)
    for (m, n), t in T.items():
        if t @ P_opp != t:
            viol += 1
        g2 = rep.gamma((m, n))
        if t != (Fg @ g2 + g2 @ Fg) @ P_opp.scale(2):
            closed = False
    return {"degree": degree, "w": w, "violations": viol, "closed_forms": closed}


# ----------------------------------------------------------------------------
# supergravity connection and metric connections

def sugra_connection(conj: ChargeConjugation, F: KForm) -> SpinorConnection:
    """A = F^3 + F^5 with F^3_mu = -1/36 F_{mu...} gamma^{(3)}, F^5_mu = 1/288 F gamma_mu^{(4)}.

    Coefficients are rescaled to sums over increasing index sets.
    """
    if F.degree != 4:
        raise ValueError("the supergravity potential is built from a 4-form")
    return SpinorConnection(conj, [
        ConnectionTerm(F, "contract", Fraction(-6, 36)),
        ConnectionTerm(F, "wedge", Fraction(24, 288)),
    ])


SUGRA_SIX = Fraction(1, 144)
SUGRA_TWO = Fraction(1, 9)


def sugra_parts(rep: GammaRep, F: KForm, mu: int, nu: int) -> tuple[GMat, GMat]:
    """F^{k r s t} gamma_{mu nu k r s t} and F_{mu nu k r} gamma^{k r} (full index sums)."""
    up = raise_form(rep, F)
    six = {(mu, nu) + K: v * 24 for K, v in up.comps.items()}
    two = {}
    for K in index_sets(rep.D, 2):
        v = F.component((mu, nu) + K)
        if v:
            two[K] = v * 2
    return gamma_combination(rep, six), gamma_combination(rep, two, upper=True)


def sugra_prediction(rep: GammaRep, F: KForm, mu: int, nu: int,
                     six: Fraction = SUGRA_SIX, two: Fraction = SUGRA_TWO) -> GMat:
    p6, p2 = sugra_parts(rep, F, mu, nu)
    return p6.scale(six) + p2.scale(two)


def _ratio(a: GMat, b: GMat):
    """q with a = q b, or None."""
    if b.is_zero():
        return GQ(0) if a.is_zero() else None
    idx = np.argwhere((b.re != 0) | (b.im != 0))[0]
    q = a.entry(*idx) / b.entry(*idx)
    return q if a == b.scale(q) else None


def sugra_check(conj: ChargeConjugation, F: KForm) -> dict:
    """Compare ad^C(A_mu) gamma_nu with the closed six-form + two-form expression.

    Also measures the coefficients actually multiplying the two structures.
    """
    rep = conj.rep
    conn = sugra_connection(conj, F)
    A = conn.potentials()
    bad = []
    six_coeffs, two_coeffs = set(), set()
    for mu, nu in itertools.product(range(rep.D), repeat=2):
        got = ad_c(conj, A[mu], rep.gammas[nu])
        if got != sugra_prediction(rep, F, mu, nu):
            bad.append((mu, nu))
        if mu == nu:
            continue
        p6, p2 = sugra_parts(rep, F, mu, nu)
        rest = got - p6.scale(SUGRA_SIX)
        six_coeffs.add(SUGRA_SIX if p6.is_zero() else None)
        q = _ratio(rest, p2)
        two_coeffs.add(q.re if q is not None and q.im == 0 else None)
    adm = is_admissible(conj, conn)
    return {"mismatches": bad, "admissible": adm.admissible, "witness": adm.witness,
            "measured_two_form_coefficient": sorted(two_coeffs, key=str)}


def metric_connection(conj: ChargeConjugation, A3: KForm) -> SpinorConnection:
    """A_mu = 1/4 A_{mu nu k} gamma^{nu k} (full sum) = 1/2 over increasing pairs."""
    return SpinorConnection(conj, [ConnectionTerm(A3, "contract", Fraction(1, 2))])


def torsion_three_form(conj: ChargeConjugation, T: dict) -> dict:
    """T_{mu nu k} read off from T_{mu nu} = T_{mu nu k} gamma^k; None if not degree one."""
    rep = conj.rep
    out = {}
    for (m, n), t in T.items():
        coeffs = endomorphism_coefficients(rep, t)
        if any(len(I) != 1 for I in coeffs):
            return None
        for (k,), v in coeffs.items():
            out[(m, n, k)] = v * rep.g(k)
    return out


def metric_connection_check(conj: ChargeConjugation, A3: KForm) -> dict:
    """Torsion of the metric 3-form connection is totally skew and equals 2A."""
    conn = metric_connection(conj, A3)
    T = torsion(conj, conn)
    tf = torsion_three_form(conj, T)
    ok = tf is not None
    if ok:
        for m, n, k in itertools.product(range(conj.rep.D), repeat=3):
            if m >= n:
                continue
            want = A3.component((m, n, k)) * 2
            if tf.get((m, n, k), GQ(0)) != want:
                ok = False
                break
    return {"admissible": is_admissible(conj, conn).admissible, "torsion_is_2A": ok}
