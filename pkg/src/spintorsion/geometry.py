"""Concrete backgrounds: flat space, geometric-Killing connections and p-branes.

Brane fields are evaluated with truncated Taylor jets in the transverse
coordinates, so every derivative needed for curvature and Bianchi checks is
exact up to rounding. Frame labels follow the coordinates: ``0..p`` are the
world-volume directions (0 timelike), ``p+1..D-1`` the transverse ones.

The Levi-Civita spin connection is derived from the metric: with ``omega_cab = g(nabla_{e_a} e_b, e_c)`` it is
``Omega_a = 1/2 sum_{b<c} omega_cab gamma^{bc}``, which is the unique choice
with ``[Omega_a, gamma_b] = omega^c_ab gamma_c`` under the ``-2g`` Clifford
relation.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .clifford import GammaRep, Signature, build_gamma, index_sets, perm_sign
from .conjugation import ChargeConjugation, build_conjugation, candidate_conjugations, realizable_delta0
from .connection import ConnectionTerm, ad_c, is_admissible, torsion
from .exact import GMat, GQ
from .fierz import KForm
from .jets import Jet, commutator


class BraneConstraintError(ValueError):
    """Raised when brane parameters violate the compatibility system."""


# ----------------------------------------------------------------------------
# profiles

@dataclass(frozen=True)
class Profile:
    """Scalar profile u(y) on the transverse space.

    ``affine``: u = c . y; ``radial-log``: u = scale * log(1 + |y - center|^2);
    ``constant``: u = value.
    """

    kind: str
    coeffs: tuple = ()
    center: tuple = ()
    scale: float = 1.0
    value: float = 0.0

    def __post_init__(self):
        if self.kind not in ("affine", "radial-log", "constant"):
            raise ValueError(f"unknown profile kind {self.kind!r}")

    def _center(self, d):
        return np.asarray(self.center if self.center else (0.0,) * d, dtype=float)

    def jet(self, y, order: int) -> Jet:
        d = len(y)
        ys = [Jet.variable(d, order, i, float(y[i])) for i in range(d)]
        if self.kind == "constant":
            return Jet.constant(d, order, self.value)
        if self.kind == "affine":
            out = Jet.constant(d, order, 0.0)
            for c, v in zip(self.coeffs, ys):
                out = out + v * float(c)
            return out
        c = self._center(d)
        r2 = Jet.constant(d, order, 1.0)
        for i, v in enumerate(ys):
            r2 = r2 + (v - c[i]) * (v - c[i])
        return r2.log() * self.scale

    def evaluate(self, y) -> float:
        y = np.asarray(y, dtype=float)
        if self.kind == "constant":
            return self.value
        if self.kind == "affine":
            return float(np.dot(self.coeffs, y))
        return self.scale * math.log(1.0 + float(np.sum((y - self._center(len(y))) ** 2)))

    def gradient(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self.kind == "constant":
            return np.zeros_like(y)
        if self.kind == "affine":
            return np.asarray(self.coeffs, dtype=float)
        z = y - self._center(len(y))
        return 2.0 * self.scale * z / (1.0 + float(np.dot(z, z)))


# ----------------------------------------------------------------------------
# backgrounds

@dataclass(frozen=True)
class BraneBackground:
    """Magnetic p-brane data: g = f1^2 dx^2 + f2^2 dy^2, f_l = exp(alpha_l u)."""

    p: int
    d: int
    alpha1: Fraction
    alpha2: Fraction
    alpha3: Fraction
    alpha: complex
    beta: complex
    delta1: int
    delta2: int
    eps: complex
    profile: Profile

    kind = "brane"

    @property
    def D(self) -> int:
        return self.p + 1 + self.d

    def system(self) -> dict:
        """Left minus right side of each compatibility equation."""
        d, e = self.d, self.eps
        sd = (-1) ** d
        return {
            "alpha1": complex(self.alpha1) - sd * self.delta1 * (2 / e) * self.beta
            * math.factorial(d - 1) * complex(self.alpha3),
            "alpha2": complex(self.alpha2) + sd * self.delta2 * (2 / e) * self.alpha
            * math.factorial(d - 2) * complex(self.alpha3),
            "alpha3": complex(self.alpha3) - (d - 2) * complex(self.alpha2),
        }

    def validate(self, tol: float = 1e-12) -> None:
        if self.d < 3:
            raise BraneConstraintError("transverse dimension must be at least 3")
        if (self.p + 1) % 2 and self.d % 2:
            raise BraneConstraintError("one of the two factors must be even dimensional")
        if abs(self.eps ** 2 * (-1) ** (self.d * (self.d + 1) // 2) - 1) > tol:
            raise BraneConstraintError(f"eps = {self.eps} does not make eps*gamma^[d] an involution")
        for name, r in self.system().items():
            if abs(r) > tol:
                raise BraneConstraintError(f"compatibility equation for {name} violated (residual {abs(r):.3g})")

    def projector_signs(self) -> tuple[int, int]:
        """Signs s in Pi^s = (1 + s eps gamma^[d])/2 on the world-volume and transverse terms."""
        return -self.delta1, -self.delta2

    def with_profile(self, profile: Profile) -> "BraneBackground":
        return BraneBackground(self.p, self.d, self.alpha1, self.alpha2, self.alpha3, self.alpha,
                               self.beta, self.delta1, self.delta2, self.eps, profile)


DEFAULT_PROFILE = Profile("radial-log", center=(0.3, -0.2, 0.1, 0.25, -0.15), scale=1.0)


def m5_preset(profile: Profile = DEFAULT_PROFILE) -> BraneBackground:
    """Five-brane parameters with delta1 = -delta2 and beta = -i/288."""
    return BraneBackground(5, 5, Fraction(-1, 6), Fraction(1, 3), Fraction(1), 8j / 288, -1j / 288,
                           -1, 1, 1j, profile)


def m5_consistent_preset(profile: Profile = DEFAULT_PROFILE) -> BraneBackground:
    """Five-brane parameters with equal projector signs (beta = +i/288)."""
    return BraneBackground(5, 5, Fraction(-1, 6), Fraction(1, 3), Fraction(1), 8j / 288, 1j / 288,
                           1, 1, 1j, profile)


PRESETS = {"m5": m5_preset, "m5-consistent": m5_consistent_preset}


@dataclass(frozen=True)
class FlatBackground:
    signature: Signature
    kind = "flat"


@dataclass(frozen=True)
class KillingBackground:
    """Flat base with the connection A_mu = a gamma_mu."""

    signature: Signature
    a: Fraction
    kind = "geometric-killing"


# ----------------------------------------------------------------------------
# brane geometry

def _brane_conjugation(rep: GammaRep) -> ChargeConjugation:
    cands = candidate_conjugations(rep)
    for c in cands:
        if c.delta0 * c.delta1 == -1:
            return c
    return cands[0]


@dataclass
class BranePoint:
    """All brane fields at one transverse point as jets (order shown per field)."""

    y: np.ndarray
    u: Jet                 # order N
    f: list                # per coordinate label, order N
    omega: dict            # (c, a, b) -> omega^c_ab, order N-1
    Omega: list            # spin connection per frame label, order N-1
    A: list                # potential of D, order N-1
    AC: list               # A^C, order N-1

    @property
    def B(self) -> list:
        return [o + a for o, a in zip(self.Omega, self.A)]

    @property
    def BC(self) -> list:
        return [o - a for o, a in zip(self.Omega, self.AC)]


class BraneGeometry:
    """Fields of a magnetic brane background evaluated at transverse points."""

    def __init__(self, bg: BraneBackground, conj: ChargeConjugation | None = None,
                 strict: bool = False):
        bg.validate()
        s1, s2 = bg.projector_signs()
        if strict and s1 != s2:
            raise BraneConstraintError(
                f"projector signs differ on world-volume ({s1:+d}) and transverse ({s2:+d}) terms")
        self.bg = bg
        self.rep = build_gamma(Signature(1, bg.D - 1))
        self.conj = conj if conj is not None else _brane_conjugation(self.rep)
        self.D = bg.D
        self.world = list(range(bg.p + 1))
        self.trans = list(range(bg.p + 1, bg.D))
        self.eta = np.array(self.rep.signature.metric, dtype=float)
        self.gam = [g.to_complex() for g in self.rep.gammas]
        self.gup = [self.eta[a] * self.gam[a] for a in range(self.D)]
        self.c = self.conj.c_complex
        self.c_inv = self.conj.c_inv_complex
        vol = np.eye(self.gam[0].shape[0], dtype=complex)
        for i in self.trans:
            vol = vol @ self.gam[i]
        self.vol_d = vol
        self.eps_vol = bg.eps * vol
        self._form_mats = self._magnetic_matrices()

    # conventions -----------------------------------------------------------
    def adjoint(self, m: np.ndarray) -> np.ndarray:
        return self.c_inv @ m.T @ self.c

    def projector(self, s: int) -> np.ndarray:
        return 0.5 * (np.eye(self.eps_vol.shape[0]) + s * self.eps_vol)

    def _magnetic_matrices(self) -> list[list[np.ndarray]]:
        """M[a][j]: frame potential per unit transverse gradient component j.

        The magnetic form dual to dy^j has frame components
        F_{K} = sign(K, j) on K = transverse labels without j.
        """
        bg = self.bg
        ka = bg.alpha * math.factorial(bg.d - 2)
        kb = bg.beta * math.factorial(bg.d - 1)
        out = [[None] * bg.d for _ in range(self.D)]
        for j, lab in enumerate(self.trans):
            K = tuple(x for x in self.trans if x != lab)
            form = KForm(bg.d - 1, self.D, {K: GQ(perm_sign(K + (lab,)))})
            tc = ConnectionTerm(form, "contract")
            tw = ConnectionTerm(form, "wedge")
            for a in range(self.D):
                out[a][j] = (ka * tc.base_potential(self.rep, a).to_complex()
                             + kb * tw.base_potential(self.rep, a).to_complex())
        return out

    # fields ------------------------------------------------------------------
    def frame_derivative(self, a: int, J: Jet, pt: BranePoint) -> Jet:
        if a in self.world:
            return Jet(J.n, J.order - 1, np.zeros((_jsize(J.n, J.order - 1),) + J.shape, dtype=complex))
        return J.diff(a - self.bg.p - 1) / pt.f[a].truncate(J.order - 1)

    def metric_jets(self, u: Jet) -> list[Jet]:
        bg = self.bg
        f1 = (u * float(bg.alpha1)).exp()
        f2 = (u * float(bg.alpha2)).exp()
        return [f1 if a in self.world else f2 for a in range(self.D)]

    def christoffel(self, y, order: int = 1) -> dict:
        """Gamma_{ABC} = g(nabla_A d_C, d_B) from the metric formula, as jets."""
        u = self.bg.profile.jet(np.asarray(y, float), order + 1)
        f = self.metric_jets(u)
        g = [f[a] * f[a] * self.eta[a] for a in range(self.D)]
        dg = {}
        for a in range(self.D):
            for k, lab in enumerate(self.trans):
                dg[(lab, a)] = g[a].diff(k)          # d_lab g_aa

        def dd(A, B, C):
            # d_A g_{BC} for the diagonal metric
            if B != C or A in self.world:
                return None
            return dg[(A, B)]

        out = {}
        zero = Jet.constant(len(y), order, 0.0)
        for A, B, C in itertools.product(range(self.D), repeat=3):
            acc = zero
            for sgn, term in ((1, dd(A, B, C)), (1, dd(C, B, A)), (-1, dd(B, A, C))):
                if term is not None:
                    acc = acc + term * (0.5 * sgn)
            if np.abs(acc.coef).max() > 0:
                out[(A, B, C)] = acc
        return out

    def christoffel_closed_form(self, y) -> dict:
        """Gamma_{ABC} at y from the log-derivatives of the warp factors."""
        bg = self.bg
        y = np.asarray(y, float)
        du = bg.profile.gradient(y)
        u = bg.profile.evaluate(y)
        f1, f2 = math.exp(float(bg.alpha1) * u), math.exp(float(bg.alpha2) * u)
        l1 = float(bg.alpha1) * du           # d_i ln f1
        l2 = float(bg.alpha2) * du           # d_i ln f2
        out = {}
        for mu in self.world:
            g = self.eta[mu] * f1 * f1
            for k, i in enumerate(self.trans):
                if l1[k]:
                    out[(mu, mu, i)] = l1[k] * g
                    out[(i, mu, mu)] = l1[k] * g
                    out[(mu, i, mu)] = -l1[k] * g
        for (k1, i), (k2, j), (k3, k) in itertools.product(list(enumerate(self.trans)), repeat=3):
            v = f2 * f2 * ((j == k) * l2[k1] + (i == j) * l2[k3] - (i == k) * l2[k2])
            if v:
                out[(i, j, k)] = out.get((i, j, k), 0.0) + v
        return out

    def point(self, y, order: int = 3) -> BranePoint:
        """Fields at y; u carries ``order``, connections ``order - 1``."""
        bg = self.bg
        y = np.asarray(y, float)
        n = bg.d
        u = bg.profile.jet(y, order)
        f = self.metric_jets(u)
        gam_jets = self.christoffel(y, order - 1)
        finv = [x.reciprocal() for x in f]
        lo = order - 1
        zero = Jet.constant(n, lo, 0.0)
        omega = {}
        for c, a, b in itertools.product(range(self.D), repeat=3):
            val = zero
            G = gam_jets.get((a, c, b))
            if G is not None:
                val = val + G * finv[b].truncate(lo)
            if b == c and a in self.trans:
                val = val + finv[b].diff(a - bg.p - 1) * (self.eta[b] * f[b].truncate(lo) ** 2)
            if np.abs(val.coef).max() == 0:
                continue
            # omega_{cab}, then raise c
            val = val * finv[a].truncate(lo) * finv[c].truncate(lo) * self.eta[c]
            omega[(c, a, b)] = val
        dim = self.gam[0].shape[0]
        Omega = []
        for a in range(self.D):
            acc = Jet.constant(n, lo, np.zeros((dim, dim)))
            for b, c in itertools.combinations(range(self.D), 2):
                w = omega.get((c, a, b))
                if w is not None:
                    # omega_cab = eta_c omega^c_ab; gamma^{bc} = eta_b eta_c gamma_b gamma_c
                    acc = acc + w * (0.5 * self.eta[c] * self.eta[b] * self.eta[c]
                                     * self.gam[b] @ self.gam[c])
            Omega.append(acc)
        du = [u.diff(k) for k in range(n)]
        phi = [du[k] * float(bg.alpha3) / f[self.trans[k]].truncate(lo) for k in range(n)]
        AC, A = [], []
        for a in range(self.D):
            minus_ac = Jet.constant(n, lo, np.zeros((dim, dim)))
            for k in range(n):
                minus_ac = minus_ac + phi[k] * self._form_mats[a][k]
            ac = -minus_ac
            AC.append(ac)
            A.append(ac.adjoint_map(self.adjoint))
        return BranePoint(y, u, f, omega, Omega, A, AC)

    # derived quantities ----------------------------------------------------------
    def spin_connection_residual(self, pt: BranePoint) -> float:
        """max |[Omega_a, gamma_b] - omega^c_ab gamma_c|."""
        worst = 0.0
        for a, b in itertools.product(range(self.D), repeat=2):
            lhs = commutator(pt.Omega[a], Jet.constant(pt.u.n, pt.Omega[a].order, self.gam[b])).value
            rhs = sum((pt.omega[(c, a, b)].value * self.gam[c] for c in range(self.D)
                       if (c, a, b) in pt.omega), np.zeros_like(lhs))
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        return worst

    def _lie_bracket_coeffs(self, pt: BranePoint, a: int, b: int):
        out = []
        for c in range(self.D):
            w1 = pt.omega.get((c, a, b))
            w2 = pt.omega.get((c, b, a))
            if w1 is None and w2 is None:
                continue
            z = (w1 if w1 is not None else 0) - (w2 if w2 is not None else 0)
            out.append((c, z))
        return out

    def curvature(self, pt: BranePoint, B: list) -> dict:
        """R_ab for the spinor connection with frame coefficients B (order drops by one)."""
        R = {}
        for a, b in itertools.combinations(range(self.D), 2):
            val = (self.frame_derivative(a, B[b], pt) - self.frame_derivative(b, B[a], pt)
                   + commutator(B[a], B[b]))
            for c, z in self._lie_bracket_coeffs(pt, a, b):
                val = val - z * B[c]
            R[(a, b)] = val
        return R

    def covariant_endo(self, pt: BranePoint, B: list, c: int, field2: dict, right=None) -> dict:
        """Frame derivative of an End-valued 2-tensor.

        The spinor part acts by [B_c, .] (or B_c X + X right_c when ``right``
        is given); both tensor indices carry the Levi-Civita term.
        """
        out = {}
        keys = list(field2)
        full = dict(field2)
        for (a, b) in keys:
            full[(b, a)] = -field2[(a, b)]
        for (a, b) in keys:
            X = field2[(a, b)]
            if right is None:
                val = self.frame_derivative(c, X, pt) + commutator(B[c], X)
            else:
                val = self.frame_derivative(c, X, pt) + B[c] @ X + X @ right[c]
            for e in range(self.D):
                w = pt.omega.get((e, c, a))
                if w is not None and (e, b) in full:
                    val = val - w * full[(e, b)]
                w = pt.omega.get((e, c, b))
                if w is not None and (a, e) in full:
                    val = val - w * full[(a, e)]
            out[(a, b)] = val
        return out

    def hat_d_gamma(self, pt: BranePoint) -> dict:
        """(D-hat_a gamma)_b = ad^C_{A_a} gamma_b as jets."""
        return {(a, b): pt.A[a] @ self.gam[b] + self.gam[b] @ pt.AC[a]
                for a in range(self.D) for b in range(self.D)}

    def torsion(self, pt: BranePoint) -> dict:
        X = self.hat_d_gamma(pt)
        return {(a, b): X[(a, b)] - X[(b, a)] for a, b in itertools.combinations(range(self.D), 2)}

    def closed_form_torsion(self, y) -> dict:
        """Frame components of the closed-form torsion (world sign delta1, transverse delta2)."""
        bg = self.bg
        y = np.asarray(y, float)
        du = bg.profile.gradient(y)
        f2 = math.exp(float(bg.alpha2) * bg.profile.evaluate(y))
        x = float(bg.alpha1) * du / f2
        yy = float(bg.alpha2) * du / f2
        e, G = bg.eps, self.vol_d
        X = sum(x[k] * self.gam[i] for k, i in enumerate(self.trans))
        out = {}
        for m, n in itertools.combinations(self.world, 2):
            out[(m, n)] = bg.delta1 * e * X @ self.gam[m] @ self.gam[n] @ G
        for m in self.world:
            for k, i in enumerate(self.trans):
                out[(m, i)] = -bg.delta1 * e * x[k] * self.gam[m] @ G
        for (k1, i), (k2, j) in itertools.combinations(list(enumerate(self.trans)), 2):
            acc = np.zeros_like(G)
            for k3, k in enumerate(self.trans):
                if k in (i, j):
                    continue
                acc = acc + yy[k3] * self.gam[k] @ self.gam[i] @ self.gam[j]
            out[(i, j)] = bg.delta2 * e * acc @ G
        return out

    def torsion_match(self, y) -> dict:
        """Compare D-hat gamma and the full torsion with the closed forms."""
        pt = self.point(y, order=1)
        X = self.hat_d_gamma(pt)
        cf = self.closed_form_torsion(y)
        vs_hat = max(float(np.abs(X[k].value - cf[k]).max()) for k in cf)
        T = torsion(self.conj, [a.value for a in pt.A])
        vs_full = max(float(np.abs(T[k] - cf[k]).max()) for k in cf)
        vs_half = max(float(np.abs(0.5 * T[k] - cf[k]).max()) for k in cf)
        scale = max(float(np.abs(v).max()) for v in cf.values())
        return {"hat_d_gamma": vs_hat, "torsion": vs_full, "half_torsion": vs_half, "scale": scale}

    # admissibility, Bianchi ------------------------------------------------------
    def admissibility(self, y, tol: float = 1e-12):
        pt = self.point(y, order=1)
        return is_admissible(self.conj, [a.value for a in pt.A], tol)

    def bianchi_residuals(self, y) -> dict:
        """Cyclic D-hat T, D R and D-hat(ad R gamma) identities at y."""
        pt = self.point(y, order=3)
        B = pt.B
        R = self.curvature(pt, B)                     # order 1
        T = self.torsion(pt)                          # order 2
        dT = {c: self.covariant_endo(pt, B, c, T, right=[-x for x in pt.BC]) for c in range(self.D)}
        dR = {c: self.covariant_endo(pt, B, c, R) for c in range(self.D)}

        def full(tab, a, b):
            return tab[(a, b)] if a < b else -tab[(b, a)]

        def adc(M, G):
            return M @ G + G @ M.adjoint_map(self.adjoint)

        res = {"DT": 0.0, "DR": 0.0, "DadR": 0.0}
        scale = {"DT": 0.0, "DR": 0.0, "DadR": 0.0}
        for k, m, n in itertools.combinations(range(self.D), 3):
            lhs = sum(full(dT[c], a, b).value for c, a, b in ((k, m, n), (m, n, k), (n, k, m)))
            rhs = sum(adc(full(R, c, a).truncate(0), self.gam[b]).value
                      for c, a, b in ((k, m, n), (m, n, k), (n, k, m)))
            res["DT"] = max(res["DT"], float(np.abs(lhs - rhs).max()))
            scale["DT"] = max(scale["DT"], float(np.abs(lhs).max()))
            cyc = sum(full(dR[c], a, b).value for c, a, b in ((k, m, n), (m, n, k), (n, k, m)))
            res["DR"] = max(res["DR"], float(np.abs(cyc).max()))
            scale["DR"] = max(scale["DR"], max(float(np.abs(full(dR[k], m, n).value).max()), 0.0))
        res["DadR"], res["DadR_half"], scale["DadR"] = self._dadr(pt, B, R, dR)
        return {"residual": res, "scale": scale}

    def _dadr(self, pt, B, R, dR, samples: int = 40, seed: int = 0):
        """Fully skew D-hat(ad^C_R gamma) against ad^C(R) T on sampled quadruples.

        Returns the residual against ad^C(R) T, against half of it, and the scale.
        """
        rng = np.random.default_rng(seed)
        Tv = {k: v.value for k, v in self.torsion(pt).items()}
        Rv = {k: v.value for k, v in R.items()}

        def full(tab, a, b):
            return tab[(a, b)] if a < b else -tab[(b, a)]

        def adc(M, G):
            return M @ G + G @ self.adjoint(M)

        Xhat = {k: v.value for k, v in self.hat_d_gamma(pt).items()}
        worst = half = scale = 0.0
        for _ in range(samples):
            quad = tuple(sorted(rng.choice(self.D, 4, replace=False)))
            lhs = 0.0
            rhs = 0.0
            for perm in itertools.permutations(range(4)):
                k, m, n, r = (quad[i] for i in perm)
                sgn = perm_sign(perm)
                # D-hat_k (ad_R gamma)_{mnr} = ad_{D_k R_mn} gamma_r + ad_{R_mn} (D-hat_k gamma)_r
                lhs = lhs + sgn * (adc(full({kk: v.value for kk, v in dR[k].items()}, m, n), self.gam[r])
                                   + adc(full(Rv, m, n), Xhat[(k, r)]))
                rhs = rhs + sgn * adc(full(Rv, k, m), full(Tv, n, r))
            worst = max(worst, float(np.abs(lhs - rhs).max()))
            half = max(half, float(np.abs(lhs - 0.5 * rhs).max()))
            scale = max(scale, float(np.abs(rhs).max()))
        return worst, half, scale

    def curvature_conjugate_residual(self, y) -> float:
        """max |(R_ab)^C + R^C_ab|."""
        pt = self.point(y, order=2)
        R = self.curvature(pt, pt.B)
        RC = self.curvature(pt, pt.BC)
        return max(float(np.abs(self.adjoint(R[k].value) + RC[k].value).max()) for k in R)

    # parallel spinors --------------------------------------------------------------
    def parallel_family(self, points, tol: float = 1e-9) -> "ParallelFamily":
        """Spinors f(y) eta0 with D^C(f eta0) = 0 at every sample point."""
        pts = [self.point(y, order=1) for y in points]
        rows = [pt.BC[m].value for pt in pts for m in self.world]
        dim = self.gam[0].shape[0]
        basis = _nullspace(np.vstack(rows), tol) if rows else np.eye(dim)
        if basis.shape[1] == 0:
            return ParallelFamily(basis, None, 0.0)
        # within the world-volume kernel, eta0 must be a joint eigenvector of every
        # transverse coefficient with eigenvalue kappa (d_i u)/f2 up to sign
        kappa_rows, blocks = [], []
        for pt in pts:
            f2 = pt.f[self.trans[0]].value
            for k, i in enumerate(self.trans):
                du = pt.u.partial((k,))
                blocks.append((pt.BC[i].value, du / f2))
        # solve (B_i + kappa du_i/f2) basis c = 0 jointly: scan the generalized
        # eigenproblem along the first nondegenerate block
        M = np.vstack([b @ basis for b, _ in blocks])
        N = np.vstack([w * basis for _, w in blocks])
        kappas = _joint_shift_values(M, N, tol)
        best = None
        for kap in kappas:
            sub = _nullspace(M + kap * N, 1e-7)
            if sub.shape[1] and (best is None or sub.shape[1] > best[1].shape[1]):
                best = (kap, sub)
        if best is None:
            return ParallelFamily(np.zeros((dim, 0), dtype=complex), None, 0.0)
        kap, sub = best
        fam = basis @ sub
        fam, _ = np.linalg.qr(fam)
        return ParallelFamily(fam, complex(kap), 0.0)

    def parallel_residual(self, family: "ParallelFamily", y) -> float:
        """max |D^C (exp(kappa u) eta0)| at y over the family basis."""
        if family.dim == 0:
            return 0.0
        pt = self.point(y, order=2)
        prof = (pt.u * family.kappa).exp().truncate(1)
        worst = 0.0
        for col in family.basis.T:
            eta = prof * col
            for a in range(self.D):
                v = self.frame_derivative(a, eta, pt).value + pt.BC[a].value @ eta.value
                worst = max(worst, float(np.abs(v).max()))
        return worst

    def holonomy(self, y, tol: float = 1e-8) -> "Holonomy":
        """Lie algebra generated by R^C and D^C R^C at y."""
        pt = self.point(y, order=3)
        RC = self.curvature(pt, pt.BC)
        gens = [v.value for v in RC.values()]
        for c in range(self.D):
            dR = self.covariant_endo(pt, pt.BC, c, RC)
            gens.extend(v.value for v in dR.values())
        return lie_closure(gens, tol)

    # Killing vectors -------------------------------------------------------------------
    def bracket_coordinates(self, family: "ParallelFamily", i: int, j: int, y) -> np.ndarray:
        """Lower coordinate components 2 C(eta, gamma_A xi) at y."""
        bg = self.bg
        u = bg.profile.evaluate(y)
        prof = np.exp(family.kappa * u)
        eta = prof * family.basis[:, i]
        xi = prof * family.basis[:, j]
        f1, f2 = math.exp(float(bg.alpha1) * u), math.exp(float(bg.alpha2) * u)
        row = eta @ self.c
        return np.array([2 * (f1 if a in self.world else f2) * (row @ self.gam[a] @ xi)
                         for a in range(self.D)])

    def killing_check(self, family: "ParallelFamily", y, h: float = 1e-5, pairs=None) -> dict:
        """L_V g for V = {eta, xi} by central differences, plus the torsion identity."""
        y = np.asarray(y, float)
        gam_jets = self.christoffel(y, order=0)
        G = {k: complex(v.value) for k, v in gam_jets.items()}
        f = self.metric_jets(self.bg.profile.jet(y, 0))
        ginv = [1.0 / (self.eta[a] * f[a].value.real ** 2) for a in range(self.D)]
        if pairs is None:
            pairs = [(i, j) for i in range(family.dim) for j in range(i, family.dim)][:12]
        lie = 0.0
        tor = 0.0
        scale = 0.0
        pt = self.point(y, order=2)
        T = {k: v.value for k, v in self.torsion(pt).items()}
        for i, j in pairs:
            V = self.bracket_coordinates(family, i, j, y)
            dV = np.zeros((self.D, self.D), dtype=complex)   # dV[A, B] = d_A V_B
            for k, lab in enumerate(self.trans):
                e = np.zeros(self.bg.d)
                e[k] = h
                dV[lab] = (self.bracket_coordinates(family, i, j, y + e)
                           - self.bracket_coordinates(family, i, j, y - e)) / (2 * h)
            nabla = dV.copy()
            for (A, Cl, B), v in G.items():            # Gamma^C_{AB} = g^{CC} Gamma_{ACB}
                nabla[A, B] -= ginv[Cl] * v * V[Cl]
            lie = max(lie, float(np.abs(nabla + nabla.T).max()))
            scale = max(scale, float(np.abs(nabla).max()))
            # frame form: nabla_a V_b = C(eta, T_ab xi) with V_b = 2 C(eta, gamma_b xi)
            u = self.bg.profile.evaluate(y)
            prof = np.exp(family.kappa * u)
            eta, xi = prof * family.basis[:, i], prof * family.basis[:, j]
            fr = [f[a].value.real for a in range(self.D)]
            for (a, b), t in T.items():
                lhs = nabla[a, b] / (fr[a] * fr[b])
                rhs = eta @ self.c @ t @ xi
                tor = max(tor, abs(lhs - rhs))
        return {"lie_derivative": lie, "torsion_identity": tor, "scale": scale}

    # torsion-free subset ------------------------------------------------------------------
    def gradient_clifford(self, y) -> np.ndarray:
        bg = self.bg
        du = bg.profile.gradient(np.asarray(y, float))
        return sum(du[k] * self.gam[i] for k, i in enumerate(self.trans))

    def torsion_free_subset(self, family: "ParallelFamily", y) -> dict:
        """K = {eta in the family : X eta = 0} and the D-term on a basis of K."""
        X = self.gradient_clifford(y)
        if family.dim:
            sub = _nullspace(X @ family.basis, 1e-9)
            K = family.basis @ sub
        else:
            K = np.zeros((X.shape[0], 0), dtype=complex)
        pt = self.point(y, order=1)
        T = {k: v.value for k, v in self.torsion(pt).items()}
        worst = 0.0
        for a in range(K.shape[1]):
            for b in range(a, K.shape[1]):
                for D_ in d_term(self, T, K[:, a], K[:, b]):
                    worst = max(worst, float(np.abs(D_).max()))
        xsq = X @ X
        return {"dim": K.shape[1], "basis": K, "d_term": worst,
                "x_square_scalar": complex(xsq[0, 0]), "x_invertible": bool(abs(xsq[0, 0]) > 1e-12)}

    def first_summand_check(self, y, samples: int = 6, seed: int = 0) -> float:
        """sum_mu T_{i mu} eta ^ gamma^mu xi + (eta <-> xi) for eta, xi of equal gamma^[d] chirality."""
        rng = np.random.default_rng(seed)
        pt = self.point(y, order=1)
        T = {k: v.value for k, v in self.torsion(pt).items()}
        worst = 0.0
        for s in (1, -1):
            P = self.projector(s)
            for _ in range(samples):
                eta = P @ (rng.normal(size=P.shape[0]) + 1j * rng.normal(size=P.shape[0]))
                xi = P @ (rng.normal(size=P.shape[0]) + 1j * rng.normal(size=P.shape[0]))
                for i in self.trans:
                    acc = np.zeros((P.shape[0], P.shape[0]), dtype=complex)
                    for mu in self.world:
                        t = -T[(mu, i)]
                        acc += _wedge(t @ eta, self.gup[mu] @ xi) + _wedge(t @ xi, self.gup[mu] @ eta)
                    worst = max(worst, float(np.abs(acc).max()))
        return worst

    # Levi-Civita curvature ----------------------------------------------------------------
    def riemann(self, pt: BranePoint) -> np.ndarray:
        """R0[a, b, c, f] = g(R(e_a, e_b) e_c, e_f) at the point."""
        D = self.D
        out = np.zeros((D, D, D, D), dtype=complex)
        w = {k: v for k, v in pt.omega.items()}
        wv = {k: v.value for k, v in w.items()}

        def W(f, a, b):
            return wv.get((f, a, b), 0.0)

        for a, b in itertools.combinations(range(D), 2):
            for c, f in itertools.product(range(D), repeat=2):
                v = 0.0
                if (f, b, c) in w:
                    v += self.frame_derivative(a, w[(f, b, c)], pt).value
                if (f, a, c) in w:
                    v -= self.frame_derivative(b, w[(f, a, c)], pt).value
                for d_ in range(D):
                    v += W(d_, b, c) * W(f, a, d_) - W(d_, a, c) * W(f, b, d_)
                    v -= (W(d_, a, b) - W(d_, b, a)) * W(f, d_, c)
                out[a, b, c, f] = self.eta[f] * v
                out[b, a, c, f] = -out[a, b, c, f]
        return out

    def bianchi2_residual(self, y, spinors: np.ndarray) -> dict:
        """(D-hat_[k T_m]n - ad^C_{R_km} gamma_n -+ R0_kmnl gamma^l) eta on the given spinors.

        R0_kmnl is fixed by [R0 spin curvature_km, gamma_n] = R0_kmnl gamma^l; both
        signs of the R0 term are evaluated.
        """
        pt = self.point(y, order=3)
        B = pt.B
        R = {k: v.value for k, v in self.curvature(pt, B).items()}
        T = self.torsion(pt)
        dT = {c: {k: v.value for k, v in self.covariant_endo(pt, B, c, T, right=[-x for x in pt.BC]).items()}
              for c in range(self.D)}
        R0 = self.riemann(pt)
        return {"minus_r0": _bianchi2(self, dT, R, R0, spinors),
                "plus_r0": _bianchi2(self, dT, R, -R0, spinors)}


def _jsize(n, order):
    return math.comb(n + order, order)


def _wedge(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.outer(a, b) - np.outer(b, a)


def d_term(geo, T: dict, phi: np.ndarray, psi: np.ndarray) -> list[np.ndarray]:
    """Components (per nu) of gamma^mu phi ^ T_mu,nu psi + gamma^mu psi ^ T_mu,nu phi."""
    D = len(geo.gup)
    out = []
    for nu in range(D):
        acc = np.zeros((len(phi), len(phi)), dtype=complex)
        for mu in range(D):
            if mu == nu:
                continue
            t = T[(mu, nu)] if mu < nu else -T[(nu, mu)]
            acc += _wedge(geo.gup[mu] @ phi, t @ psi) + _wedge(geo.gup[mu] @ psi, t @ phi)
        out.append(acc)
    return out


def _bianchi2(geo, dT, R, R0, spinors):
    D = len(geo.gam)
    worst = scale = 0.0
    for k, m in itertools.combinations(range(D), 2):
        for n in range(D):
            def t(c, a, b):
                if a == b:
                    return 0
                return dT[c][(a, b)] if a < b else -dT[c][(b, a)]
            lhs = 0.5 * (t(k, m, n) - t(m, k, n))
            Rkm = R[(k, m)]
            adR = Rkm @ geo.gam[n] + geo.gam[n] @ geo.adjoint(Rkm)
            r0 = sum(R0[k, m, n, l] * geo.gup[l] for l in range(D))
            M = lhs - adR - r0
            for eta in spinors.T:
                worst = max(worst, float(np.abs(M @ eta).max()))
                scale = max(scale, float(np.abs(r0 @ eta).max()))
    return {"residual": worst, "scale": scale}


# ----------------------------------------------------------------------------
# parallel families and holonomy

@dataclass
class ParallelFamily:
    basis: np.ndarray            # columns eta0
    kappa: complex | None        # eta(y) = exp(kappa u(y)) eta0
    residual: float

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def _nullspace(M: np.ndarray, tol: float) -> np.ndarray:
    if M.size == 0:
        return np.eye(M.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(M)
    scale = max(1.0, s[0] if len(s) else 1.0)
    r = int(np.sum(s > tol * scale))
    return vh[r:].conj().T


def _joint_shift_values(M: np.ndarray, N: np.ndarray, tol: float) -> list[complex]:
    """Candidate kappa with (M + kappa N) c = 0 for some c (least-squares pencil)."""
    # project onto the column space of N and solve the square pencil there
    q, _ = np.linalg.qr(N)
    a = q.conj().T @ M
    b = q.conj().T @ N
    vals = np.linalg.eigvals(np.linalg.lstsq(b, -a, rcond=None)[0])
    out = []
    for v in vals:
        if not any(abs(v - w) < 1e-6 for w in out):
            out.append(complex(v))
    return out


@dataclass
class Holonomy:
    basis: list
    dim: int
    rounds: int
    saturated: bool


def _in_span(Q: np.ndarray | None, v: np.ndarray, tol: float):
    if Q is None:
        n = np.linalg.norm(v)
        return (None if n <= tol else v / n)
    r = v - Q @ (Q.conj().T @ v)
    r = r - Q @ (Q.conj().T @ r)
    n = np.linalg.norm(r)
    return None if n <= tol * max(1.0, np.linalg.norm(v)) else r / n


def lie_closure(gens: list, tol: float = 1e-8, cap: int | None = None) -> Holonomy:
    """Complex span of iterated commutators of ``gens``."""
    if not gens:
        return Holonomy([], 0, 0, False)
    n = gens[0].shape[0]
    cap = cap if cap is not None else 2 * n * n
    scale = max(float(np.abs(g).max()) for g in gens) or 1.0
    cols = []
    Q = None
    mats = []

    def add(m):
        nonlocal Q
        v = _in_span(Q, m.reshape(-1) / scale, tol)
        if v is None:
            return False
        Q = v[:, None] if Q is None else np.hstack([Q, v[:, None]])
        mats.append(m)
        return True

    for g in gens:
        add(g)
    rounds = 0
    start = 0
    while rounds < cap:
        rounds += 1
        new = False
        end = len(mats)
        for i in range(end):
            for j in range(max(i + 1, start), end):
                c = mats[i] @ mats[j] - mats[j] @ mats[i]
                new |= add(c)
                if len(mats) >= n * n:
                    return Holonomy(mats, len(mats), rounds, True)
        if not new:
            break
        start = end
    return Holonomy(mats, len(mats), rounds, rounds >= cap)


# ----------------------------------------------------------------------------
# flat-space examples (exact)

def killing_conjugation(sig: Signature) -> ChargeConjugation:
    rep = build_gamma(sig)
    for c in candidate_conjugations(rep):
        if c.delta0 * c.delta1 == -1:
            return c
    raise ValueError(f"signature {sig} admits no conjugation with Delta0 Delta1 = -1")


def killing_potentials(conj: ChargeConjugation, a) -> list[GMat]:
    """A_mu = a gamma_mu as the contract placement of a scalar (0-form)."""
    a = GQ.coerce(a)
    return [g.scale(a) for g in conj.rep.gammas]


def _gsym(rep: GammaRep, k: int, m: int, n: int) -> GMat:
    """g_{k[m} gamma_{n]} = (g_km gamma_n - g_kn gamma_m)/2."""
    dim = rep.gammas[0].shape[0]
    out = GMat.zeros((dim, dim))
    if k == m:
        out = out + rep.gammas[n].scale(GQ(Fraction(rep.signature.g(k), 2)))
    if k == n:
        out = out - rep.gammas[m].scale(GQ(Fraction(rep.signature.g(k), 2)))
    return out


def geometric_killing_report(conj: ChargeConjugation, a) -> dict:
    """Exact torsion, curvature and Bianchi data of A = a gamma on a flat base."""
    rep = conj.rep
    D = rep.D
    a = GQ.coerce(a)
    A = killing_potentials(conj, a)
    AC = [conj.adjoint(x) for x in A]
    T = torsion(conj, A)
    adm = is_admissible(conj, A)
    four_a = a * 4
    two_a2 = a * a * 2

    def gmn(m, n):
        return rep.gamma((m, n))

    torsion_ok = all(T[(m, n)] == gmn(m, n).scale(four_a) for m, n in T)
    R = {(m, n): A[m] @ A[n] - A[n] @ A[m] for m, n in itertools.combinations(range(D), 2)}
    curvature_ok = all(R[k] == gmn(*k).scale(two_a2) for k in R)
    # D^C = d - A^C, so R^C_mn = [A^C_m, A^C_n]
    R_conj_ok = all(conj.adjoint(R[(m, n)]) == -(AC[m] @ AC[n] - AC[n] @ AC[m]) for m, n in R)

    def full(tab, m, n):
        return tab[(m, n)] if m < n else -tab[(n, m)]

    dT = {}
    for k in range(D):
        for m, n in T:
            dT[(k, m, n)] = ad_c(conj, A[k], T[(m, n)])
    adR = {}
    for m, n in R:
        for k in range(D):
            adR[(m, n, k)] = ad_c(conj, R[(m, n)], rep.gammas[k])
    sq = a * a * -16
    lit = a * -16
    dT_square = all(dT[(k, m, n)] == _gsym(rep, k, m, n).scale(sq) for (k, m, n) in dT)
    dT_literal = all(dT[(k, m, n)] == _gsym(rep, k, m, n).scale(lit) for (k, m, n) in dT)
    adR_ok = all(adR[(m, n, k)] == _gsym(rep, k, m, n).scale(a * a * 8) for (m, n, k) in adR)
    cyc_l = cyc_r = True
    for k, m, n in itertools.combinations(range(D), 3):
        lhs = _cyc(lambda c, x, y: dT[(c, x, y)] if x < y else -dT[(c, y, x)], k, m, n)
        rhs = _cyc(lambda c, x, y: ad_c(conj, full(R, c, x), rep.gammas[y]), k, m, n)
        cyc_l &= lhs.is_zero()
        cyc_r &= rhs.is_zero()
    return {
        "admissible": adm.admissible,
        "torsion_4a": torsion_ok,
        "curvature_2a2": curvature_ok,
        "curvature_conjugate": R_conj_ok,
        "dT_minus16a2": dT_square,
        "dT_minus16a": dT_literal,
        "adR_8a2": adR_ok,
        "bianchi_lhs_zero": cyc_l,
        "bianchi_rhs_zero": cyc_r,
    }


def _cyc(fn, k, m, n):
    return fn(k, m, n) + fn(m, n, k) + fn(n, k, m)


def killing_second_bianchi(conj: ChargeConjugation, a) -> bool:
    """(D-hat_[k T_m]n - ad_{R_km} gamma_n) = R0 gamma = 0 for the flat Killing connection."""
    rep = conj.rep
    D = rep.D
    A = killing_potentials(conj, a)
    T = torsion(conj, A)
    half = GQ(Fraction(1, 2))
    for k, m in itertools.combinations(range(D), 2):
        Rkm = A[k] @ A[m] - A[m] @ A[k]
        for n in range(D):
            def t(c, x, y):
                if x == y:
                    return GMat.zeros(A[0].shape)
                return ad_c(conj, A[c], T[(x, y)] if x < y else -T[(y, x)])
            lhs = (t(k, m, n) - t(m, k, n)).scale(half) - ad_c(conj, Rkm, rep.gammas[n])
            if not lhs.is_zero():
                return False
    return True


def compatibility_check(conj: ChargeConjugation, A: list, seed: int = 0) -> bool:
    """ad^C_{A}(ad^C_Om Psi) = ad^C_{[A, Om]} Psi + ad^C_Om ad^C_A Psi for constant fields."""
    rng = np.random.default_rng(seed)
    rep = conj.rep
    dim = rep.gammas[0].shape[0]
    for _ in range(3):
        om = GMat.from_complex(rng.integers(-3, 4, (dim, dim)) + 1j * rng.integers(-3, 4, (dim, dim)))
        psi = GMat.from_complex(rng.integers(-3, 4, (dim, dim)))
        for a in A:
            lhs = ad_c(conj, a, ad_c(conj, om, psi))
            rhs = ad_c(conj, a @ om - om @ a, psi) + ad_c(conj, om, ad_c(conj, a, psi))
            if lhs != rhs:
                return False
    return True


# ----------------------------------------------------------------------------
# skew torsion on a flat base

def random_three_form(D: int, rng: np.random.Generator) -> np.ndarray:
    T = np.zeros((D, D, D))
    for i, j, k in itertools.combinations(range(D), 3):
        v = rng.normal()
        for p in itertools.permutations((0, 1, 2)):
            idx = tuple((i, j, k)[q] for q in p)
            T[idx] = perm_sign(p) * v
    return T


def skew_torsion_pieces(T: np.ndarray, metric) -> dict:
    """Curvature and correction terms of nabla + T/2 on a flat base, constant T (lower indices)."""
    g = np.diag(metric).astype(float)
    Tu = np.einsum("abr,rs->abs", T, g)          # T_ab^s (diagonal metric is its own inverse)
    # connection matrices (A_k)^n_m = 1/2 T_km^n
    # R_{klm}^n = 1/4 (T_lm^r T_kr^n - T_km^r T_lr^n)
    Rup = 0.25 * (np.einsum("lmr,krn->klmn", Tu, Tu) - np.einsum("kmr,lrn->klmn", Tu, Tu))
    R = np.einsum("klmr,rn->klmn", Rup, g)
    # D_mu T_{klv} for the metric connection: constant T, minus A acting on each slot
    A = 0.5 * Tu                                  # A[k, m, n] = (A_k)^n_m
    DT = -(np.einsum("mkr,rlv->mklv", A, T) + np.einsum("mlr,krv->mklv", A, T)
           + np.einsum("mvr,klr->mklv", A, T))
    # (D_mu - D^T_mu) T_{klv} = T_{rv[l} T_{k]mu}^r
    corr = 0.5 * (np.einsum("rvl,kmr->mklv", T, Tu) - np.einsum("rvk,lmr->mklv", T, Tu))
    DTT = DT - corr
    skew_DTT = 0.5 * (np.einsum("klmn->klmn", DTT) - np.einsum("lkmn->klmn", DTT))
    quad = 0.25 * np.einsum("klr,mnr->klmn", T, Tu)
    sigma = np.zeros_like(R)
    # sigma_{klmn} = 3 T_{r[kl} T_{m]n}^r
    pre = np.einsum("rkl,mnr->klmn", T, Tu)
    for p in itertools.permutations(range(3)):
        sigma += perm_sign(p) * np.transpose(pre, axes=list(p) + [3])
    sigma *= 3.0 / 6.0
    return {"R": R, "DTT": skew_DTT, "quad": quad, "sigma": sigma}


def r0_from_skew_torsion(T: np.ndarray, metric) -> dict:
    """Compare the closed reconstruction of R0 (zero on a flat base) with the data.

    ``formula_residual`` is max |R - D^T_[k T_l]mn - TT/4 - sigma|. The
    curvature is also fitted in the span of TT/4 and sigma; with constant
    torsion the Levi-Civita derivative of T vanishes and the fit gives the
    identity actually satisfied.
    """
    parts = skew_torsion_pieces(T, metric)
    R0 = parts["R"] - parts["DTT"] - parts["quad"] - parts["sigma"]
    sig = parts["sigma"]
    four_form = max(float(np.abs(sig + np.transpose(sig, p)).max())
                    for p in [(1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2)])
    basis = np.stack([parts["quad"].ravel(), parts["sigma"].ravel()], axis=1)
    fit = {}
    for key in ("R", "DTT"):
        coef = np.linalg.lstsq(basis, parts[key].ravel(), rcond=None)[0]
        fit[key] = (float(coef[0]), float(coef[1]),
                    float(np.abs(basis @ coef - parts[key].ravel()).max()))
    direct = parts["R"] - parts["quad"] + 0.25 * parts["sigma"]
    return {"R0": R0, "formula_residual": float(np.abs(R0).max()),
            "sigma_skew_residual": four_form, "fit": fit,
            "quarter_sigma_residual": float(np.abs(direct).max()),
            "scale": float(np.abs(parts["R"]).max())}


# ----------------------------------------------------------------------------
# flat su(n) connection

def _pure_pair(rep: GammaRep):
    """Spinors annihilated by the barred and unbarred halves of a complex frame."""
    from .fierz import make_pure_spinor
    for w in (1, -1):
        try:
            ps = make_pure_spinor(rep, w)
            break
        except RuntimeError:
            continue
    ann = np.vstack([o.to_complex() for o in ps.annihilators])
    cre = np.vstack([o.to_complex() for o in ps.creators])
    eta = _nullspace(ann, 1e-10)[:, 0]
    eta_bar = _nullspace(cre, 1e-10)[:, 0]
    return eta, eta_bar


def _skew_potentials(gam, form: dict, D: int) -> list:
    """A_mu = 1/2 sum_{a<b} F_{mu ab} gamma^{ab} (Riemannian signature)."""
    A = [np.zeros_like(gam[0]) for _ in range(D)]
    for K, c in form.items():
        for mu in K:
            rest = tuple(x for x in K if x != mu)
            A[mu] = A[mu] + c * perm_sign((mu,) + rest) * 0.5 * gam[rest[0]] @ gam[rest[1]]
    return A


def su_n_flat_connection(n: int) -> dict:
    """Flat R^{2n} with D^C = d - A^C, A^C_mu = 1/2 F_{mu ab} gamma^{ab} constant.

    ``intersection_dim`` counts complex 3-forms whose every contraction lies
    in the common stabilizer of both pure spinors (the complexified su(n));
    ``one_sided`` relaxes this to the stabilizer of a single pure spinor and
    records how far the torsion is from annihilating it. ``real_trivial_dim``
    counts real 3-forms whose torsion kills eta.
    """
    rep = build_gamma(Signature(0, 2 * n))
    conj = build_conjugation(rep, realizable_delta0(rep)[0])
    D = 2 * n
    gam = [g.to_complex() for g in rep.gammas]
    triples = list(itertools.combinations(range(D), 3))
    unit = [_skew_potentials(gam, {K: 1.0}, D) for K in triples]
    eta, eta_bar = _pure_pair(rep)

    def combo(v):
        AC = [sum(c * unit[k][m] for k, c in enumerate(v)) for m in range(D)]
        return [conj.adjoint(a) for a in AC], AC

    def stab_space(spinors):
        L = np.array([np.concatenate([a @ s for s in spinors for a in AC]) for AC in unit]).T
        return _nullspace(L, 1e-10)

    def torsion_on(v, s):
        A, _ = combo(v)
        return max(float(np.abs(t @ s).max()) for t in torsion(conj, A).values())

    both = stab_space([eta, eta_bar])
    out = {"n": n, "intersection_dim": both.shape[1],
           "torsion_annihilates": all(torsion_on(v, s) < 1e-9 for v in both.T for s in (eta, eta_bar)),
           "holonomy_stabilizes": True, "one_sided": {}}
    for label, s in (("eta", eta), ("eta_bar", eta_bar)):
        ker = stab_space([s])
        out["one_sided"][label] = {"dim": ker.shape[1],
                                   "torsion_on_spinor": max((torsion_on(v, s) for v in ker.T), default=0.0)}
    # real 3-forms with T eta = 0: the map is linear in F
    rows = []
    for k in range(len(triples)):
        v = np.zeros(len(triples))
        v[k] = 1.0
        A, _ = combo(v)
        rows.append(np.concatenate([(t @ eta) for t in torsion(conj, A).values()]))
    L = np.array(rows).T
    out["real_trivial_dim"] = _nullspace(np.vstack([L.real, L.imag]), 1e-10).shape[1]
    for v in both.T:
        A, AC = combo(v)
        for m, k in itertools.combinations(range(D), 2):
            curv = AC[m] @ AC[k] - AC[k] @ AC[m]
            if float(np.abs(curv @ eta).max()) > 1e-9:
                out["holonomy_stabilizes"] = False
    return out
