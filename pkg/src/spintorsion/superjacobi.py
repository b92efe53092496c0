"""Exterior-algebra fiber of the spinor bundle and the bracket calculus of odd vector fields.

Two models live here.

* Pointwise tensors: the B- and D-terms, the order-(3,0) and (4,1) pieces of
  the double bracket and their cyclic sums, evaluated from the torsion,
  curvature and their derivatives at one point.
* A jet model on flat space with constant potentials: sections of Lambda S
  are polynomial jets, and ``j_D(e_mu)``, ``j(phi)``, endomorphisms and
  ``i(phi) = gamma^mu phi (x) j_D(e_mu)`` act as genuine graded derivations.
  Brackets computed there are compared with the closed expressions.

Grade-k elements are dense antisymmetric k-tensors normalized so that
``v1 ^ ... ^ vk = sum_sigma sign(sigma) v_sigma(1) (x) ... (x) v_sigma(k)``.
The endomorphism slot of the B-term is kept as a separate tensor factor.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .clifford import GammaRep, Signature, build_gamma, perm_sign
from .conjugation import ChargeConjugation, candidate_conjugations
from .jets import Jet

MAX_SPINOR_DIM = 8


class CapExceeded(ValueError):
    """Raised when the spinor dimension exceeds the fiber cap."""


# ----------------------------------------------------------------------------
# sparse exterior elements

@dataclass
class ExteriorElement:
    """Element of Lambda(C^dim) as coefficients on strictly increasing index tuples."""

    dim: int
    comps: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dim > MAX_SPINOR_DIM:
            raise CapExceeded(f"spinor dimension {self.dim} exceeds {MAX_SPINOR_DIM}")

    @classmethod
    def from_vector(cls, v) -> "ExteriorElement":
        return cls(len(v), {(i,): complex(x) for i, x in enumerate(v) if x != 0})

    @classmethod
    def scalar(cls, dim: int, value) -> "ExteriorElement":
        return cls(dim, {(): complex(value)})

    def grades(self) -> set[int]:
        return {len(k) for k, v in self.comps.items() if v != 0}

    def part(self, k: int) -> "ExteriorElement":
        return ExteriorElement(self.dim, {I: v for I, v in self.comps.items() if len(I) == k})

    def __add__(self, other):
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out.get(k, 0) + v
        return ExteriorElement(self.dim, out)

    def __neg__(self):
        return ExteriorElement(self.dim, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "ExteriorElement":
        return ExteriorElement(self.dim, {k: v * q for k, v in self.comps.items()})

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(v) <= tol for v in self.comps.values())

    def wedge(self, other: "ExteriorElement") -> "ExteriorElement":
        return wedge(self, other)

    def to_dense(self, k: int) -> np.ndarray:
        """Antisymmetric tensor of the grade-k part."""
        t = np.zeros((self.dim,) * k, dtype=complex)
        for I, v in self.comps.items():
            if len(I) != k:
                continue
            for p in itertools.permutations(range(k)):
                t[tuple(I[i] for i in p)] += perm_sign(p) * v
        return t

    @classmethod
    def from_dense(cls, t: np.ndarray) -> "ExteriorElement":
        k = t.ndim
        dim = t.shape[0] if k else 1
        return cls(dim, {I: complex(t[I]) for I in itertools.combinations(range(dim), k) if t[I] != 0})


def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of the shuffle sorting a + b; 0 on a repeated index."""
    if set(a) & set(b):
        return 0
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions % 2 else 1


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    out = {}
    for I, x in a.comps.items():
        for J, y in b.comps.items():
            s = _merge_sign(I, J)
            if s:
                K = tuple(sorted(I + J))
                out[K] = out.get(K, 0) + s * x * y
    return ExteriorElement(a.dim, out)


# ----------------------------------------------------------------------------
# dense helpers

def antisymmetrize(t: np.ndarray, k: int) -> np.ndarray:
    """Sum over signed permutations of the first k axes."""
    if k <= 1:
        return t
    out = np.zeros_like(t)
    rest = list(range(k, t.ndim))
    for p in itertools.permutations(range(k)):
        out = out + perm_sign(p) * np.transpose(t, list(p) + rest)
    return out


def wedge_dense(a: np.ndarray, p: int, b: np.ndarray, q: int) -> np.ndarray:
    """Wedge of a grade-p and grade-q dense tensor; trailing axes of ``b`` ride along."""
    outer = np.multiply.outer(a, b)
    return antisymmetrize(outer, p + q) / (math.factorial(p) * math.factorial(q))


def wedge_vectors(*vs) -> np.ndarray:
    t = vs[0]
    for v in vs[1:]:
        t = np.multiply.outer(t, v)
    return antisymmetrize(t, len(vs))


# ----------------------------------------------------------------------------
# pointwise data

@dataclass
class PointData:
    """Torsion, curvature and derivatives of a spinor connection at one point.

    Full antisymmetric tables are stored as arrays indexed by frame labels:
    ``T[m, n]``, ``R[m, n]``, ``DT[k, m, n]`` (D-hat_k T_mn), ``DR[k, m, n]``
    and ``R0[k, m, n, l]`` (Levi-Civita curvature, lower indices).
    """

    conj: ChargeConjugation
    gam: list
    metric: tuple
    T: np.ndarray
    R: np.ndarray
    DT: np.ndarray
    DR: np.ndarray
    R0: np.ndarray

    @property
    def D(self) -> int:
        return len(self.gam)

    @property
    def gup(self) -> list:
        return [self.metric[m] * g for m, g in enumerate(self.gam)]

    def adjoint(self, m: np.ndarray) -> np.ndarray:
        return self.conj.c_inv_complex @ m.T @ self.conj.c_complex

    def ad_c(self, om: np.ndarray, phi: np.ndarray) -> np.ndarray:
        return om @ phi + phi @ self.adjoint(om)

    def raise_pair(self, X: np.ndarray) -> np.ndarray:
        g = np.asarray(self.metric, dtype=float)
        return X * g[:, None, None, None] * g[None, :, None, None]


def _check_cap(conj: ChargeConjugation):
    n = conj.rep.dim_s
    if n > MAX_SPINOR_DIM:
        raise CapExceeded(f"spinor dimension {n} exceeds {MAX_SPINOR_DIM}")


def constant_point_data(conj: ChargeConjugation, A: list) -> PointData:
    """Point data of d + A on flat space with constant potentials."""
    _check_cap(conj)
    rep = conj.rep
    D = rep.D
    gam = [g.to_complex() for g in rep.gammas]
    A = [np.asarray(a.to_complex() if hasattr(a, "to_complex") else a, dtype=complex) for a in A]
    adj = [conj.c_inv_complex @ a.T @ conj.c_complex for a in A]
    N = gam[0].shape[0]
    X = np.array([[A[m] @ gam[n] + gam[n] @ adj[m] for n in range(D)] for m in range(D)])
    T = X - X.transpose(1, 0, 2, 3)
    R = np.array([[A[m] @ A[n] - A[n] @ A[m] for n in range(D)] for m in range(D)])
    DT = np.array([[[A[k] @ T[m, n] + T[m, n] @ adj[k] for n in range(D)] for m in range(D)]
                   for k in range(D)])
    DR = np.array([[[A[k] @ R[m, n] - R[m, n] @ A[k] for n in range(D)] for m in range(D)]
                   for k in range(D)])
    return PointData(conj, gam, rep.signature.metric, T, R, DT, DR, np.zeros((D,) * 4))


def killing_potential(conj: ChargeConjugation, a: float) -> list:
    return [a * g.to_complex() for g in conj.rep.gammas]


def fiber_conjugation(sig: Signature, prefer_product: int | None = -1) -> ChargeConjugation:
    rep = build_gamma(sig)
    cands = candidate_conjugations(rep)
    if prefer_product is not None:
        for c in cands:
            if c.delta0 * c.delta1 == prefer_product:
                return c
    return cands[0]


# ----------------------------------------------------------------------------
# B- and D-terms

def b_term(data: PointData, phi: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """sum_{mu nu} gamma^mu phi ^ gamma^nu psi (x) R_mu,nu, shape (N, N, N, N)."""
    gup = data.gup
    out = 0
    for m, n in itertools.permutations(range(data.D), 2):
        out = out + np.multiply.outer(wedge_vectors(gup[m] @ phi, gup[n] @ psi), data.R[m, n])
    return out


def d_term(data: PointData, phi: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Per direction nu: gamma^mu phi ^ T_mu,nu psi + gamma^mu psi ^ T_mu,nu phi."""
    gup = data.gup
    out = np.zeros((data.D,) + (len(phi),) * 2, dtype=complex)
    for nu in range(data.D):
        for mu in range(data.D):
            t = data.T[mu, nu]
            out[nu] += wedge_vectors(gup[mu] @ phi, t @ psi) + wedge_vectors(gup[mu] @ psi, t @ phi)
    return out


# ----------------------------------------------------------------------------
# double-bracket components

def order30_parts(data: PointData, phi, eta, xi) -> tuple[np.ndarray, np.ndarray]:
    """The two summands of the (3,0) component, each as (nu, N, N, N) with nu lowered."""
    D, g = data.D, data.metric
    gup, gam = data.gup, data.gam
    T = data.T
    Tup = data.raise_pair(T)
    first = np.zeros((D,) + (len(phi),) * 3, dtype=complex)
    second = np.zeros_like(first)
    for nu in range(D):
        acc = 0
        for k, m in itertools.product(range(D), repeat=2):
            acc = acc + wedge_vectors(gup[k] @ phi, T[k, m] @ eta, Tup[m, nu] @ xi)
            acc = acc + wedge_vectors(gup[k] @ phi, T[k, m] @ xi, Tup[m, nu] @ eta)
            acc = acc + wedge_vectors(Tup[nu, k] @ phi, gup[m] @ eta, T[m, k] @ xi)
            acc = acc + wedge_vectors(Tup[nu, k] @ phi, gup[m] @ xi, T[m, k] @ eta)
        # D_nu = g_nu,nu D^nu; store everything against D^nu
        first[nu] = 0.25 * g[nu] * acc
        acc = 0
        for k, m in itertools.product(range(D), repeat=2):
            acc = acc + 0.5 * wedge_vectors(gup[k] @ phi, gup[m] @ eta, data.DT[k, m, nu] @ xi)
            acc = acc + 0.5 * wedge_vectors(gup[k] @ phi, gup[m] @ xi, data.DT[k, m, nu] @ eta)
            acc = acc - wedge_vectors(gup[k] @ eta, gup[m] @ xi, data.ad_c(data.R[k, m], gam[nu]) @ phi)
        second[nu] = acc
    return first, second


def order41_parts(data: PointData, phi, eta, xi) -> tuple[np.ndarray, np.ndarray]:
    """The two summands of the (4,1) component, each in Lambda^3 (x) End."""
    D = data.D
    gup, gam = data.gup, data.gam
    Tup = data.raise_pair(data.T)
    first = 0
    for m, n in itertools.product(range(D), repeat=2):
        if m == n:
            continue
        w = 0
        for k in range(D):
            w = w + wedge_vectors(gup[m] @ phi, gam[k] @ eta, Tup[k, n] @ xi)
            w = w + wedge_vectors(gup[m] @ phi, gam[k] @ xi, Tup[k, n] @ eta)
            w = w + wedge_vectors(gam[k] @ phi, gup[m] @ xi, Tup[k, n] @ eta)
            w = w + wedge_vectors(gam[k] @ phi, gup[m] @ eta, Tup[k, n] @ xi)
        first = first + 0.5 * np.multiply.outer(w, data.R[m, n])
    second = 0
    for k, m, n in itertools.product(range(D), repeat=3):
        if m == n:
            continue
        second = second + np.multiply.outer(wedge_vectors(gup[k] @ phi, gup[m] @ eta, gup[n] @ xi),
                                            data.DR[k, m, n])
    return first, second


def _cyclic(fn, a, b, c):
    x = fn(a, b, c)
    y = fn(b, c, a)
    z = fn(c, a, b)
    return tuple(p + q + r for p, q, r in zip(x, y, z))


def jacobi_sums(data: PointData, phi, eta, xi) -> dict:
    """Max-norms of the cyclic sums of every summand, with their scales."""
    f30, s30 = _cyclic(lambda a, b, c: order30_parts(data, a, b, c), phi, eta, xi)
    f41, s41 = _cyclic(lambda a, b, c: order41_parts(data, a, b, c), phi, eta, xi)
    raw30 = order30_parts(data, phi, eta, xi)
    raw41 = order41_parts(data, phi, eta, xi)

    def nrm(x):
        return float(np.abs(x).max()) if np.ndim(x) else float(abs(x))

    return {
        "order30_first": nrm(f30), "order30_second": nrm(s30),
        "order41_first": nrm(f41), "order41_second": nrm(s41),
        "scale": max(nrm(x) for x in raw30 + raw41),
    }


def cyclic_bianchi_sum(data: PointData, phi, eta, xi) -> float:
    """cycl (D-hat_[k T_m]n - ad^C_{R_km} gamma_n) xi ^ gamma^k phi ^ gamma^m eta."""
    D = data.D
    gup, gam = data.gup, data.gam

    def term(a, b, c):
        out = np.zeros((D,) + (len(a),) * 3, dtype=complex)
        for n in range(D):
            for k, m in itertools.permutations(range(D), 2):
                M = 0.5 * (data.DT[k, m, n] - data.DT[m, k, n]) - data.ad_c(data.R[k, m], gam[n])
                out[n] += wedge_vectors(M @ c, gup[k] @ a, gup[m] @ b)
        return (out,)

    (tot,) = _cyclic(term, phi, eta, xi)
    return float(np.abs(tot).max())


def bianchi2_point(data: PointData, spinors) -> float:
    """max |(D-hat_[k T_m]n - ad^C_{R_km} gamma_n - R0_kmnl gamma^l) eta|."""
    D = data.D
    gup, gam = data.gup, data.gam
    worst = 0.0
    for k, m in itertools.combinations(range(D), 2):
        for n in range(D):
            M = 0.5 * (data.DT[k, m, n] - data.DT[m, k, n]) - data.ad_c(data.R[k, m], gam[n])
            M = M - sum(data.R0[k, m, n, l] * gup[l] for l in range(D))
            for eta in spinors:
                worst = max(worst, float(np.abs(M @ eta).max()))
    return worst


def random_delta1_symmetric(data: PointData, rng) -> np.ndarray:
    """Antisymmetric table of endomorphisms with C-symmetry Delta_1, like a torsion."""
    D = data.D
    N = data.gam[0].shape[0]
    c = data.conj.c_complex
    ci = data.conj.c_inv_complex
    d1 = data.conj.delta1
    T = np.zeros((D, D, N, N), dtype=complex)
    for m, n in itertools.combinations(range(D), 2):
        X = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
        S = X + d1 * X.T                      # (C T)^T = Delta_1 C T
        T[m, n] = ci @ S
        T[n, m] = -T[m, n]
    return T


# ----------------------------------------------------------------------------
# jet model of derivations on Lambda S over flat space

class FiberModel:
    """Graded derivations on polynomial sections of Lambda S near the origin.

    The base is flat with the signature of ``conj``; ``A`` is a list of
    constant potentials, so D_mu = d_mu + A_mu and D^C_mu = d_mu - A^C_mu.
    """

    def __init__(self, conj: ChargeConjugation, A: list, order: int = 3):
        _check_cap(conj)
        self.conj = conj
        self.rep = conj.rep
        self.D = conj.rep.D
        self.N = conj.rep.dim_s
        self.order = order
        self.metric = conj.rep.signature.metric
        self.gam = [g.to_complex() for g in conj.rep.gammas]
        self.gup = [self.metric[m] * g for m, g in enumerate(self.gam)]
        self.A = [np.asarray(a, dtype=complex) for a in A]
        self.C = conj.c_complex
        self.AC = [self.adjoint(a) for a in self.A]

    def adjoint(self, m):
        return self.conj.c_inv_complex @ m.T @ self.conj.c_complex

    # construction -----------------------------------------------------------
    def zero(self, grade: int) -> Jet:
        return Jet.constant(self.D, self.order, np.zeros((self.N,) * grade))

    def random_element(self, grade: int, rng, degree: int = 2) -> Jet:
        """Random grade-k section with polynomial coefficients."""
        base = self.zero(grade)
        xs = [Jet.variable(self.D, self.order, i, 0.0) for i in range(self.D)]
        monos = [Jet.constant(self.D, self.order, 1.0)] + xs
        if degree >= 2:
            monos += [xs[i] * xs[j] for i, j in itertools.combinations_with_replacement(range(self.D), 2)]
        for mono in monos:
            t = rng.normal(size=(self.N,) * grade) + 1j * rng.normal(size=(self.N,) * grade)
            t = antisymmetrize(t, grade) if grade > 1 else t
            base = base + mono * t
        return base

    def parallel_section(self, eta0: np.ndarray) -> Jet:
        """Second-order jet of a section with D^C eta = 0 at the origin."""
        xs = [Jet.variable(self.D, self.order, i, 0.0) for i in range(self.D)]
        out = Jet.constant(self.D, self.order, np.asarray(eta0, dtype=complex))
        for m in range(self.D):
            out = out + xs[m] * (self.AC[m] @ eta0)
        for m, n in itertools.product(range(self.D), repeat=2):
            out = out + (xs[m] * xs[n]) * (0.5 * self.AC[m] @ self.AC[n] @ eta0)
        return out

    # operators -----------------------------------------------------------
    @staticmethod
    def grade(w: Jet) -> int:
        return len(w.shape)

    def endo(self, M, w: Jet) -> Jet:
        """Even derivation induced by an endomorphism (constant array or matrix jet)."""
        k = self.grade(w)
        if k == 0:
            return w * 0.0

        def act(mat, t, batched):
            out = 0
            for slot in range(k):
                if batched:
                    moved = np.einsum("aij,aj...->ai...", mat, np.moveaxis(t, slot + 1, 1))
                    out = out + np.moveaxis(moved, 1, slot + 1)
                else:
                    moved = np.tensordot(mat, t, axes=([1], [slot + 1]))
                    out = out + np.moveaxis(moved, 0, slot + 1)
            return out

        if isinstance(M, Jet):
            return M._product(w, lambda x, y: act(x, y, True))
        return Jet(w.n, w.order, act(np.asarray(M), w.coef, False))

    def cov(self, mu: int, w: Jet) -> Jet:
        """j_D(e_mu): d_mu plus the potential acting as a derivation."""
        return w.diff(mu) + self.endo(self.A[mu], w.truncate(w.order - 1))

    def contract(self, phi: Jet, w: Jet) -> Jet:
        """j(phi): odd derivation of degree -1 with j(phi) eta = C(phi, eta)."""
        if self.grade(w) == 0:
            return w * 0.0
        C = self.C
        return phi._product(w, lambda x, y: np.einsum("ai,ij,aj...->a...", x, C, y))

    def wedge(self, a: Jet, b: Jet) -> Jet:
        p, q = self.grade(a), self.grade(b)
        if p == 0 or q == 0:
            return a * b
        fac = math.factorial(p) * math.factorial(q)

        def op(x, y):
            outer = x.reshape(x.shape + (1,) * q) * y.reshape((y.shape[0],) + (1,) * p + y.shape[1:])
            return antisymmetrize(np.moveaxis(outer, 0, -1), p + q).transpose(
                (p + q,) + tuple(range(p + q))) / fac

        return a._product(b, op)

    def iota(self, phi: Jet, w: Jet) -> Jet:
        """i(phi) w = sum_mu gamma^mu phi ^ D_mu w."""
        out = None
        for mu in range(self.D):
            g = phi.adjoint_map(lambda v, m=mu: self.gup[m] @ v)
            term = self.wedge(g, self.cov(mu, w))
            out = term if out is None else out + term
        return out

    # curvature and torsion of the model --------------------------------------
    def point_data(self) -> PointData:
        return constant_point_data(self.conj, self.A)


def _value(j: Jet) -> np.ndarray:
    return np.asarray(j.value)


def _nrm(x) -> float:
    return float(np.abs(np.asarray(x)).max(initial=0.0))


def commutation_relations(model: FiberModel, seed: int = 0, trials: int = 2) -> dict:
    """The fundamental graded commutators on random sections of grades 0..2."""
    rng = np.random.default_rng(seed)
    D, N = model.D, model.N
    res = {"jD_jD": 0.0, "j_j": 0.0, "jD_j": 0.0, "endo_j": 0.0, "jD_endo": 0.0}
    data = model.point_data()
    xs = [Jet.variable(D, model.order, i, 0.0) for i in range(D)]
    for _ in range(trials):
        phi = model.random_element(1, rng)
        psi = model.random_element(1, rng)
        Phi = Jet.constant(D, model.order, rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N)))
        for m in range(D):
            Phi = Phi + xs[m] * (rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N)))
        for k in range(3):
            w = model.random_element(k, rng)
            for m, n in itertools.combinations(range(D), 2):
                lhs = model.cov(m, model.cov(n, w)) - model.cov(n, model.cov(m, w))
                rhs = model.endo(data.R[m, n], w.truncate(lhs.order))
                res["jD_jD"] = max(res["jD_jD"], _nrm(_value(lhs - rhs)))
            if k >= 1:
                lhs = model.contract(phi, model.contract(psi, w)) + model.contract(psi, model.contract(phi, w))
                res["j_j"] = max(res["j_j"], _nrm(_value(lhs)))
                for m in range(D):
                    lhs = model.cov(m, model.contract(phi, w)) - model.contract(phi.truncate(w.order - 1),
                                                                                model.cov(m, w))
                    dcphi = phi.diff(m) - phi.truncate(phi.order - 1).adjoint_map(lambda v: model.AC[m] @ v)
                    rhs = model.contract(dcphi, w.truncate(dcphi.order))
                    res["jD_j"] = max(res["jD_j"], _nrm(_value(lhs - rhs)))
                lhs = model.endo(Phi, model.contract(phi, w)) - model.contract(phi, model.endo(Phi, w))
                phic = Phi.adjoint_map(model.adjoint)
                rhs = model.contract(-phic._product(phi, lambda x, y: np.einsum("aij,aj->ai", x, y)), w)
                res["endo_j"] = max(res["endo_j"], _nrm(_value(lhs - rhs)))
            for m in range(D):
                lhs = model.cov(m, model.endo(Phi, w)) - model.endo(Phi.truncate(w.order - 1), model.cov(m, w))
                dphi = Phi.diff(m) + (Phi.truncate(Phi.order - 1).adjoint_map(lambda x: model.A[m] @ x - x @ model.A[m]))
                rhs = model.endo(dphi, w.truncate(dphi.order))
                res["jD_endo"] = max(res["jD_endo"], _nrm(_value(lhs - rhs)))
    return res


def bracket_identity(model: FiberModel, phi0: np.ndarray, psi0: np.ndarray, seed: int = 0) -> dict:
    """[i(phi), i(psi)] on grade-0 and grade-1 test sections against B + D/2.

    The spinors are extended to sections with D^C = 0 at the origin.
    """
    rng = np.random.default_rng(seed)
    data = model.point_data()
    phi = model.parallel_section(phi0)
    psi = model.parallel_section(psi0)
    B = b_term(data, phi0, psi0)
    Dt = d_term(data, phi0, psi0)
    worst = scale = 0.0
    for k in (0, 1):
        for _ in range(3):
            w = model.random_element(k, rng)
            lhs = model.iota(phi, model.iota(psi, w)) + model.iota(psi, model.iota(phi, w))
            lhs = _value(lhs)
            rhs = 0
            for nu in range(model.D):
                dnu = _value(model.cov(nu, w))
                rhs = rhs + 0.5 * model.metric[nu] * (wedge_dense(Dt[nu], 2, dnu, k) if k else Dt[nu] * dnu)
            if k == 1:
                # B on s: sum gamma^mu phi ^ gamma^nu psi ^ R_mu,nu s
                Bs = np.einsum("abij,j->abi", B, _value(w))
                rhs = rhs + antisymmetrize(Bs, 3) / 2
            worst = max(worst, _nrm(lhs - rhs))
            scale = max(scale, _nrm(lhs))
    return {"residual": worst, "scale": scale}


def iota_square(model: FiberModel, eta0: np.ndarray, seed: int = 0) -> float:
    """max |i(eta)^2 w| over grade-0 and grade-1 test sections (eta parallel at the origin)."""
    rng = np.random.default_rng(seed)
    eta = model.parallel_section(eta0)
    worst = 0.0
    for k in (0, 1):
        for _ in range(3):
            w = model.random_element(k, rng)
            worst = max(worst, _nrm(_value(model.iota(eta, model.iota(eta, w)))))
    return worst


def flatness(data: PointData, eta: np.ndarray, tol: float = 1e-12) -> dict:
    Dt = d_term(data, eta, eta)
    B = b_term(data, eta, eta)
    strong = all(_nrm(data.T[m, n] @ eta) <= tol for m in range(data.D) for n in range(data.D))
    tf = _nrm(Dt) <= tol
    return {"torsion_free": tf, "strongly_torsion_free": strong, "flat": tf and _nrm(B) <= tol}


# ----------------------------------------------------------------------------
# pure spinors in four dimensions

def hodge_two_form(r: np.ndarray, metric) -> np.ndarray:
    """(*r)_{mn} = 1/2 eps_{mnkl} r^{kl} for a 4-dimensional array of 2-forms (extra axes ride along)."""
    D = len(metric)
    eps = np.zeros((D,) * 4)
    for p in itertools.permutations(range(D)):
        eps[p] = perm_sign(p)
    eps = eps * int(np.prod(metric))
    g = np.asarray(metric, dtype=float)
    rup = r * g[:, None, ...].reshape((D, 1) + (1,) * (r.ndim - 2)) * g.reshape((1, D) + (1,) * (r.ndim - 2))
    return 0.5 * np.tensordot(eps, rup, axes=([2, 3], [0, 1]))


def _pure(rep: GammaRep, w: int):
    from .fierz import make_pure_spinor
    ps = make_pure_spinor(rep, w)
    return ps.spinor.to_complex().reshape(-1), ps


def barred_components(ps, X: np.ndarray) -> np.ndarray:
    """Contract the two leading form slots of X with the annihilating directions of a pure spinor.

    These are the components with two upper unbarred indices.
    """
    U = np.asarray(ps.annihilator_coeffs)
    return np.einsum("am,bn,mn...->ab...", U, U, X) / 4.0


def b_term_condition(rep: GammaRep, ps, R: np.ndarray) -> np.ndarray:
    """eps_{a1..an} gamma^{a1..a_{n-2}} (1 - (-)^n w gamma*) (x) R^{a_{n-1} a_n}, for n = 2."""
    n = rep.D // 2
    if n != 2:
        raise ValueError("implemented for four dimensions")
    star = rep.star.to_complex()
    proj = np.eye(star.shape[0]) - (-1) ** n * ps.chirality * star
    comps = barred_components(ps, R)
    total = comps[0, 1] - comps[1, 0]
    return np.multiply.outer(proj, total)


def d_term_condition(rep: GammaRep, ps, F: np.ndarray) -> np.ndarray:
    """F^{i a1 a2} eps_{a1 a2} (1 - w gamma*) (x) e_i in four dimensions."""
    star = rep.star.to_complex()
    proj = np.eye(star.shape[0]) - ps.chirality * star
    g = np.asarray(rep.signature.metric, dtype=float)
    Fup = F * g[:, None, None] * g[None, :, None] * g[None, None, :]
    comps = barred_components(ps, np.moveaxis(Fup, 0, -1))    # (a, b, i)
    total = comps[0, 1] - comps[1, 0]
    return np.multiply.outer(proj, total)


def three_form_torsion(conj: ChargeConjugation, F: np.ndarray) -> np.ndarray:
    """T_mn = F_mnk gamma^k."""
    gam = [g.to_complex() for g in conj.rep.gammas]
    g = conj.rep.signature.metric
    D = len(gam)
    return np.array([[sum(F[m, n, k] * g[k] * gam[k] for k in range(D)) for n in range(D)] for m in range(D)])


def random_three_form_array(D: int, rng) -> np.ndarray:
    F = np.zeros((D, D, D), dtype=complex)
    for K in itertools.combinations(range(D), 3):
        v = rng.normal() + 1j * rng.normal()
        for p in itertools.permutations(range(3)):
            F[tuple(K[i] for i in p)] = perm_sign(p) * v
    return F


def _kernel_sample(condition, params: np.ndarray, rng) -> np.ndarray:
    """Random element of the kernel of a linear map, drawn near ``params``."""
    n = params.size
    basis = np.eye(n)
    L = np.stack([np.asarray(condition(b.reshape(params.shape))).reshape(-1) for b in basis], axis=1)
    _, sv, vh = np.linalg.svd(L)
    rank = int((sv > 1e-10 * sv[0]).sum())
    ker = vh[rank:].conj().T
    coeffs = rng.normal(size=ker.shape[1]) + 1j * rng.normal(size=ker.shape[1])
    return (ker @ coeffs).reshape(params.shape)


def _two_form_table(params: np.ndarray, D: int) -> np.ndarray:
    out = np.zeros((D, D) + params.shape[1:], dtype=complex)
    for i, (m, n) in enumerate(itertools.combinations(range(D), 2)):
        out[m, n], out[n, m] = params[i], -params[i]
    return out


def _three_form_table(params: np.ndarray, D: int) -> np.ndarray:
    F = np.zeros((D, D, D), dtype=complex)
    for i, K in enumerate(itertools.combinations(range(D), 3)):
        for p in itertools.permutations(range(3)):
            F[tuple(K[j] for j in p)] = perm_sign(p) * params[i]
    return F


def pure_spinor_suite(samples: int = 20, seed: int = 0, tol: float = 1e-10) -> dict:
    """B- and D-term conditions on pure spinors in four dimensions.

    For each chirality, half the samples are drawn from the kernel of the
    component condition and half are generic; the count of samples on which
    the vanishing of the term agrees with the condition is recorded.  The
    B-term is also evaluated on self-dual and anti-self-dual curvature.
    """
    rng = np.random.default_rng(seed)
    sig = Signature(0, 4)
    rep = build_gamma(sig)
    conj = candidate_conjugations(rep)[0]
    D, metric = 4, sig.metric
    gam = [g.to_complex() for g in rep.gammas]
    N = gam[0].shape[0]
    n2, n3 = math.comb(D, 2), math.comb(D, 3)
    out = {"samples": 0, "b_agree": 0, "d_agree": 0, "b_zero_cases": 0, "d_zero_cases": 0,
           "selfdual": {}}
    for w in (1, -1):
        eta, ps = _pure(rep, w)
        for s in range(samples):
            out["samples"] += 1
            p = rng.normal(size=(n2, N, N)) + 1j * rng.normal(size=(n2, N, N))
            if s % 2 == 0:
                p = _kernel_sample(lambda q: b_term_condition(rep, ps, _two_form_table(q, D)), p, rng)
            R = _two_form_table(p, D)
            data = PointData(conj, gam, metric, np.zeros_like(R), R, None, None, None)
            bz = _nrm(b_term(data, eta, eta)) < tol
            cz = _nrm(b_term_condition(rep, ps, R)) < tol
            out["b_agree"] += int(bz == cz)
            out["b_zero_cases"] += int(bz)
            q = rng.normal(size=n3) + 1j * rng.normal(size=n3)
            if s % 2 == 0:
                q = _kernel_sample(lambda x: d_term_condition(rep, ps, _three_form_table(x, D)), q, rng)
            F = _three_form_table(q, D)
            data = PointData(conj, gam, metric, three_form_torsion(conj, F), R, None, None, None)
            dz = _nrm(d_term(data, eta, eta)) < tol
            ez = _nrm(d_term_condition(rep, ps, F)) < tol
            out["d_agree"] += int(dz == ez)
            out["d_zero_cases"] += int(dz)
        for sd in (1, -1):
            p = rng.normal(size=(n2, N, N)) + 1j * rng.normal(size=(n2, N, N))
            R = _two_form_table(p, D)
            R = 0.5 * (R + sd * hodge_two_form(R, metric))
            data = PointData(conj, gam, metric, np.zeros_like(R), R, None, None, None)
            out["selfdual"][(w, sd)] = _nrm(b_term(data, eta, eta))
    return out
