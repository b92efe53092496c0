"""Charge conjugations, their symmetry constants and the charge adjoint."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clifford import GammaRep, doubled, index_sets, pauli_set
from .exact import GMat, GQ, kron, monomial_data as _monomial_data


class ConjugationUnavailable(ValueError):
    """The requested symmetry constant is not realized in this signature."""


def solve_intertwiner(gammas: list[GMat], sigma: int) -> GMat | None:
    """Solve C gamma_mu = sigma gamma_mu^T C exactly.

    For monomial generators every scalar equation links two entries of C by
    a unit phase, so the solution space is found by phase-weighted union-find.
    The returned solution has its first nonzero entry (row-major) equal to 1;
    ``None`` means only C = 0 solves the system.
    """
    n = gammas[0].shape[0]
    size = n * n
    parent = np.arange(size)
    weight = np.zeros(size, dtype=np.int64)   # x_p = i^weight[p] * x_parent
    bad = np.zeros(size, dtype=bool)
    sig_exp = 0 if sigma == 1 else 2

    def find(p):
        path = []
        while parent[p] != p:
            path.append(p)
            p = parent[p]
        root = p
        acc = 0
        for q in reversed(path):
            acc = (acc + weight[q]) & 3
            weight[q] = acc
            parent[q] = root
        return root

    for g in gammas:
        r, v = _monomial_data(g)
        # C[i, r[j]] * i^v[j] = sigma * i^v[i] * C[r[i], j]
        ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        p = (ii * n + r[jj]).ravel()
        q = (r[ii] * n + jj).ravel()
        e = ((sig_exp + v[ii] - v[jj]) & 3).ravel()
        for a, b, ex in zip(p.tolist(), q.tolist(), e.tolist()):
            ra, rb = find(a), find(b)
            wa, wb = int(weight[a]) if a != ra else 0, int(weight[b]) if b != rb else 0
            # x_a = i^ex x_b, x_a = i^wa x_ra, x_b = i^wb x_rb
            if ra == rb:
                if (wa - ex - wb) & 3:
                    bad[ra] = True
                continue
            parent[ra] = rb
            weight[ra] = (ex + wb - wa) & 3
            bad[rb] |= bad[ra]

    roots = np.array([find(p) for p in range(size)])
    good = [p for p in range(size) if not bad[roots[p]]]
    if not good:
        return None
    comps = sorted({int(roots[p]) for p in good})
    if len(comps) != 1:
        raise RuntimeError(f"intertwiner space has dimension {len(comps)}; representation reducible?")
    first = good[0]
    base = (-int(weight[first]) if first != roots[first] else 0) & 3
    re = np.zeros(size, dtype=np.int64)
    im = np.zeros(size, dtype=np.int64)
    for p in good:
        w = int(weight[p]) if p != roots[p] else 0
        ph = (w + base) & 3
        re[p], im[p] = ((1, 0), (0, 1), (-1, 0), (0, -1))[ph]
    return GMat(re.reshape(n, n), im.reshape(n, n))


def monomial_inverse(m: GMat) -> GMat:
    inv = m.conj().T
    if m @ inv != GMat.eye(m.shape[0]):
        raise ValueError("matrix is not a unitary monomial")
    return inv


def transpose_sign(m: GMat) -> int:
    """+1 if m is symmetric, -1 if antisymmetric, 0 otherwise."""
    if m.T == m:
        return 1
    if m.T == -m:
        return -1
    return 0


@dataclass
class ChargeConjugation:
    rep: GammaRep
    c: GMat
    c_inv: GMat
    delta0: int
    delta1: int
    twist: int | None = None
    base: GammaRep | None = None           # undoubled rep when twisted
    _delta_cache: dict = field(default_factory=dict, repr=False)
    _numeric: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    def pair(self, phi: GMat, psi: GMat) -> GQ:
        """C(phi, psi) = phi^T C psi."""
        return phi.dot(self.c @ psi)

    def delta_k(self, k: int, all_sets: bool = False) -> int:
        """Measured symmetry of C gamma^{(k)}; checks every index set if asked."""
        if not all_sets and k in self._delta_cache:
            return self._delta_cache[k]
        sets = list(index_sets(self.rep.D, k)) if all_sets else [tuple(range(k))]
        signs = {transpose_sign(self.c @ self.rep.gamma(I)) for I in sets}
        if len(signs) != 1 or 0 in signs:
            raise RuntimeError(f"inconsistent symmetry for degree {k}: {signs}")
        val = signs.pop()
        self._delta_cache[k] = val
        return val

    def delta_table(self) -> dict[int, int]:
        return {k: self.delta_k(k) for k in range(self.rep.D + 1)}

    def adjoint(self, phi):
        """Phi^C = C^{-1} Phi^T C, so that C(Phi^C eta, xi) = C(eta, Phi xi).

        Accepts exact matrices or complex NumPy arrays.
        """
        if phi.shape != self.c.shape:
            raise ValueError(f"dimension mismatch {phi.shape} vs {self.c.shape}")
        if isinstance(phi, np.ndarray):
            return self.c_inv_complex @ phi.T @ self.c_complex
        return self.c_inv @ phi.T @ self.c

    @property
    def c_complex(self) -> np.ndarray:
        if not self._numeric:
            self._numeric["c"] = self.c.to_complex()
            self._numeric["c_inv"] = self.c_inv.to_complex()
        return self._numeric["c"]

    @property
    def c_inv_complex(self) -> np.ndarray:
        self.c_complex
        return self._numeric["c_inv"]


def delta_closed_form(k: int, delta0: int, delta1: int) -> int:
    """(-)^{k(k-1)/2} Delta_0^{k+1} Delta_1^k."""
    return (-1) ** ((k * (k - 1) // 2) % 2) * delta0 ** (k + 1) * delta1 ** k


def candidate_conjugations(rep: GammaRep) -> list[ChargeConjugation]:
    """All realizable charge conjugations (one per intertwiner sign)."""
    out = []
    for sigma in (1, -1):
        c = solve_intertwiner(rep.gammas, sigma)
        if c is None:
            continue
        d0 = transpose_sign(c)
        if d0 == 0:
            raise RuntimeError("intertwiner is neither symmetric nor antisymmetric")
        out.append(ChargeConjugation(rep, c, monomial_inverse(c), d0, d0 * sigma))
    return out


def build_conjugation(rep: GammaRep, delta0: int, delta1: int | None = None) -> ChargeConjugation:
    """Charge conjugation with the requested Delta_0.

    When two conjugations share that Delta_0 they differ in Delta_1; the
    choice Delta_1 = +1 is taken unless ``delta1`` says otherwise.
    """
    cands = candidate_conjugations(rep)
    match = [c for c in cands if c.delta0 == delta0]
    if delta1 is not None:
        match = [c for c in match if c.delta1 == delta1]
    if not match:
        avail = sorted({(c.delta0, c.delta1) for c in cands})
        raise ConjugationUnavailable(
            f"(Delta_0={delta0}, Delta_1={delta1}) not realizable for signature "
            f"({rep.signature.t},{rep.signature.s}); realizable (Delta_0, Delta_1): {avail}")
    match.sort(key=lambda c: -c.delta1)
    return match[0]


def realizable_delta0(rep: GammaRep) -> list[int]:
    return sorted({c.delta0 for c in candidate_conjugations(rep)})


def twisted_conjugation(conj: ChargeConjugation, i: int) -> ChargeConjugation:
    """C (x) tau_i on the doubled bundle S (+) S."""
    tau = pauli_set().tau[i]
    eps = pauli_set().eps_k[i]
    rep2 = doubled(conj.rep)
    c2 = kron(conj.c, tau)
    return ChargeConjugation(rep2, c2, monomial_inverse(c2), conj.delta0 * eps, conj.delta1 * eps,
                             twist=i, base=conj.rep)


def adjoint_split(conj: ChargeConjugation) -> dict[int, int]:
    """Eigenvalue Delta_0 Delta_k of gamma^{(k)} under the charge adjoint, measured."""
    out = {}
    for k in range(conj.rep.D + 1):
        g = conj.rep.gamma(tuple(range(k)))
        a = conj.adjoint(g)
        out[k] = 1 if a == g else (-1 if a == -g else 0)
    return out


def star_adjoint_sign(conj: ChargeConjugation) -> int:
    """Sign lambda with (gamma*)^C = lambda gamma* (even D)."""
    star = conj.rep.star
    if star is None:
        raise ValueError("gamma* exists only in even dimension")
    a = conj.adjoint(star)
    return 1 if a == star else (-1 if a == -star else 0)


# Rows of the even-dimensional symmetry/chirality table, keyed by 2n mod 8.
# Entries: (Delta_{2m} pattern, Delta_{2m+1} pattern, chiral?) where a pattern
# is a fixed sign s meaning s*(-)^m, or None for the conjugation-dependent +-.
CHIRALITY_TABLE = {
    0: (1, None, False),
    2: (None, 1, True),
    4: (-1, None, False),
    6: (None, -1, True),
}


def symmetry_chirality_table(conj: ChargeConjugation) -> list[dict]:
    """Per degree: Delta_k and whether C_k pairs opposite chiralities."""
    rep = conj.rep
    if rep.D % 2:
        raise ValueError("symmetry/chirality table needs even dimension")
    lam = star_adjoint_sign(conj)
    chiral_c = lam == -1
    rows = []
    for k in range(rep.D + 1):
        rows.append({"k": k, "delta": conj.delta_k(k), "chiral": chiral_c ^ bool(k % 2)})
    return rows


def table_row_matches(conj: ChargeConjugation) -> tuple[bool, str]:
    """Compare measured data with the table row for this D mod 8."""
    D = conj.rep.D
    want_even, want_odd, want_chiral = CHIRALITY_TABLE[D % 8]
    rows = symmetry_chirality_table(conj)
    sign_even = {r["delta"] * (-1) ** (r["k"] // 2) for r in rows if r["k"] % 2 == 0}
    sign_odd = {r["delta"] * (-1) ** (r["k"] // 2) for r in rows if r["k"] % 2 == 1}
    problems = []
    if len(sign_even) != 1 or (want_even is not None and sign_even != {want_even}):
        problems.append(f"Delta_(2m) pattern {sorted(sign_even)}")
    if len(sign_odd) != 1 or (want_odd is not None and sign_odd != {want_odd}):
        problems.append(f"Delta_(2m+1) pattern {sorted(sign_odd)}")
    if rows[0]["chiral"] != want_chiral:
        problems.append(f"chirality {rows[0]['chiral']}")
    return (not problems, "; ".join(problems))


def parallel_span_check(conj: ChargeConjugation) -> tuple[set[int], set[int]]:
    """Degrees k with Delta_k Delta_0 = -1, measured and predicted."""
    D = conj.rep.D
    measured = {k for k in range(D + 1) if conj.delta_k(k) * conj.delta0 == -1}
    p = conj.delta0 * conj.delta1
    predicted = {k for k in range(D + 1) if k % 4 == 2 or (k + p) % 4 == 0}
    return measured, predicted
