"""Gamma-matrix representations of Clifford algebras and their identities.

Conventions: ``XY + YX = -2 g(X, Y)`` with the orthonormal metric
``diag(-1 (t times), +1 (s times))``, timelike labels first and frame labels
``0 .. D-1``. Antisymmetrization carries weight ``1/k!``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _backend
from .exact import GMat, GQ, anticommutator, kron

MAX_DIM = 12


class UnsupportedDimension(ValueError):
    """Dimension outside the supported range ``1 <= D <= 12``."""


@dataclass(frozen=True)
class Signature:
    t: int
    s: int

    def __post_init__(self):
        if self.t < 0 or self.s < 0:
            raise UnsupportedDimension("t and s must be non-negative")
        if not 1 <= self.t + self.s <= MAX_DIM:
            raise UnsupportedDimension(f"D = {self.t + self.s} outside 1..{MAX_DIM}")

    @property
    def D(self) -> int:
        return self.t + self.s

    def g(self, mu: int) -> int:
        """Diagonal metric entry g_{mu mu} (equal to g^{mu mu})."""
        return -1 if mu < self.t else 1

    @property
    def metric(self) -> tuple[int, ...]:
        return tuple(self.g(mu) for mu in range(self.D))

    @classmethod
    def parse(cls, text: str) -> "Signature":
        t, s = (int(x) for x in text.split(","))
        return cls(t, s)


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq``; 0 if it has repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class MultiIndex:
    """Strictly increasing tuple of frame labels."""

    labels: tuple[int, ...]

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.labels, self.labels[1:])):
            raise ValueError(f"labels {self.labels} not strictly increasing")

    @classmethod
    def canonical(cls, labels) -> tuple[int, "MultiIndex | None"]:
        """Return ``(sign, sorted index)``; ``(0, None)`` for repeated labels."""
        sign = perm_sign(labels)
        if sign == 0:
            return 0, None
        return sign, cls(tuple(sorted(labels)))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def complement(self, D: int) -> "MultiIndex":
        return MultiIndex(tuple(x for x in range(D) if x not in self.labels))


def index_sets(D: int, k: int):
    """All strictly increasing k-index tuples in ``0..D-1``."""
    return itertools.combinations(range(D), k)


# 2x2 building blocks as monomial data: rows[j] is the row of column j's
# nonzero entry and phase[j] its power of i.
_BLOCKS = {
    "I": ([0, 1], [0, 0]),
    "X": ([1, 0], [0, 0]),
    "Y": ([1, 0], [1, 3]),   # [[0, -i], [i, 0]]
    "Z": ([0, 1], [0, 2]),
}


def _monomial_kron(factors):
    rows = np.zeros(1, dtype=np.int64)
    phase = np.zeros(1, dtype=np.int64)
    for name in factors:
        br, bp = (np.array(x, dtype=np.int64) for x in _BLOCKS[name])
        rows = (rows[:, None] * 2 + br[None, :]).reshape(-1)
        phase = ((phase[:, None] + bp[None, :]) & 3).reshape(-1)
    return rows, phase


_PHASE_RE = np.array([1, 0, -1, 0], dtype=np.int64)
_PHASE_IM = np.array([0, 1, 0, -1], dtype=np.int64)


def monomial_to_gmat(rows, phase) -> GMat:
    n = len(rows)
    re = np.zeros((n, n), dtype=np.int64)
    im = np.zeros((n, n), dtype=np.int64)
    cols = np.arange(n)
    re[rows, cols] = _PHASE_RE[phase]
    im[rows, cols] = _PHASE_IM[phase]
    return GMat(re, im, normalize=False)


@dataclass
class GammaRep:
    """Concrete gamma matrices for a signature, with cached index products."""

    signature: Signature
    dim_s: int
    mono_rows: np.ndarray          # (D, dim_s) monomial structure of the generators
    mono_phase: np.ndarray
    gammas: list[GMat]
    vol: GMat                      # gamma^{[D]} = gamma^0 ... gamma^{D-1}
    star: GMat | None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def D(self) -> int:
        return self.signature.D

    def g(self, mu: int) -> int:
        return self.signature.g(mu)

    def identity(self) -> GMat:
        return GMat.eye(self.dim_s)

    def zero(self) -> GMat:
        return GMat.zeros((self.dim_s, self.dim_s))

    def ordered_product(self, labels) -> GMat:
        """Plain product gamma_{l1} ... gamma_{lk} (lower indices)."""
        labels = tuple(labels)
        if not labels:
            return self.identity()
        rows, phase = _backend.monomial_chain(
            np.ascontiguousarray(self.mono_rows[list(labels)]),
            np.ascontiguousarray(self.mono_phase[list(labels)]))
        return monomial_to_gmat(rows, phase)

    def gamma(self, labels, upper: bool = False) -> GMat:
        """Antisymmetrized product gamma_{[l1 ... lk]} (or with raised indices)."""
        sign, idx = MultiIndex.canonical(labels)
        if sign == 0:
            return self.zero()
        key = idx.labels
        mat = self._cache.get(key)
        if mat is None:
            mat = self.ordered_product(key)
            self._cache[key] = mat
        if upper:
            sign *= math.prod(self.g(mu) for mu in key)
        return mat if sign == 1 else -mat

    def basis(self, k: int, upper: bool = False):
        """Pairs ``(labels, gamma)`` over all increasing k-index sets."""
        for labels in index_sets(self.D, k):
            yield labels, self.gamma(labels, upper)

    def monomial_basis(self, k: int):
        """Stacked monomial data for all increasing k-index sets.

        Returns ``(labels, rows, phase, upper_sign)`` where gamma_I has its
        column-j entry ``i**phase[I, j]`` at row ``rows[I, j]``.
        """
        key = ("mono", k)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        labels = list(index_sets(self.D, k))
        rows = np.empty((len(labels), self.dim_s), dtype=np.int64)
        phase = np.empty((len(labels), self.dim_s), dtype=np.int64)
        for a, I in enumerate(labels):
            if I:
                r, p = _backend.monomial_chain(np.ascontiguousarray(self.mono_rows[list(I)]),
                                               np.ascontiguousarray(self.mono_phase[list(I)]))
            else:
                r, p = np.arange(self.dim_s), np.zeros(self.dim_s, dtype=np.int64)
            rows[a], phase[a] = r, p
        upper = np.array([math.prod(self.g(mu) for mu in I) for I in labels], dtype=np.int64)
        out = (labels, rows, phase, upper)
        self._cache[key] = out
        return out

    def _label_index(self, k: int) -> dict:
        key = ("monoidx", k)
        hit = self._cache.get(key)
        if hit is None:
            hit = {I: a for a, I in enumerate(self.monomial_basis(k)[0])}
            self._cache[key] = hit
        return hit

    def mixed_gamma(self, lower, upper) -> GMat:
        """Total antisymmetrization of lower labels followed by raised labels."""
        sign = math.prod(self.g(mu) for mu in upper)
        m = self.gamma(tuple(lower) + tuple(upper))
        return m if sign == 1 else -m


def gamma_combination(rep: GammaRep, coeffs, upper: bool = False) -> GMat:
    """Exact sum of ``c * gamma_labels`` over ``(labels, c)`` pairs.

    Labels need not be sorted; repeated labels contribute nothing.
    Accumulates through the monomial structure instead of dense products.
    """
    items = []
    den = 1
    for labels, c in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
        sign, idx = MultiIndex.canonical(labels)
        q = GQ.coerce(c)
        if sign == 0 or not q:
            continue
        if upper:
            sign *= math.prod(rep.g(mu) for mu in idx.labels)
        items.append((idx.labels, q * sign))
        den = math.lcm(den, q.re.denominator, q.im.denominator)
    d = rep.dim_s
    re = np.zeros(d * d, dtype=object)
    im = np.zeros(d * d, dtype=object)
    by_degree: dict[int, list] = {}
    for labels, q in items:
        by_degree.setdefault(len(labels), []).append((labels, q))
    cols = np.arange(d)
    for k, group in by_degree.items():
        _, rows, phase, _ = rep.monomial_basis(k)
        pos = rep._label_index(k)
        sel = np.array([pos[labels] for labels, _ in group])
        a = np.array([int(q.re * den) for _, q in group], dtype=object)[:, None]
        b = np.array([int(q.im * den) for _, q in group], dtype=object)[:, None]
        pr, pi = _PHASE_RE[phase[sel]].astype(object), _PHASE_IM[phase[sel]].astype(object)
        flat = (rows[sel] * d + cols[None, :]).ravel()
        np.add.at(re, flat, (a * pr - b * pi).ravel())
        np.add.at(im, flat, (a * pi + b * pr).ravel())
    return GMat(re.reshape(d, d), im.reshape(d, d), den)


def build_gamma(signature: Signature) -> GammaRep:
    """Tensor-product representation; entries lie in {0, +-1, +-i}."""
    D = signature.D
    n = D // 2
    dim_s = 2 ** n
    factors = []
    for k in range(n):
        pad = ["I"] * (n - k - 1)
        factors.append(["Z"] * k + ["X"] + pad)
        factors.append(["Z"] * k + ["Y"] + pad)
    if D % 2:
        factors.append(["Z"] * n)
    rows = np.zeros((D, dim_s), dtype=np.int64)
    phase = np.zeros((D, dim_s), dtype=np.int64)
    for mu, f in enumerate(factors):
        r, p = _monomial_kron(f)
        if signature.g(mu) == 1:      # spacelike: multiply by i so the square is -Id
            p = (p + 1) & 3
        rows[mu], phase[mu] = r, p
    gammas = [monomial_to_gmat(rows[mu], phase[mu]) for mu in range(D)]
    rep = GammaRep(signature, dim_s, rows, phase, gammas, None, None)  # type: ignore[arg-type]
    vol = rep.gamma(tuple(range(D)), upper=True)
    rep.vol = vol
    if D % 2 == 0:
        sq = vol @ vol
        rep.star = vol if sq == rep.identity() else vol.scale(GQ(0, 1))
    return rep


def volume_square_sign(signature: Signature) -> int:
    """Predicted sign of (gamma^{[D]})^2."""
    D = signature.D
    return (-1) ** ((D * (D + 1) // 2 + signature.t) % 2)


def check_anticommutators(rep: GammaRep) -> list[tuple[int, int]]:
    """Pairs (mu, nu) violating gamma_mu gamma_nu + gamma_nu gamma_mu = -2 g_{mu nu}."""
    bad = []
    ident = rep.identity()
    for mu in range(rep.D):
        for nu in range(mu, rep.D):
            ac = anticommutator(rep.gammas[mu], rep.gammas[nu])
            want = ident.scale(-2 * rep.g(mu)) if mu == nu else rep.zero()
            if ac != want:
                bad.append((mu, nu))
    return bad


def antisym_gamma(rep: GammaRep, labels) -> GMat:
    """gamma_{[mu_1 ... mu_k]} with weight 1/k!; zero for repeated labels."""
    return rep.gamma(tuple(labels))


def antisym_gamma_bruteforce(rep: GammaRep, labels) -> GMat:
    """Literal (1/k!) sum over permutations, used as an oracle."""
    labels = tuple(labels)
    k = len(labels)
    total = rep.zero()
    for perm in itertools.permutations(range(k)):
        sign = perm_sign(perm)
        prod = rep.identity()
        for p in perm:
            prod = prod @ rep.gammas[labels[p]]
        total = total + prod if sign == 1 else total - prod
    return total.scale(Fraction(1, math.factorial(k)))


def _split_sign(seq, chosen) -> int:
    """Sign of the permutation taking ``seq`` to (chosen in order, rest in order)."""
    rest = [x for x in seq if x not in chosen]
    target = list(chosen) + rest
    pos = {v: i for i, v in enumerate(target)}
    return perm_sign([pos[v] for v in seq])


def product_expand(rep: GammaRep, lower, upper) -> GMat:
    """Contraction expansion of gamma_{mu_1..mu_k} gamma^{nu_1..nu_l}.

    Sums over the number m of contracted pairs with sign
    ``(-)^{m(m-2k-1)/2}``; the combinatorial prefactor cancels against the
    orderings produced by the two antisymmetrizations.
    """
    lower, upper = tuple(lower), tuple(upper)
    if perm_sign(lower) == 0 or perm_sign(upper) == 0:
        return rep.zero()
    k = len(lower)
    common = sorted(set(lower) & set(upper))
    total = rep.zero()
    for m in range(0, min(len(common), k, len(upper)) + 1):
        msign = (-1) ** ((m * (m - 2 * k - 1) // 2) % 2)
        for chosen in itertools.combinations(common, m):
            s = msign * _split_sign(lower, chosen) * _split_sign(upper, chosen)
            rest_l = [x for x in lower if x not in chosen]
            rest_u = [x for x in upper if x not in chosen]
            term = rep.mixed_gamma(rest_l, rest_u)
            total = total + term if s == 1 else total - term
    return total


def product_expand_literal(rep: GammaRep, lower, upper) -> GMat:
    """Expansion evaluated term by term with the factorial coefficients and
    explicit sums over orderings of the contracted indices (slow oracle)."""
    lower, upper = tuple(lower), tuple(upper)
    k, l = len(lower), len(upper)
    total = rep.zero()
    for m in range(0, min(k, l) + 1):
        coeff = Fraction((-1) ** ((m * (m - 2 * k - 1) // 2) % 2) * math.factorial(k) * math.factorial(l),
                         math.factorial(m) * math.factorial(k - m) * math.factorial(l - m))
        acc = rep.zero()
        for sp in itertools.permutations(range(k)):
            mu = [lower[i] for i in sp]
            for tp in itertools.permutations(range(l)):
                nu = [upper[i] for i in tp]
                if any(mu[i] != nu[i] for i in range(m)):
                    continue
                sgn = perm_sign(sp) * perm_sign(tp)
                term = rep.mixed_gamma(mu[m:], nu[m:])
                acc = acc + term if sgn == 1 else acc - term
        total = total + acc.scale(coeff * Fraction(1, math.factorial(k) * math.factorial(l)))
    return total


def levi_civita_lower(signature: Signature, labels) -> int:
    """epsilon_{mu_1 .. mu_D} with all indices down.

    The tensor is normalized by epsilon^{0..D-1} = +1, so lowering all
    indices contributes det g = (-1)^t.
    """
    return perm_sign(labels) * (-1) ** signature.t


def duality_map(rep: GammaRep, labels) -> GMat:
    """Right-hand side of the Hodge-type duality for gamma_{mu_1..mu_k}.

    ``(1/(D-k)!) (-)^{k(k+1)/2} (-)^{D(D+1)/2} eps_{mu..} gamma^{mu_{k+1}..mu_D} gamma^{[D]}``;
    the sum over orderings of the complementary indices collapses to one term.
    """
    labels = tuple(labels)
    D, k = rep.D, len(labels)
    if perm_sign(labels) == 0:
        return rep.zero()
    comp = tuple(x for x in range(D) if x not in labels)
    sign = (-1) ** ((k * (k + 1) // 2 + D * (D + 1) // 2) % 2)
    sign *= levi_civita_lower(rep.signature, labels + comp)
    out = rep.gamma(comp, upper=True) @ rep.vol
    return out if sign == 1 else -out


# ----------------------------------------------------------------------------
# modified Pauli matrices

@dataclass(frozen=True)
class PauliSet:
    tau: tuple[GMat, GMat, GMat, GMat]
    eps_ik: tuple[tuple[int, ...], ...]
    eps_k: tuple[int, ...]


EPS_IK = ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1))
EPS_K = (1, 1, -1, 1)


def pauli_set() -> PauliSet:
    tau = (
        GMat(np.array([[1, 0], [0, 1]])),
        GMat(np.array([[0, 1], [1, 0]])),
        GMat(np.array([[0, 1], [-1, 0]])),
        GMat(np.array([[1, 0], [0, -1]])),
    )
    return PauliSet(tau, EPS_IK, EPS_K)


def measured_pauli_signs(ps: PauliSet):
    """Sign tables recomputed from the matrices themselves."""
    eps_ik = tuple(tuple(1 if ps.tau[i] @ ps.tau[k] == ps.tau[k] @ ps.tau[i] else -1 for k in range(4))
                   for i in range(4))
    eps_k = tuple(1 if ps.tau[k].T == ps.tau[k] else -1 for k in range(4))
    return eps_ik, eps_k


def doubled(rep: GammaRep) -> GammaRep:
    """Representation on S (+) S = S tensor C^2 with generators gamma_mu x Id."""
    i2 = GMat.eye(2)
    n = rep.dim_s
    rows = np.concatenate([rep.mono_rows * 2, rep.mono_rows * 2 + 1], axis=1)
    phase = np.concatenate([rep.mono_phase, rep.mono_phase], axis=1)
    order = np.argsort(np.concatenate([np.arange(n) * 2, np.arange(n) * 2 + 1]))
    rows, phase = rows[:, order], phase[:, order]
    gammas = [kron(g, i2) for g in rep.gammas]
    out = GammaRep(rep.signature, 2 * n, np.ascontiguousarray(rows), np.ascontiguousarray(phase),
                   gammas, kron(rep.vol, i2), None if rep.star is None else kron(rep.star, i2))
    return out
