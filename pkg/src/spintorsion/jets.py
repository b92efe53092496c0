"""Truncated multivariate Taylor jets for forward-mode differentiation.

A jet of order N stores the Taylor coefficients of a field around a base
point up to total degree N. Coefficients may be scalars or arrays (for
matrix-valued fields), so one jet carries the value together with every
partial derivative up to order N. Differentiation lowers the order by one.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _monomials(n: int, order: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of total degree <= order, sorted by degree."""
    out = []
    for deg in range(order + 1):
        for combo in itertools.combinations_with_replacement(range(n), deg):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return tuple(out)


@lru_cache(maxsize=None)
def _size(n: int, order: int) -> int:
    return math.comb(n + order, order)


@lru_cache(maxsize=None)
def _index(n: int, order: int) -> dict:
    return {m: k for k, m in enumerate(_monomials(n, order))}


@lru_cache(maxsize=None)
def _product_table(n: int, order: int):
    """Index triples (a, b, c) with mono[a] + mono[b] = mono[c], deg(c) <= order."""
    mons = _monomials(n, order)
    idx = _index(n, order)
    ia, ib, ic = [], [], []
    for a, ma in enumerate(mons):
        for b, mb in enumerate(mons):
            if sum(ma) + sum(mb) > order:
                continue
            ia.append(a)
            ib.append(b)
            ic.append(idx[tuple(x + y for x, y in zip(ma, mb))])
    return np.array(ia), np.array(ib), np.array(ic)


@lru_cache(maxsize=None)
def _derivative_table(n: int, order: int, i: int):
    """For d/dy_i: source index, target index and factor (result has order - 1)."""
    mons = _monomials(n, order)
    tgt = _index(n, order - 1)
    src, dst, fac = [], [], []
    for a, m in enumerate(mons):
        if m[i] == 0:
            continue
        lowered = list(m)
        lowered[i] -= 1
        src.append(a)
        dst.append(tgt[tuple(lowered)])
        fac.append(m[i])
    return np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64), np.array(fac, dtype=float)


class Jet:
    """Taylor jet in ``n`` variables truncated at ``order``."""

    __array_priority__ = 100

    def __init__(self, n: int, order: int, coef: np.ndarray):
        self.n = n
        self.order = order
        self.coef = coef
        if coef.shape[0] != _size(n, order):
            raise ValueError("coefficient count does not match (n, order)")

    # construction ---------------------------------------------------------
    @classmethod
    def constant(cls, n: int, order: int, value) -> "Jet":
        value = np.asarray(value, dtype=complex)
        coef = np.zeros((_size(n, order),) + value.shape, dtype=complex)
        coef[0] = value
        return cls(n, order, coef)

    @classmethod
    def variable(cls, n: int, order: int, i: int, at: float) -> "Jet":
        """The coordinate function y_i expanded around y_i = at."""
        coef = np.zeros(_size(n, order), dtype=complex)
        coef[0] = at
        if order >= 1:
            e = [0] * n
            e[i] = 1
            coef[_index(n, order)[tuple(e)]] = 1.0
        return cls(n, order, coef)

    @property
    def shape(self):
        return self.coef.shape[1:]

    @property
    def value(self):
        return self.coef[0]

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError("cannot raise the order of a jet")
        return Jet(self.n, order, self.coef[:_size(self.n, order)])

    def partial(self, index) -> complex | np.ndarray:
        """Partial derivative at the base point for a tuple of variable indices."""
        e = [0] * self.n
        for i in index:
            e[i] += 1
        k = _index(self.n, self.order)[tuple(e)]
        return self.coef[k] * math.prod(math.factorial(x) for x in e)

    def diff(self, i: int) -> "Jet":
        if self.order == 0:
            raise ValueError("order-0 jet carries no derivative")
        src, dst, fac = _derivative_table(self.n, self.order, i)
        out = np.zeros((_size(self.n, self.order - 1),) + self.shape, dtype=complex)
        fac = fac.reshape((-1,) + (1,) * len(self.shape))
        out[dst] = self.coef[src] * fac
        return Jet(self.n, self.order - 1, out)

    # arithmetic -----------------------------------------------------------
    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(self.n, self.order, other)

    def _common(self, other):
        other = self._lift(other)
        k = min(self.order, other.order)
        return self.truncate(k), other.truncate(k), k

    def __add__(self, other):
        a, b, k = self._common(other)
        return Jet(self.n, k, a.coef + b.coef)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.n, self.order, -self.coef)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def _product(self, other, op):
        a, b, k = self._common(other)
        ia, ib, ic = _product_table(self.n, k)
        terms = op(a.coef[ia], b.coef[ib])
        out = np.zeros((_size(self.n, k),) + terms.shape[1:], dtype=complex)
        np.add.at(out, ic, terms)
        return Jet(self.n, k, out)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            other = np.asarray(other)
            if other.ndim == 0:
                return Jet(self.n, self.order, self.coef * complex(other))
            # scalar jet times constant array
            return Jet(self.n, self.order,
                       self.coef.reshape(self.coef.shape + (1,) * other.ndim) * other)

        def op(x, y):
            if x.ndim == 1 and y.ndim > 1:
                x = x.reshape(x.shape + (1,) * (y.ndim - 1))
            elif y.ndim == 1 and x.ndim > 1:
                y = y.reshape(y.shape + (1,) * (x.ndim - 1))
            return x * y

        return self._product(other, op)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.n, self.order, self.coef @ np.asarray(other))
        return self._product(other, np.matmul)

    def __rmatmul__(self, other):
        return Jet(self.n, self.order, np.asarray(other) @ self.coef)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def _series(self, coeffs):
        """sum_k coeffs[k] h^k with h the nilpotent part of a scalar jet."""
        h = Jet(self.n, self.order, self.coef.copy())
        h.coef[0] = 0
        out = Jet.constant(self.n, self.order, coeffs[0])
        power = Jet.constant(self.n, self.order, 1.0)
        for c in coeffs[1:]:
            power = power * h
            out = out + power * c
        return out

    def exp(self) -> "Jet":
        c0 = self.coef[0]
        return self._series([np.exp(c0) / math.factorial(k) for k in range(self.order + 1)])

    def log(self) -> "Jet":
        c0 = self.coef[0]
        return self._series([np.log(c0)] + [(-1) ** (k + 1) / (k * c0 ** k) for k in range(1, self.order + 1)])

    def reciprocal(self) -> "Jet":
        c0 = self.coef[0]
        return self._series([(-1) ** k / c0 ** (k + 1) for k in range(self.order + 1)])

    def __pow__(self, p):
        return (self.log() * p).exp()

    def adjoint_map(self, fn) -> "Jet":
        """Apply a linear map coefficient-wise."""
        return Jet(self.n, self.order, np.stack([fn(c) for c in self.coef]))


def variables(n: int, order: int, at) -> list[Jet]:
    return [Jet.variable(n, order, i, float(at[i])) for i in range(n)]


def commutator(a: Jet, b: Jet) -> Jet:
    return a @ b - b @ a
