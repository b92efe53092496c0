"""Exact Gaussian-rational scalars and matrices.

Matrices are stored as integer numerator arrays ``re`` and ``im`` over one
positive integer denominator. Numerators live in ``int64`` while the entries
stay small and move to Python integers (``object`` dtype) when a product
could overflow, so results are always exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import _backend

_LIMIT = 1 << 62


class GQ:
    """Gaussian rational ``re + i*im`` with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GQ":
        if isinstance(x, GQ):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x, 0)
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise TypeError(f"non-integral complex scalar {x!r}")
            return cls(int(x.real), int(x.imag))
        if isinstance(x, (np.integer,)):
            return cls(int(x), 0)
        raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")

    def __add__(self, other):
        o = GQ.coerce(other)
        return GQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GQ.coerce(other)
        return GQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GQ.coerce(other) - self

    def __neg__(self):
        return GQ(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GMat):
            return other.scale(self)
        o = GQ.coerce(other)
        return GQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GQ.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GQ(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GQ.coerce(other) / self

    def conjugate(self):
        return GQ(self.re, -self.im)

    def __eq__(self, other):
        try:
            o = GQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"GQ({self.re})"
        return f"GQ({self.re}, {self.im})"


def _absmax(a) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def _as_object(a):
    return a if a.dtype == object else a.astype(object)


def _shrink(a):
    if a.dtype == object and _absmax(a) < _LIMIT:
        return a.astype(np.int64)
    return a


def _gcd_all(a) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return math.gcd(*(int(v) for v in a.ravel()))
    return int(np.gcd.reduce(a.ravel()))


class GMat:
    """Array of Gaussian rationals ``(re + i*im) / den`` (vector or matrix)."""

    __slots__ = ("re", "im", "den")
    __array_priority__ = 1000

    def __init__(self, re, im=None, den=1, normalize=True):
        re = np.asarray(re)
        if re.dtype != object:
            re = re.astype(np.int64)
        im = np.zeros_like(re) if im is None else np.asarray(im)
        if im.dtype != object:
            im = im.astype(np.int64)
        if re.dtype != im.dtype:
            re, im = _as_object(re), _as_object(im)
        den = int(den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.re, self.im, self.den = re, im, den
        if normalize:
            self._normalize()

    def _normalize(self):
        if self.den != 1:
            g = math.gcd(self.den, _gcd_all(self.re), _gcd_all(self.im))
            if g > 1:
                self.re = self.re // g
                self.im = self.im // g
                self.den //= g
        self.re = _shrink(self.re)
        self.im = _shrink(self.im)
        if self.re.dtype != self.im.dtype:
            self.re, self.im = _as_object(self.re), _as_object(self.im)

    # construction -----------------------------------------------------
    @classmethod
    def zeros(cls, shape) -> "GMat":
        return cls(np.zeros(shape, dtype=np.int64))

    @classmethod
    def eye(cls, n: int) -> "GMat":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def from_complex(cls, arr) -> "GMat":
        """From an array of Gaussian integers given as Python/NumPy complex."""
        arr = np.asarray(arr, dtype=complex)
        re, im = np.rint(arr.real), np.rint(arr.imag)
        if not (np.array_equal(re, arr.real) and np.array_equal(im, arr.imag)):
            raise ValueError("entries are not Gaussian integers")
        return cls(re.astype(np.int64), im.astype(np.int64))

    @classmethod
    def from_entries(cls, rows) -> "GMat":
        """From nested lists of exact scalars (int, Fraction, GQ, integral complex)."""
        shape = np.shape(rows)
        items = list(np.asarray(rows, dtype=object).reshape(-1))
        vals = [GQ.coerce(x) for x in items]
        den = 1
        for v in vals:
            den = math.lcm(den, v.re.denominator, v.im.denominator)
        re = np.empty(len(vals), dtype=object)
        im = np.empty(len(vals), dtype=object)
        for k, v in enumerate(vals):
            re[k] = int(v.re * den)
            im[k] = int(v.im * den)
        return cls(re.reshape(shape), im.reshape(shape), den)

    # basic protocol ---------------------------------------------------
    @property
    def shape(self):
        return self.re.shape

    def __len__(self):
        return self.re.shape[0]

    def copy(self) -> "GMat":
        return GMat(self.re.copy(), self.im.copy(), self.den, normalize=False)

    @property
    def T(self) -> "GMat":
        return GMat(self.re.T.copy(), self.im.T.copy(), self.den, normalize=False)

    def conj(self) -> "GMat":
        return GMat(self.re.copy(), -self.im, self.den, normalize=False)

    def __getitem__(self, key):
        re, im = self.re[key], self.im[key]
        if np.ndim(re) == 0:
            return GQ(Fraction(int(re), self.den), Fraction(int(im), self.den))
        return GMat(np.array(re), np.array(im), self.den)

    def entry(self, *idx) -> GQ:
        return GQ(Fraction(int(self.re[idx]), self.den), Fraction(int(self.im[idx]), self.den))

    def is_zero(self) -> bool:
        return not (self.re.any() or self.im.any())

    def __eq__(self, other):
        if not isinstance(other, GMat):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def to_complex(self) -> np.ndarray:
        re = self.re.astype(float) if self.re.dtype != object else np.array(
            [float(Fraction(int(v), 1)) for v in self.re.ravel()]).reshape(self.shape)
        im = self.im.astype(float) if self.im.dtype != object else np.array(
            [float(Fraction(int(v), 1)) for v in self.im.ravel()]).reshape(self.shape)
        return (re + 1j * im) / self.den

    def max_abs_num(self) -> int:
        return max(_absmax(self.re), _absmax(self.im))

    # arithmetic -------------------------------------------------------
    def _aligned(self, other: "GMat"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        den = math.lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        bound = max(self.max_abs_num() * fa, other.max_abs_num() * fb) * 2
        ar, ai, br, bi = self.re, self.im, other.re, other.im
        if bound >= _LIMIT:
            ar, ai, br, bi = map(_as_object, (ar, ai, br, bi))
        if fa != 1:
            ar, ai = ar * fa, ai * fa
        if fb != 1:
            br, bi = br * fb, bi * fb
        return ar, ai, br, bi, den

    def __add__(self, other):
        if not isinstance(other, GMat):
            return NotImplemented
        ar, ai, br, bi, den = self._aligned(other)
        return GMat(ar + br, ai + bi, den)

    def __sub__(self, other):
        if not isinstance(other, GMat):
            return NotImplemented
        ar, ai, br, bi, den = self._aligned(other)
        return GMat(ar - br, ai - bi, den)

    def __neg__(self):
        return GMat(-self.re, -self.im, self.den, normalize=False)

    def scale(self, q) -> "GMat":
        q = GQ.coerce(q)
        d = math.lcm(q.re.denominator, q.im.denominator)
        p, r = int(q.re * d), int(q.im * d)
        bound = self.max_abs_num() * (abs(p) + abs(r)) * 2
        re, im = self.re, self.im
        if bound >= _LIMIT:
            re, im = _as_object(re), _as_object(im)
        return GMat(re * p - im * r, re * r + im * p, self.den * d)

    def __mul__(self, q):
        if isinstance(q, GMat):
            return NotImplemented
        return self.scale(q)

    __rmul__ = __mul__

    def __truediv__(self, q):
        return self.scale(GQ(1) / GQ.coerce(q))

    def __matmul__(self, other):
        if not isinstance(other, GMat):
            return NotImplemented
        inner = self.shape[-1]
        bound = 2 * max(inner, 1) * self.max_abs_num() * other.max_abs_num()
        den = self.den * other.den
        ar, ai, br, bi = self.re, self.im, other.re, other.im
        if bound >= _LIMIT or ar.dtype == object or br.dtype == object:
            ar, ai, br, bi = map(_as_object, (ar, ai, br, bi))
            return GMat(ar @ br - ai @ bi, ar @ bi + ai @ br, den)
        if ar.ndim == 2 and br.ndim == 2:
            cr, ci = _backend.gauss_matmul(np.ascontiguousarray(ar), np.ascontiguousarray(ai),
                                           np.ascontiguousarray(br), np.ascontiguousarray(bi))
            return GMat(cr, ci, den)
        return GMat(ar @ br - ai @ bi, ar @ bi + ai @ br, den)

    def trace(self) -> GQ:
        return GQ(Fraction(int(np.trace(self.re)), self.den), Fraction(int(np.trace(self.im)), self.den))

    def dot(self, other: "GMat") -> GQ:
        """Bilinear (not Hermitian) contraction of two equal-shape arrays."""
        ar, ai, br, bi, den = self._aligned(other)
        re = int((ar * br - ai * bi).sum())
        im = int((ar * bi + ai * br).sum())
        return GQ(Fraction(re, den * den), Fraction(im, den * den))

    def outer(self, other: "GMat") -> "GMat":
        a = self.re.reshape(-1, 1), self.im.reshape(-1, 1)
        b = other.re.reshape(1, -1), other.im.reshape(1, -1)
        return GMat(a[0], a[1], self.den) @ GMat(b[0], b[1], other.den)

    def __repr__(self):
        return f"GMat(shape={self.shape}, den={self.den})"


def kron(a: GMat, b: GMat) -> GMat:
    re = np.kron(a.re, b.re) - np.kron(a.im, b.im)
    im = np.kron(a.re, b.im) + np.kron(a.im, b.re)
    return GMat(re, im, a.den * b.den)


def gsum(items, shape=None) -> GMat:
    """Sum of an iterable of GMat values (zero of ``shape`` if empty)."""
    total = None
    for x in items:
        total = x if total is None else total + x
    if total is None:
        if shape is None:
            raise ValueError("empty sum needs a shape")
        return GMat.zeros(shape)
    return total


def commutator(a: GMat, b: GMat) -> GMat:
    return a @ b - b @ a


def anticommutator(a: GMat, b: GMat) -> GMat:
    return a @ b + b @ a


def nullspace(m: GMat) -> list[GMat]:
    """Exact right nullspace basis of a Gaussian-rational matrix."""
    from sympy import I, Rational as SRational
    from sympy.polys.domains import QQ_I
    from sympy.polys.matrices import DomainMatrix

    rows, cols = m.shape
    entries = [[(SRational(int(m.re[i, j]), m.den) + I * SRational(int(m.im[i, j]), m.den))
                for j in range(cols)] for i in range(rows)]
    dm = DomainMatrix([[QQ_I.from_sympy(e) for e in row] for row in entries], (rows, cols), QQ_I)
    ns = dm.nullspace()
    basis = []
    for row in ns.to_Matrix().tolist():
        vals = []
        for e in row:
            re, im = e.as_real_imag()
            vals.append(GQ(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))))
        basis.append(GMat.from_entries(vals))
    return basis


def rank(m: GMat) -> int:
    from sympy.polys.domains import QQ_I
    from sympy.polys.matrices import DomainMatrix
    from sympy import I, Rational as SRational

    rows, cols = m.shape
    dm = DomainMatrix([[QQ_I.from_sympy(SRational(int(m.re[i, j]), m.den) + I * SRational(int(m.im[i, j]), m.den))
                        for j in range(cols)] for i in range(rows)], (rows, cols), QQ_I)
    return dm.rank()


_UNIT_RE = np.array([1, 0, -1, 0], dtype=np.int64)
_UNIT_IM = np.array([0, 1, 0, -1], dtype=np.int64)


def _unit_times(re, im, phase):
    # (re + i im) * i^phase, elementwise with broadcasting
    ur, ui = _UNIT_RE[phase], _UNIT_IM[phase]
    return re * ur - im * ui, re * ui + im * ur


def monomial_data(m: GMat):
    """Row index and power of i per column of a monomial unit matrix."""
    if m.den != 1:
        raise ValueError("expected integral monomial matrix")
    nz = (m.re != 0) | (m.im != 0)
    if not (nz.sum(axis=0) == 1).all():
        raise ValueError("matrix is not monomial")
    rows = nz.argmax(axis=0)
    cols = np.arange(m.shape[0])
    re, im = m.re[rows, cols], m.im[rows, cols]
    phase = np.select([(re == 1), (im == 1), (re == -1), (im == -1)], [0, 1, 2, 3], default=-1)
    if (phase < 0).any():
        raise ValueError("monomial entries must be units")
    return rows, phase


def mono_right(a: GMat, mono) -> GMat:
    """a @ M for a monomial M given as (rows, phase)."""
    rows, phase = mono
    re, im = _unit_times(a.re[:, rows], a.im[:, rows], phase[None, :])
    return GMat(re, im, a.den, normalize=False)


def mono_left(mono, a: GMat) -> GMat:
    """M @ a for a monomial M given as (rows, phase)."""
    rows, phase = mono
    re, im = _unit_times(a.re, a.im, phase[:, None])
    out_re = np.empty_like(re)
    out_im = np.empty_like(im)
    out_re[rows] = re
    out_im[rows] = im
    return GMat(out_re, out_im, a.den, normalize=False)
