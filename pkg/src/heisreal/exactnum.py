"""Exact scalars: rationals, Gaussian rationals and the Bernoulli series.

Rationals are ``gmpy2.mpq`` values (arbitrary precision, always reduced with
a positive denominator).  :class:`GaussianRational` pairs two of them and is
the coefficient field used by every polynomial in the package.
"""
from __future__ import annotations

import re
import threading
from fractions import Fraction
from math import comb, factorial

from gmpy2 import mpq, mpz

Rational = type(mpq(0))

_MPZ = type(mpz(0))
_ZERO = mpq(0)
_ONE = mpq(1)


def to_rational(value) -> Rational:
    """Coerce ``int``, ``Fraction``, ``mpq`` or an ``"a/b"`` string to mpq."""
    if type(value) is Rational:
        return value
    if isinstance(value, (int, _MPZ)):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        s = value.strip()
        if not _RATIONAL_RE.fullmatch(s):
            raise ValueError(f"not an exact rational: {value!r}")
        return mpq(s)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(q) -> str:
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", to_rational(re))
        object.__setattr__(self, "im", to_rational(im))

    @classmethod
    def _make(cls, re, im):
        # trusted constructor: both parts already mpq
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (format_rational(self.re), format_rational(self.im)))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if type(value) is cls:
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        if isinstance(value, complex):
            raise TypeError("complex floats are not accepted")
        return cls._make(to_rational(value), _ZERO)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if type(other) is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if type(other) is int:
            return GaussianRational._make(self.re * other, self.im * other)
        if type(other) is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, _ZERO)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._make(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    # comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if type(other) is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"


ZERO = GaussianRational._make(_ZERO, _ZERO)
ONE = GaussianRational._make(_ONE, _ZERO)
I = GaussianRational._make(_ZERO, _ONE)


def format_scalar(z: GaussianRational) -> str:
    """Render as ``"a/b"``, ``"c/d*i"`` or ``"a/b+c/d*i"``."""
    if not z.im:
        return format_rational(z.re)
    im = format_rational(z.im)
    if not z.re:
        return f"{im}*i"
    sign = "+" if z.im > 0 else ""
    return f"{format_rational(z.re)}{sign}{im}*i"


_NUM = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"(?P<re>{_NUM})?(?:(?P<im>{_NUM}|[+-])?\*?i)?"
)
_IMAG_RE = re.compile(rf"(?P<im>{_NUM}|[+-])?\*?i")


def parse_scalar(text: str) -> GaussianRational:
    """Inverse of :func:`format_scalar`; also accepts ``"i"`` and ``"-i"``."""
    s = text.replace(" ", "")
    # a bare imaginary part would otherwise be read as a real part
    m = _IMAG_RE.fullmatch(s) or _SCALAR_RE.fullmatch(s)
    if not s or m is None or (m.groupdict().get("re") is None and "i" not in s):
        raise ValueError(f"not an exact Gaussian rational: {text!r}")
    re_part = mpq(m.group("re").lstrip("+")) if m.groupdict().get("re") else _ZERO
    im_text = m.group("im")
    if "i" not in s:
        im_part = _ZERO
    elif im_text in (None, "+"):
        im_part = _ONE
    elif im_text == "-":
        im_part = -_ONE
    else:
        im_part = mpq(im_text.lstrip("+"))
    return GaussianRational._make(re_part, im_part)


# Bernoulli numbers and the psi series ---------------------------------------

_bern_lock = threading.Lock()
_bern_cache: list = [_ONE]


def bernoulli(k: int) -> Rational:
    """B_k with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    with _bern_lock:
        while len(_bern_cache) <= k:
            m = len(_bern_cache)
            acc = sum((comb(m + 1, j) * _bern_cache[j] for j in range(m)), _ZERO)
            _bern_cache.append(-acc / (m + 1))
        return _bern_cache[k]


def psi_coeff(k: int) -> Rational:
    """k-th Taylor coefficient of t/(1 - exp(-t)), i.e. (-1)^k B_k / k!."""
    sign = -1 if k % 2 else 1
    return sign * bernoulli(k) / factorial(k)


def psi_inv_coeff(k: int) -> Rational:
    """k-th Taylor coefficient of (1 - exp(-t))/t, i.e. (-1)^k / (k+1)!."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return mpq(-1 if k % 2 else 1, factorial(k + 1))


# truncated power series in one variable (lists of coefficients) ------------

def series_mul(a, b, order: int):
    out = [ZERO] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[: order + 1 - i]):
            out[i + j] = out[i + j] + ai * bj
    return out


def series_inverse(a, order: int):
    """Reciprocal of a power series with invertible constant term."""
    a = [GaussianRational.coerce(c) for c in a] + [ZERO] * (order + 1)
    if not a[0]:
        raise ZeroDivisionError("series has zero constant term")
    inv0 = a[0].inverse()
    out = [inv0]
    for k in range(1, order + 1):
        acc = ZERO
        for j in range(1, k + 1):
            acc = acc + a[j] * out[k - j]
        out.append(-acc * inv0)
    return out


def exp_coeffs(order: int):
    return [GaussianRational(mpq(1, factorial(k))) for k in range(order + 1)]


if psi_coeff(1) != mpq(1, 2):  # pragma: no cover - sign convention guard
    raise RuntimeError("Bernoulli sign convention broken: psi_coeff(1) != 1/2")
