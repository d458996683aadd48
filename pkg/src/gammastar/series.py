"""Exact truncated power series over the rationals.

A :class:`RationalSeries` holds the coefficients ``c_0 ... c_N`` of a power
series in one variable, truncated at an explicit order ``N``. Every
arithmetic result is truncated at the same order, and combining series of
different orders raises :class:`~gammastar.errors.UsageError` rather than
silently truncating.

Rationals are :class:`fractions.Fraction`, which keeps every value in lowest
terms with a positive denominator.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import DomainError, InsufficientOrderError, UsageError

Rational = Fraction

__all__ = [
    "Rational",
    "RationalSeries",
    "series_mul",
    "series_ipow",
    "series_pow_neg_half_shifted",
    "derivative_at_zero",
    "build_g_series",
    "build_lambda_capital_series",
    "format_rational",
    "parse_rational",
    "series_to_json",
    "series_from_json",
]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class RationalSeries:
    """Truncated power series ``c_0 + c_1 t + ... + c_N t^N``.

    Parameters
    ----------
    coeffs : sequence
        Coefficients in increasing powers. Ints, Fractions and ``"p/q"``
        strings are accepted; floats are rejected.
    order : int, optional
        Truncation order ``N``. Defaults to ``len(coeffs) - 1``. Shorter
        coefficient lists are zero-padded, longer ones are truncated.
    """

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_as_fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise UsageError("truncation order must be nonnegative")
        cs = cs[: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self._coeffs = tuple(cs)
        self._order = order

    @classmethod
    def constant(cls, value, order: int) -> "RationalSeries":
        return cls([value], order)

    @classmethod
    def variable(cls, order: int) -> "RationalSeries":
        """The series ``t`` at the given order."""
        return cls([0, 1], order)

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._order

    def __len__(self):
        return self._order + 1

    def __getitem__(self, k):
        return self._coeffs[k]

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._order, self._coeffs))

    def __repr__(self):
        body = ", ".join(format_rational(c) for c in self._coeffs)
        return f"RationalSeries([{body}], order={self._order})"

    def _check(self, other: "RationalSeries"):
        if not isinstance(other, RationalSeries):
            raise TypeError("expected a RationalSeries")
        if other._order != self._order:
            raise UsageError(
                f"order mismatch: {self._order} vs {other._order}"
            )

    def _coerce(self, other) -> "RationalSeries":
        if isinstance(other, RationalSeries):
            self._check(other)
            return other
        return RationalSeries.constant(_as_fraction(other), self._order)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalSeries(
            [a + b for a, b in zip(self._coeffs, other._coeffs)], self._order
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries([-a for a in self._coeffs], self._order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            return series_mul(self, other)
        c = _as_fraction(other)
        return RationalSeries([c * a for a in self._coeffs], self._order)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k):
        return series_ipow(self, k)

    def with_order(self, order: int) -> "RationalSeries":
        """Explicitly truncate (or zero-extend) to another order."""
        return RationalSeries(self._coeffs, order)

    def evaluate(self, z):
        """Evaluate the truncated polynomial at a float or complex point."""
        acc = 0.0
        for c in reversed(self._coeffs):
            acc = acc * z + float(c)
        return acc

    def derivative(self) -> "RationalSeries":
        """Term-wise derivative; the top coefficient becomes zero."""
        cs = [k * self._coeffs[k] for k in range(1, self._order + 1)]
        return RationalSeries(cs, self._order)


def series_mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    """Cauchy product of two series of the same order, truncated."""
    a._check(b)
    n = a.order
    out = [Fraction(0)] * (n + 1)
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j in range(n + 1 - i):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return RationalSeries(out, n)


def series_ipow(a: RationalSeries, k: int) -> RationalSeries:
    """``a**k`` for a nonnegative integer ``k`` by repeated squaring."""
    if k < 0:
        raise UsageError("series_ipow needs a nonnegative exponent")
    result = RationalSeries.constant(1, a.order)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def _binom_neg_half(n: int, j: int) -> Fraction:
    # binom(-n - 1/2, j)
    alpha = Fraction(-2 * n - 1, 2)
    out = Fraction(1)
    for i in range(j):
        out = out * (alpha - i) / (i + 1)
    return out


def series_pow_neg_half_shifted(a: RationalSeries, n: int) -> RationalSeries:
    """``a**(-n - 1/2)`` for a series with ``a(0) = 1``.

    Sums the binomial series in ``a - 1``. Since ``a - 1`` has no constant
    term only the first ``order + 1`` terms contribute, so the result is
    exact.
    """
    if a.coeffs[0] != 1:
        raise DomainError(
            "series_pow_neg_half_shifted requires a(0) = 1, got "
            f"{format_rational(a.coeffs[0])}"
        )
    if n < 0:
        raise UsageError("n must be nonnegative")
    d = a - 1
    N = a.order
    # Horner in d
    result = RationalSeries.constant(_binom_neg_half(n, N), N)
    for j in range(N - 1, -1, -1):
        result = series_mul(result, d) + _binom_neg_half(n, j)
    return result


def derivative_at_zero(a: RationalSeries, k: int) -> Fraction:
    """``k``-th derivative at the origin, ``k! * c_k``."""
    if k < 0:
        raise UsageError("derivative order must be nonnegative")
    if k > a.order:
        raise InsufficientOrderError(
            f"derivative of order {k} needs a series of order >= {k}, "
            f"got {a.order}"
        )
    return factorial(k) * a.coeffs[k]


def build_g_series(order: int) -> RationalSeries:
    """``1 + 2 sum_{r>=1} t^r / (r+2)!``, i.e. ``2 (e^t - 1 - t) / t^2``."""
    if order < 0:
        raise UsageError("order must be nonnegative")
    cs = [Fraction(1)] + [Fraction(2, factorial(r + 2)) for r in range(1, order + 1)]
    return RationalSeries(cs, order)


def build_lambda_capital_series(order: int) -> RationalSeries:
    """``1 - 2 lambda(z)`` with ``lambda(z) = (log(1+z) - z + z^2/2) / z^2``.

    ``lambda(z) = sum_{j>=0} (-1)^j z^(j+1) / (j+3)``.
    """
    if order < 0:
        raise UsageError("order must be nonnegative")
    cs = [Fraction(1)]
    for p in range(1, order + 1):
        j = p - 1
        cs.append(-2 * Fraction((-1) ** j, j + 3))
    return RationalSeries(cs, order)


def format_rational(q) -> str:
    """``"p/q"`` in lowest terms, or ``"p"`` when the denominator is 1."""
    q = _as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def series_to_json(a: RationalSeries) -> str:
    return json.dumps([format_rational(c) for c in a.coeffs])


def series_from_json(text: str | Sequence[str]) -> RationalSeries:
    items = json.loads(text) if isinstance(text, str) else text
    return RationalSeries([parse_rational(s) for s in items])
