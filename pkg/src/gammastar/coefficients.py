"""The Stirling coefficients gamma_n, computed exactly in seven ways.

``Gamma*(x) ~ sum_n (-1)^n gamma_n / x^n`` with
``gamma_0 = 1, gamma_1 = -1/12, gamma_2 = 1/288, gamma_3 = 139/51840, ...``.

Every method returns a :class:`fractions.Fraction` and every method accepts
``n = 0`` (returning 1). :func:`coefficient_table` runs them side by side and
raises :class:`~gammastar.errors.IntegrityError` on any disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .combinatorics import (
    assoc_stirling_3,
    enumerate_partitions,
    multinomial_m3,
    stirling_first_kind,
)
from .errors import IntegrityError, UsageError
from .series import (
    build_g_series,
    build_lambda_capital_series,
    derivative_at_zero,
    format_rational,
    series_ipow,
    series_pow_neg_half_shifted,
)

__all__ = [
    "METHODS",
    "CoefficientRecord",
    "pochhammer_half",
    "phi_series",
    "gamma_via_series",
    "gamma_via_recurrence",
    "recurrence_d",
    "gamma_via_partition",
    "gamma_via_partition_alt",
    "partition_alt_terms",
    "gamma_via_assoc3",
    "gamma_via_first_kind",
    "gamma_via_lambda",
    "gamma_coefficient",
    "coefficient_table",
]


def pochhammer_half(n: int) -> Fraction:
    """``(1/2)_n = Gamma(n + 1/2) / sqrt(pi) = (2n)! / (4^n n!)``."""
    return Fraction(factorial(2 * n), 4**n * factorial(n))


def _check_n(n):
    if n < 0:
        raise UsageError("n must be nonnegative")


def phi_series(order: int):
    """``phi(t) = (t^2/2 / (e^t - 1 - t))^(1/2)`` as an exact series."""
    return series_pow_neg_half_shifted(build_g_series(order), 0)


def gamma_via_series(n: int, order: int | None = None) -> Fraction:
    """``(-1)^n / (2^n n!) * D^{2n} phi^{2n+1}(0)``.

    ``order`` is the truncation order of the internal series; it defaults to
    the minimum ``2n`` and any larger value gives the same result.
    """
    _check_n(n)
    if order is None:
        order = 2 * n
    if order < 2 * n:
        raise UsageError(f"order must be at least {2 * n}")
    phi = phi_series(order)
    d = derivative_at_zero(series_ipow(phi, 2 * n + 1), 2 * n)
    return Fraction((-1) ** n, 2**n * factorial(n)) * d


@lru_cache(maxsize=None)
def _d_values(N: int) -> tuple:
    d = [Fraction(1)]
    for k in range(1, N + 1):
        s = sum((d[j] * d[k - j] / (j + 1) for j in range(1, k)), Fraction(0))
        d.append(Fraction(k + 1, k + 2) * (d[k - 1] / k - s))
    return tuple(d)


def recurrence_d(k: int) -> Fraction:
    """The auxiliary sequence ``d_k`` of the recurrence method (``d_0 = 1``)."""
    _check_n(k)
    return _d_values(k)[k]


def gamma_via_recurrence(n: int) -> Fraction:
    """``gamma_n = (-2)^n (1/2)_n d_{2n}``."""
    _check_n(n)
    return (-2) ** n * pochhammer_half(n) * recurrence_d(2 * n)


def _partition_sum(n: int, weight) -> Fraction:
    total = Fraction(0)
    for p in enumerate_partitions(2 * n):
        m = p.size
        total += (-2) ** m * pochhammer_half(m + n) * weight(p)
    return total


def gamma_via_partition(n: int) -> Fraction:
    """Closed form as a sum over the partitions of ``2n``.

    ``gamma_n = (-2)^n sum (-2)^m (1/2)_{m+n} / prod_k m_k! ((k+2)!)^m_k``
    where ``m`` is the number of parts.
    """
    _check_n(n)
    if n == 0:
        return Fraction(1)

    def weight(p):
        den = 1
        for k, mk in p.items():
            den *= factorial(mk) * factorial(k + 2) ** mk
        return Fraction(1, den)

    return (-2) ** n * _partition_sum(n, weight)


def partition_alt_terms(n: int) -> list:
    """Per-partition data of :func:`gamma_via_partition_alt`.

    Returns ``(partition, C_m, term)`` triples in enumeration order, where
    ``term = (-2)^m (1/2)_{m+n} C_m / prod ((k+1)(k+2))^m_k`` and
    ``gamma_n = (-2)^n / (2n)! * sum(term)``.
    """
    out = []
    for p in enumerate_partitions(2 * n):
        c = multinomial_m3(p)
        den = 1
        for k, mk in p.items():
            den *= ((k + 1) * (k + 2)) ** mk
        m = p.size
        out.append((p, c, (-2) ** m * pochhammer_half(m + n) * Fraction(c, den)))
    return out


def gamma_via_partition_alt(n: int) -> Fraction:
    """Partition form weighted by the M3 multinomials ``C_m``.

    ``gamma_n = (-2)^n / (2n)! sum (-2)^m (1/2)_{m+n} C_m / prod ((k+1)(k+2))^m_k``
    """
    _check_n(n)
    if n == 0:
        return Fraction(1)
    total = sum((t for _, _, t in partition_alt_terms(n)), Fraction(0))
    return Fraction((-2) ** n, factorial(2 * n)) * total


def gamma_via_assoc3(n: int) -> Fraction:
    """Closed form in the 3-associated Stirling numbers.

    ``(-1)^n gamma_n = sum_{j=0}^{2n} (-1)^j S_3(2j+2n, j) / (2^{j+n} (j+n)!)``.
    Note the sum itself yields the coefficient of ``1/x^n`` in the expansion
    of ``Gamma*``, hence the extra sign.
    """
    _check_n(n)
    total = Fraction(0)
    for j in range(2 * n + 1):
        s = assoc_stirling_3(2 * j + 2 * n, j)
        if s:
            total += Fraction((-1) ** j * s, 2 ** (j + n) * factorial(j + n))
    return (-1) ** n * total


def gamma_via_first_kind(n: int) -> Fraction:
    """Triple sum in the signed Stirling numbers of the first kind."""
    _check_n(n)
    total = Fraction(0)
    for m in range(2 * n + 1):
        for r in range(m + 1):
            pre = pochhammer_half(m + n) * Fraction(2) ** (m + n - r) / factorial(r)
            inner = Fraction(0)
            for j in range(m - r + 1):
                K = 2 * m + 2 * n - 2 * r - j
                s = stirling_first_kind(K, m - r - j)
                if s:
                    inner += Fraction((-1) ** (j + n) * s, factorial(j) * factorial(K))
            total += pre * inner
    return total


def gamma_via_lambda(n: int, order: int | None = None) -> Fraction:
    """``(-1)^n / (2^n n!) * D^{2n} Lambda^{-n-1/2}(0)``,
    ``Lambda(z) = 1 - 2 (log(1+z) - z + z^2/2) / z^2``.
    """
    _check_n(n)
    if order is None:
        order = 2 * n
    lam = build_lambda_capital_series(order)
    d = derivative_at_zero(series_pow_neg_half_shifted(lam, n), 2 * n)
    return Fraction((-1) ** n, 2**n * factorial(n)) * d


METHODS = {
    "series": gamma_via_series,
    "recurrence": gamma_via_recurrence,
    "partition": gamma_via_partition,
    "partition_alt": gamma_via_partition_alt,
    "assoc3": gamma_via_assoc3,
    "first_kind": gamma_via_first_kind,
    "lambda": gamma_via_lambda,
}


def gamma_coefficient(n: int, method: str = "recurrence") -> Fraction:
    """``gamma_n`` by the named method (the recurrence is the cheapest)."""
    try:
        fn = METHODS[method]
    except KeyError:
        raise UsageError(
            f"unknown method {method!r}; choose from {', '.join(METHODS)}"
        ) from None
    return fn(n)


@dataclass(frozen=True)
class CoefficientRecord:
    n: int
    value: Fraction
    method: str
    order_used: int

    def to_dict(self) -> dict:
        return {"n": self.n, "method": self.method, "value": format_rational(self.value)}


def coefficient_table(n_max: int, methods=None) -> list:
    """Run every requested method for ``n = 0 .. n_max`` and cross-check.

    Returns one :class:`CoefficientRecord` per ``(n, method)``, ordered by
    ``n`` then by method. Raises :class:`IntegrityError` naming both methods
    and both values at the first disagreement.
    """
    if n_max < 0:
        raise UsageError("n_max must be nonnegative")
    if methods is None:
        methods = list(METHODS)
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise UsageError(f"unknown method(s): {', '.join(unknown)}")
    records = []
    for n in range(n_max + 1):
        first = None
        for name in methods:
            value = METHODS[name](n)
            if first is None:
                first = (name, value)
            elif value != first[1]:
                raise IntegrityError(
                    f"gamma_{n}: method {first[0]} gives {format_rational(first[1])} "
                    f"but method {name} gives {format_rational(value)}"
                )
            records.append(CoefficientRecord(n, value, name, 2 * n))
    return records
