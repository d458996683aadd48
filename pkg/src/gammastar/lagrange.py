"""Lagrange inversion with an explicit contour-integral remainder.

For ``t = u phi(t)`` with ``phi(0) != 0`` the identity

    t = sum_{n=1}^{m-1} a_n u^n  -  (m-1) a_m u^m  +  Q_m(u),
    a_n = D^{n-1} phi^n(0) / n!,
    Q_m(u) = u^m / (2 pi i) oint (1 - u phi'(z)) / (z - u phi(z)) phi(z)^m / z^(m-1) dz

holds exactly (not just asymptotically) for a contour enclosing ``0`` and
the root ``t`` and no other zero of ``z - u phi(z)``. The default ``phi`` is
``phi(t) = (t^2/2 / (e^t - 1 - t))^(1/2)``, whose inverse solves
``e^t - 1 - t = u^2/2`` with ``sign(t) = sign(u)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .coefficients import phi_series
from .errors import ContourError, UsageError
from .quadrature import (
    ContourPath,
    QuadResult,
    circle,
    h,
    integrate_segmented,
    real_zeros_of_h,
    winding_number,
)
from .series import RationalSeries, series_mul

__all__ = [
    "AnalyticPhi",
    "DEFAULT_PHI",
    "InversionSpec",
    "InversionResult",
    "inversion_coefficients",
    "inversion_series_coeffs",
    "correction_coefficient",
    "correction_term",
    "default_contour",
    "check_contour",
    "remainder_qm",
    "invert_h_newton",
    "dt_du_even_series",
    "reconstruct",
]

SERIES_RADIUS = 0.05
_PHI_FLOAT_ORDER = 24


@lru_cache(maxsize=1)
def _phi_float_coeffs():
    cs = phi_series(_PHI_FLOAT_ORDER).coeffs
    c = np.array([float(x) for x in cs])
    dc = np.array([k * float(x) for k, x in enumerate(cs)][1:])
    return c, dc


class AnalyticPhi:
    """Evaluates ``phi`` and ``phi'`` on complex arrays.

    The default instance, :data:`DEFAULT_PHI`, uses the closed form
    ``phi = g^(-1/2)`` with ``g(z) = 2 h(z) / z^2`` and the principal square
    root, switching to the Taylor series within ``SERIES_RADIUS`` of the
    origin where ``h`` has its double zero.
    """

    def __init__(self, func: Callable | None = None, name: str = "default"):
        self._func = func
        self.name = name

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self._func is not None:
            val, der = self._func(z)
            return (
                np.broadcast_to(np.asarray(val, dtype=complex), z.shape),
                np.broadcast_to(np.asarray(der, dtype=complex), z.shape),
            )
        return _default_phi(z)

    def branch_argument(self, z):
        """Quantity under the principal root, or None for a custom phi."""
        if self._func is not None:
            return None
        z = np.asarray(z, dtype=complex)
        return 2.0 * h(z) / (z * z)


def _default_phi(z):
    near = np.abs(z) < SERIES_RADIUS
    val = np.empty_like(z)
    der = np.empty_like(z)
    far = ~near
    if np.any(far):
        zf = z[far]
        hz = h(zf)
        p = np.sqrt(zf * zf / (2.0 * hz))
        val[far] = p
        der[far] = p * (1.0 / zf - np.expm1(zf) / (2.0 * hz))
    if np.any(near):
        c, dc = _phi_float_coeffs()
        zn = z[near]
        val[near] = np.polyval(c[::-1], zn)
        der[near] = np.polyval(dc[::-1], zn)
    return val, der


DEFAULT_PHI = AnalyticPhi()


@dataclass(frozen=True)
class InversionSpec:
    """``t = u phi(t)`` truncated after ``m`` terms.

    ``phi`` is the exact series used for the polynomial part; ``analytic``
    evaluates the same function off the real axis for the remainder.
    """

    phi: RationalSeries
    m: int
    analytic: AnalyticPhi = field(default=DEFAULT_PHI, compare=False)

    def __post_init__(self):
        if self.phi.coeffs[0] == 0:
            raise UsageError("phi(0) must be nonzero")
        if self.m < 1:
            raise UsageError("m must be a positive integer")
        if self.phi.order < self.m:
            raise UsageError(f"phi needs order >= m = {self.m}")

    @classmethod
    def default(cls, m: int) -> "InversionSpec":
        return cls(phi_series(m), m)


def inversion_coefficients(phi: RationalSeries, n_max: int) -> list:
    """``a_n = D^{n-1} phi^n(0) / n! = [t^{n-1}] phi^n / n`` for ``n = 1 .. n_max``."""
    if phi.order < n_max - 1:
        raise UsageError(f"phi needs order >= {n_max - 1}")
    out = []
    power = phi
    for n in range(1, n_max + 1):
        out.append(power.coeffs[n - 1] / n)
        if n < n_max:
            power = series_mul(power, phi)
    return out


def inversion_series_coeffs(phi: RationalSeries, m: int) -> list:
    """``a_1 .. a_{m-1}`` of the truncated inversion series, exact."""
    if m < 1:
        raise UsageError("m must be a positive integer")
    if phi.order < m:
        raise UsageError(f"phi needs order >= m = {m}")
    return inversion_coefficients(phi, m - 1)


def correction_coefficient(phi: RationalSeries, m: int) -> Fraction:
    """Coefficient of ``u^m`` in the correction: ``-(m-1)/m! D^{m-1} phi^m(0)``."""
    if m < 1:
        raise UsageError("m must be a positive integer")
    if phi.order < m:
        raise UsageError(f"phi needs order >= m = {m}")
    a_m = inversion_coefficients(phi, m)[-1]
    return -(m - 1) * a_m


def correction_term(phi: RationalSeries, m: int, u: float) -> float:
    return float(correction_coefficient(phi, m)) * u**m + 0.0


def default_contour(t: float) -> ContourPath:
    """Circle through ``-0.75`` and ``t + 0.75`` (for ``t >= 0``)."""
    return circle(t / 2.0, abs(t) / 2.0 + 0.75)


def check_contour(spec: InversionSpec, u: float, contour: ContourPath, t: float,
                  floor: float = 1e-3):
    """Raise :class:`ContourError` unless ``contour`` is usable for ``Q_m(u)``.

    Checks winding number 1 about 0 and about ``t``, a lower bound on
    ``|z - u phi(z)|`` along the path, and that the principal root in
    ``phi`` never meets its branch cut on the path.
    """
    for point, label in ((0.0, "0"), (t, "t")):
        try:
            wn = winding_number(contour, point)
        except UsageError:
            raise ContourError(f"contour passes through {label}") from None
        if wn != 1:
            raise ContourError(f"contour winds {wn} times about {label}")
    z = contour.sample(512)
    val, _ = spec.analytic(z)
    gap = float(np.min(np.abs(z - u * val)))
    if gap < floor:
        raise ContourError(f"contour passes within {gap:.2e} of a zero of z - u phi(z)")
    arg = spec.analytic.branch_argument(z)
    if arg is not None:
        bad = (arg.real <= 0) & (np.abs(arg.imag) < 1e-12 * np.maximum(1.0, np.abs(arg)))
        if np.any(bad):
            raise ContourError("contour crosses the branch cut of phi")


def remainder_qm(spec: InversionSpec, u: float, contour: ContourPath | None = None,
                 tol: float = 1e-13, t: float | None = None) -> QuadResult:
    """Numerical value of the remainder ``Q_m(u)``.

    ``t`` is the root being enclosed; for the default ``phi`` it is found by
    :func:`invert_h_newton`. When ``contour`` is omitted the circle from
    :func:`default_contour` is used.
    """
    u = float(u)
    m = spec.m
    if u == 0.0:
        return QuadResult(0j, 0.0, 1)
    if t is None:
        if spec.analytic is not DEFAULT_PHI:
            raise UsageError("pass the enclosed root t for a custom phi")
        t = invert_h_newton(u)
    if contour is None:
        contour = default_contour(t)
    check_contour(spec, u, contour, t)

    def integrand(z):
        p, dp = spec.analytic(z)
        return (1.0 - u * dp) / (z - u * p) * p**m / z ** (m - 1)

    raw = integrate_segmented(integrand, contour, tol=tol / max(abs(u) ** m, 1e-300) * 2 * math.pi)
    return raw.scaled(u**m / (2j * math.pi))


def invert_h_newton(u: float) -> float:
    """Real ``t`` with ``e^t - 1 - t = u^2/2`` and ``sign(t) = sign(u)``."""
    u = float(u)
    if u == 0.0:
        return 0.0
    lo, hi = real_zeros_of_h(0.5 * u * u)
    return hi if u > 0 else lo


def dt_du_even_series(m: int) -> list:
    """Coefficients of ``u^0, u^2, ..., u^{2(m-1)}`` in ``dt/du``.

    The ``u^{2n}`` coefficient is ``D^{2n} phi^{2n+1}(0) / (2n)!``.
    """
    if m < 1:
        raise UsageError("m must be a positive integer")
    a = inversion_coefficients(phi_series(2 * m), 2 * m - 1)
    return [(2 * n + 1) * a[2 * n] for n in range(m)]


@dataclass(frozen=True)
class InversionResult:
    u: float
    m: int
    truncated_value: float
    correction_term: float
    remainder: QuadResult
    newton: float

    @property
    def reconstructed_t(self) -> float:
        return self.truncated_value + self.correction_term + self.remainder.real

    @property
    def defect(self) -> float:
        return abs(self.reconstructed_t - self.newton)

    def to_dict(self) -> dict:
        return {
            "u": self.u,
            "m": self.m,
            "series": self.truncated_value,
            "correction": self.correction_term,
            "remainder": self.remainder.to_dict(),
            "reconstructed": self.reconstructed_t,
            "newton": self.newton,
            "defect": self.defect,
        }


def reconstruct(u: float, m: int, contour: ContourPath | None = None) -> InversionResult:
    """Evaluate all three parts of the identity for the default ``phi``."""
    spec = InversionSpec.default(m)
    coeffs = inversion_series_coeffs(spec.phi, m)
    u = float(u)
    series_value = 0.0
    for a in reversed(coeffs):
        series_value = (series_value + float(a)) * u
    corr = correction_term(spec.phi, m, u)
    t = invert_h_newton(u)
    rem = remainder_qm(spec, u, contour, t=t)
    return InversionResult(u, m, series_value, corr, rem, t)
