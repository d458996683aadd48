"""Gamma and scaled gamma references, the truncated expansion and its remainder.

``Gamma*(x) = Gamma(x) / (sqrt(2 pi) x^(x - 1/2) e^-x)`` and
``Gamma*(x) = sum_{n<m} (-1)^n gamma_n / x^n + R_m(x)``.

The remainder is available three ways:

* :func:`remainder_by_difference` subtracts the partial sum from a quadrature
  value of ``Gamma*``;
* :func:`remainder_new_integral` evaluates the double integral with inner
  kernel ``z h'(z) h(z)^(-m-1/2) / (h(z) - w/x)`` and outer weight
  ``e^-w w^(m+1/2)``;
* :func:`remainder_boyd_integral` uses the kernel ``h(z)^(-m+1/2) / (h(z) - w/x)``
  with outer weight ``e^-w w^(m-1/2)``.

The half-integer powers of ``h`` are taken on the branch that makes them
meromorphic near the real axis, ``h^(-1/2) = sqrt(2) phi(z) / z``: positive for
``z > 0`` and negative for ``z < 0``. With the principal branch of ``h^(1/2)``
the kernels would have a cut crossing the contour just right of the
imaginary axis.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .coefficients import gamma_via_recurrence
from .errors import AccuracyError, ContourError, DomainError, UsageError
from .lagrange import DEFAULT_PHI
from .quadrature import (
    QuadResult,
    h,
    integrate_exp_weighted,
    integrate_real_line,
    integrate_segmented,
    real_zeros_of_h,
    rectangle,
)

__all__ = [
    "ExpansionEval",
    "gamma_reference",
    "gamma_star_reference",
    "expansion_coefficients",
    "partial_sum",
    "remainder_by_difference",
    "remainder_new_integral",
    "remainder_boyd_integral",
    "evaluate_expansion",
    "EquivalenceRow",
    "equivalence_report",
    "SMALL_X_WARNING",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)
SMALL_X_WARNING = 2.0
RECT_HALF_HEIGHT = 1.0
RECT_MARGIN = 1.0
OUTER_TOL = 1e-11
INNER_TOL = 1e-12


def _check_x(x):
    if not (x > 0) or not math.isfinite(x):
        raise DomainError(f"x must be a positive finite number, got {x!r}")


def _check_m(m):
    if int(m) != m or m < 1:
        raise UsageError(f"m must be a positive integer, got {m!r}")


def gamma_reference(x: float) -> float:
    """``Gamma(x)`` from Euler's integral, for ``x > 0``.

    Below 1 the recurrence ``Gamma(x) = Gamma(x+1)/x`` is used so that the
    integrand stays bounded at the origin.
    """
    x = float(x)
    _check_x(x)
    if x < 1.0:
        return gamma_reference(x + 1.0) / x
    res = integrate_exp_weighted(np.ones_like, x - 1.0, tol=1e-14, raise_on_failure=False)
    return res.real


def gamma_star_reference(x: float) -> float:
    """``Gamma*(x)`` without forming ``Gamma(x)``.

    Integrates ``(2 pi)^(-1/2) int exp(-x h(s / sqrt x)) ds`` over the real
    line, which is ``Gamma(x)`` divided by its Stirling approximation after
    the substitution ``tau = x e^t``. Nothing of size ``x^x`` is ever formed,
    so the result is finite for any ``x > 0``.
    """
    x = float(x)
    _check_x(x)
    sx = math.sqrt(x)
    # integrand below e^-46 relative to its peak outside [t_lo, t_hi]
    t_lo, t_hi = real_zeros_of_h(46.0 / x)

    def f(s):
        return np.exp(-x * h(s / sx))

    res = integrate_real_line(f, t_lo * sx, t_hi * sx, step=0.5, tol=1e-15, max_level=8)
    return res.real / SQRT_2PI


def expansion_coefficients(m: int) -> list:
    """``(-1)^n gamma_n`` for ``n < m`` as floats (each rounded once)."""
    return [float((-1) ** n * gamma_via_recurrence(n)) for n in range(m)]


def partial_sum(m: int, x: float) -> float:
    """``sum_{n=0}^{m-1} (-1)^n gamma_n / x^n`` by Horner's rule in ``1/x``."""
    _check_m(m)
    _check_x(x)
    y = 1.0 / x
    acc = 0.0
    for c in reversed(expansion_coefficients(m)):
        acc = acc * y + c
    return acc


def remainder_by_difference(m: int, x: float) -> float:
    return gamma_star_reference(x) - partial_sum(m, x)


def _h_inv_sqrt(z):
    # h^(-1/2) on the meromorphic branch: sqrt(2) phi(z) / z
    phi, _ = DEFAULT_PHI(z)
    return math.sqrt(2.0) * phi / z


def _inner_contour(c: float):
    z_minus, z_plus = real_zeros_of_h(c)
    return rectangle(
        z_minus - RECT_MARGIN, z_plus + RECT_MARGIN, -RECT_HALF_HEIGHT, RECT_HALF_HEIGHT
    )


def _preflight(path):
    z = path.sample(512)
    g = 2.0 * h(z) / (z * z)
    if np.any((g.real <= 0) & (np.abs(g.imag) <= 1e-12 * np.abs(g))):
        raise ContourError("inner contour meets the branch cut of h^(1/2)")


def _kernel_new(m):
    def kernel(z, c):
        r = _h_inv_sqrt(z)
        return z * np.expm1(z) * r ** (2 * m + 1) / (h(z) - c)

    return kernel


def _kernel_boyd(m):
    def kernel(z, c):
        r = _h_inv_sqrt(z)
        return r ** (2 * m - 1) / (h(z) - c)

    return kernel


def _double_integral(m, x, kernel, power, outer_tol, inner_tol):
    m = int(m)
    x = float(x)
    inner_err = [0.0]
    inner_evals = [0]

    def outer(ws):
        out = np.empty(len(ws), dtype=complex)
        for i, w in enumerate(ws):
            c = float(w) / x
            path = _inner_contour(c)
            _preflight(path)
            try:
                r = integrate_segmented(lambda z: kernel(z, c), path, tol=inner_tol)
            except AccuracyError as exc:
                r = exc.result
                inner_err[0] = max(inner_err[0], math.inf)
            out[i] = r.value / (2j * math.pi)
            inner_err[0] = max(inner_err[0], r.error_estimate / (2 * math.pi))
            inner_evals[0] += r.evaluations
        return out

    scale = x ** (-m) / SQRT_2PI
    failed = None
    try:
        res = integrate_exp_weighted(outer, power, tol=outer_tol)
    except AccuracyError as exc:
        res, failed = exc.result, exc
    weight_mass = math.gamma(power + 1.0)
    err = abs(scale) * (res.error_estimate + weight_mass * inner_err[0])
    out = QuadResult(res.value * scale, err, res.evaluations + inner_evals[0])
    if failed is not None or not math.isfinite(err):
        raise AccuracyError(f"remainder integral did not converge (m={m}, x={x})", out)
    return out


def remainder_new_integral(m: int, x: float, outer_tol: float = OUTER_TOL,
                           inner_tol: float = INNER_TOL) -> QuadResult:
    """``x^-m / sqrt(2 pi) int_0^inf e^-w w^(m+1/2) (1/2 pi i) oint
    z h'(z) h(z)^(-m-1/2) / (h(z) - w/x) dz dw``.

    The inner contour is the rectangle with horizontal sides at ``+-i`` and
    vertical sides one unit beyond the two real zeros of ``h(z) = w/x``.
    """
    _check_m(m)
    _check_x(x)
    return _double_integral(m, x, _kernel_new(m), m + 0.5, outer_tol, inner_tol)


def remainder_boyd_integral(m: int, x: float, outer_tol: float = OUTER_TOL,
                            inner_tol: float = INNER_TOL) -> QuadResult:
    """``x^-m / sqrt(2 pi) int_0^inf e^-w w^(m-1/2) (1/2 pi i) oint
    h(z)^(-m+1/2) / (h(z) - w/x) dz dw``, same contour as the other form."""
    _check_m(m)
    _check_x(x)
    return _double_integral(m, x, _kernel_boyd(m), m - 0.5, outer_tol, inner_tol)


@dataclass(frozen=True)
class ExpansionEval:
    x: float
    m: int
    gamma_star: float
    partial_sum: float
    remainder_new_integral: QuadResult | None = None
    remainder_boyd_integral: QuadResult | None = None

    @property
    def remainder_by_difference(self) -> float:
        return self.gamma_star - self.partial_sum

    def to_dict(self) -> dict:
        out = {
            "x": self.x,
            "m": self.m,
            "gamma_star": self.gamma_star,
            "partial_sum": self.partial_sum,
            "remainder": self.remainder_by_difference,
        }
        for key in ("remainder_new_integral", "remainder_boyd_integral"):
            r = getattr(self, key)
            if r is not None:
                out[key] = r.to_dict()
        return out


def evaluate_expansion(m: int, x: float, integrals: bool = False) -> ExpansionEval:
    _check_m(m)
    _check_x(x)
    new = boyd = None
    if integrals:
        new = remainder_new_integral(m, x)
        boyd = remainder_boyd_integral(m, x)
    return ExpansionEval(float(x), int(m), gamma_star_reference(x), partial_sum(m, x), new, boyd)


@dataclass(frozen=True)
class EquivalenceRow:
    """One ``(m, x)`` line of :func:`equivalence_report`.

    ``max_pairwise_delta`` is the largest of the three pairwise differences
    between the remainder values, relative to ``|r_diff|``.
    """

    m: int
    x: float
    r_diff: float | None
    r_new: QuadResult | None
    r_boyd: QuadResult | None
    max_pairwise_delta: float
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict:
        out = {
            "m": self.m,
            "x": self.x,
            "r_diff": self.r_diff,
            "r_new": None if self.r_new is None else self.r_new.to_dict(),
            "r_boyd": None if self.r_boyd is None else self.r_boyd.to_dict(),
            "max_pairwise_delta": self.max_pairwise_delta,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def equivalence_report(pairs: Iterable) -> list:
    """Compare the two remainder integrals and the difference oracle.

    A pair whose quadrature fails still produces a row, carrying whatever
    values were obtained and an ``error`` message; the batch continues.
    """
    rows = []
    for m, x in pairs:
        m, x = int(m), float(x)
        err_msg = None
        r_diff = r_new = r_boyd = None
        try:
            _check_m(m)
            _check_x(x)
            if x < SMALL_X_WARNING:
                warnings.warn(
                    f"x = {x} is below {SMALL_X_WARNING}; the remainder integrals "
                    "are delicate here", RuntimeWarning, stacklevel=2,
                )
            r_diff = remainder_by_difference(m, x)
            try:
                r_new = remainder_new_integral(m, x)
            except AccuracyError as exc:
                r_new, err_msg = exc.result, str(exc)
            try:
                r_boyd = remainder_boyd_integral(m, x)
            except AccuracyError as exc:
                r_boyd, err_msg = exc.result, str(exc)
        except (UsageError, DomainError, ContourError) as exc:
            err_msg = str(exc)
        vals = [r_diff] + [r.real for r in (r_new, r_boyd) if r is not None]
        vals = [v for v in vals if v is not None]
        if len(vals) == 3 and r_diff:
            delta = max(abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:])
            delta /= abs(r_diff)
        else:
            delta = math.inf
        rows.append(EquivalenceRow(m, x, r_diff, r_new, r_boyd, delta, err_msg))
    return rows
