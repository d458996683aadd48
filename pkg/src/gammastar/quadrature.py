"""Deterministic quadrature: contour integrals, exponentially weighted
half-line integrals, and the real zeros of ``h(z) = e^z - 1 - z``.

All integrands are called with numpy arrays of nodes and must return an
array of the same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AccuracyError, UsageError

__all__ = [
    "QuadResult",
    "LineSegment",
    "ArcSegment",
    "ContourPath",
    "circle",
    "rectangle",
    "integrate_segmented",
    "integrate_exp_weighted",
    "integrate_real_line",
    "h",
    "h_prime",
    "real_zeros_of_h",
    "winding_number",
]

GL_NODES = 16
_gl_x, _gl_w = np.polynomial.legendre.leggauss(GL_NODES)
# nodes and weights mapped to [0, 1]
_GL_X = 0.5 * (_gl_x + 1.0)
_GL_W = 0.5 * _gl_w


@dataclass(frozen=True)
class QuadResult:
    """Value of a numerical integral.

    ``error_estimate`` is the change observed under the last refinement
    step. It is a heuristic, not a rigorous bound.
    """

    value: complex
    error_estimate: float
    evaluations: int

    @property
    def real(self) -> float:
        return complex(self.value).real

    @property
    def imag(self) -> float:
        return complex(self.value).imag

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.evaluations + other.evaluations,
        )

    def scaled(self, factor) -> "QuadResult":
        return QuadResult(
            self.value * factor, self.error_estimate * abs(factor), self.evaluations
        )

    def to_dict(self) -> dict:
        v = complex(self.value)
        return {
            "re": v.real,
            "im": v.imag,
            "err": self.error_estimate,
            "evaluations": self.evaluations,
        }


@dataclass(frozen=True)
class LineSegment:
    start: complex
    end: complex

    def point(self, s):
        return self.start + (self.end - self.start) * s

    def tangent(self, s):
        return np.full(np.shape(s), self.end - self.start, dtype=complex)


@dataclass(frozen=True)
class ArcSegment:
    """Circular arc ``center + radius * exp(i theta)``, theta0 -> theta1."""

    center: complex
    radius: float
    theta0: float
    theta1: float

    @property
    def start(self) -> complex:
        return self.center + self.radius * complex(math.cos(self.theta0), math.sin(self.theta0))

    @property
    def end(self) -> complex:
        return self.center + self.radius * complex(math.cos(self.theta1), math.sin(self.theta1))

    def point(self, s):
        th = self.theta0 + (self.theta1 - self.theta0) * s
        return self.center + self.radius * np.exp(1j * th)

    def tangent(self, s):
        th = self.theta0 + (self.theta1 - self.theta0) * s
        return 1j * (self.theta1 - self.theta0) * self.radius * np.exp(1j * th)


@dataclass(frozen=True)
class ContourPath:
    """Piecewise smooth path made of line segments and circular arcs.

    A closed path must end exactly where it starts; consecutive segments
    must join within ``1e-12``.
    """

    segments: tuple
    closed: bool = True

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise UsageError("a contour needs at least one segment")
        for a, b in zip(segs, segs[1:]):
            if abs(a.end - b.start) > 1e-12 * max(1.0, abs(a.end)):
                raise UsageError("contour segments do not join")
        if self.closed and abs(segs[-1].end - segs[0].start) > 1e-12 * max(
            1.0, abs(segs[0].start)
        ):
            raise UsageError("closed contour does not return to its start")

    def sample(self, per_segment: int = 256) -> np.ndarray:
        """Points along the path, for preflight checks."""
        s = np.linspace(0.0, 1.0, per_segment, endpoint=False)
        return np.concatenate([seg.point(s) for seg in self.segments])


def circle(center: complex, radius: float) -> ContourPath:
    """Positively oriented circle, split into four quarter arcs."""
    q = math.pi / 2
    return ContourPath(
        tuple(ArcSegment(complex(center), float(radius), k * q, (k + 1) * q) for k in range(4))
    )


def rectangle(x0: float, x1: float, y0: float, y1: float) -> ContourPath:
    """Positively oriented rectangle ``[x0, x1] x [y0, y1]``."""
    if not (x0 < x1 and y0 < y1):
        raise UsageError("degenerate rectangle")
    a, b, c, d = complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)
    return ContourPath(
        (LineSegment(a, b), LineSegment(b, c), LineSegment(c, d), LineSegment(d, a))
    )


_ROUNDING_FACTOR = 64 * np.finfo(float).eps


def _panel_sum(f, seg, panels: int):
    edges = np.arange(panels, dtype=float)[:, None]
    s = ((edges + _GL_X[None, :]) / panels).ravel()
    w = np.tile(_GL_W, panels) / panels
    z = seg.point(s)
    vals = w * np.asarray(f(z), dtype=complex) * seg.tangent(s)
    return complex(np.sum(vals)), float(np.sum(np.abs(vals))), s.size


def integrate_segmented(
    f: Callable,
    path: ContourPath,
    tol: float = 1e-12,
    panels: int = 8,
    max_panels: int = 1024,
    raise_on_failure: bool = True,
) -> QuadResult:
    """Integrate ``f(z) dz`` along ``path`` with composite Gauss-Legendre.

    Each segment starts with ``panels`` panels of 16 nodes; the panel count
    doubles until two successive sums differ by less than ``tol`` (absolute)
    or by less than the rounding level ``64 eps int |f| |dz|`` of the segment,
    below which no refinement can improve the sum.
    Raises :class:`AccuracyError` if ``max_panels`` is reached first, with
    the last result attached.
    """
    total = 0j
    err = 0.0
    evals = 0
    ok = True
    for seg in path.segments:
        p = panels
        prev, _, n = _panel_sum(f, seg, p)
        evals += n
        while True:
            p *= 2
            cur, mag, n = _panel_sum(f, seg, p)
            evals += n
            delta = abs(cur - prev)
            prev = cur
            seg_tol = max(tol / len(path.segments), _ROUNDING_FACTOR * mag)
            if delta < seg_tol or p >= max_panels:
                break
        if delta >= seg_tol:
            ok = False
        total += cur
        err += delta
    res = QuadResult(total, err, evals)
    if not ok and raise_on_failure:
        raise AccuracyError(
            f"contour quadrature did not converge: error estimate {err:.3e} > {tol:.3e}",
            res,
        )
    return res


def winding_number(path: ContourPath, point: complex, per_segment: int = 2048) -> int:
    """Winding number of ``path`` about ``point`` via accumulated argument."""
    z = np.append(path.sample(per_segment), path.segments[0].start) - point
    if np.min(np.abs(z)) == 0:
        raise UsageError("point lies on the contour")
    dphi = np.angle(z[1:] / z[:-1])
    return int(round(float(np.sum(dphi)) / (2 * math.pi)))


def integrate_exp_weighted(
    g: Callable,
    m_power: float,
    tol: float = 1e-13,
    max_level: int = 8,
    raise_on_failure: bool = True,
) -> QuadResult:
    """``int_0^inf exp(-w) w^m_power g(w) dw`` by double exponential quadrature.

    The trapezoidal rule in ``s`` under ``w = exp(s - exp(-s))`` starts at
    step 1/2 and halves the step until the relative change is below ``tol``.
    Nodes where ``exp(-w) w^m_power`` times the Jacobian falls below
    ``1e-18`` of its peak are dropped, so ``g`` is never evaluated there.
    """
    if m_power <= -1:
        raise UsageError("m_power must exceed -1 for convergence at 0")

    # w = exp(s - exp(-s)); log of exp(-w) w^m_power dw/ds
    def log_weight(s):
        e = np.exp(-s)
        logw = s - e
        w = np.exp(logw)
        return -w + (m_power + 1.0) * logw + np.log1p(e), w

    # locate the support once on a fine probe grid
    probe = np.arange(-12.0, 12.0, 1.0 / 64)
    lw, _ = log_weight(probe)
    peak = np.max(lw)
    keep = lw > peak + math.log(1e-18)
    s_lo = float(probe[keep][0]) - 0.5
    s_hi = float(probe[keep][-1]) + 0.5

    cache: dict = {}

    def level_sum(step):
        k0 = math.ceil(s_lo / step)
        k1 = math.floor(s_hi / step)
        ks = np.arange(k0, k1 + 1)
        s = ks * step
        lw, w = log_weight(s)
        mask = lw > peak + math.log(1e-18)
        s, lw, w = s[mask], lw[mask], w[mask]
        keys = np.round(s * 2**12).astype(np.int64)
        vals = np.empty(s.size, dtype=complex)
        todo = [i for i, key in enumerate(keys) if key not in cache]
        if todo:
            new = np.asarray(g(w[todo]), dtype=complex)
            new = np.broadcast_to(new, (len(todo),))
            for i, v in zip(todo, new):
                cache[keys[i]] = v
        for i, key in enumerate(keys):
            vals[i] = cache[key]
        return complex(step * np.sum(np.exp(lw) * vals))

    step = 0.5
    prev = level_sum(step)
    err = math.inf
    for _ in range(max_level):
        step /= 2
        cur = level_sum(step)
        err = abs(cur - prev)
        prev = cur
        if err <= tol * abs(cur) or err == 0.0:
            break
    res = QuadResult(prev, err, len(cache))
    if err > tol * abs(prev) and err != 0.0 and raise_on_failure:
        raise AccuracyError(
            f"exp-weighted quadrature did not converge: change {err:.3e}", res
        )
    return res


def integrate_real_line(
    f: Callable, lo: float, hi: float, step: float, tol: float = 1e-15, max_level: int = 6
) -> QuadResult:
    """Trapezoidal rule on ``[lo, hi]`` for integrands negligible at both ends.

    For functions analytic in a strip around the real axis and decaying at
    the ends this converges geometrically; the step is halved until the
    relative change drops below ``tol``.
    """
    n = max(2, int(math.ceil((hi - lo) / step)))
    h_ = (hi - lo) / n
    x = lo + h_ * np.arange(n + 1)
    fx = np.asarray(f(x), dtype=float)
    total = h_ * (np.sum(fx) - 0.5 * (fx[0] + fx[-1]))
    evals = x.size
    err = math.inf
    for _ in range(max_level):
        mid = lo + h_ * (np.arange(n) + 0.5)
        fm = np.asarray(f(mid), dtype=float)
        evals += mid.size
        new = 0.5 * total + 0.5 * h_ * np.sum(fm)
        err = abs(new - total)
        total = new
        n *= 2
        h_ /= 2
        if err <= tol * abs(total):
            break
    return QuadResult(complex(total), float(err), evals)


_H_TAYLOR = np.array([1.0 / math.factorial(k) for k in range(2, 24)])


def h(z):
    """``h(z) = e^z - 1 - z`` for real or complex arrays.

    Uses the Taylor series for ``|z| < 0.5`` to avoid cancellation.
    """
    z = np.asarray(z)
    out = np.expm1(z) - z
    small = np.abs(z) < 0.5
    if np.any(small):
        zs = z[small]
        acc = np.zeros_like(zs)
        for c in _H_TAYLOR[::-1]:
            acc = acc * zs + c
        out = np.array(out, copy=True)
        out[small] = acc * zs * zs
    return out


def h_prime(z):
    return np.expm1(np.asarray(z))


def _h_scalar(z: float) -> float:
    if abs(z) < 0.5:
        acc = 0.0
        for c in _H_TAYLOR[::-1]:
            acc = acc * z + c
        return acc * z * z
    return math.expm1(z) - z


def _solve_branch(c: float, sign: int) -> float:
    # bracket [lo, hi] on the chosen side, h monotone there
    if sign > 0:
        lo, hi = 0.0, math.log1p(c) + 1.0
    else:
        lo, hi = -(c + 1.0), 0.0
    z = min(max(sign * math.sqrt(2 * c), lo), hi)
    for _ in range(200):
        f = _h_scalar(z) - c
        if f == 0.0:
            return z
        # shrink the bracket using monotonicity on this side
        if (f > 0) == (sign > 0):
            hi = min(hi, z)
        else:
            lo = max(lo, z)
        step = f / math.expm1(z) if z != 0.0 else math.inf
        znew = z - step
        if not (lo < znew < hi) or not math.isfinite(znew):
            znew = 0.5 * (lo + hi)
        if abs(znew - z) <= 4e-16 * abs(znew):
            return znew
        z = znew
    return z


def real_zeros_of_h(c: float) -> tuple:
    """The two real solutions ``z_minus < 0 < z_plus`` of ``e^z - 1 - z = c``."""
    c = float(c)
    if not c > 0:
        raise UsageError("real_zeros_of_h needs c > 0")
    return _solve_branch(c, -1), _solve_branch(c, +1)
