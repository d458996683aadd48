"""Integer partitions, M3 multinomials, Faa di Bruno and Stirling numbers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import UsageError

__all__ = [
    "Partition",
    "StirlingTable",
    "enumerate_partitions",
    "multinomial_m3",
    "faa_di_bruno",
    "assoc_stirling_3",
    "stirling_first_kind",
    "stirling_table",
]


@dataclass(frozen=True)
class Partition:
    """A solution ``(m_1, ..., m_N)`` of ``sum k * m_k = N``.

    ``multiplicities[k - 1]`` is the number of parts equal to ``k``.
    """

    multiplicities: tuple
    target: int

    def __post_init__(self):
        ms = tuple(int(m) for m in self.multiplicities)
        object.__setattr__(self, "multiplicities", ms)
        if len(ms) != self.target:
            raise UsageError(
                f"partition of {self.target} needs {self.target} multiplicities, "
                f"got {len(ms)}"
            )
        if any(m < 0 for m in ms):
            raise UsageError("multiplicities must be nonnegative")
        if sum((k + 1) * m for k, m in enumerate(ms)) != self.target:
            raise UsageError(f"{ms} is not a partition of {self.target}")

    @property
    def size(self) -> int:
        """Number of parts, ``m = m_1 + ... + m_N``."""
        return sum(self.multiplicities)

    @property
    def parts(self) -> tuple:
        """Parts in non-increasing order, e.g. ``(2, 1, 1)``."""
        out = []
        for k in range(self.target, 0, -1):
            out.extend([k] * self.multiplicities[k - 1])
        return tuple(out)

    def items(self):
        """Yield ``(k, m_k)`` for the nonzero multiplicities."""
        for k, m in enumerate(self.multiplicities, start=1):
            if m:
                yield k, m

    def to_json(self) -> list:
        return list(self.multiplicities)


def _descending_parts(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _descending_parts(n - k, k):
            yield (k,) + rest


def enumerate_partitions(N: int) -> list:
    """All partitions of ``N`` as multiplicity vectors.

    The order is reverse lexicographic on the non-increasing part lists,
    so the partition with the single part ``N`` comes first and ``1+...+1``
    comes last. For ``N = 4``::

        (0,0,0,1), (1,0,1,0), (0,2,0,0), (2,1,0,0), (4,0,0,0)
    """
    if N < 0:
        raise UsageError("N must be nonnegative")
    out = []
    for parts in _descending_parts(N, N):
        ms = [0] * N
        for k in parts:
            ms[k - 1] += 1
        out.append(Partition(tuple(ms), N))
    return out


def multinomial_m3(p: Partition) -> int:
    """``N! / prod_k (m_k! (k!)^m_k)``: set partitions of ``N`` of block type ``p``."""
    den = 1
    for k, m in p.items():
        den *= factorial(m) * factorial(k) ** m
    return factorial(p.target) // den


def faa_di_bruno(f_derivs: Sequence, g_derivs: Sequence, n: int) -> Fraction:
    """``n``-th derivative of ``f(g(t))`` at ``t = 0`` from derivative lists.

    Parameters
    ----------
    f_derivs : sequence of rationals
        ``f_derivs[m]`` is ``f^(m)(g(0))`` for ``m = 0 .. n``.
    g_derivs : sequence of rationals
        ``g_derivs[k - 1]`` is ``g^(k)(0)`` for ``k = 1 .. n``.
    n : int
        Derivative order.
    """
    if n < 0:
        raise UsageError("n must be nonnegative")
    if len(f_derivs) < n + 1:
        raise UsageError(f"need {n + 1} derivatives of f, got {len(f_derivs)}")
    if len(g_derivs) < n:
        raise UsageError(f"need {n} derivatives of g, got {len(g_derivs)}")
    if n == 0:
        return Fraction(f_derivs[0])
    scaled = [Fraction(g_derivs[k - 1]) / factorial(k) for k in range(1, n + 1)]
    total = Fraction(0)
    for p in enumerate_partitions(n):
        term = Fraction(f_derivs[p.size])
        if not term:
            continue
        for k, m in p.items():
            term *= scaled[k - 1] ** m / factorial(m)
        total += term
    return factorial(n) * total


_S3_ROWS: list = [[1]]


def _extend_s3(lmax: int):
    # S3(l+1, k) = k S3(l, k) + C(l, 2) S3(l-2, k-1)
    rows = _S3_ROWS
    while len(rows) <= lmax:
        l = len(rows) - 1
        new = [0] * (l // 3 + 2)
        for k in range(len(new)):
            v = 0
            if k < len(rows[l]):
                v += k * rows[l][k]
            if k >= 1 and l >= 2 and k - 1 < len(rows[l - 2]):
                v += comb(l, 2) * rows[l - 2][k - 1]
            new[k] = v
        while len(new) > 1 and new[-1] == 0:
            new.pop()
        rows.append(new)


def assoc_stirling_3(l: int, k: int) -> int:
    """3-associated Stirling number ``S_3(l, k)``.

    Counts set partitions of ``l`` elements into ``k`` blocks of size at
    least 3; equivalently ``l! [u^k t^l] exp(u (t^3/3! + t^4/4! + ...))``.
    """
    if l < 0 or k < 0:
        return 0
    if l < 3 * k:
        return 0
    _extend_s3(l)
    row = _S3_ROWS[l]
    return row[k] if k < len(row) else 0


_S1_ROWS: list = [[1]]


def _extend_s1(kmax: int):
    rows = _S1_ROWS
    while len(rows) <= kmax:
        k = len(rows) - 1
        prev = rows[k]
        new = [0] * (k + 2)
        for m in range(1, k + 2):
            v = prev[m - 1]
            if m <= k:
                v -= k * prev[m]
            new[m] = v
        rows.append(new)


def stirling_first_kind(k: int, m: int) -> int:
    """Signed Stirling number of the first kind ``s(k, m)``.

    Defined by ``x (x-1) ... (x-k+1) = sum_m s(k, m) x^m``.
    """
    if k < 0 or m < 0 or m > k:
        return 0
    _extend_s1(k)
    return _S1_ROWS[k][m]


@dataclass(frozen=True)
class StirlingTable:
    """Square table of Stirling numbers, ``values[i][j]``.

    For ``kind="third-associated"`` the indices are ``(l, k)``; for
    ``kind="first-kind"`` they are ``(k, m)``.
    """

    kind: str
    values: tuple

    def to_json(self) -> str:
        return json.dumps([[str(v) for v in row] for row in self.values])

    @classmethod
    def from_json(cls, kind: str, text: str) -> "StirlingTable":
        return cls(kind, tuple(tuple(int(v) for v in row) for row in json.loads(text)))


def stirling_table(kind: str, size: int) -> StirlingTable:
    """Build a ``(size + 1) x (size + 1)`` table of the requested kind."""
    if kind == "third-associated":
        fn = assoc_stirling_3
    elif kind == "first-kind":
        fn = stirling_first_kind
    else:
        raise UsageError(f"unknown Stirling table kind {kind!r}")
    vals = tuple(tuple(fn(i, j) for j in range(size + 1)) for i in range(size + 1))
    return StirlingTable(kind, vals)
