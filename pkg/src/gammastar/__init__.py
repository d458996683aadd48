"""Stirling coefficients of the gamma function and the remainder of its
asymptotic expansion.

Submodules
----------
series        exact truncated power series over the rationals
combinatorics partitions, M3 multinomials, Faa di Bruno, Stirling numbers
coefficients  gamma_n by seven exact methods, cross-checked
lagrange      Lagrange inversion with a contour-integral remainder
quadrature    contour and half-line quadrature, zeros of e^z - 1 - z
asymptotics   Gamma*, partial sums, and three routes to the remainder
cli           command-line front end (``python -m gammastar``)
"""

from .asymptotics import (
    equivalence_report,
    gamma_reference,
    gamma_star_reference,
    partial_sum,
    remainder_boyd_integral,
    remainder_by_difference,
    remainder_new_integral,
)
from .coefficients import METHODS, coefficient_table, gamma_coefficient
from .lagrange import invert_h_newton, reconstruct, remainder_qm
from .series import RationalSeries

__version__ = "0.1.0"
