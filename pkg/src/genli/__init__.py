"""Generalized Li coefficients of the Riemann zeta function.

Three independent routes compute

    k_{n,a} = sum over nontrivial zeros rho of 1 - ((rho - a) / (rho + a - 1))**n

namely a paired sum over tabulated zeros, closed arithmetic formulas built
from von Mangoldt sums, Hurwitz zeta and digamma values, and Taylor
coefficients of ln xi taken on a contour.
"""

from genli.records import LiCoefficientRecord, Route

__all__ = ["LiCoefficientRecord", "Route"]
__version__ = "0.1.0"
