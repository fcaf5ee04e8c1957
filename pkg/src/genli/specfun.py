"""Complex special functions: log-gamma, digamma, zeta, Hurwitz zeta, xi.

Everything here is double precision with compensated accumulation of the
series. Functions take and return Python scalars (``complex`` unless noted).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import numpy as np

from genli.errors import CapacityError, DomainError, PoleError
from genli.numerics import compensated_sum


@dataclass(frozen=True)
class MathConstants:
    euler_gamma: float = 0.5772156649015329
    pi: float = math.pi
    ln_pi: float = math.log(math.pi)


CONSTANTS = MathConstants()
EULER_GAMMA = CONSTANTS.euler_gamma
LN_PI = CONSTANTS.ln_pi
_HALF_LN_2PI = 0.5 * math.log(2.0 * math.pi)

# Euler-Maclaurin: number of Bernoulli correction terms
EM_BERNOULLI_TERMS = 12
NEAR_ZERO_THRESHOLD = 1e-10
BINOMIAL_MAX_N = 62
EXTENDED_PHASE_ABOVE = 50.0
REFLECT_BELOW_HEIGHT = 30.0
_TWO_PI_LD = np.arctan(np.longdouble(1)) * 8


@cache
def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2 convention)."""
    if m == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(m):
        acc += math.comb(m + 1, k) * bernoulli(k)
    return -acc / (m + 1)


# B_{2r} / (2r)! for r = 1..R
_EM_COEFFS = tuple(
    float(bernoulli(2 * r) / math.factorial(2 * r)) for r in range(1, EM_BERNOULLI_TERMS + 1)
)
# B_{2k} / (2k (2k-1)) for Stirling's series
_STIRLING_COEFFS = tuple(
    float(bernoulli(2 * k) / (2 * k * (2 * k - 1))) for k in range(1, EM_BERNOULLI_TERMS + 1)
)
# B_{2k} / (2k) for the digamma asymptotic series
_DIGAMMA_COEFFS = tuple(float(bernoulli(2 * k) / (2 * k)) for k in range(1, 11))


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def log_gamma(z: complex) -> complex:
    """Principal branch of ln Gamma(z), cut along the negative real axis.

    Shifts upward until Re z >= 15 and applies Stirling's series there.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"log_gamma has a pole at z = {z.real:g}")
    shift = max(0, math.ceil(15.0 - z.real))
    w = z + shift
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0j
    power = inv
    for c in _STIRLING_COEFFS:
        series += c * power
        power *= inv2
    value = (w - 0.5) * cmath.log(w) - w + _HALF_LN_2PI + series
    if shift:
        logs = np.log(z + np.arange(shift, dtype=float))
        value -= compensated_sum(logs)
    return value


def digamma(z: complex) -> complex:
    """psi(z) = Gamma'(z)/Gamma(z)."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"digamma has a pole at z = {z.real:g}")
    if z.real < 0.5:
        return digamma(1.0 - z) - math.pi / cmath.tan(math.pi * z)
    shift = max(0, math.ceil(10.0 - z.real))
    w = z + shift
    inv2 = 1.0 / (w * w)
    series = 0j
    power = inv2
    for c in _DIGAMMA_COEFFS:
        series += c * power
        power *= inv2
    value = cmath.log(w) - 0.5 / w - series
    if shift:
        value -= compensated_sum(1.0 / (z + np.arange(shift, dtype=float)))
    return value


def _integer_powers(k: np.ndarray, s: complex) -> np.ndarray:
    """k^-s for integer-valued k with the phase t ln k reduced in extended precision.

    At |t| ~ 1e5 the phase reaches ~1e6 rad, where one double rounding of
    ln k or of the product already costs ~1e-10. Where long double is no
    wider than double this degrades to the plain evaluation.
    """
    lk = np.log(np.real(k).astype(np.longdouble))
    phase = np.longdouble(s.imag) * lk
    phase -= np.round(phase / _TWO_PI_LD) * _TWO_PI_LD
    ph = phase.astype(float)
    return np.exp(-s.real * lk.astype(float)) * (np.cos(ph) - 1j * np.sin(ph))


def _em_cutoff(s: complex, q: complex) -> int:
    return max(10, math.ceil(abs(s) / 2.0) + 10, math.ceil(12.0 - q.real))


def _em_parts(s: complex, q: complex, derivative: bool = False):
    """Euler-Maclaurin pieces of sum_{k>=0} (k+q)^-s.

    Returns (head, x) where head is the compensated direct sum for
    k < M and x = M + q, together with the Bernoulli correction, and the
    same for the s-derivative when requested.
    """
    m = _em_cutoff(s, q)
    k = np.arange(m, dtype=float) + q
    logk = np.log(k)
    extended = q == 1.0 and abs(s.imag) > EXTENDED_PHASE_ABOVE
    powers = _integer_powers(k, s) if extended else np.exp(-s * logk)
    head = compensated_sum(powers)
    dhead = -compensated_sum(logk * powers) if derivative else 0j

    x = m + q
    logx = cmath.log(x)
    xs = complex(_integer_powers(np.array([x.real]), s)[0]) if extended else cmath.exp(-s * logx)
    inv_x2 = 1.0 / (x * x)
    pre = s
    dpre = 1.0 + 0j
    power = xs / x
    corr = []
    dcorr = []
    for r, coeff in enumerate(_EM_COEFFS, start=1):
        corr.append(coeff * pre * power)
        if derivative:
            dcorr.append(coeff * (dpre - logx * pre) * power)
        f1 = s + 2 * r - 1
        f2 = s + 2 * r
        dpre = dpre * f1 * f2 + pre * (f1 + f2)
        pre = pre * f1 * f2
        power *= inv_x2
    return head, dhead, x, logx, xs, compensated_sum(corr), compensated_sum(dcorr)


def _zeta_em(s: complex, q: complex) -> complex:
    head, _, x, _, xs, corr, _ = _em_parts(s, q)
    return head + x * xs / (s - 1.0) + 0.5 * xs + corr


def zeta_times_s_minus_1(s: complex) -> complex:
    """(s - 1) * zeta(s), analytic across s = 1 (value 1 there)."""
    s = complex(s)
    head, _, x, _, xs, corr, _ = _em_parts(s, 1.0 + 0j)
    return (s - 1.0) * (head + 0.5 * xs + corr) + x * xs


def riemann_zeta(s: complex) -> complex:
    """Riemann zeta function via Euler-Maclaurin summation.

    Left of the imaginary axis and close to the real line the direct sum
    cancels heavily (and the trivial zeros make relative error touchy), so
    there the functional equation maps the work to Re s > 1.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("riemann_zeta has a simple pole at s = 1")
    if s.real < 0.0 and abs(s.imag) <= REFLECT_BELOW_HEIGHT:
        if s.imag == 0.0 and s.real == round(s.real) and int(s.real) % 2 == 0:
            return 0j
        log_factor = s * math.log(2.0) + (s - 1.0) * LN_PI + log_gamma(1.0 - s)
        return cmath.exp(log_factor) * cmath.sin(0.5 * math.pi * s) * _zeta_em(1.0 - s, 1.0 + 0j)
    return _zeta_em(s, 1.0 + 0j)


def zeta_log_derivative(s: complex) -> complex:
    """zeta'(s)/zeta(s) from the differentiated Euler-Maclaurin series.

    Warns (RuntimeWarning) when |zeta(s)| is below ``NEAR_ZERO_THRESHOLD``.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta'/zeta has a pole at s = 1")
    head, dhead, x, logx, xs, corr, dcorr = _em_parts(s, 1.0 + 0j, derivative=True)
    sm1 = s - 1.0
    zeta = head + x * xs / sm1 + 0.5 * xs + corr
    dzeta = dhead - x * xs * (logx / sm1 + 1.0 / (sm1 * sm1)) - 0.5 * logx * xs + dcorr
    if abs(zeta) < NEAR_ZERO_THRESHOLD:
        warnings.warn(f"|zeta(s)| = {abs(zeta):.3g} near s = {s}: close to a zeta zero", RuntimeWarning, stacklevel=2)
    return dzeta / zeta


def hurwitz_zeta(s: complex, q: complex) -> complex:
    """Hurwitz zeta sum_{m>=0} (m + q)^-s for Re s > 1, Re q > 0."""
    s = complex(s)
    q = complex(q)
    if s.real <= 1.0:
        raise DomainError(f"hurwitz_zeta needs Re s > 1, got {s}")
    if q.real <= 0.0:
        raise DomainError(f"hurwitz_zeta needs Re q > 0, got {q}")
    return _zeta_em(s, q)


def xi(z: complex) -> complex:
    """Riemann xi(z) = z (z - 1) pi^(-z/2) Gamma(z/2) zeta(z) / 2."""
    z = complex(z)
    if z.real < 0.5:
        z = 1.0 - z
    return 0.5 * z * zeta_times_s_minus_1(z) * cmath.exp(log_gamma(0.5 * z) - 0.5 * z * LN_PI)


def ln_xi(z: complex) -> complex:
    """A logarithm of xi(z) assembled from principal-branch pieces.

    The imaginary part is only defined modulo 2*pi; callers that need a
    continuous branch along a path must unwrap it.
    """
    z = complex(z)
    if z.real < 0.5:
        z = 1.0 - z
    return (
        cmath.log(0.5 * z)
        + cmath.log(zeta_times_s_minus_1(z))
        + log_gamma(0.5 * z)
        - 0.5 * z * LN_PI
    )


def binomial(n: int, j: int) -> int:
    """Exact binomial coefficient C(n, j) for 0 <= n <= 62."""
    if n < 0 or j < 0:
        raise DomainError("binomial needs nonnegative arguments")
    if n > BINOMIAL_MAX_N:
        raise CapacityError(f"binomial supports n <= {BINOMIAL_MAX_N}, got {n}")
    if j > n:
        return 0
    return math.comb(n, j)


def laguerre_l1(m: int, x):
    """Generalized Laguerre polynomial L^(1)_m(x) by three-term recurrence.

    Works elementwise on numpy arrays.
    """
    if m < 0:
        raise DomainError("laguerre_l1 needs m >= 0")
    if m == 0:
        return np.ones_like(x, dtype=float) if np.ndim(x) else 1.0
    prev = 1.0
    cur = 2.0 - x
    for k in range(1, m):
        prev, cur = cur, ((2 * k + 2 - x) * cur - (k + 1) * prev) / (k + 1)
    return cur
