"""Locate ordinates of zeta zeros on the critical line.

Z(t) = exp(i theta(t)) zeta(1/2 + it) is real, and its sign changes mark
zeros. Z is evaluated in bulk with the Riemann-Siegel formula (main sum
plus the correction terms C0..C4), scanned on a grid of 1/16 of the local
mean gap, and sign changes are refined by the Illinois variant of regula
falsi. Low ordinates are polished against the Euler-Maclaurin zeta.

Completeness is checked through S(t) = N(t) - theta(t)/pi - 1: averaged
over blocks of consecutive zeros it stays near 0, and a missed pair shows
up as a drop of about 2. Blocks that fail are rescanned on finer grids.
"""

from __future__ import annotations

import cmath
import logging
import math

import numpy as np

from genli.errors import NonConvergenceError
from genli.specfun import log_gamma, riemann_zeta

log = logging.getLogger(__name__)

_TWO_PI = 2.0 * math.pi
_LN_PI = math.log(math.pi)

GRID_DIVISIONS = 16
POLISH_BELOW = 1000.0
BLOCK = 200
MIN_HEIGHT = 10.0

# asymptotic theta(t): t/2 ln(t/2pi) - t/2 - pi/8 + sum c_k / t^(2k-1)
_THETA_COEFFS = (1 / 48, 7 / 5760, 31 / 80640, 127 / 430080, 511 / 1216512)


def theta(t):
    """Riemann-Siegel theta by its asymptotic series (accurate for t >= 10)."""
    t = np.asarray(t, dtype=float)
    inv = 1.0 / t
    inv2 = inv * inv
    corr = np.zeros_like(t)
    power = inv
    for c in _THETA_COEFFS:
        corr += c * power
        power = power * inv2
    return 0.5 * t * np.log(t / _TWO_PI) - 0.5 * t - math.pi / 8 + corr


def theta_prime(t):
    t = np.asarray(t, dtype=float)
    inv2 = 1.0 / (t * t)
    corr = np.zeros_like(t)
    power = inv2
    for k, c in enumerate(_THETA_COEFFS):
        corr -= (2 * k + 1) * c * power
        power = power * inv2
    return 0.5 * np.log(t / _TWO_PI) + corr


def theta_exact(t: float) -> float:
    """theta(t) = Im ln Gamma(1/4 + it/2) - (t/2) ln pi, from log_gamma."""
    return log_gamma(complex(0.25, 0.5 * t)).imag - 0.5 * t * _LN_PI


def smooth_count(t):
    """theta(t)/pi + 1, the smooth part of the zero-counting function N(t)."""
    return theta(t) / math.pi + 1.0


def _phi_taylor(degree: int = 60, radius: float = 1.0, samples: int = 256) -> np.ndarray:
    # Taylor coefficients about p = 1/2 of cos(2pi(p^2 - p - 1/16)) / cos(2pi p),
    # which is entire; Cauchy coefficients on a circle where it is tame
    w = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    p = 0.5 + w
    vals = np.cos(_TWO_PI * (p * p - p - 1.0 / 16.0)) / np.cos(_TWO_PI * p)
    coeffs = np.fft.fft(vals) / samples
    return (coeffs[: degree + 1] / radius ** np.arange(degree + 1)).real


_PHI = _phi_taylor()


def _phi_derivative(x: np.ndarray, k: int) -> np.ndarray:
    """k-th derivative of the Riemann-Siegel kernel at p = 1/2 + x."""
    c = _PHI.copy()
    for _ in range(k):
        c = c[1:] * np.arange(1, len(c))
    return np.polynomial.polynomial.polyval(x, c)


def _corrections(p: np.ndarray, order: int = 4) -> list[np.ndarray]:
    x = p - 0.5
    d = {k: _phi_derivative(x, k) for k in (0, 1, 2, 3, 4, 5, 6, 8, 9, 12)}
    pi2, pi4, pi6, pi8 = math.pi**2, math.pi**4, math.pi**6, math.pi**8
    c = [
        d[0],
        -d[3] / (96 * pi2),
        d[6] / (18432 * pi4) + d[2] / (64 * pi2),
        -d[9] / (5308416 * pi6) - d[5] / (3840 * pi4) - d[1] / (64 * pi2),
        d[12] / (2038431744 * pi8) + 11 * d[8] / (5898240 * pi6) + 19 * d[4] / (24576 * pi4) + d[0] / (128 * pi2),
    ]
    return c[: order + 1]


def riemann_siegel_z(t, *, order: int = 4, batch: int = 2048) -> np.ndarray:
    """Hardy's Z(t) by the Riemann-Siegel formula, vectorized over t >= 10."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty_like(t)
    for lo in range(0, t.size, batch):
        tb = t[lo : lo + batch]
        u = np.sqrt(tb / _TWO_PI)
        nn = np.floor(u).astype(np.int64)
        nmax = int(nn.max())
        k = np.arange(1, nmax + 1, dtype=float)
        th = theta(tb)
        phase = th[:, None] - tb[:, None] * np.log(k)[None, :]
        terms = np.cos(phase) / np.sqrt(k)[None, :]
        terms[k[None, :] > nn[:, None]] = 0.0
        main = 2.0 * terms.sum(axis=1)
        p = u - nn
        scale = 1.0 / u  # (2pi/t)^(1/2)
        rem = np.zeros_like(tb)
        power = np.ones_like(tb)
        for ck in _corrections(p, order):
            rem += ck * power
            power = power * scale
        sign = np.where(nn % 2 == 1, 1.0, -1.0)
        out[lo : lo + batch] = main + sign * np.sqrt(scale) * rem
    return out


def hardy_z_exact(t: float) -> float:
    """Z(t) from the Euler-Maclaurin zeta and the exact theta."""
    return (cmath.exp(1j * theta_exact(t)) * riemann_zeta(complex(0.5, t))).real


def _height_for_count(count: float) -> float:
    lo, hi = MIN_HEIGHT, 100.0
    while smooth_count(hi) < count:
        hi *= 2.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if smooth_count(mid) < count:
            lo = mid
        else:
            hi = mid
    return hi


def _grid(t_lo: float, t_hi: float, divisions: int) -> np.ndarray:
    """Points where theta(t)/pi steps by 1/divisions (Gram-like grid)."""
    j0 = math.floor(float(theta(t_lo)) / math.pi * divisions)
    j1 = math.ceil(float(theta(t_hi)) / math.pi * divisions)
    target = np.arange(j0, j1 + 1, dtype=float) * math.pi / divisions
    # Newton on theta(t) = target, started from a linear interpolation
    t = np.interp(target, [float(theta(t_lo)), float(theta(t_hi))], [t_lo, t_hi])
    t = np.maximum(t, t_lo)
    for _ in range(50):
        step = (theta(t) - target) / theta_prime(t)
        t = np.maximum(t - step, 1.0)
        if np.max(np.abs(step)) < 1e-12 * t_hi:
            break
    t = t[(t >= t_lo) & (t <= t_hi)]
    return np.unique(np.concatenate(([t_lo], t, [t_hi])))


def _brackets(t: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, ...]:
    s = np.signbit(z)
    idx = np.nonzero(s[:-1] != s[1:])[0]
    return t[idx], t[idx + 1], z[idx], z[idx + 1]


def _illinois(lo, hi, flo, fhi, *, rtol: float = 1e-15, max_iter: int = 100) -> np.ndarray:
    lo, hi, flo, fhi = (np.array(v, dtype=float) for v in (lo, hi, flo, fhi))
    side = np.zeros(lo.shape, dtype=np.int8)
    for _ in range(max_iter):
        width = hi - lo
        if np.all(width <= rtol * hi + 1e-300):
            break
        x = (lo * fhi - hi * flo) / (fhi - flo)
        bad = ~np.isfinite(x) | (x <= lo) | (x >= hi)
        x = np.where(bad, 0.5 * (lo + hi), x)
        fx = riemann_siegel_z(x)
        left = np.signbit(fx) == np.signbit(flo)
        # root in [x, hi]
        lo = np.where(left, x, lo)
        flo = np.where(left, fx, flo)
        fhi = np.where(left & (side == 1), 0.5 * fhi, fhi)
        # root in [lo, x]
        hi = np.where(~left, x, hi)
        fhi = np.where(~left, fx, fhi)
        flo = np.where(~left & (side == -1), 0.5 * flo, flo)
        side = np.where(left, 1, -1).astype(np.int8)
        exact = fx == 0
        lo = np.where(exact, x, lo)
        hi = np.where(exact, x, hi)
    return 0.5 * (lo + hi)


def _scan(t_lo: float, t_hi: float, divisions: int) -> np.ndarray:
    t = _grid(t_lo, t_hi, divisions)
    z = riemann_siegel_z(t)
    lo, hi, flo, fhi = _brackets(t, z)
    return _illinois(lo, hi, flo, fhi)


def _polish(roots: np.ndarray, below: float) -> np.ndarray:
    out = roots.copy()
    for i, r in enumerate(roots):
        if r >= below:
            break
        x0, x1 = r - 1e-6, r + 1e-6
        f0, f1 = hardy_z_exact(x0), hardy_z_exact(x1)
        for _ in range(30):
            if f1 == f0:
                break
            x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
            x0, f0 = x1, f1
            x1, f1 = x2, hardy_z_exact(x2)
            if abs(x1 - x0) < 4e-16 * x1:
                break
        if abs(x1 - r) > 1e-4:
            raise NonConvergenceError(f"polishing the zero near {r} drifted to {x1}")
        out[i] = x1
    return out


def counting_defects(ordinates: np.ndarray, block: int = BLOCK) -> np.ndarray:
    """Mean of S at the ordinates, per block of ``block`` consecutive zeros.

    At the k-th zero N jumps from k-1 to k, so the midpoint value of S there
    is k - 1/2 - theta(gamma_k)/pi - 1. The first ordinate must be the
    first zero.
    """
    k = np.arange(1, len(ordinates) + 1)
    s = k - 0.5 - smooth_count(ordinates)
    nblocks = max(1, math.ceil(len(s) / block))
    return np.array([s[i * block : (i + 1) * block].mean() for i in range(nblocks)])


def _midpoint(roots: np.ndarray, index: int, fallback: float) -> float:
    if 0 < index < len(roots):
        return 0.5 * float(roots[index - 1] + roots[index])
    return fallback


def find_zeros(count: int, *, polish_below: float = POLISH_BELOW, max_refinements: int = 200) -> np.ndarray:
    """Ordinates of the first ``count`` zeros in ascending order."""
    if count < 1:
        return np.empty(0)
    # overshoot so that the last requested zero is well inside the scan
    t_hi = _height_for_count(count + 10) + 5.0
    roots = _scan(MIN_HEIGHT, t_hi, GRID_DIVISIONS)
    level: dict[int, int] = {}
    for _ in range(max_refinements):
        defects = counting_defects(roots)
        bad = np.nonzero(np.abs(defects) > 1.0)[0]
        if bad.size == 0:
            break
        first = int(bad[0])
        level[first] = level.get(first, 1) * 4
        divisions = GRID_DIVISIONS * level[first]
        if divisions > GRID_DIVISIONS * 4**5:
            raise NonConvergenceError(f"zero block {first} still inconsistent at {divisions} grid divisions")
        # a missed pair only drags its own block part of the way, so the
        # window starts one block earlier; window ends sit between zeros
        start = _midpoint(roots, (first - 1) * BLOCK, MIN_HEIGHT)
        stop = _midpoint(roots, (first + 1) * BLOCK, t_hi)
        log.info("rescanning zeros in [%.3f, %.3f] with %d grid divisions", start, stop, divisions)
        finer = _scan(start, stop, divisions)
        roots = np.concatenate((roots[roots < start], finer, roots[roots > stop]))
    else:
        raise NonConvergenceError("zero scan still inconsistent with the counting function")
    roots = np.unique(roots)[:count]
    if len(roots) < count:
        raise NonConvergenceError(f"found only {len(roots)} zeros, wanted {count}")
    return _polish(roots, polish_below)
