"""Deterministic summation and double-exponential quadrature."""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable
from functools import cache

import numpy as np

from genli.errors import NonConvergenceError

_HALF_PI = 0.5 * math.pi


def compensated_sum(values: Iterable[complex] | np.ndarray) -> complex:
    """Correctly rounded sum of real or complex values.

    ``math.fsum`` is applied to the real and imaginary parts separately, so
    the result does not depend on the order or chunking of the input.
    """
    arr = np.asarray(values)
    if arr.size == 0:
        return 0j
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real.ravel().tolist()), math.fsum(arr.imag.ravel().tolist()))
    return complex(math.fsum(arr.ravel().tolist()), 0.0)


def ordered_chunk_sum(chunk_sums: Iterable[complex]) -> complex:
    """Combine per-chunk partial sums in the given (fixed) order."""
    return compensated_sum(np.fromiter(chunk_sums, dtype=complex))


def log1p_complex(z):
    """log(1 + z) for complex arrays without cancellation when |z| is small."""
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    return 0.5 * np.log1p(2.0 * x + x * x + y * y) + 1j * np.arctan2(y, 1.0 + x)


def expm1_complex(z):
    """exp(z) - 1 for complex arrays without cancellation when |z| is small."""
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    return np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2 + 1j * np.exp(x) * np.sin(y)


@cache
def _tanh_sinh_level(level: int, t_max: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes of one refinement level on [-1, 1].

    Returns abscissae, complementary distances to the nearer endpoint and
    weights. Level 0 holds every node at spacing 1; level k >= 1 holds only
    the odd multiples of 2**-k, so that summing levels 0..k gives the full
    rule at spacing 2**-k.
    """
    h = 2.0 ** -level
    if level == 0:
        t = np.arange(-math.floor(t_max), math.floor(t_max) + 1, dtype=float)
    else:
        count = int(t_max / h)
        k = np.arange(-count, count + 1)
        k = k[k % 2 != 0]
        t = k * h
    u = _HALF_PI * np.sinh(t)
    cu = np.cosh(u)
    x = np.tanh(u)
    # 1 - |x| without cancellation
    dist = 1.0 / (np.exp(np.abs(u)) * cu)
    w = _HALF_PI * np.cosh(t) / (cu * cu)
    keep = dist > 0
    return x[keep], dist[keep], w[keep]


def tanh_sinh(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    *,
    rtol: float = 1e-13,
    atol: float = 0.0,
    max_level: int = 9,
    t_max: float = 4.5,
) -> tuple[complex, float]:
    """Integrate ``f`` over the finite interval ``[lo, hi]``.

    ``f`` receives a numpy array of interior abscissae. Points near the
    endpoints are generated as ``lo + d`` or ``hi - d`` with ``d`` computed
    directly, so integrable endpoint singularities are sampled accurately.

    Returns the integral and an error estimate (the change between the two
    finest levels). Raises ``NonConvergenceError`` if ``rtol``/``atol`` is
    not met by ``max_level``.
    """
    half = 0.5 * (hi - lo)
    total = 0j
    previous = None
    for level in range(max_level + 1):
        x, dist, w = _tanh_sinh_level(level, t_max)
        pts = np.where(x < 0, lo + half * dist, hi - half * dist)
        vals = np.asarray(f(pts), dtype=complex)
        level_sum = compensated_sum(w * vals)
        h = 2.0 ** -level
        if level == 0:
            total = level_sum
            estimate = half * total
        else:
            total = total + level_sum
            estimate = half * h * total
        if previous is not None:
            err = abs(estimate - previous)
            if err <= max(atol, rtol * abs(estimate)) and level >= 3:
                return estimate, err
        previous = estimate
    raise NonConvergenceError(
        f"tanh-sinh quadrature on [{lo}, {hi}] did not reach rtol={rtol} by level {max_level}"
    )


@cache
def _exp_sinh_level(level: int, t_lo: float, t_hi: float) -> tuple[np.ndarray, np.ndarray]:
    h = 2.0 ** -level
    k_lo = math.ceil(t_lo / h)
    k_hi = math.floor(t_hi / h)
    k = np.arange(k_lo, k_hi + 1)
    if level > 0:
        k = k[k % 2 != 0]
    t = k * h
    u = _HALF_PI * np.sinh(t)
    x = np.exp(u)
    w = _HALF_PI * np.cosh(t) * x
    keep = np.isfinite(x) & np.isfinite(w) & (x > 0)
    return x[keep], w[keep]


def exp_sinh(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float = 0.0,
    *,
    rtol: float = 1e-13,
    atol: float = 0.0,
    max_level: int = 9,
    t_lo: float = -4.5,
    t_hi: float = 4.0,
    scale: float = 1.0,
) -> tuple[complex, float]:
    """Integrate ``f`` over ``[lo, inf)`` with the exp-sinh rule.

    ``f`` receives absolute abscissae ``lo + scale*y`` with ``y`` in (0, inf);
    it must return finite values there (return 0 where the integrand
    underflows). ``scale`` should match the width over which ``f`` decays.
    """
    total = 0j
    previous = None
    for level in range(max_level + 1):
        y, w = _exp_sinh_level(level, t_lo, t_hi)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            vals = np.asarray(f(lo + scale * y), dtype=complex)
        vals = np.where(np.isfinite(vals), vals, 0.0)
        total = total + scale * compensated_sum(w * vals)
        estimate = 2.0 ** -level * total
        if previous is not None:
            err = abs(estimate - previous)
            if err <= max(atol, rtol * abs(estimate)) and level >= 3:
                return estimate, err
        previous = estimate
    raise NonConvergenceError(
        f"exp-sinh quadrature on [{lo}, inf) did not reach rtol={rtol} by level {max_level}"
    )
