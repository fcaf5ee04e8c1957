"""k_{n,a} from Taylor coefficients of ln xi about 1 - a.

With w = z - (1 - a) and ln xi(z) = sum_m c_m w^m,

    k_{n,a} = (1 - 2a)/(n-1)! * d^n/dz^n [(z - a)^(n-1) ln xi(z)] at z = 1 - a
            = n (1 - 2a) * sum_{m=1}^{n} C(n-1, m-1) (-(2a-1))^(m-1) c_m.

The c_m come from the trapezoid rule for Cauchy's integral on a circle
that stays clear of the zeros of xi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from genli.errors import DomainError, RadiusError, WindingError
from genli.numerics import compensated_sum
from genli.records import LiCoefficientRecord, Route, params_digest
from genli.specfun import ln_xi

FIRST_ZERO = complex(0.5, 14.134725141734693)
DEFAULT_MAX_RADIUS = 5.0
# absolute accuracy assumed for each sample of ln xi
SAMPLE_NOISE = 1e-13


@dataclass(frozen=True)
class LnXiTaylorSeries:
    center: complex
    radius: float
    coefficients: np.ndarray
    sample_count: int

    @property
    def count(self) -> int:
        return len(self.coefficients) - 1

    def coefficient_error(self, m: int) -> float:
        return SAMPLE_NOISE / self.radius**m


def zero_clearance(center: complex) -> float:
    """Distance from ``center`` to the nearest of 1/2 +- 14.1347i."""
    return min(abs(center - FIRST_ZERO), abs(center - FIRST_ZERO.conjugate()))


def default_radius(center: complex) -> float:
    return min(DEFAULT_MAX_RADIUS, 0.5 * zero_clearance(center))


def default_samples(count: int) -> int:
    return max(64, 1 << math.ceil(math.log2(16 * max(count, 1))))


def ln_xi_taylor(
    center: complex,
    radius: float | None = None,
    count: int = 20,
    samples: int | None = None,
) -> LnXiTaylorSeries:
    """Taylor coefficients c_0..c_count of ln xi about ``center``."""
    center = complex(center)
    if count < 0:
        raise DomainError("count must be >= 0")
    radius = default_radius(center) if radius is None else float(radius)
    samples = default_samples(count) if samples is None else int(samples)
    if not radius > 0:
        raise RadiusError("radius must be positive")
    if radius > 0.5 * zero_clearance(center):
        raise RadiusError(
            f"radius {radius} exceeds half the distance {zero_clearance(center):.4f} to the nearest zero"
        )
    if samples < 8 * max(count, 1):
        raise DomainError(f"need at least 8*count = {8 * count} samples, got {samples}")

    angles = 2.0 * np.pi * np.arange(samples) / samples
    points = center + radius * np.exp(1j * angles)
    vals = np.array([ln_xi(z) for z in points])

    steps = np.angle(np.exp(1j * np.diff(np.append(vals.imag, vals.imag[0]))))
    if np.max(np.abs(steps)) > 0.5 * np.pi:
        raise WindingError("phase of xi moves too fast between samples; raise the sample count")
    turn = float(np.sum(steps))
    if abs(turn) > np.pi:
        raise WindingError(f"phase of xi changes by {turn:.3f} around the contour (enclosed zero?)")
    phase = vals.imag[0] + np.concatenate(([0.0], np.cumsum(steps[:-1])))
    vals = vals.real + 1j * phase

    coeffs = np.fft.fft(vals) / samples
    coeffs = coeffs[: count + 1] / radius ** np.arange(count + 1)
    # pin the branch of c_0 to the principal pieces of ln xi(center)
    ref = ln_xi(center)
    coeffs[0] += 2j * np.pi * round((ref.imag - coeffs[0].imag) / (2.0 * np.pi))
    return LnXiTaylorSeries(center, radius, coeffs, samples)


def k_xi(n: int, a: complex, series: LnXiTaylorSeries | None = None) -> LiCoefficientRecord:
    """k_{n,a} by the xi-derivative relation; builds the series if not given."""
    if n < 1:
        raise DomainError("n must be >= 1")
    a = complex(a)
    if series is None:
        series = ln_xi_taylor(1.0 - a, count=n)
    if abs(series.center - (1.0 - a)) > 1e-12 * (1.0 + abs(a)):
        raise DomainError(f"series is centered at {series.center}, expected 1 - a = {1.0 - a}")
    if series.count < n:
        raise DomainError(f"series has {series.count} coefficients beyond c_0, need {n}")
    b = 2.0 * a - 1.0
    terms = []
    bound = 0.0
    for m in range(1, n + 1):
        weight = math.comb(n - 1, m - 1) * (-b) ** (m - 1)
        terms.append(weight * series.coefficients[m])
        bound += abs(weight) * series.coefficient_error(m)
    value = -n * b * compensated_sum(terms)
    if a.imag == 0.0:
        value = complex(value.real, 0.0)
    params = {
        "n": n,
        "a": a,
        "center": series.center,
        "radius": series.radius,
        "samples": series.sample_count,
        "count": series.count,
    }
    return LiCoefficientRecord(
        n=n,
        a=a,
        route=Route.XI_DERIV,
        value=value,
        uncertainty=n * abs(b) * bound,
        params_digest=params_digest(params),
    )
