"""The test functions behind the arithmetic formulas, and the explicit formula.

g_{n,a} lives on (0, 1]: g(x) = P(x) on (0, 1), n(2a-1)/2 at x = 1 and 0
beyond, with

    P(x)  = x^(a-1) sum_j C(n,j) b^j ln^(j-1)(x) / (j-1)!   = x^(a-1) b L1_{n-1}(-b ln x)
    P~(x) = x^(-a)  sum_j C(n,j) (-1)^(j-1) b^j ln^(j-1)(x) / (j-1)!  = x^(-a) b L1_{n-1}(b ln x)

(b = 2a - 1). Its Mellin transform is 1 - (1 - b/(s+a-1))^n, so summing it
over the zeros gives k_{n,a}. The truncated g_{n,eps} is cut to zero below
x = eps (half value at eps); its transform is entire apart from s = 1 - a.

The explicit formula with f = g and f~(x) = f(1/x)/x reads

    sum_rho ghat(rho) = int_0^inf f + int_0^inf f~ - sum_m Lambda(m) (f(m) + f~(m))
                        - (ln pi + gamma) f(1)
                        - int_1^inf {f(x) + f~(x) - 2 f(1)/x^2} x/(x^2 - 1) dx.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from genli.errors import DomainError, PoleError
from genli.mangoldt import (
    LimitSchedule,
    MangoldtTable,
    best_regularized_limit,
    combined_regularized_limit,
    log_power_integral,
)
from genli.numerics import compensated_sum, exp_sinh, expm1_complex
from genli.specfun import (
    EULER_GAMMA,
    LN_PI,
    binomial,
    digamma,
    hurwitz_zeta,
    laguerre_l1,
)
from genli.zeros import ZeroTable, k_zero_sum


@dataclass(frozen=True)
class TestFunctionSpec:
    n: int
    a: complex
    eps: float = 0.0

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if not 0.0 <= self.eps < 1.0:
            raise DomainError("eps must lie in [0, 1)")
        object.__setattr__(self, "a", complex(self.a))

    @property
    def b(self) -> complex:
        return 2.0 * self.a - 1.0

    @property
    def value_at_one(self) -> complex:
        return 0.5 * self.n * self.b


def _coeffs(spec: TestFunctionSpec, alternating: bool) -> list[complex]:
    # C(n,j) b^j / (j-1)!, with (-1)^(j-1) for the tilde polynomial
    out = []
    for j in range(1, spec.n + 1):
        c = binomial(spec.n, j) * spec.b**j / math.factorial(j - 1)
        out.append(c * (-1) ** (j - 1) if alternating else c)
    return out


def _log_poly(coeffs: list[complex], lnx):
    # sum_j coeffs[j-1] lnx^(j-1) by Horner
    acc = np.zeros_like(lnx, dtype=complex) if np.ndim(lnx) else 0j
    for c in reversed(coeffs):
        acc = acc * lnx + c
    return acc


def eval_p(spec: TestFunctionSpec, x):
    """P_{n,a}(x) for any x > 0 (the polynomial, ignoring the support)."""
    x = np.asarray(x, dtype=float)
    lnx = np.log(x)
    return np.exp((spec.a - 1.0) * lnx) * _log_poly(_coeffs(spec, False), lnx)


def eval_p_tilde(spec: TestFunctionSpec, x):
    """P~_n(x) for any x > 0; equals P(1/x)/x."""
    x = np.asarray(x, dtype=float)
    lnx = np.log(x)
    return np.exp(-spec.a * lnx) * _log_poly(_coeffs(spec, True), lnx)


def eval_sum_form_exact(spec: TestFunctionSpec, x: float, tilde: bool = False) -> float:
    """P (or P~) at x with the log-polynomial summed in exact rationals.

    For real a only. The floating-point Horner sum of these alternating
    terms loses up to cond ~ 1e7 near roots of L1_{n-1}; here b and ln x
    are taken as the exact binary values they hold, so the only rounding is
    the final conversion and the x-power.
    """
    if spec.a.imag != 0.0:
        raise DomainError("exact sum form needs real a")
    b = Fraction(spec.b.real)
    lnx = math.log(x)
    u = Fraction(lnx)
    acc = Fraction(0)
    for j in range(spec.n, 0, -1):
        c = math.comb(spec.n, j) * b**j / math.factorial(j - 1)
        acc = acc * u + (c * (-1) ** (j - 1) if tilde else c)
    power = math.exp(-spec.a.real * lnx) if tilde else math.exp((spec.a.real - 1.0) * lnx)
    return power * float(acc)


def eval_p_laguerre(spec: TestFunctionSpec, x):
    x = np.asarray(x, dtype=float)
    lnx = np.log(x)
    return np.exp((spec.a - 1.0) * lnx) * spec.b * laguerre_l1(spec.n - 1, -spec.b * lnx)


def eval_p_tilde_laguerre(spec: TestFunctionSpec, x):
    x = np.asarray(x, dtype=float)
    lnx = np.log(x)
    return np.exp(-spec.a * lnx) * spec.b * laguerre_l1(spec.n - 1, spec.b * lnx)


def eval_g(spec: TestFunctionSpec, x: float) -> complex:
    """g_{n,a}(x), or g_{n,eps}(x) when spec.eps > 0, with midpoint values at jumps."""
    x = float(x)
    if not x > 0:
        raise DomainError("g is defined for x > 0")
    if x > 1.0:
        return 0j
    if x == 1.0:
        return complex(spec.value_at_one)
    if spec.eps > 0.0:
        if x < spec.eps:
            return 0j
        if x == spec.eps:
            return 0.5 * complex(eval_p(spec, x))
    return complex(eval_p(spec, x))


def eval_f_tilde(spec: TestFunctionSpec, x: float) -> complex:
    """f~(x) = f(1/x)/x."""
    x = float(x)
    if not x > 0:
        raise DomainError("f~ is defined for x > 0")
    return eval_g(spec, 1.0 / x) / x


# ---------------------------------------------------------------------------
# Mellin transforms


def mellin_closed_form(n: int, a: complex, s) -> complex:
    """k_{n,a}(s) = 1 - (1 - (2a-1)/(s+a-1))^n."""
    a = complex(a)
    mu = s + a - 1.0
    return 1.0 - (1.0 - (2.0 * a - 1.0) / mu) ** n


def _mellin_integrand(spec: TestFunctionSpec, mu: complex):
    # with x = e^-u: P(e^-u) e^-u(s-1) e^-u = e^(-mu u) sum_j C b^j (-u)^(j-1)/(j-1)!
    coeffs = _coeffs(spec, False)

    def f(u):
        return np.exp(-mu * u) * _log_poly(coeffs, -u)

    return f


def forward_mellin(spec: TestFunctionSpec, s: complex, *, rtol: float = 1e-12) -> tuple[complex, complex]:
    """(quadrature of int_0^1 P(x) x^(s-1) dx, closed form); needs Re(s + a) > 1."""
    s = complex(s)
    mu = s + spec.a - 1.0
    if not mu.real > 0:
        raise DomainError(f"the transform converges only for Re(s + a) > 1, got s + a = {s + spec.a}")
    numeric, _ = exp_sinh(_mellin_integrand(spec, mu), 0.0, rtol=rtol, atol=1e-300, max_level=12)
    return numeric, mellin_closed_form(spec.n, spec.a, s)


def truncated_mellin(spec: TestFunctionSpec, s: complex) -> complex:
    """int_eps^1 P(x) x^(s-1) dx in closed form, for any s with s + a != 1.

    Each power of ln x integrates to a log-power integral over
    (1, 1/eps) with exponent s + a; for n = 1 this is
    (2a-1)(1 - eps^(s+a-1))/(s+a-1).
    """
    if not spec.eps > 0.0:
        raise DomainError("truncated_mellin needs eps > 0")
    s = complex(s)
    mu = s + spec.a - 1.0
    if mu == 0:
        raise PoleError("truncated transform is taken to have a pole at s = 1 - a")
    upper = 1.0 / spec.eps
    parts = []
    for j, c in enumerate(_coeffs(spec, True), start=1):
        # int_0^L u^(j-1) e^(-mu u) du = int_1^(1/eps) x^-(mu+1) ln^(j-1) x dx
        parts.append(c * log_power_integral(mu + 1.0, j, upper))
    return compensated_sum(parts)


def truncation_defect(n: int, a: complex, eps: float, s) -> np.ndarray:
    """ghat_{n,eps}(s) - ghat_n(s) = sum_j C(n,j) (-b/mu)^j eps^mu e_{j-1}(mu ln(1/eps)).

    e_k is the truncated exponential series; mu = s + a - 1. Vectorized over
    s; intended for |mu| L not small (e.g. s at zeta zeros), where the
    closed form difference would cancel.
    """
    a = complex(a)
    b = 2.0 * a - 1.0
    mu = np.asarray(s, dtype=complex) + a - 1.0
    L = math.log(1.0 / eps)
    eps_mu = np.exp(-mu * L)
    total = np.zeros_like(mu)
    for j in range(1, n + 1):
        # (-b/mu)^j e_{j-1}(mu L) = (-b)^j sum_{k<j} L^k mu^(k-j) / k!
        inner = np.zeros_like(mu)
        for k in range(j):
            inner = inner + L**k / math.factorial(k) * mu ** (k - j)
        total = total + binomial(n, j) * (-b) ** j * inner
    return total * eps_mu


def leading_defect(spec_n: int, a: complex, eps: float, s) -> np.ndarray:
    """T_n(ln eps) eps^(a+s-1)/(a+s-1), the leading term of the defect."""
    a = complex(a)
    b = 2.0 * a - 1.0
    mu = np.asarray(s, dtype=complex) + a - 1.0
    lne = math.log(eps)
    t_n = sum(binomial(spec_n, j) * b**j * lne ** (j - 1) / math.factorial(j - 1) for j in range(1, spec_n + 1))
    return t_n * np.exp(mu * lne) / mu


# ---------------------------------------------------------------------------
# explicit formula


@dataclass(frozen=True)
class WeilTermBreakdown:
    integral_0_inf_f: complex
    integral_0_inf_f_tilde: complex
    lambda_sum: complex
    archimedean_f1: complex
    compensated_integral: complex
    total: complex
    zero_side: complex
    total_uncertainty: float = 0.0
    zero_side_uncertainty: float = 0.0

    @property
    def discrepancy(self) -> float:
        return abs(self.total - self.zero_side)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def compensated_integrand(spec: TestFunctionSpec):
    """The last explicit-formula integrand on x > 1, in t = ln x, times dx/dt.

    {P~(e^t) - n b e^(-2t)} e^(2t)/(e^(2t) - 1)
      = [n b e^(-2t) expm1((2-a) t) + t e^(-a t) R(t)] / (1 - e^(-2t)),
    R(t) = sum_{j>=2} C(n,j) (-1)^(j-1) b^j t^(j-2)/(j-1)!. At t = 0 it takes
    its limit (n b (2-a) + R(0))/2.
    """
    a, b, n = spec.a, spec.b, spec.n
    r_coeffs = _coeffs(spec, True)[1:]
    limit = 0.5 * (n * b * (2.0 - a) + (r_coeffs[0] if r_coeffs else 0.0))

    def f(t):
        t = np.asarray(t, dtype=float)
        r = _log_poly(r_coeffs, t) if r_coeffs else np.zeros_like(t, dtype=complex)
        num = n * b * np.exp(-2.0 * t) * expm1_complex((2.0 - a) * t) + t * np.exp(-a * t) * r
        den = -np.expm1(-2.0 * t)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = num / den
        return np.where(t < 1e-300, limit, out)

    return f


def compensated_integral_closed_form(n: int, a: complex) -> complex:
    """Closed form of the last integral through Hurwitz zeta and digamma.

    sum_{j>=2} C(n,j) (-1)^(j-1) 2^-j b^j zeta(j, a/2) - (n/2) b (gamma + psi(a/2)).
    """
    a = complex(a)
    b = 2.0 * a - 1.0
    parts = [-0.5 * n * b * (EULER_GAMMA + digamma(0.5 * a))]
    for j in range(2, n + 1):
        parts.append(binomial(n, j) * (-1) ** (j - 1) * (0.5 * b) ** j * hurwitz_zeta(j, 0.5 * a))
    return compensated_sum(parts)


def weil_breakdown(
    spec: TestFunctionSpec,
    table: MangoldtTable,
    zeros: ZeroTable,
    schedule: LimitSchedule | None = None,
    *,
    rtol: float = 1e-12,
    workers: int = 1,
) -> WeilTermBreakdown:
    """Every explicit-formula term for g_{n,a}, computed separately; needs Re a > 1."""
    if spec.eps != 0.0:
        raise DomainError("weil_breakdown takes the untruncated test function (eps = 0)")
    a, n = spec.a, spec.n
    if not a.real > 1.0:
        raise DomainError(f"the explicit formula is applied directly only for Re a > 1, got {a}")
    # int_0^1 P(x) dx and int_1^inf P~(x) dx = int_0^1 P(y)/y dy: the transform at s = 1 and s = 0
    t1, e1 = exp_sinh(_mellin_integrand(spec, a), 0.0, rtol=rtol, atol=1e-300, max_level=12)
    t2, e2 = exp_sinh(_mellin_integrand(spec, a - 1.0), 0.0, rtol=rtol, atol=1e-300, max_level=12)

    # sum_m Lambda(m) P~(m) = sum_j C b^j (-1)^(j-1)/(j-1)! S_j, with
    # S_j = D_j + (j-1)!/(a-1)^j
    weights = dict(enumerate(_coeffs(spec, True), start=1))
    if schedule is None:
        candidates = LimitSchedule.candidates(table.limit, a, max(weights))
        d_part, spread, _ = best_regularized_limit(table, a, weights, candidates, workers)
    else:
        d_part, spread = combined_regularized_limit(table, a, weights, schedule, workers)
    integrals = compensated_sum([c * math.factorial(j - 1) / (a - 1.0) ** j for j, c in weights.items()])
    t3 = d_part + integrals

    t4 = (LN_PI + EULER_GAMMA) * spec.value_at_one
    t5, e5 = exp_sinh(compensated_integrand(spec), 0.0, rtol=rtol, atol=1e-300, max_level=12)

    total = compensated_sum([t1, t2, -t3, -t4, -t5])
    zero = k_zero_sum(n, a, zeros)
    if a.imag == 0.0:
        total = complex(total.real, 0.0)
    return WeilTermBreakdown(
        integral_0_inf_f=t1,
        integral_0_inf_f_tilde=t2,
        lambda_sum=t3,
        archimedean_f1=t4,
        compensated_integral=t5,
        total=total,
        zero_side=zero.value,
        total_uncertainty=spread + e1 + e2 + e5,
        zero_side_uncertainty=zero.uncertainty,
    )


# ---------------------------------------------------------------------------
# truncation study

CSV_COLUMNS = ("eps", "s_re", "s_im", "defect_re", "defect_im", "fitted_leading_re", "fitted_leading_im")


@dataclass
class TruncationReport:
    n: int
    a: complex
    rows: list[tuple[float, complex, complex, complex]] = field(default_factory=list)
    zero_eps: np.ndarray = field(default_factory=lambda: np.empty(0))
    zero_defects: np.ndarray = field(default_factory=lambda: np.empty(0))
    zero_defect_bounds: np.ndarray = field(default_factory=lambda: np.empty(0))
    decay_exponent: float | None = None

    def to_csv(self, fh=None) -> str:
        buf = fh if fh is not None else io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for eps, s, defect, lead in self.rows:
            writer.writerow([repr(eps), repr(s.real), repr(s.imag), repr(defect.real), repr(defect.imag),
                             repr(lead.real), repr(lead.imag)])
        return buf.getvalue() if fh is None else ""


def envelope_decay_exponent(eps: np.ndarray, values: np.ndarray) -> float:
    """Slope of log(max |value| per decade of eps) against log eps.

    The zero-sum defect oscillates in eps, so its size is read off as the
    largest value in each decade before fitting a power law.
    """
    eps = np.asarray(eps, dtype=float)
    mag = np.abs(np.asarray(values))
    decade = np.floor(np.log10(eps) + 1e-9)
    xs, ys = [], []
    for d in np.unique(decade):
        sel = decade == d
        if not np.any(mag[sel] > 0):
            continue
        xs.append(float(np.mean(np.log(eps[sel]))))
        ys.append(math.log(float(mag[sel].max())))
    if len(xs) < 2:
        raise DomainError("need eps values spanning at least two decades")
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def zero_sum_defect(n: int, a: complex, eps: float, zeros: ZeroTable) -> tuple[complex, float]:
    """sum_rho (ghat_{n,eps}(rho) - ghat_n(rho)) over the table, with a spread estimate.

    The summand oscillates like eps^(i gamma), so no smooth density tail is
    added; the estimate is the change between summing half the table and
    summing all of it.
    """
    a = complex(a)
    rho = 0.5 + 1j * zeros.ordinates
    vals = truncation_defect(n, a, eps, rho) + truncation_defect(n, a, eps, rho.conjugate())
    value = compensated_sum(vals)
    half = compensated_sum(vals[: len(vals) // 2])
    if a.imag == 0.0:
        value = complex(value.real, 0.0)
        half = complex(half.real, 0.0)
    return value, abs(value - half)


def truncation_study(
    spec: TestFunctionSpec,
    s_grid,
    eps_schedule,
    zeros: ZeroTable | None = None,
) -> TruncationReport:
    """Defect of the truncated transform on an s grid, and of its sum over zeros."""
    eps_schedule = [float(e) for e in eps_schedule]
    if any(not 0.0 < e < 1.0 for e in eps_schedule):
        raise DomainError("eps values must lie in (0, 1)")
    if any(e2 >= e1 for e1, e2 in itertools.pairwise(eps_schedule)):
        raise DomainError("eps schedule must be decreasing")
    n, a = spec.n, spec.a
    report = TruncationReport(n, a)
    for eps in eps_schedule:
        trunc = TestFunctionSpec(n, a, eps)
        for s in s_grid:
            s = complex(s)
            defect = mellin_closed_form(n, a, s) - truncated_mellin(trunc, s)
            lead = complex(leading_defect(n, a, eps, s)[()])
            report.rows.append((eps, s, defect, lead))
    if zeros is not None:
        vals, bounds = zip(*(zero_sum_defect(n, a, e, zeros) for e in eps_schedule))
        report.zero_eps = np.array(eps_schedule)
        report.zero_defects = np.array(vals)
        report.zero_defect_bounds = np.array(bounds)
        report.decay_exponent = envelope_decay_exponent(report.zero_eps, report.zero_defects)
    return report


def small_x_ratios(spec: TestFunctionSpec, delta: float, exponents=range(1, 13)) -> np.ndarray:
    """|g(x)| / x^delta at x = 10^-k; tends to 0 when g(x) = O(x^delta') for delta' > delta."""
    xs = 10.0 ** -np.asarray(list(exponents), dtype=float)
    return np.array([abs(eval_g(spec, x)) / x**delta for x in xs])
